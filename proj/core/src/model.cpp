#include "gmwb/model.hpp"

#include <cmath>

#include "gmwb/errors.hpp"

namespace gmwb {

void MarketParams::validate() const {
    if (!std::isfinite(r)) throw ValidationError("r", "must be finite");
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ValidationError("sigma", "must be positive");
}

void FeeSchedule::validate() const {
    if (!(alpha_m >= 0.0) || !std::isfinite(alpha_m))
        throw ValidationError("alpha_m", "must be non-negative");
    if (!std::isfinite(alpha_ins)) throw ValidationError("alpha_ins", "must be finite");
}

double total_fee(const FeeSchedule& fees) noexcept { return fees.alpha_tot(); }

void ContractSpec::validate() const {
    if (!(maturity > 0.0) || !std::isfinite(maturity))
        throw ValidationError("maturity", "must be positive");
    if (event_times.empty()) throw ValidationError("event_times", "at least one event required");
    if (contractual_amounts.size() != event_times.size())
        throw ValidationError("contractual_amounts", "one amount per event required");
    double prev = 0.0;
    for (double t : event_times) {
        if (!(t > prev)) throw ValidationError("event_times", "must be strictly increasing and positive");
        prev = t;
    }
    if (event_times.back() != maturity) throw ValidationError("event_times", "last event must equal maturity");
    for (double g : contractual_amounts)
        if (!(g >= 0.0) || !std::isfinite(g))
            throw ValidationError("contractual_amounts", "must be non-negative");
    if (!(penalty >= 0.0 && penalty <= 1.0)) throw ValidationError("penalty", "must lie in [0, 1]");
    if (!(initial_wealth > 0.0) || !std::isfinite(initial_wealth))
        throw ValidationError("initial_wealth", "must be positive");
    if (!(initial_guarantee > 0.0) || !std::isfinite(initial_guarantee))
        throw ValidationError("initial_guarantee", "must be positive");
}

ContractSpec build_contract(double maturity, int events_per_year, double penalty,
                            double initial_wealth, double initial_guarantee) {
    if (!(maturity > 0.0) || !std::isfinite(maturity))
        throw ValidationError("maturity", "must be positive");
    if (events_per_year < 1) throw ValidationError("events_per_year", "must be at least 1");
    if (!(initial_wealth > 0.0)) throw ValidationError("initial_wealth", "must be positive");
    if (!(initial_guarantee > 0.0)) throw ValidationError("initial_guarantee", "must be positive");

    const double raw = maturity * events_per_year;
    const long count = std::lround(raw);
    if (count < 1 || std::abs(raw - static_cast<double>(count)) > 1e-9)
        throw ValidationError("maturity", "must be a whole number of event periods");

    ContractSpec spec;
    spec.maturity = maturity;
    spec.penalty = penalty;
    spec.initial_wealth = initial_wealth;
    spec.initial_guarantee = initial_guarantee;
    spec.event_times.reserve(count);
    spec.contractual_amounts.assign(count, initial_guarantee / static_cast<double>(count));
    for (long n = 1; n <= count; ++n)
        spec.event_times.push_back(static_cast<double>(n) / events_per_year);
    spec.event_times.back() = maturity;
    spec.validate();
    return spec;
}

}  // namespace gmwb
