#include "gmwb/fair_fee.hpp"

#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <string>

#include "gmwb/errors.hpp"

namespace gmwb {

void CalibrationSettings::validate() const {
    if (!(bracket_low < bracket_high)) throw ValidationError("bracket", "low must be below high");
    if (!(expand_low <= bracket_low && bracket_high <= expand_high))
        throw ValidationError("bracket", "expansion limits must contain the bracket");
    if (!(tolerance > 0.0)) throw ValidationError("tolerance", "must be positive");
    if (max_iterations < 1) throw ValidationError("max_iterations", "must be positive");
}

NoRootError::NoRootError(double lo, double hi, double l_lo, double l_hi)
    : std::runtime_error("no sign change of L0 on [" + std::to_string(lo) + ", " +
                         std::to_string(hi) + "]: L0 = " + std::to_string(l_lo) + ", " +
                         std::to_string(l_hi)),
      low(lo),
      high(hi),
      liability_low(l_lo),
      liability_high(l_hi) {}

FairFeeResult solve_fair_fee(const ContractSpec& contract, const MarketParams& market,
                             double alpha_m, Strategy strategy,
                             const CalibrationSettings& settings, const PricingOptions& options) {
    settings.validate();
    FairFeeResult out;
    PricingOptions probe = options;
    probe.keep_policy = false;
    probe.keep_surfaces = false;
    probe.track_management_fees = false;

    auto liability = [&](double alpha_ins) {
        ++out.evaluations;
        return price(contract, market, {alpha_m, alpha_ins}, strategy, probe).l0;
    };

    double lo = settings.bracket_low;
    double hi = settings.bracket_high;
    double f_lo = liability(lo);
    double f_hi = liability(hi);
    // L0 falls as the fee rises; widen toward the side that lacks a sign change.
    while (f_lo * f_hi > 0.0) {
        const double width = hi - lo;
        if (f_lo > 0.0 && f_hi > 0.0 && hi < settings.expand_high) {
            lo = hi;
            f_lo = f_hi;
            hi = std::min(hi + width, settings.expand_high);
            f_hi = liability(hi);
        } else if (f_lo < 0.0 && f_hi < 0.0 && lo > settings.expand_low) {
            hi = lo;
            f_hi = f_lo;
            lo = std::max(lo - width, settings.expand_low);
            f_lo = liability(lo);
        } else {
            throw NoRootError(lo, hi, f_lo, f_hi);
        }
    }

    double root;
    if (f_lo == 0.0) {
        root = lo;
    } else if (f_hi == 0.0) {
        root = hi;
    } else {
        auto tol = [&](double a, double b) { return std::abs(b - a) <= settings.tolerance; };
        std::uintmax_t iterations = static_cast<std::uintmax_t>(settings.max_iterations);
        const auto bracket =
            boost::math::tools::toms748_solve(liability, lo, hi, f_lo, f_hi, tol, iterations);
        if (!tol(bracket.first, bracket.second))
            throw std::runtime_error("fair fee search did not converge in " +
                                     std::to_string(settings.max_iterations) + " iterations");
        root = 0.5 * (bracket.first + bracket.second);
    }

    PricingOptions final_options = options;
    out.pricing = price(contract, market, {alpha_m, root}, strategy, final_options);
    ++out.evaluations;
    out.alpha_ins = root;
    return out;
}

}  // namespace gmwb
