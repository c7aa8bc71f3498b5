#pragma once

#include <cstddef>
#include <vector>

namespace gmwb {

// Constant risk-neutral market: short rate and index volatility, both per annum.
struct MarketParams {
    double r = 0.0;
    double sigma = 0.0;

    void validate() const;
};

// Constant proportional fee rates charged continuously on the wealth account.
// alpha_ins may be negative (the fair fee under value maximization can be).
struct FeeSchedule {
    double alpha_m = 0.0;
    double alpha_ins = 0.0;

    double alpha_tot() const noexcept { return alpha_m + alpha_ins; }
    void validate() const;
};

double total_fee(const FeeSchedule& fees) noexcept;

// GMWB contract terms. Event n (1-based) happens at event_times[n-1] with
// contractual amount contractual_amounts[n-1]; the last event is maturity.
struct ContractSpec {
    double maturity = 0.0;
    std::vector<double> event_times;
    std::vector<double> contractual_amounts;
    double penalty = 0.0;
    double initial_wealth = 1.0;
    double initial_guarantee = 1.0;

    std::size_t num_events() const noexcept { return event_times.size(); }
    double event_time(std::size_t n) const { return n == 0 ? 0.0 : event_times.at(n - 1); }
    double contractual_amount(std::size_t n) const { return contractual_amounts.at(n - 1); }

    void validate() const;
};

// Evenly spaced events at n / events_per_year with equal contractual amounts
// summing to the initial guarantee.
ContractSpec build_contract(double maturity, int events_per_year, double penalty,
                            double initial_wealth, double initial_guarantee);

struct PolicyState {
    double wealth = 0.0;
    double guarantee = 0.0;
};

}  // namespace gmwb
