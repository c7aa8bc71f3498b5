#pragma once

#include <cstdint>

#include "gmwb/contract_events.hpp"
#include "gmwb/model.hpp"
#include "gmwb/pricer.hpp"

namespace gmwb {

struct MCEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t num_paths = 0;
};

struct MCSettings {
    std::size_t num_paths = 100000;
    std::uint64_t seed = 20170607;
    int sub_steps_per_year = 12;
    bool antithetic = true;
    int workers = 1;

    void validate() const;
};

struct MCResult {
    MCEstimate value;       // V(0)
    MCEstimate liability;   // L(0)
    MCEstimate management;  // discounted management fees, path by path
    MCEstimate insurance_fees;
    MCEstimate terminal_wealth;  // e^{-rT} W(T^-)
};

// Simulated state along one path. The index S shares the Brownian driver
// with the wealth account; it is carried for completeness only.
struct MCPathState {
    double index = 1.0;
    double wealth = 0.0;
    double guarantee = 0.0;
    double discount = 1.0;
    double fee_income_pv = 0.0;
};

// Withdrawal from the frozen policy: bilinear interpolation in (w, a), then
// snapped to the nearest admissible guarantee-aligned amount.
double lookup_withdrawal(const PolicyTable& policy, std::size_t n, double wealth, double guarantee);

// Values the contract under a frozen policy by simulating exact log-normal
// wealth paths. Path p uses its own counter-seeded stream, so results do not
// depend on the number of workers.
MCResult simulate(const PolicyTable& policy, const ContractSpec& contract,
                  const MarketParams& market, const FeeSchedule& fees, const MCSettings& settings);

MCResult simulate(const PolicyTable& policy, const ContractSpec& contract,
                  const MarketParams& market, const FeeSchedule& fees, const MCSettings& settings,
                  const ContractBehavior& behavior);

}  // namespace gmwb
