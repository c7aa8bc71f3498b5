#pragma once

#include <cstdint>
#include <stdexcept>

#include "gmwb/pricer.hpp"

namespace gmwb {

struct CalibrationSettings {
    double bracket_low = -0.05;
    double bracket_high = 0.40;
    // hard limits for bracket expansion
    double expand_low = -0.10;
    double expand_high = 0.60;
    double tolerance = 1e-6;  // on the fee rate
    int max_iterations = 100;

    void validate() const;
};

class NoRootError : public std::runtime_error {
public:
    NoRootError(double low, double high, double liability_low, double liability_high);

    double low, high, liability_low, liability_high;
};

struct FairFeeResult {
    double alpha_ins = 0.0;
    int evaluations = 0;
    PricingResult pricing;  // priced at alpha_ins
};

// Insurance fee rate making the initial net liability zero under `strategy`.
FairFeeResult solve_fair_fee(const ContractSpec& contract, const MarketParams& market,
                             double alpha_m, Strategy strategy,
                             const CalibrationSettings& settings, const PricingOptions& options);

}  // namespace gmwb
