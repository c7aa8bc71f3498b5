#pragma once

#include "gmwb/model.hpp"

namespace gmwb {

// Cash flow to the policyholder for a nominal withdrawal gamma: the part
// above the contractual amount is charged at the penalty rate.
double cash_flow(double gamma, double contractual_amount, double penalty) noexcept;

// Insurer's payment at an event: the policyholder's cash flow less what the
// wealth account itself can fund. Negative when the insurer keeps a penalty surplus.
double insurer_payment(double gamma, double wealth_before, double contractual_amount,
                       double penalty) noexcept;

// A' = A - gamma, W' = max(W - gamma, 0). Throws AdmissibilityError unless
// 0 <= gamma <= A.
PolicyState apply_withdrawal(const PolicyState& state, double gamma);

// Liquidation at maturity: the remaining guarantee is withdrawn with the
// usual penalty, and any wealth above it is paid out as well.
double terminal_value(const PolicyState& state, double final_amount, double penalty) noexcept;

double terminal_liability(const PolicyState& state, double final_amount, double penalty) noexcept;

// Event-date contract behaviour. The pricer and the Monte Carlo oracle only
// talk to this interface; StandardGmwb is the contract priced throughout.
class ContractBehavior {
public:
    virtual ~ContractBehavior() = default;

    virtual double cash_flow(double gamma, double contractual_amount, double wealth_before) const = 0;
    // Reduction D_n of the guarantee account for a nominal withdrawal.
    virtual double guarantee_reduction(double gamma, double contractual_amount) const = 0;
    virtual double liquidation_value(const PolicyState& state, double final_amount) const = 0;

    double insurer_payment(double gamma, double contractual_amount, double wealth_before) const;
    double terminal_liability(const PolicyState& state, double final_amount) const;
};

class StandardGmwb final : public ContractBehavior {
public:
    explicit StandardGmwb(double penalty) : penalty_(penalty) {}

    double penalty() const noexcept { return penalty_; }

    double cash_flow(double gamma, double contractual_amount, double wealth_before) const override;
    double guarantee_reduction(double gamma, double contractual_amount) const override;
    double liquidation_value(const PolicyState& state, double final_amount) const override;

private:
    double penalty_;
};

}  // namespace gmwb
