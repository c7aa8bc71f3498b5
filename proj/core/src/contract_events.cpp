#include "gmwb/contract_events.hpp"

#include <algorithm>
#include <cmath>

#include "gmwb/errors.hpp"

namespace gmwb {

double cash_flow(double gamma, double contractual_amount, double penalty) noexcept {
    return gamma - penalty * std::max(gamma - contractual_amount, 0.0);
}

double insurer_payment(double gamma, double wealth_before, double contractual_amount,
                       double penalty) noexcept {
    return cash_flow(gamma, contractual_amount, penalty) - std::min(wealth_before, gamma);
}

PolicyState apply_withdrawal(const PolicyState& state, double gamma) {
    if (!(gamma >= 0.0)) throw AdmissibilityError("withdrawal must be non-negative");
    if (gamma > state.guarantee)
        throw AdmissibilityError("withdrawal exceeds the guarantee account balance");
    return {std::max(state.wealth - gamma, 0.0), state.guarantee - gamma};
}

double terminal_value(const PolicyState& state, double final_amount, double penalty) noexcept {
    return cash_flow(state.guarantee, final_amount, penalty) +
           std::max(state.wealth - state.guarantee, 0.0);
}

double terminal_liability(const PolicyState& state, double final_amount, double penalty) noexcept {
    return terminal_value(state, final_amount, penalty) - state.wealth;
}

double ContractBehavior::insurer_payment(double gamma, double contractual_amount,
                                         double wealth_before) const {
    return cash_flow(gamma, contractual_amount, wealth_before) - std::min(wealth_before, gamma);
}

double ContractBehavior::terminal_liability(const PolicyState& state, double final_amount) const {
    return liquidation_value(state, final_amount) - state.wealth;
}

double StandardGmwb::cash_flow(double gamma, double contractual_amount, double) const {
    return gmwb::cash_flow(gamma, contractual_amount, penalty_);
}

double StandardGmwb::guarantee_reduction(double gamma, double) const { return gamma; }

double StandardGmwb::liquidation_value(const PolicyState& state, double final_amount) const {
    return gmwb::terminal_value(state, final_amount, penalty_);
}

}  // namespace gmwb
