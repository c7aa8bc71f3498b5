#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "gmwb/contract_events.hpp"
#include "gmwb/grid.hpp"
#include "gmwb/model.hpp"

namespace gmwb {

enum class Strategy {
    value_max,           // maximize policyholder cash flow plus continuation value
    liability_max,       // maximize insurer payment plus continuation liability
    static_contractual,  // always withdraw min(G_n, A)
};

std::string_view to_string(Strategy strategy) noexcept;
Strategy parse_strategy(std::string_view name);

// Withdrawal chosen at every (guarantee level, wealth node) for each interior
// event date n = 1..N-1.
class PolicyTable {
public:
    PolicyTable(WealthGrid wealth, GuaranteeGrid guarantee, std::size_t interior_events);

    const WealthGrid& wealth_grid() const noexcept { return wealth_; }
    const GuaranteeGrid& guarantee_grid() const noexcept { return guarantee_; }
    std::size_t interior_events() const noexcept { return slices_.size(); }

    ValueSurface& slice(std::size_t n) { return slices_.at(n - 1); }
    const ValueSurface& slice(std::size_t n) const { return slices_.at(n - 1); }
    double gamma(std::size_t n, std::size_t level, std::size_t node) const {
        return slices_.at(n - 1)(level, node);
    }

private:
    WealthGrid wealth_;
    GuaranteeGrid guarantee_;
    std::vector<ValueSurface> slices_;
};

struct PricingOptions {
    GridConfig grid;
    // Also roll back a surface that accumulates management fees directly.
    bool track_management_fees = false;
    bool keep_policy = false;
    bool keep_surfaces = false;
};

struct PricingDiagnostics {
    std::size_t wealth_nodes = 0;
    std::size_t guarantee_levels = 0;
    double wealth_max = 0.0;
    int sub_steps = 0;
    int implicit_sub_steps = 0;
    double wall_seconds = 0.0;
};

struct PricingResult {
    double v0 = 0.0;
    double l0 = 0.0;
    double m0 = 0.0;  // l0 + W0 - v0
    std::optional<double> m0_direct;
    std::optional<PolicyTable> policy;
    std::optional<ValueSurface> value_surface;      // V(0, ., .)
    std::optional<ValueSurface> liability_surface;  // L(0, ., .)
    PricingDiagnostics diagnostics;
};

// All gamma = a_level - a_k over levels a_k <= a_level, ascending.
std::vector<double> candidate_withdrawals(double a_level, double contractual_amount,
                                          const GuaranteeGrid& grid);

struct EventSurfaces {
    ValueSurface value;
    ValueSurface liability;
    std::optional<ValueSurface> management;
};

// Jump conditions at interior event n: picks gamma* per node for the strategy
// and applies it to every surface. Inputs are the post-withdrawal functions
// at t_n; the returned surfaces hold the values just before t_n. Ties go to
// the smallest withdrawal.
EventSurfaces apply_event(const EventSurfaces& after, std::size_t n, Strategy strategy,
                          const ContractSpec& contract, const ContractBehavior& behavior,
                          const WealthGrid& wealth, const GuaranteeGrid& guarantee,
                          ValueSurface* policy_slice = nullptr);

PricingResult price(const ContractSpec& contract, const MarketParams& market,
                    const FeeSchedule& fees, Strategy strategy, const PricingOptions& options);

PricingResult price(const ContractSpec& contract, const MarketParams& market,
                    const FeeSchedule& fees, Strategy strategy, const PricingOptions& options,
                    const ContractBehavior& behavior);

// Copy of the frozen withdrawal decisions; requires keep_policy.
PolicyTable extract_policy(const PricingResult& result);

}  // namespace gmwb
