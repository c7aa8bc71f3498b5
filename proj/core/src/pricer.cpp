#include "gmwb/pricer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "gmwb/errors.hpp"
#include "gmwb/pde.hpp"

namespace gmwb {

std::string_view to_string(Strategy strategy) noexcept {
    switch (strategy) {
        case Strategy::value_max: return "value_max";
        case Strategy::liability_max: return "liability_max";
        case Strategy::static_contractual: return "static_contractual";
    }
    return "unknown";
}

Strategy parse_strategy(std::string_view name) {
    if (name == "value_max" || name == "value") return Strategy::value_max;
    if (name == "liability_max" || name == "liability") return Strategy::liability_max;
    if (name == "static_contractual" || name == "static") return Strategy::static_contractual;
    throw ValidationError("strategy", "unknown strategy '" + std::string(name) + "'");
}

PolicyTable::PolicyTable(WealthGrid wealth, GuaranteeGrid guarantee, std::size_t interior_events)
    : wealth_(std::move(wealth)), guarantee_(std::move(guarantee)) {
    slices_.assign(interior_events, ValueSurface(guarantee_.size(), wealth_.size()));
}

std::vector<double> candidate_withdrawals(double a_level, double contractual_amount,
                                          const GuaranteeGrid& grid) {
    (void)contractual_amount;  // on-grid by construction of the guarantee grid
    const std::size_t j = grid.find_level(a_level);
    if (j == GuaranteeGrid::npos)
        throw ValidationError("a_level", "guarantee level is not a grid node");
    std::vector<double> out;
    out.reserve(j + 1);
    for (std::size_t k = j + 1; k-- > 0;) out.push_back(grid[j] - grid[k]);
    return out;
}

namespace {

// Post-withdrawal wealth w_i - gamma, located on the wealth grid. The offset
// does not depend on i: w_i - gamma sits `frac` of the way from node i - base
// to node i - base + 1, and nodes below `base` are wiped out to w = 0.
struct Shift {
    std::size_t base = 0;
    double frac = 0.0;

    Shift(double gamma, double spacing) {
        const double s = gamma / spacing;
        const double nearest = std::round(s);
        if (std::abs(s - nearest) <= 1e-9 * std::max(1.0, s)) {
            base = static_cast<std::size_t>(nearest);
        } else {
            base = static_cast<std::size_t>(std::ceil(s));
            frac = static_cast<double>(base) - s;
        }
    }

    double operator()(std::span<const double> row, std::size_t i) const noexcept {
        if (i < base) return row[0];
        const std::size_t m = i - base;
        return frac == 0.0 ? row[m] : row[m] + frac * (row[m + 1] - row[m]);
    }
};

}  // namespace

EventSurfaces apply_event(const EventSurfaces& after, std::size_t n, Strategy strategy,
                          const ContractSpec& contract, const ContractBehavior& behavior,
                          const WealthGrid& wealth, const GuaranteeGrid& guarantee,
                          ValueSurface* policy_slice) {
    if (n < 1 || n >= contract.num_events())
        throw ValidationError("n", "interior events are 1..N-1");
    const std::size_t levels = guarantee.size();
    const std::size_t nodes = wealth.size();
    if (after.value.levels() != levels || after.value.nodes() != nodes ||
        after.liability.levels() != levels || after.liability.nodes() != nodes)
        throw ValidationError("surface", "dimensions do not match the grids");

    const double g_n = contract.contractual_amount(n);
    const std::size_t contractual_steps = guarantee.steps_for(g_n);

    // Withdrawal of d level spacings: amount, guarantee level drop, wealth shift.
    std::vector<double> amount(levels);
    std::vector<std::size_t> drop(levels);
    std::vector<Shift> shift;
    shift.reserve(levels);
    for (std::size_t d = 0; d < levels; ++d) {
        amount[d] = guarantee[d];
        const double reduction = behavior.guarantee_reduction(amount[d], g_n);
        const std::size_t steps = guarantee.find_level(reduction);
        if (steps == GuaranteeGrid::npos)
            throw ValidationError("guarantee_reduction", "does not land on a guarantee level");
        drop[d] = steps;
        shift.emplace_back(amount[d], wealth.spacing());
    }
    // Cash flow per (d, wealth node), and the immediate part of the objective.
    std::vector<double> flow(levels * nodes);
    std::vector<double> gain(levels * nodes);
    for (std::size_t d = 0; d < levels; ++d)
        for (std::size_t i = 0; i < nodes; ++i) {
            const double cf = behavior.cash_flow(amount[d], g_n, wealth[i]);
            flow[d * nodes + i] = cf;
            gain[d * nodes + i] =
                strategy == Strategy::liability_max ? cf - std::min(wealth[i], amount[d]) : cf;
        }

    EventSurfaces before{ValueSurface(levels, nodes), ValueSurface(levels, nodes), std::nullopt};
    if (after.management) before.management.emplace(levels, nodes);

    const ValueSurface& objective_surface =
        strategy == Strategy::liability_max ? after.liability : after.value;
    std::vector<double> best_obj(nodes);
    std::vector<std::size_t> best(nodes);

    for (std::size_t j = 0; j < levels; ++j) {
        if (strategy == Strategy::static_contractual) {
            std::size_t d = std::min(contractual_steps, j);
            if (drop[d] > j) d = 0;
            std::fill(best.begin(), best.end(), d);
        } else {
            // Candidates in increasing order; a strict comparison keeps the
            // smallest withdrawal on ties.
            for (std::size_t d = 0; d <= j; ++d) {
                if (drop[d] > j) break;
                const auto row = objective_surface.row(j - drop[d]);
                const double* g = gain.data() + d * nodes;
                const Shift& sh = shift[d];
                for (std::size_t i = 0; i < nodes; ++i) {
                    const double obj = g[i] + sh(row, i);
                    if (d == 0 || obj > best_obj[i]) {
                        best_obj[i] = obj;
                        best[i] = d;
                    }
                }
            }
        }
        for (std::size_t i = 0; i < nodes; ++i) {
            const std::size_t d = best[i];
            const std::size_t k = j - drop[d];
            const double gamma = amount[d];
            const double cf = flow[d * nodes + i];
            before.value(j, i) = cf + shift[d](after.value.row(k), i);
            before.liability(j, i) =
                cf - std::min(wealth[i], gamma) + shift[d](after.liability.row(k), i);
            if (after.management) (*before.management)(j, i) = shift[d](after.management->row(k), i);
            if (policy_slice != nullptr) (*policy_slice)(j, i) = gamma;
        }
    }
    return before;
}

PricingResult price(const ContractSpec& contract, const MarketParams& market,
                    const FeeSchedule& fees, Strategy strategy, const PricingOptions& options) {
    return price(contract, market, fees, strategy, options, StandardGmwb(contract.penalty));
}

PricingResult price(const ContractSpec& contract, const MarketParams& market,
                    const FeeSchedule& fees, Strategy strategy, const PricingOptions& options,
                    const ContractBehavior& behavior) {
    const auto started = std::chrono::steady_clock::now();
    contract.validate();
    market.validate();
    fees.validate();

    const WealthGrid wealth = build_wealth_grid(contract, market, options.grid);
    const GuaranteeGrid guarantee = build_guarantee_grid(contract, options.grid);
    const std::size_t levels = guarantee.size();
    const std::size_t nodes = wealth.size();
    const std::size_t n_events = contract.num_events();

    PricingResult result;
    if (options.keep_policy) result.policy.emplace(wealth, guarantee, n_events - 1);

    EventSurfaces surfaces{ValueSurface(levels, nodes), ValueSurface(levels, nodes), std::nullopt};
    if (options.track_management_fees) surfaces.management.emplace(levels, nodes, 0.0);

    const double final_amount = contract.contractual_amount(n_events);
    for (std::size_t j = 0; j < levels; ++j) {
        for (std::size_t i = 0; i < nodes; ++i) {
            const PolicyState state{wealth[i], guarantee[j]};
            surfaces.value(j, i) = behavior.liquidation_value(state, final_amount);
            surfaces.liability(j, i) = behavior.terminal_liability(state, final_amount);
        }
    }

    for (std::size_t n = n_events; n >= 1; --n) {
        const StepCounts counts = solve_between_events(
            surfaces.value, surfaces.liability,
            surfaces.management ? &*surfaces.management : nullptr, wealth,
            contract.event_time(n - 1), contract.event_time(n), market, fees,
            options.grid.steps_per_year);
        result.diagnostics.sub_steps += counts.total;
        result.diagnostics.implicit_sub_steps += counts.implicit;
        if (n - 1 >= 1) {
            ValueSurface* slice = result.policy ? &result.policy->slice(n - 1) : nullptr;
            surfaces = apply_event(surfaces, n - 1, strategy, contract, behavior, wealth,
                                   guarantee, slice);
        }
    }

    const std::size_t i0 = wealth.find_node(contract.initial_wealth);
    const std::size_t j0 = guarantee.find_level(contract.initial_guarantee);
    if (i0 == WealthGrid::npos || j0 == GuaranteeGrid::npos)
        throw ValidationError("grid", "initial state is not a grid node");

    result.v0 = surfaces.value(j0, i0);
    result.l0 = surfaces.liability(j0, i0);
    result.m0 = result.l0 + contract.initial_wealth - result.v0;
    if (surfaces.management) result.m0_direct = (*surfaces.management)(j0, i0);
    if (!std::isfinite(result.v0) || !std::isfinite(result.l0))
        throw NumericalError("non-finite price", j0, i0);
    if (options.keep_surfaces) {
        result.value_surface = std::move(surfaces.value);
        result.liability_surface = std::move(surfaces.liability);
    }

    result.diagnostics.wealth_nodes = nodes;
    result.diagnostics.guarantee_levels = levels;
    result.diagnostics.wealth_max = wealth.max();
    result.diagnostics.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return result;
}

PolicyTable extract_policy(const PricingResult& result) {
    if (!result.policy) throw ValidationError("policy", "pricing ran without keep_policy");
    return *result.policy;
}

}  // namespace gmwb
