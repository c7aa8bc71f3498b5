#include "gmwb/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gmwb/errors.hpp"

namespace gmwb {

void GridConfig::validate() const {
    if (num_wealth_nodes < 51) throw ValidationError("num_wealth_nodes", "need at least 50 intervals");
    if (nodes_per_contract_amount < 1)
        throw ValidationError("nodes_per_contract_amount", "must be at least 1");
    if (steps_per_year < 1) throw ValidationError("steps_per_year", "must be at least 1");
    if (!(wealth_max_scale > 0.0)) throw ValidationError("wealth_max_scale", "must be positive");
}

GridConfig GridConfig::preset(std::string_view name) {
    if (name == "fast") return {201, 5, 50, true, 1.0};
    if (name == "paper") return {401, 10, 100, true, 1.0};
    if (name == "fine") return {801, 20, 200, true, 1.0};
    throw ValidationError("grid_preset", "unknown preset '" + std::string(name) + "'");
}

WealthGrid::WealthGrid(double spacing, std::size_t intervals) : spacing_(spacing) {
    if (!(spacing > 0.0)) throw ValidationError("wealth_spacing", "must be positive");
    if (intervals < 1) throw ValidationError("num_wealth_nodes", "need at least one interval");
    nodes_.resize(intervals + 1);
    for (std::size_t i = 0; i <= intervals; ++i) nodes_[i] = static_cast<double>(i) * spacing;
}

std::size_t WealthGrid::find_node(double w) const noexcept {
    if (!(w >= 0.0)) return npos;
    const double k = std::round(w / spacing_);
    if (k > static_cast<double>(intervals())) return npos;
    const auto i = static_cast<std::size_t>(k);
    return std::abs(nodes_[i] - w) <= 1e-12 * std::max(1.0, w) ? i : npos;
}

GuaranteeGrid::GuaranteeGrid(double top, std::size_t intervals, std::size_t nodes_per_amount)
    : spacing_(top / static_cast<double>(intervals)), nodes_per_amount_(nodes_per_amount) {
    if (!(top > 0.0)) throw ValidationError("initial_guarantee", "must be positive");
    levels_.resize(intervals + 1);
    for (std::size_t j = 0; j <= intervals; ++j) levels_[j] = static_cast<double>(j) * spacing_;
    levels_.back() = top;
}

std::size_t GuaranteeGrid::find_level(double a) const noexcept {
    if (!(a >= 0.0)) return npos;
    const double k = std::round(a / spacing_);
    if (k > static_cast<double>(levels_.size() - 1)) return npos;
    const auto j = static_cast<std::size_t>(k);
    return std::abs(levels_[j] - a) <= 1e-9 * spacing_ ? j : npos;
}

std::size_t GuaranteeGrid::steps_for(double amount) const {
    const double k = std::round(amount / spacing_);
    if (amount < 0.0 || std::abs(k * spacing_ - amount) > 1e-9 * spacing_)
        throw ValidationError("contractual_amounts", "not a multiple of the guarantee spacing");
    return static_cast<std::size_t>(k);
}

double wealth_upper_bound(const ContractSpec& spec, const MarketParams& market,
                          WealthBound rule) {
    const double w0 = spec.initial_wealth;
    if (rule == WealthBound::diffusion) {
        // Roughly 2.25 standard deviations of log-wealth above W0; the
        // withdrawals and fees only pull wealth down from there.
        const double spread = std::exp(2.25 * market.sigma * std::sqrt(spec.maturity));
        return w0 * std::clamp(spread, 10.0, 50.0);
    }
    const double grown = 5.0 * w0 * std::exp((market.r + 2.0 * market.sigma) * spec.maturity);
    return std::min(std::max(grown, 10.0 * w0), 50.0 * w0);
}

WealthGrid build_wealth_grid(const ContractSpec& spec, const MarketParams& market,
                             const GridConfig& config) {
    config.validate();
    const auto intervals = static_cast<std::size_t>(config.num_wealth_nodes - 1);
    const double w_max = config.wealth_max_scale * wealth_upper_bound(spec, market, config.wealth_bound);
    const double raw = w_max / static_cast<double>(intervals);

    if (config.align_wealth_to_guarantee) {
        // Multiple m of the guarantee spacing closest (in ratio) to the raw
        // spacing, restricted to those that keep W0 on a node.
        const std::size_t units =
            spec.num_events() * static_cast<std::size_t>(config.nodes_per_contract_amount);
        const double unit = spec.initial_guarantee / static_cast<double>(units);
        double best = 0.0;
        double best_gap = 0.0;
        const auto limit = static_cast<std::size_t>(std::ceil(2.0 * raw / unit)) + 1;
        for (std::size_t m = 1; m <= limit; ++m) {
            const double h = static_cast<double>(m) * unit;
            const double steps = spec.initial_wealth / h;
            if (std::abs(steps - std::round(steps)) > 1e-9 * steps) continue;
            const double gap = std::abs(std::log(h / raw));
            if (best == 0.0 || gap < best_gap) {
                best = h;
                best_gap = gap;
            }
        }
        if (best > 0.0) return WealthGrid(best, intervals);
    }

    // Otherwise shrink the spacing slightly so W0 falls exactly on a node.
    const double steps_to_w0 = std::max(1.0, std::round(spec.initial_wealth / raw));
    return WealthGrid(spec.initial_wealth / steps_to_w0, intervals);
}

GuaranteeGrid build_guarantee_grid(const ContractSpec& spec, const GridConfig& config) {
    config.validate();
    const double g = spec.contractual_amounts.front();
    for (double gn : spec.contractual_amounts)
        if (std::abs(gn - g) > 1e-12 * std::max(1.0, g))
            throw ValidationError("contractual_amounts", "guarantee grid requires equal amounts");
    const double per_amount = spec.initial_guarantee / g;
    const double rounded = std::round(per_amount);
    if (!(g > 0.0) || std::abs(per_amount - rounded) > 1e-9)
        throw ValidationError("contractual_amounts", "must divide the initial guarantee");
    const auto k = static_cast<std::size_t>(config.nodes_per_contract_amount);
    return GuaranteeGrid(spec.initial_guarantee, static_cast<std::size_t>(rounded) * k, k);
}

void ValueSurface::check_finite(const char* what) const {
    for (std::size_t idx = 0; idx < values_.size(); ++idx)
        if (!std::isfinite(values_[idx]))
            throw NumericalError(std::string("non-finite ") + what, idx / nodes_, idx % nodes_);
}

double interpolate_w(std::span<const double> row, const WealthGrid& grid, double w) {
    if (std::isnan(w)) throw ValidationError("w", "NaN wealth in interpolation");
    if (w < 0.0) throw ValidationError("w", "negative wealth in interpolation");
    const std::size_t last = grid.intervals();
    const double x = w / grid.spacing();
    if (x >= static_cast<double>(last)) return row[last];
    const double nearest = std::round(x);
    if (std::abs(x - nearest) <= 1e-12 * std::max(1.0, x)) return row[static_cast<std::size_t>(nearest)];
    const auto i = static_cast<std::size_t>(x);
    const double frac = x - static_cast<double>(i);
    return row[i] + frac * (row[i + 1] - row[i]);
}

}  // namespace gmwb
