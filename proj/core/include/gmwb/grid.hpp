#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "gmwb/model.hpp"

namespace gmwb {

// How the upper end of the wealth axis is chosen.
//   diffusion: W0 * clamp(exp(2.25 sigma sqrt(T)), 10, 50)
//   growth:    min(max(5 W0 exp((r + 2 sigma) T), 10 W0), 50 W0)
enum class WealthBound { diffusion, growth };

struct GridConfig {
    int num_wealth_nodes = 401;          // including w = 0
    int nodes_per_contract_amount = 10;  // guarantee levels per contractual amount
    int steps_per_year = 100;
    // Use a wealth spacing that is a whole multiple of the guarantee spacing,
    // so every guarantee level and withdrawal amount falls on a wealth node.
    bool align_wealth_to_guarantee = true;
    // Multiplies the upper wealth bound (far-field sensitivity checks).
    double wealth_max_scale = 1.0;
    WealthBound wealth_bound = WealthBound::diffusion;

    void validate() const;

    // "fast", "paper" or "fine"
    static GridConfig preset(std::string_view name);
};

// Uniform wealth axis starting at 0. The initial wealth is always a node.
class WealthGrid {
public:
    WealthGrid(double spacing, std::size_t intervals);

    std::size_t size() const noexcept { return nodes_.size(); }
    std::size_t intervals() const noexcept { return nodes_.size() - 1; }
    double spacing() const noexcept { return spacing_; }
    double max() const noexcept { return nodes_.back(); }
    double operator[](std::size_t i) const noexcept { return nodes_[i]; }
    std::span<const double> nodes() const noexcept { return nodes_; }

    // Index of the node equal to w (within rounding), or npos.
    std::size_t find_node(double w) const noexcept;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    double spacing_;
    std::vector<double> nodes_;
};

// Uniform guarantee levels 0 = a_0 < ... < a_J = A0 with every multiple of
// the contractual amount on a node.
class GuaranteeGrid {
public:
    GuaranteeGrid(double top, std::size_t intervals, std::size_t nodes_per_amount);

    std::size_t size() const noexcept { return levels_.size(); }
    double spacing() const noexcept { return spacing_; }
    double operator[](std::size_t j) const noexcept { return levels_[j]; }
    std::span<const double> levels() const noexcept { return levels_; }
    std::size_t nodes_per_amount() const noexcept { return nodes_per_amount_; }

    std::size_t find_level(double a) const noexcept;

    // Number of level spacings making up the amount; throws if the amount is
    // not a whole multiple of the spacing.
    std::size_t steps_for(double amount) const;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    double spacing_;
    std::size_t nodes_per_amount_;
    std::vector<double> levels_;
};

// Upper wealth bound before node alignment and scaling.
double wealth_upper_bound(const ContractSpec& spec, const MarketParams& market,
                          WealthBound rule = WealthBound::diffusion);

WealthGrid build_wealth_grid(const ContractSpec& spec, const MarketParams& market,
                             const GridConfig& config);

GuaranteeGrid build_guarantee_grid(const ContractSpec& spec, const GridConfig& config);

// Values at (a_j, w_i), stored level-major so each guarantee level is a
// contiguous row over the wealth grid.
class ValueSurface {
public:
    ValueSurface() = default;
    ValueSurface(std::size_t levels, std::size_t nodes, double fill = 0.0)
        : levels_(levels), nodes_(nodes), values_(levels * nodes, fill) {}

    std::size_t levels() const noexcept { return levels_; }
    std::size_t nodes() const noexcept { return nodes_; }

    std::span<double> row(std::size_t j) noexcept { return {values_.data() + j * nodes_, nodes_}; }
    std::span<const double> row(std::size_t j) const noexcept {
        return {values_.data() + j * nodes_, nodes_};
    }
    double& operator()(std::size_t j, std::size_t i) noexcept { return values_[j * nodes_ + i]; }
    double operator()(std::size_t j, std::size_t i) const noexcept { return values_[j * nodes_ + i]; }

    std::span<const double> values() const noexcept { return values_; }

    // Throws NumericalError at the first non-finite entry.
    void check_finite(const char* what) const;

private:
    std::size_t levels_ = 0;
    std::size_t nodes_ = 0;
    std::vector<double> values_;
};

// Piecewise-linear interpolation of a row sampled on the wealth grid.
// w above the top node is clamped to it; w < 0 or NaN throws.
double interpolate_w(std::span<const double> row, const WealthGrid& grid, double w);

}  // namespace gmwb
