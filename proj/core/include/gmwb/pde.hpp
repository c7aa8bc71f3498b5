#pragma once

#include <span>
#include <utility>
#include <vector>

#include "gmwb/grid.hpp"
#include "gmwb/model.hpp"

namespace gmwb {

enum class TimeScheme { crank_nicolson, implicit };

// Tridiagonal system: lower[0] and upper[n-1] are ignored.
struct TridiagonalSystem {
    std::vector<double> lower;
    std::vector<double> diagonal;
    std::vector<double> upper;
    std::vector<double> rhs;

    explicit TridiagonalSystem(std::size_t n = 0) : lower(n), diagonal(n), upper(n), rhs(n) {}

    std::size_t size() const noexcept { return diagonal.size(); }
    bool diagonally_dominant() const noexcept;

    // Thomas algorithm; no pivoting, so the matrix must be diagonally dominant.
    std::vector<double> solve() const;
};

// One backward time step of
//     u_t + (r - alpha_tot) w u_w + 1/2 sigma^2 w^2 u_ww - r u + s w = 0
// on every guarantee level, where s is the source rate (0 for the policy
// value, -alpha_ins for the net liability, +alpha_m for management fees).
//
// The diffusion/drift part uses theta-stepping (theta = 1/2 or 1) with central
// differences, switching to one-sided upwinding at nodes where central
// differencing would lose positivity. The -r u term and the linear source are
// integrated exactly, which is possible because the discrete operator maps w
// to (r - alpha_tot) w and commutes with the scalar discount.
// Boundaries: w = 0 carries no diffusion or drift (pure discounting), and
// u_ww = 0 at the top node, where the drift term uses a one-sided difference.
class WealthStepper {
public:
    WealthStepper(const WealthGrid& grid, const MarketParams& market, const FeeSchedule& fees,
                  double dt, TimeScheme scheme);

    double dt() const noexcept { return dt_; }
    TimeScheme scheme() const noexcept { return scheme_; }

    // Advances a single row; scratch must hold at least grid.size() values.
    void step_row(std::span<double> row, double source_rate, std::span<double> scratch) const;
    void step_surface(ValueSurface& surface, double source_rate) const;

    // Rows advanced together, stored interleaved: block[i * block_width + b]
    // is node i of row b. Same arithmetic as step_row, but the independent
    // rows hide the latency of the recurrences.
    static constexpr std::size_t block_width = 8;
    void step_block(std::span<double> block, double source_rate, std::span<double> scratch) const;

private:
    const WealthGrid* grid_;
    double dt_;
    TimeScheme scheme_;
    double explicit_weight_;
    double discount_;
    double source_factor_;
    // spatial operator coefficients
    std::vector<double> op_lower_;
    std::vector<double> op_upper_;
    // forward-eliminated implicit matrix
    std::vector<double> elim_upper_;
    std::vector<double> elim_inv_diag_;
    std::vector<double> elim_lower_;
};

ValueSurface step_value(const ValueSurface& surface, const WealthGrid& grid, double dt,
                        const MarketParams& market, const FeeSchedule& fees, TimeScheme scheme);

ValueSurface step_liability(const ValueSurface& surface, const WealthGrid& grid, double dt,
                            const MarketParams& market, const FeeSchedule& fees, TimeScheme scheme);

struct StepCounts {
    int total = 0;
    int implicit = 0;
};

// Sub-steps used for [t_start, t_end]: ceil(length * steps_per_year).
int sub_steps_for(double t_start, double t_end, int steps_per_year);

// Rolls the post-event surfaces at t_end back to t_start. The first two
// sub-steps are fully implicit (Rannacher start-up), the rest Crank-Nicolson.
// With positive net drift the step count is raised if needed to keep the
// implicit matrix diagonally dominant at the top node.
// `management`, when non-null, is stepped with the +alpha_m w source.
StepCounts solve_between_events(ValueSurface& value, ValueSurface& liability,
                                ValueSurface* management, const WealthGrid& grid,
                                double t_start, double t_end, const MarketParams& market,
                                const FeeSchedule& fees, int steps_per_year);

std::pair<ValueSurface, ValueSurface> solve_between_events(
    ValueSurface value, ValueSurface liability, const WealthGrid& grid, double t_start,
    double t_end, const MarketParams& market, const FeeSchedule& fees, const GridConfig& config);

}  // namespace gmwb
