#include "gmwb/pde.hpp"

#include <algorithm>
#include <cmath>

#include "gmwb/errors.hpp"

namespace gmwb {

bool TridiagonalSystem::diagonally_dominant() const noexcept {
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) {
        const double off = (i > 0 ? std::abs(lower[i]) : 0.0) + (i + 1 < n ? std::abs(upper[i]) : 0.0);
        if (std::abs(diagonal[i]) < off) return false;
    }
    return true;
}

std::vector<double> TridiagonalSystem::solve() const {
    const std::size_t n = size();
    std::vector<double> c(n), x(n);
    if (n == 0) return x;
    double denom = diagonal[0];
    c[0] = n > 1 ? upper[0] / denom : 0.0;
    x[0] = rhs[0] / denom;
    for (std::size_t i = 1; i < n; ++i) {
        denom = diagonal[i] - lower[i] * c[i - 1];
        c[i] = i + 1 < n ? upper[i] / denom : 0.0;
        x[i] = (rhs[i] - lower[i] * x[i - 1]) / denom;
    }
    for (std::size_t i = n - 1; i-- > 0;) x[i] -= c[i] * x[i + 1];
    return x;
}

WealthStepper::WealthStepper(const WealthGrid& grid, const MarketParams& market,
                             const FeeSchedule& fees, double dt, TimeScheme scheme)
    : grid_(&grid), dt_(dt), scheme_(scheme) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("dt", "must be positive");
    const double theta = scheme == TimeScheme::crank_nicolson ? 0.5 : 1.0;
    explicit_weight_ = (1.0 - theta) * dt;
    discount_ = std::exp(-market.r * dt);
    const double alpha_tot = fees.alpha_tot();
    source_factor_ = alpha_tot == 0.0 ? dt : -std::expm1(-alpha_tot * dt) / alpha_tot;

    const std::size_t n = grid.size();
    const std::size_t top = n - 1;
    const double h = grid.spacing();
    const double drift = market.r - alpha_tot;
    const double half_var = 0.5 * market.sigma * market.sigma;

    op_lower_.assign(n, 0.0);
    op_upper_.assign(n, 0.0);
    for (std::size_t i = 1; i < top; ++i) {
        const double w = grid[i];
        const double diff = half_var * w * w / (h * h);
        const double conv = drift * w / h;
        double lo = diff - 0.5 * conv;
        double up = diff + 0.5 * conv;
        if (lo < 0.0 || up < 0.0) {
            lo = diff + std::max(-conv, 0.0);
            up = diff + std::max(conv, 0.0);
        }
        op_lower_[i] = lo;
        op_upper_[i] = up;
    }

    // Top node: the equation with the second derivative dropped and a
    // one-sided first derivative, u_t + (r - alpha_tot) w (u_I - u_{I-1}) / h = 0.
    op_lower_[top] = -drift * grid[top] / h;
    op_upper_[top] = 0.0;

    const std::size_t m = n;
    TridiagonalSystem sys(m);
    sys.diagonal[0] = 1.0;
    for (std::size_t i = 1; i < m; ++i) {
        sys.lower[i] = -theta * dt * op_lower_[i];
        sys.upper[i] = -theta * dt * op_upper_[i];
        sys.diagonal[i] = 1.0 + theta * dt * (op_lower_[i] + op_upper_[i]);
    }
    if (!sys.diagonally_dominant())
        throw ValidationError("dt", "time step too large for the top boundary row at this drift");

    elim_lower_ = sys.lower;
    elim_upper_.assign(m, 0.0);
    elim_inv_diag_.assign(m, 0.0);
    double denom = sys.diagonal[0];
    elim_inv_diag_[0] = 1.0 / denom;
    elim_upper_[0] = m > 1 ? sys.upper[0] / denom : 0.0;
    for (std::size_t i = 1; i < m; ++i) {
        denom = sys.diagonal[i] - sys.lower[i] * elim_upper_[i - 1];
        elim_inv_diag_[i] = 1.0 / denom;
        elim_upper_[i] = sys.upper[i] / denom;
    }
}

void WealthStepper::step_row(std::span<double> row, double source_rate,
                             std::span<double> scratch) const {
    const std::size_t n = row.size();
    const std::size_t top = n - 1;
    double* rhs = scratch.data();

    rhs[0] = row[0];
    for (std::size_t i = 1; i < top; ++i) {
        const double lo = op_lower_[i];
        const double up = op_upper_[i];
        rhs[i] = row[i] + explicit_weight_ * (lo * row[i - 1] - (lo + up) * row[i] + up * row[i + 1]);
    }
    rhs[top] = row[top] + explicit_weight_ * op_lower_[top] * (row[top - 1] - row[top]);

    // forward sweep then back substitution
    rhs[0] *= elim_inv_diag_[0];
    for (std::size_t i = 1; i < n; ++i)
        rhs[i] = (rhs[i] - elim_lower_[i] * rhs[i - 1]) * elim_inv_diag_[i];
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= elim_upper_[i] * rhs[i + 1];

    for (std::size_t i = 0; i < n; ++i) row[i] = discount_ * rhs[i];

    if (source_rate != 0.0) {
        const double scale = source_rate * source_factor_;
        const auto nodes = grid_->nodes();
        for (std::size_t i = 1; i < n; ++i) row[i] += scale * nodes[i];
    }
}

void WealthStepper::step_block(std::span<double> block, double source_rate,
                               std::span<double> scratch) const {
    constexpr std::size_t B = block_width;
    const std::size_t n = block.size() / B;
    const std::size_t top = n - 1;
    double* x = block.data();
    double* rhs = scratch.data();

    for (std::size_t b = 0; b < B; ++b) rhs[b] = x[b];
    for (std::size_t i = 1; i < top; ++i) {
        const double lo = op_lower_[i];
        const double up = op_upper_[i];
        const double* xm = x + (i - 1) * B;
        const double* xi = x + i * B;
        const double* xp = x + (i + 1) * B;
        double* ri = rhs + i * B;
        for (std::size_t b = 0; b < B; ++b)
            ri[b] = xi[b] + explicit_weight_ * (lo * xm[b] - (lo + up) * xi[b] + up * xp[b]);
    }
    for (std::size_t b = 0; b < B; ++b) {
        const double xt = x[top * B + b];
        rhs[top * B + b] = xt + explicit_weight_ * op_lower_[top] * (x[(top - 1) * B + b] - xt);
    }

    for (std::size_t b = 0; b < B; ++b) rhs[b] *= elim_inv_diag_[0];
    for (std::size_t i = 1; i < n; ++i) {
        const double el = elim_lower_[i];
        const double inv = elim_inv_diag_[i];
        for (std::size_t b = 0; b < B; ++b)
            rhs[i * B + b] = (rhs[i * B + b] - el * rhs[(i - 1) * B + b]) * inv;
    }
    for (std::size_t i = n - 1; i-- > 0;) {
        const double eu = elim_upper_[i];
        for (std::size_t b = 0; b < B; ++b) rhs[i * B + b] -= eu * rhs[(i + 1) * B + b];
    }

    for (std::size_t k = 0; k < n * B; ++k) x[k] = discount_ * rhs[k];

    if (source_rate != 0.0) {
        const double scale = source_rate * source_factor_;
        const auto nodes = grid_->nodes();
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t b = 0; b < B; ++b) x[i * B + b] += scale * nodes[i];
    }
}

void WealthStepper::step_surface(ValueSurface& surface, double source_rate) const {
    std::vector<double> scratch(surface.nodes());
    for (std::size_t j = 0; j < surface.levels(); ++j) step_row(surface.row(j), source_rate, scratch);
}

namespace {

ValueSurface step_with_source(const ValueSurface& surface, const WealthGrid& grid, double dt,
                              const MarketParams& market, const FeeSchedule& fees,
                              TimeScheme scheme, double source_rate) {
    if (surface.nodes() != grid.size())
        throw ValidationError("surface", "node count does not match the wealth grid");
    ValueSurface out = surface;
    WealthStepper(grid, market, fees, dt, scheme).step_surface(out, source_rate);
    out.check_finite("value after time step");
    return out;
}

}  // namespace

ValueSurface step_value(const ValueSurface& surface, const WealthGrid& grid, double dt,
                        const MarketParams& market, const FeeSchedule& fees, TimeScheme scheme) {
    return step_with_source(surface, grid, dt, market, fees, scheme, 0.0);
}

ValueSurface step_liability(const ValueSurface& surface, const WealthGrid& grid, double dt,
                            const MarketParams& market, const FeeSchedule& fees, TimeScheme scheme) {
    return step_with_source(surface, grid, dt, market, fees, scheme, -fees.alpha_ins);
}

int sub_steps_for(double t_start, double t_end, int steps_per_year) {
    const double raw = (t_end - t_start) * steps_per_year;
    if (raw <= 0.0) return 0;
    // tolerate rounding in t_end - t_start
    return static_cast<int>(std::ceil(raw - 1e-9));
}

StepCounts solve_between_events(ValueSurface& value, ValueSurface& liability,
                                ValueSurface* management, const WealthGrid& grid,
                                double t_start, double t_end, const MarketParams& market,
                                const FeeSchedule& fees, int steps_per_year) {
    if (t_end < t_start) throw ValidationError("t_end", "must not precede t_start");
    StepCounts counts;
    int steps = sub_steps_for(t_start, t_end, steps_per_year);
    if (steps == 0) return counts;
    // Positive drift makes the top boundary row lose diagonal dominance once
    // dt * drift * intervals exceeds 1/2; refine the step in that case.
    const double drift = market.r - fees.alpha_tot();
    if (drift > 0.0) {
        const double limit = (t_end - t_start) * drift * static_cast<double>(grid.intervals()) / 0.45;
        steps = std::max(steps, static_cast<int>(std::ceil(limit)));
    }
    const double dt = (t_end - t_start) / steps;
    const int implicit_steps = std::min(steps, 2);

    const WealthStepper implicit(grid, market, fees, dt, TimeScheme::implicit);
    const WealthStepper crank(grid, market, fees, dt, TimeScheme::crank_nicolson);
    const std::size_t n = grid.size();
    constexpr std::size_t width = WealthStepper::block_width;
    std::vector<double> scratch(n * width);
    std::vector<double> block(n * width);

    // Levels are independent; each one is advanced through the whole interval,
    // `width` levels at a time where possible.
    auto advance = [&](ValueSurface& surface, double source_rate) {
        const std::size_t levels = surface.levels();
        std::size_t j = 0;
        for (; j + width <= levels; j += width) {
            for (std::size_t b = 0; b < width; ++b) {
                const auto row = surface.row(j + b);
                for (std::size_t i = 0; i < n; ++i) block[i * width + b] = row[i];
            }
            for (int k = 0; k < steps; ++k)
                (k < implicit_steps ? implicit : crank).step_block(block, source_rate, scratch);
            for (std::size_t b = 0; b < width; ++b) {
                auto row = surface.row(j + b);
                for (std::size_t i = 0; i < n; ++i) row[i] = block[i * width + b];
            }
        }
        for (; j < levels; ++j) {
            auto row = surface.row(j);
            for (int k = 0; k < steps; ++k)
                (k < implicit_steps ? implicit : crank).step_row(row, source_rate, scratch);
        }
    };
    advance(value, 0.0);
    advance(liability, -fees.alpha_ins);
    if (management != nullptr) advance(*management, fees.alpha_m);

    value.check_finite("policy value");
    liability.check_finite("net liability");
    if (management != nullptr) management->check_finite("management fee value");
    counts.total = steps;
    counts.implicit = implicit_steps;
    return counts;
}

std::pair<ValueSurface, ValueSurface> solve_between_events(
    ValueSurface value, ValueSurface liability, const WealthGrid& grid, double t_start,
    double t_end, const MarketParams& market, const FeeSchedule& fees, const GridConfig& config) {
    solve_between_events(value, liability, nullptr, grid, t_start, t_end, market, fees,
                         config.steps_per_year);
    return {std::move(value), std::move(liability)};
}

}  // namespace gmwb
