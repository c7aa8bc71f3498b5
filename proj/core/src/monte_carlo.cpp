#include "gmwb/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <thread>
#include <vector>

#include "gmwb/errors.hpp"

namespace gmwb {

void MCSettings::validate() const {
    if (num_paths < 2) throw ValidationError("num_paths", "need at least two paths");
    if (antithetic && num_paths % 2 != 0) throw ValidationError("num_paths", "must be even with antithetic pairs");
    if (sub_steps_per_year < 1) throw ValidationError("sub_steps_per_year", "must be positive");
    if (workers < 1) throw ValidationError("workers", "must be positive");
}

namespace {

// SplitMix64 keyed by (seed, stream); stream = path or antithetic-pair index.
class StreamRandom {
public:
    using result_type = std::uint64_t;

    StreamRandom(std::uint64_t seed, std::uint64_t stream)
        : state_(mix(seed ^ mix(stream + 0x632be59bd9b4e019ULL))) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept { return mix(state_ += 0x9e3779b97f4a7c15ULL); }

private:
    static std::uint64_t mix(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

struct PathOutcome {
    double value = 0.0;
    double liability = 0.0;
    double management = 0.0;
    double insurance = 0.0;
    double terminal_wealth = 0.0;
};

// Compensated running sums of a sample and its square.
struct KahanMoments {
    double sum = 0.0, sum_c = 0.0;
    double sq = 0.0, sq_c = 0.0;

    static void add(double& s, double& c, double x) noexcept {
        const double y = x - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    void push(double x) noexcept {
        add(sum, sum_c, x);
        add(sq, sq_c, x * x);
    }
    void merge(const KahanMoments& o) noexcept {
        add(sum, sum_c, o.sum - o.sum_c);
        add(sq, sq_c, o.sq - o.sq_c);
    }
};

struct BatchMoments {
    KahanMoments value, liability, management, insurance, terminal_wealth;
};

MCEstimate finish(const KahanMoments& m, std::size_t samples, std::size_t paths) {
    const double n = static_cast<double>(samples);
    const double mean = m.sum / n;
    const double var = std::max(0.0, (m.sq - n * mean * mean) / (n - 1.0));
    return {mean, std::sqrt(var / n), paths};
}

class PathSimulator {
public:
    PathSimulator(const PolicyTable& policy, const ContractSpec& contract, const MarketParams& market,
                  const FeeSchedule& fees, const MCSettings& settings, const ContractBehavior& behavior)
        : policy_(policy), contract_(contract), market_(market), fees_(fees), behavior_(behavior) {
        const double half_var = 0.5 * market.sigma * market.sigma;
        for (std::size_t n = 1; n <= contract.num_events(); ++n) {
            const double t0 = contract.event_time(n - 1);
            const double t1 = contract.event_time(n);
            const int steps = std::max(1, static_cast<int>(std::ceil((t1 - t0) * settings.sub_steps_per_year - 1e-9)));
            const double dt = (t1 - t0) / steps;
            intervals_.push_back({steps, dt, (market.r - fees.alpha_tot() - half_var) * dt,
                                  (market.r - half_var) * dt, market.sigma * std::sqrt(dt),
                                  std::exp(-market.r * dt)});
        }
    }

    // Runs one path per sign in `signs` on shared normals.
    template <std::size_t K>
    void run(StreamRandom& rng, const double (&signs)[K], PathOutcome (&out)[K]) const {
        std::normal_distribution<double> normal;
        MCPathState state[K];
        for (std::size_t k = 0; k < K; ++k) {
            state[k].wealth = contract_.initial_wealth;
            state[k].guarantee = contract_.initial_guarantee;
            out[k] = PathOutcome{};
        }
        double value[K] = {}, paid[K] = {}, mgmt[K] = {};
        const std::size_t events = contract_.num_events();
        for (std::size_t n = 1; n <= events; ++n) {
            const Interval& iv = intervals_[n - 1];
            for (int s = 0; s < iv.steps; ++s) {
                const double z = normal(rng);
                for (std::size_t k = 0; k < K; ++k) {
                    MCPathState& st = state[k];
                    const double before = st.discount * st.wealth;
                    const double shock = iv.vol * signs[k] * z;
                    st.wealth *= std::exp(iv.wealth_drift + shock);
                    st.index *= std::exp(iv.index_drift + shock);
                    st.discount *= iv.discount;
                    const double area = 0.5 * (before + st.discount * st.wealth) * iv.dt;
                    st.fee_income_pv += fees_.alpha_ins * area;
                    mgmt[k] += fees_.alpha_m * area;
                }
            }
            const double g_n = contract_.contractual_amount(n);
            for (std::size_t k = 0; k < K; ++k) {
                MCPathState& st = state[k];
                const PolicyState pre{st.wealth, st.guarantee};
                if (n < events) {
                    const double gamma = lookup_withdrawal(policy_, n, pre.wealth, pre.guarantee);
                    const double cf = behavior_.cash_flow(gamma, g_n, pre.wealth);
                    value[k] += st.discount * cf;
                    paid[k] += st.discount * (cf - std::min(pre.wealth, gamma));
                    const double reduction = behavior_.guarantee_reduction(gamma, g_n);
                    st.wealth = std::max(pre.wealth - gamma, 0.0);
                    st.guarantee = std::max(pre.guarantee - reduction, 0.0);
                } else {
                    const double liquidation = behavior_.liquidation_value(pre, g_n);
                    out[k].terminal_wealth = st.discount * pre.wealth;
                    value[k] += st.discount * liquidation;
                    paid[k] += st.discount * (liquidation - pre.wealth);
                }
            }
        }
        for (std::size_t k = 0; k < K; ++k) {
            out[k].value = value[k];
            out[k].liability = paid[k] - state[k].fee_income_pv;
            out[k].management = mgmt[k];
            out[k].insurance = state[k].fee_income_pv;
        }
    }

private:
    struct Interval {
        int steps;
        double dt;
        double wealth_drift;
        double index_drift;
        double vol;
        double discount;
    };

    const PolicyTable& policy_;
    const ContractSpec& contract_;
    const MarketParams& market_;
    const FeeSchedule& fees_;
    const ContractBehavior& behavior_;
    std::vector<Interval> intervals_;
};

constexpr std::size_t kBatch = 2048;

}  // namespace

double lookup_withdrawal(const PolicyTable& policy, std::size_t n, double wealth, double guarantee) {
    const ValueSurface& slice = policy.slice(n);
    const WealthGrid& wg = policy.wealth_grid();
    const GuaranteeGrid& gg = policy.guarantee_grid();

    const double x = std::clamp(wealth / wg.spacing(), 0.0, static_cast<double>(wg.intervals()));
    const double y = std::clamp(guarantee / gg.spacing(), 0.0, static_cast<double>(gg.size() - 1));
    const auto i0 = std::min(static_cast<std::size_t>(x), wg.intervals() - 1);
    const auto j0 = std::min(static_cast<std::size_t>(y), gg.size() - 2);
    const double fx = x - static_cast<double>(i0);
    const double fy = y - static_cast<double>(j0);
    const double lower = slice(j0, i0) + fx * (slice(j0, i0 + 1) - slice(j0, i0));
    const double upper = slice(j0 + 1, i0) + fx * (slice(j0 + 1, i0 + 1) - slice(j0 + 1, i0));
    const double gamma = lower + fy * (upper - lower);

    // snap to the nearest guarantee-aligned amount within [0, A]
    const double level = std::round(y);
    const double steps = std::clamp(std::round(gamma / gg.spacing()), 0.0, level);
    const auto j = static_cast<std::size_t>(level);
    return gg[j] - gg[j - static_cast<std::size_t>(steps)];
}

MCResult simulate(const PolicyTable& policy, const ContractSpec& contract,
                  const MarketParams& market, const FeeSchedule& fees, const MCSettings& settings) {
    return simulate(policy, contract, market, fees, settings, StandardGmwb(contract.penalty));
}

MCResult simulate(const PolicyTable& policy, const ContractSpec& contract,
                  const MarketParams& market, const FeeSchedule& fees, const MCSettings& settings,
                  const ContractBehavior& behavior) {
    settings.validate();
    contract.validate();
    market.validate();
    if (policy.interior_events() + 1 != contract.num_events())
        throw ConfigError("policy table does not match the contract's event count");
    if (std::abs(policy.guarantee_grid()[policy.guarantee_grid().size() - 1] - contract.initial_guarantee) > 1e-12)
        throw ConfigError("policy table guarantee grid does not match the contract");

    const PathSimulator sim(policy, contract, market, fees, settings, behavior);
    const std::size_t samples = settings.antithetic ? settings.num_paths / 2 : settings.num_paths;
    const std::size_t batches = (samples + kBatch - 1) / kBatch;
    std::vector<BatchMoments> moments(batches);

    auto run_batch = [&](std::size_t b) {
        BatchMoments& bm = moments[b];
        const std::size_t end = std::min(samples, (b + 1) * kBatch);
        for (std::size_t s = b * kBatch; s < end; ++s) {
            StreamRandom rng(settings.seed, s);
            PathOutcome o;
            if (settings.antithetic) {
                static constexpr double signs[2] = {1.0, -1.0};
                PathOutcome pair[2];
                sim.run(rng, signs, pair);
                o.value = 0.5 * (pair[0].value + pair[1].value);
                o.liability = 0.5 * (pair[0].liability + pair[1].liability);
                o.management = 0.5 * (pair[0].management + pair[1].management);
                o.insurance = 0.5 * (pair[0].insurance + pair[1].insurance);
                o.terminal_wealth = 0.5 * (pair[0].terminal_wealth + pair[1].terminal_wealth);
            } else {
                static constexpr double signs[1] = {1.0};
                PathOutcome single[1];
                sim.run(rng, signs, single);
                o = single[0];
            }
            bm.value.push(o.value);
            bm.liability.push(o.liability);
            bm.management.push(o.management);
            bm.insurance.push(o.insurance);
            bm.terminal_wealth.push(o.terminal_wealth);
        }
    };

    const auto workers = static_cast<std::size_t>(std::min<std::size_t>(settings.workers, batches));
    if (workers <= 1) {
        for (std::size_t b = 0; b < batches; ++b) run_batch(b);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t b = next++; b < batches; b = next++) run_batch(b);
            });
        for (auto& t : pool) t.join();
    }

    BatchMoments total;
    for (const auto& bm : moments) {
        total.value.merge(bm.value);
        total.liability.merge(bm.liability);
        total.management.merge(bm.management);
        total.insurance.merge(bm.insurance);
        total.terminal_wealth.merge(bm.terminal_wealth);
    }
    const std::size_t paths = settings.num_paths;
    return {finish(total.value, samples, paths), finish(total.liability, samples, paths),
            finish(total.management, samples, paths), finish(total.insurance, samples, paths),
            finish(total.terminal_wealth, samples, paths)};
}

}  // namespace gmwb
