#include <benchmark/benchmark.h>

#include "gmwb/fair_fee.hpp"
#include "gmwb/monte_carlo.hpp"
#include "gmwb/pde.hpp"
#include "gmwb/pricer.hpp"

using namespace gmwb;

namespace {

const MarketParams market{0.05, 0.20};
const FeeSchedule fees{0.01, 0.02};

ContractSpec contract(double maturity) { return build_contract(maturity, 1, 0.10, 1.0, 1.0); }

void bm_crank_nicolson_step(benchmark::State& state) {
    const auto nodes = static_cast<std::size_t>(state.range(0));
    const WealthGrid grid(10.0 / static_cast<double>(nodes - 1), nodes - 1);
    ValueSurface v(11, grid.size());
    for (std::size_t j = 0; j < v.levels(); ++j)
        for (std::size_t i = 0; i < grid.size(); ++i) v(j, i) = grid[i] + 0.1 * static_cast<double>(j);
    for (auto _ : state) {
        auto out = step_value(v, grid, 0.01, market, fees, TimeScheme::crank_nicolson);
        benchmark::DoNotOptimize(out);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(v.levels() * grid.size()));
}
BENCHMARK(bm_crank_nicolson_step)->Arg(201)->Arg(401)->Arg(801);

void bm_apply_event(benchmark::State& state) {
    const auto spec = contract(10.0);
    const auto cfg = GridConfig::preset("paper");
    const auto w = build_wealth_grid(spec, market, cfg);
    const auto a = build_guarantee_grid(spec, cfg);
    EventSurfaces after{ValueSurface(a.size(), w.size()), ValueSurface(a.size(), w.size()), std::nullopt};
    for (std::size_t j = 0; j < a.size(); ++j)
        for (std::size_t i = 0; i < w.size(); ++i) {
            after.value(j, i) = w[i] + a[j];
            after.liability(j, i) = std::max(a[j] - w[i], 0.0);
        }
    const StandardGmwb behavior(spec.penalty);
    for (auto _ : state) {
        auto before = apply_event(after, 1, Strategy::value_max, spec, behavior, w, a);
        benchmark::DoNotOptimize(before);
    }
}
BENCHMARK(bm_apply_event)->Unit(benchmark::kMillisecond);

void bm_price(benchmark::State& state) {
    const auto spec = contract(static_cast<double>(state.range(0)));
    PricingOptions options;
    options.grid = GridConfig::preset("fast");
    for (auto _ : state) benchmark::DoNotOptimize(price(spec, market, fees, Strategy::liability_max, options));
}
BENCHMARK(bm_price)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);

void bm_fair_fee(benchmark::State& state) {
    const auto spec = contract(5.0);
    PricingOptions options;
    options.grid = GridConfig::preset("fast");
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_fair_fee(spec, market, 0.01, Strategy::liability_max, {}, options));
}
BENCHMARK(bm_fair_fee)->Unit(benchmark::kMillisecond);

void bm_monte_carlo(benchmark::State& state) {
    const auto spec = contract(5.0);
    PricingOptions options;
    options.grid = GridConfig::preset("fast");
    options.keep_policy = true;
    const auto policy = extract_policy(price(spec, market, fees, Strategy::static_contractual, options));
    MCSettings mc;
    mc.num_paths = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(simulate(policy, spec, market, fees, mc));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_monte_carlo)->Arg(1 << 16)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
