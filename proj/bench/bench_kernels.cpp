// Serial reference vs OpenMP kernels. Results are bitwise identical; only
// the wall time differs.

#include <benchmark/benchmark.h>

#include "relcoll/collision_operator.hpp"
#include "relcoll/oracle.hpp"

using namespace relcoll;

namespace {

Execution mode(benchmark::State const& state)
{
    return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void label(benchmark::State& state)
{
    state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}

PhysicsConfig config(int n)
{
    PhysicsConfig cfg;
    cfg.dimension = n;
    return cfg;
}

void sphere_integral_gs(benchmark::State& state)
{
    auto const cfg = config(3);
    auto const p = lift(make_momentum({1.0, 0.5, -0.3}), cfg);
    auto const q = lift(make_momentum({-0.4, 0.2, 0.8}), cfg);
    auto const rule = sphere_rule_split(3, 64);
    auto const g = test_functions::gaussian_post();
    for (auto _ : state) {
        benchmark::DoNotOptimize(sphere_integral(Representation::gs, p, q, CrossSection::constant(),
                                                 g, rule, cfg, mode(state)));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(rule.size()));
    label(state);
}

void operator_bump(benchmark::State& state)
{
    auto const cfg = config(3);
    auto const f = distribution_by_name("gaussian-bump", 3);
    Momentum const p = make_momentum({0.3, 0.1, -0.2});
    auto const sphere = sphere_rule_split(3, 12);
    auto const ball = default_operator_ball(p, cfg, 16, 8);
    auto const rep = state.range(1) == 0 ? Representation::com : Representation::gs;
    for (auto _ : state) {
        benchmark::DoNotOptimize(collision_operator(f, f, p, CrossSection::constant(), rep, sphere,
                                                    ball, cfg, mode(state)));
    }
    state.SetItemsProcessed(state.iterations()
                            * static_cast<std::int64_t>(ball.size() * sphere.size()));
    state.SetLabel(std::string(state.range(0) == 0 ? "serial" : "parallel") + " "
                   + to_string(rep));
}

void oracle_planar(benchmark::State& state)
{
    auto const cfg = config(2);
    auto const p = lift(make_momentum({0.3, 0.0}), cfg);
    auto const q = lift(make_momentum({-0.2, 0.1}), cfg);
    OracleOptions options;
    options.exec = mode(state);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            compare_reductions(p, q, CrossSection::constant(), test_functions::constant(), cfg, options));
    }
    label(state);
}

}  // namespace

BENCHMARK(sphere_integral_gs)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(operator_bump)
    ->Args({0, 0})
    ->Args({1, 0})
    ->Args({0, 1})
    ->Args({1, 1})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();
BENCHMARK(oracle_planar)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
