#include <benchmark/benchmark.h>

#include "uq/apc.hpp"
#include "uq/experiments.hpp"
#include "uq/maxent.hpp"
#include "uq/measure.hpp"
#include "uq/surrogate.hpp"

namespace {

void BM_MaxentEval(benchmark::State& state) {
    const uq::MaxentBasis basis(
        uq::NodeSet::uniform(-1.0, 1.0, state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(basis.eval(0.37));
}
BENCHMARK(BM_MaxentEval)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_MaxentEvalNearVertex(benchmark::State& state) {
    const uq::MaxentBasis basis(uq::NodeSet::uniform(-1.0, 1.0, 8));
    for (auto _ : state)
        benchmark::DoNotOptimize(basis.eval(0.999999));
}
BENCHMARK(BM_MaxentEvalNearVertex);

void BM_ApcBuild(benchmark::State& state) {
    const auto measure = uq::example1_measure(500);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            uq::ApcBasis::build(measure, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_ApcBuild)->Arg(4)->Arg(7);

void BM_SurrogateAssembly(benchmark::State& state) {
    const auto measure = uq::example1_measure(500);
    const uq::MaxentBasis basis(
        uq::NodeSet::uniform(-1.0, 1.0, state.range(0)));
    const auto ode = uq::LinearStochasticOde::scalar(uq::example1_coefficient,
                                                     1.0, 0.0, 30.0, 0.01);
    for (auto _ : state)
        benchmark::DoNotOptimize(uq::build_surrogate(ode, basis, measure));
}
BENCHMARK(BM_SurrogateAssembly)->Arg(4)->Arg(8);

void BM_Integrate(benchmark::State& state) {
    const auto measure = uq::example1_measure(500);
    const uq::MaxentBasis basis(uq::NodeSet::uniform(-1.0, 1.0, 8));
    const auto ode = uq::LinearStochasticOde::scalar(uq::example1_coefficient,
                                                     1.0, 0.0, 30.0, 0.01);
    const uq::Surrogate s = uq::build_surrogate(ode, basis, measure);
    for (auto _ : state)
        benchmark::DoNotOptimize(uq::integrate(s, 0.0, 30.0, 0.01));
}
BENCHMARK(BM_Integrate);

void BM_MomentRecovery(benchmark::State& state) {
    const auto measure = uq::example1_measure(500);
    const uq::MaxentBasis basis(uq::NodeSet::uniform(-1.0, 1.0, 8));
    const auto ode = uq::LinearStochasticOde::scalar(uq::example1_coefficient,
                                                     1.0, 0.0, 30.0, 0.01);
    const uq::Surrogate s = uq::build_surrogate(ode, basis, measure);
    const uq::Trajectory traj = uq::integrate(s, 0.0, 30.0, 0.01);
    for (auto _ : state)
        benchmark::DoNotOptimize(uq::moments(traj, s.stats, 1));
}
BENCHMARK(BM_MomentRecovery);

} // namespace

BENCHMARK_MAIN();
