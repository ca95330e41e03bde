#include <numbers>

#include <benchmark/benchmark.h>

#include "cdw/chain_evolver.hpp"
#include "cdw/sine_gordon.hpp"
#include "cdw/tunneling.hpp"
#include "cdw/variational.hpp"

namespace {

using namespace cdw;

void BM_TwoChainEnergy(benchmark::State& state) {
    variational::QuadratureSpec q;
    q.panels = static_cast<int>(state.range(0));
    const variational::TwoChainIntegrator in(q);
    model::PhysicalParams p;
    auto a = variational::AnsatzCoeffs::single_well(0, 0.3);
    a.b = {0.1, 0.3, 1.0, 0.3, 0.1};
    a.c = a.b;
    for (auto _ : state) benchmark::DoNotOptimize(in.energy(a, p, 1.3));
}
BENCHMARK(BM_TwoChainEnergy)->Arg(40)->Arg(80)->Arg(160);

void BM_ChainRk4Step(benchmark::State& state) {
    sg::LatticeKink lk;
    lk.sites = static_cast<std::size_t>(state.range(0));
    lk.kink.beta = 0.5;
    const auto s0 = lk.initial_state();
    for (auto _ : state) benchmark::DoNotOptimize(sg::integrate_chain_rk4(s0, 1e-3, 1, 1));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ChainRk4Step)->Arg(500)->Arg(2000);

template <evolver::SchemeKind K>
void BM_EvolverStep(benchmark::State& state) {
    const auto g = evolver::gaussian_packet(static_cast<std::size_t>(state.range(0)), -4 * std::numbers::pi,
                                            4 * std::numbers::pi);
    model::PhysicalParams p;
    for (auto _ : state) benchmark::DoNotOptimize(evolver::step(K, g, g, p, 1e-4));
}
BENCHMARK(BM_EvolverStep<evolver::SchemeKind::CrankNicolsonStandard>)->Arg(513)->Arg(4097);
BENCHMARK(BM_EvolverStep<evolver::SchemeKind::DufortFrankelStandard>)->Arg(513)->Arg(4097);
BENCHMARK(BM_EvolverStep<evolver::SchemeKind::CrankNicolsonAsPrinted>)->Arg(513)->Arg(4097);

void BM_IvCurve(benchmark::State& state) {
    tunneling::CurrentParams cp;
    std::vector<double> grid;
    for (int i = 1; i <= 1000; ++i) grid.push_back(5.0 * i / 1000.0);
    for (auto _ : state) benchmark::DoNotOptimize(tunneling::iv_curve(grid, cp));
}
BENCHMARK(BM_IvCurve);

}  // namespace
BENCHMARK_MAIN();
