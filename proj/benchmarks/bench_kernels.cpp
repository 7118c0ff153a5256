#include <benchmark/benchmark.h>

#include <vector>

#include "giamg/fem.hpp"
#include "giamg/hierarchy.hpp"
#include "giamg/krylov.hpp"
#include "giamg/options.hpp"
#include "giamg/smoothers.hpp"
#include "giamg/sparse.hpp"

namespace {

const giamg::AssembledSystem& benchmark_system(int p) {
  static std::vector<std::pair<int, giamg::AssembledSystem>> cache;
  for (const auto& [order, sys] : cache)
    if (order == p) return sys;
  giamg::HexMesh mesh;
  mesh.n_per_dim = 2;
  cache.emplace_back(p, giamg::assemble_helmholtz(mesh, p, 1.0, giamg::BoundaryPolicy::Penalty,
                                                  /*with_projection=*/false));
  return cache.back().second;
}

void BM_Spmv(benchmark::State& state) {
  const auto& sys = benchmark_system(static_cast<int>(state.range(0)));
  std::vector<double> x(static_cast<std::size_t>(sys.A.nrows), 1.0);
  std::vector<double> y(x.size());
  for (auto _ : state) {
    giamg::spmv(sys.A, x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * sys.A.nnz());
}
BENCHMARK(BM_Spmv)->Arg(2)->Arg(4)->Arg(6);

void BM_ChebyshevSmooth(benchmark::State& state) {
  const auto& sys = benchmark_system(static_cast<int>(state.range(0)));
  const giamg::ChebyshevData data = giamg::make_chebyshev(sys.A, 2);
  giamg::ChebyshevWorkspace ws(static_cast<std::size_t>(sys.A.nrows));
  std::vector<double> x(static_cast<std::size_t>(sys.A.nrows), 0.0);
  for (auto _ : state) {
    giamg::chebyshev_smooth(sys.A, data, sys.b, x, ws);
    benchmark::DoNotOptimize(x.data());
  }
}
BENCHMARK(BM_ChebyshevSmooth)->Arg(4)->Arg(6);

void BM_Vcycle(benchmark::State& state) {
  const auto& sys = benchmark_system(static_cast<int>(state.range(0)));
  giamg::SolveOptions opts;
  const giamg::Hierarchy h = giamg::setup(sys, opts);
  giamg::VcycleWorkspace ws = giamg::make_vcycle_workspace(h);
  std::vector<double> x(sys.b.size());
  for (auto _ : state) {
    std::fill(x.begin(), x.end(), 0.0);
    giamg::vcycle(h, 0, sys.b, x, ws);
    benchmark::DoNotOptimize(x.data());
  }
}
BENCHMARK(BM_Vcycle)->Arg(4)->Arg(6);

void BM_HierarchySetup(benchmark::State& state) {
  const auto& sys = benchmark_system(static_cast<int>(state.range(0)));
  giamg::SolveOptions opts;
  for (auto _ : state) {
    giamg::Hierarchy h = giamg::setup(sys, opts);
    benchmark::DoNotOptimize(h.levels.data());
  }
}
BENCHMARK(BM_HierarchySetup)->Arg(4);

void BM_GiamgPcg(benchmark::State& state) {
  const auto& sys = benchmark_system(static_cast<int>(state.range(0)));
  giamg::SolveOptions opts;
  const giamg::Hierarchy h = giamg::setup(sys, opts);
  for (auto _ : state) {
    giamg::GiamgPreconditioner precond(h);
    auto [x, log] = giamg::pcg_solve(sys.A, sys.b, {}, precond, opts);
    benchmark::DoNotOptimize(x.data());
  }
}
BENCHMARK(BM_GiamgPcg)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
