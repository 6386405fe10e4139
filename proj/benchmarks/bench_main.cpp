// Microbenchmarks for the hot paths of the workbench: semigroup evaluation,
// edge enumeration, the exact LP, randomized gap evaluation, and the dense
// symmetric eigensolver.

#include <vector>

#include <benchmark/benchmark.h>

#include "blv/bl.hpp"
#include "blv/liegeo.hpp"
#include "blv/linalg.hpp"
#include "blv/model.hpp"
#include "blv/parallel.hpp"
#include "blv/verify.hpp"
#include "blv/zoo.hpp"

namespace {

void bench_semigroup_apply(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  blv::SymmetricGroup sg(n);
  blv::Model m = sg.model();
  blv::Rng rng(7);
  std::vector<double> f(m.size());
  for (double& v : f) v = rng.uniform() + 0.1;
  for (auto _ : state) {
    auto out = blv::semigroup_apply(m, 1.0, f);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetComplexityN(m.size());
}
BENCHMARK(bench_semigroup_apply)->Arg(4)->Arg(5)->Arg(6)->Complexity();

void bench_edge_enumeration(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  blv::SymmetricGroup sg(n);
  blv::Model m = sg.model();
  auto maps = sg.coordinate_maps();
  for (auto _ : state) {
    auto sys = blv::edge_active_sets(m, maps);
    benchmark::DoNotOptimize(sys.edges.data());
  }
}
BENCHMARK(bench_edge_enumeration)->Arg(4)->Arg(5)->Arg(6);

void bench_exponent_lp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  blv::SymmetricGroup sg(n);
  blv::Model m = sg.model();
  auto maps = sg.coordinate_maps();
  auto sys = blv::edge_active_sets(m, maps);
  std::vector<blv::Rational> weights(maps.size(), blv::Rational(1));
  for (auto _ : state) {
    auto result = blv::optimize_exponents(sys, weights);
    benchmark::DoNotOptimize(&result.objective);
  }
}
BENCHMARK(bench_exponent_lp)->Arg(4)->Arg(5);

void bench_global_gap(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  blv::SymmetricGroup sg(n);
  blv::Model m = sg.model();
  auto maps = sg.coordinate_maps();
  std::vector<blv::Rational> half(maps.size(), blv::frac(1, 2));
  blv::ExponentVector c(half);
  blv::Rng rng(11);
  auto family = blv::lognormal_family(maps, rng);
  for (auto _ : state) {
    double gap = blv::global_gap(m, maps, c, family);
    benchmark::DoNotOptimize(gap);
  }
}
BENCHMARK(bench_global_gap)->Arg(4)->Arg(5);

void bench_jacobi_eigensolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  // All-k-subset lifted operators give structured symmetric matrices of
  // dimension n(n-1)/2.
  std::vector<blv::Subspace> subspaces;
  std::vector<int> coords = {0, 1};
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      coords[0] = a;
      coords[1] = b;
      subspaces.push_back(blv::Subspace::coordinate(n, coords, blv::SubspaceKind::pointwise));
    }
  std::vector<double> ones(subspaces.size(), 1.0);
  blv::Matrix lift = blv::lie_lift_operator(n, subspaces, ones);
  for (auto _ : state) {
    auto eig = blv::jacobi_eigensolve(lift);
    benchmark::DoNotOptimize(eig.values.data());
  }
  state.SetComplexityN(lift.rows());
}
BENCHMARK(bench_jacobi_eigensolve)->Arg(6)->Arg(10)->Arg(14)->Complexity();

}  // namespace

BENCHMARK_MAIN();
