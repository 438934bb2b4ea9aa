#include <cmath>
#include <memory>
#include <random>

#include <benchmark/benchmark.h>

#include "dressed/dressing.hpp"
#include "dressed/kernels.hpp"
#include "dressed/massless.hpp"
#include "dressed/quadrature.hpp"
#include "dressed/solver.hpp"

using namespace dressed;

namespace {

GridPtr grid_of(double lambda, std::size_t n) {
  return std::make_shared<MomentumGrid>(MomentumGrid::log_spaced(lambda, n, 1e-8));
}

void BM_LegendreQ1(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> expo(-6.0, 6.0);
  double z = 1.0 + std::pow(10.0, expo(rng));
  for (auto _ : state) {
    benchmark::DoNotOptimize(legendre_q1(z));
    z = 1.0 + std::pow(10.0, expo(rng));
  }
}
BENCHMARK(BM_LegendreQ1);

void BM_ReducedKernel(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> expo(-4.0, 4.0);
  double u = 1.0, v = 2.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(reduced_kernel(Channel::Vector, u, v));
    u = std::pow(10.0, expo(rng));
    v = std::pow(10.0, expo(rng));
    if (u == v) v *= 1.5;
  }
}
BENCHMARK(BM_ReducedKernel);

void BM_MasslessG1(benchmark::State& state) {
  const ModelParams p{.alpha = 1.0 / 137.0, .lambda = 1.0, .m0 = 0.0};
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> expo(-8.0, -0.05);
  for (auto _ : state) {
    benchmark::DoNotOptimize(massless_g1(std::pow(10.0, expo(rng)), p));
  }
}
BENCHMARK(BM_MasslessG1);

void BM_IntegrateSingular(benchmark::State& state) {
  const ModelParams p{.alpha = 1.0 / 137.0, .lambda = std::exp(8.0), .m0 = 1.0};
  const auto grid = grid_of(p.lambda, static_cast<std::size_t>(state.range(0)));
  const auto f = DressingFunctions::free_solution(grid, p);
  const Integrand w = [&f](double v) {
    const auto g = f.eval(v);
    return g.g0 / std::sqrt(g.g0 * g.g0 + g.g1 * g.g1);
  };
  QuadratureSettings q{.tol = 1e-9};
  q.breakpoints = &grid->nodes();
  const double u = 0.37 * p.lambda;
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate_singular(Channel::Scalar, u, w, p, q));
  }
}
BENCHMARK(BM_IntegrateSingular)->Arg(128)->Arg(512);

void BM_ApplyT(benchmark::State& state) {
  const ModelParams p{.alpha = 1.0 / 137.0, .lambda = std::exp(8.0), .m0 = 1.0};
  const auto grid = grid_of(p.lambda, static_cast<std::size_t>(state.range(0)));
  const auto f = DressingFunctions::free_solution(grid, p);
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_T(p, f));
  }
}
BENCHMARK(BM_ApplyT)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_SolveFixedPoint(benchmark::State& state) {
  const ModelParams p{.alpha = 1.0 / 137.0, .lambda = std::exp(8.0), .m0 = 1.0};
  const auto grid = grid_of(p.lambda, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_fixed_point(p, grid));
  }
}
BENCHMARK(BM_SolveFixedPoint)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
