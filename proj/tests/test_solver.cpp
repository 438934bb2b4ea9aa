#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include <doctest.h>

#include "dressed/solver.hpp"

using namespace dressed;

namespace {

GridPtr make_grid(double lambda, std::size_t n, double ratio = 1e-8) {
  return std::make_shared<MomentumGrid>(MomentumGrid::log_spaced(lambda, n, ratio));
}

// smooth random member of the admissibility box
DressingFunctions random_box_member(const GridPtr& grid, const ModelParams& p,
                                    const BoundsBox& box, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const double a0 = 6.283 * u01(rng), b0 = 0.5 + 1.5 * u01(rng);
  const double a1 = 6.283 * u01(rng), b1 = 0.5 + 1.5 * u01(rng);
  std::vector<double> h0(grid->size()), h1(grid->size());
  for (std::size_t i = 0; i < grid->size(); ++i) {
    const double x = std::log(grid->nodes()[i]);
    h0[i] = p.m0 * (1.0 + box.delta * (0.5 + 0.5 * std::sin(a0 + b0 * x)));
    h1[i] = 1.0 + box.epsilon * (0.5 + 0.5 * std::sin(a1 + b1 * x));
  }
  return DressingFunctions(grid, std::move(h0), std::move(h1));
}

}  // namespace

TEST_CASE("contraction_parameters formulas") {
  SUBCASE("free theory") {
    const auto c = contraction_parameters({.alpha = 0.0, .lambda = 5.0, .m0 = 1.0});
    CHECK(c.Y == 0.0);
    CHECK(c.epsilon == 0.0);
    CHECK(c.delta == 0.0);
    CHECK(c.theoretical_rate == 0.0);
    CHECK(c.feasible);
  }
  SUBCASE("Y = 0.1 arithmetic") {
    // alpha chosen so that Y lands exactly on 0.1
    const double lambda = std::exp(10.0);
    const double alpha = 0.1 * std::numbers::pi / std::asinh(lambda);
    const auto c = contraction_parameters({.alpha = alpha, .lambda = lambda, .m0 = 1.0});
    CHECK(c.Y == doctest::Approx(0.1).epsilon(1e-13));
    CHECK(c.epsilon == doctest::Approx(1.25).epsilon(1e-12));
    CHECK(c.delta == doctest::Approx(1.0 / 9.0).epsilon(1e-12));
    CHECK(c.theoretical_rate == doctest::Approx(0.336111111111).epsilon(1e-10));
    CHECK(c.feasible);
  }
  SUBCASE("physical coupling at the e^18 cutoff") {
    const auto c = contraction_parameters(
        {.alpha = 1.0 / 137.0, .lambda = std::exp(18.0), .m0 = 1.0});
    CHECK(c.Y == doctest::Approx(0.0434322157).epsilon(1e-8));
    CHECK(c.feasible);
    CHECK(c.theoretical_rate < 1.0);
  }
  SUBCASE("infeasible couplings") {
    const auto c = contraction_parameters(
        {.alpha = 1.0, .lambda = std::exp(10.0), .m0 = 1.0});
    CHECK_FALSE(c.feasible);
    CHECK(std::isinf(c.epsilon));
    const auto d = contraction_parameters(
        {.alpha = 0.2, .lambda = std::exp(10.0), .m0 = 1.0});
    CHECK_FALSE(d.feasible);  // Y ~ 0.68 > 1/7
  }
  CHECK_THROWS_AS(
      contraction_parameters({.alpha = 0.1, .lambda = 1.0, .m0 = 0.0}),
      std::domain_error);
}

TEST_CASE("feasibility cutoff") {
  const double alpha = 1.0 / 137.0;
  CHECK(log_feasibility_cutoff(alpha) == doctest::Approx(60.7923090397).epsilon(1e-10));
  CHECK(feasibility_cutoff(alpha) == doctest::Approx(2.52211193971e26).epsilon(1e-9));
  CHECK(std::isinf(feasibility_cutoff(0.0)));
  // Y at the cutoff is 1/7 by construction
  const double lam = feasibility_cutoff(alpha);
  const auto c = contraction_parameters({.alpha = alpha, .lambda = lam, .m0 = 1.0});
  CHECK(c.Y == doctest::Approx(1.0 / 7.0).epsilon(1e-12));
}

TEST_CASE("apply_T at alpha = 0 is the identity on the free solution") {
  const ModelParams p{.alpha = 0.0, .lambda = 2.0, .m0 = 1.3};
  const auto grid = make_grid(2.0, 48);
  std::mt19937_64 rng(37);
  const auto f = random_box_member(grid, p, {0.4, 0.4}, rng);
  const auto out = apply_T(p, f);
  for (std::size_t i = 0; i < grid->size(); ++i) {
    CHECK(out.h0()[i] == p.m0);
    CHECK(out.h1()[i] == 1.0);
  }
}

TEST_CASE("apply_T maps the box into itself under the Lemma conditions") {
  const ModelParams p{.alpha = 1.0 / 137.0, .lambda = std::exp(6.0), .m0 = 1.0};
  const auto grid = make_grid(p.lambda, 96);
  const auto c = contraction_parameters(p);
  REQUIRE(c.feasible);
  const BoundsBox box{c.epsilon, c.delta};
  std::mt19937_64 rng(41);
  for (int k = 0; k < 8; ++k) {
    const auto f = random_box_member(grid, p, box, rng);
    REQUIRE(membership_check(f, p, box));
    const auto tf = apply_T(p, f);
    CHECK(membership_check(tf, p, box));
  }
}

TEST_CASE("apply_T error paths") {
  const ModelParams p{.alpha = 0.1, .lambda = 1.0, .m0 = 0.0};
  const auto grid = make_grid(1.0, 16);
  const DressingFunctions zero(grid, std::vector<double>(16, 0.0),
                               std::vector<double>(16, 0.0));
  CHECK_THROWS_AS(apply_T(p, zero), std::runtime_error);

  const ModelParams other{.alpha = 0.1, .lambda = 2.0, .m0 = 1.0};
  const auto f = DressingFunctions::free_solution(grid, p);
  CHECK_THROWS_AS(apply_T(other, f), std::invalid_argument);
}

TEST_CASE("solve at alpha = 0 finishes in one exact step") {
  const ModelParams p{.alpha = 0.0, .lambda = 3.0, .m0 = 1.0};
  const auto [sol, rep] = solve_fixed_point(p, make_grid(3.0, 64));
  CHECK(rep.iterations == 1);
  CHECK(rep.converged);
  CHECK(rep.final_residual == 0.0);
  for (std::size_t i = 0; i < sol.grid().size(); ++i) {
    CHECK(sol.h0()[i] == 1.0);
    CHECK(sol.h1()[i] == 1.0);
  }
}

TEST_CASE("solve honours the certified contraction") {
  const ModelParams p{.alpha = 1.0 / 137.0, .lambda = std::exp(10.0), .m0 = 1.0};
  const auto grid = make_grid(p.lambda, 192);
  SolveOptions opts;
  opts.tol = 1e-10;
  const auto [sol, rep] = solve_fixed_point(p, grid, opts);
  REQUIRE(rep.converged);
  CHECK(rep.contraction.feasible);
  CHECK(rep.final_residual < opts.tol);

  for (double rate : rep.measured_rates) {
    CHECK(rate <= rep.contraction.theoretical_rate);
  }

  const BoundsBox box{rep.contraction.epsilon, rep.contraction.delta};
  CHECK(membership_check(sol, p, box));

  // pointwise bounds from the invariance proof
  const double arsinh = std::asinh(p.lambda / p.m0);
  const double cap0 =
      p.m0 * (1.0 + p.alpha / std::numbers::pi * (1.0 + rep.contraction.delta) * arsinh);
  const double cap1 = 1.0 + 50.0 * p.alpha / (9.0 * std::numbers::pi) *
                                (1.0 + rep.contraction.epsilon) * arsinh;
  for (std::size_t i = 0; i < sol.grid().size(); ++i) {
    CHECK(sol.h0()[i] <= cap0);
    CHECK(sol.h1()[i] <= cap1);
  }

  // one more application stays put
  const auto extra = apply_T(p, sol, opts.quad);
  CHECK(sup_distance(extra, sol) < opts.tol);
}

TEST_CASE("distinct admissible starts reach the same fixed point") {
  const ModelParams p{.alpha = 1.0 / 137.0, .lambda = std::exp(8.0), .m0 = 1.0};
  const auto grid = make_grid(p.lambda, 128);
  SolveOptions opts;
  opts.tol = 1e-10;
  const auto c = contraction_parameters(p);

  const auto low = solve_fixed_point(p, grid, opts);
  const DressingFunctions upper(
      grid, std::vector<double>(grid->size(), (1.0 + c.delta) * p.m0),
      std::vector<double>(grid->size(), 1.0 + c.epsilon));
  const auto high = solve_fixed_point(p, upper, opts);
  REQUIRE(low.report.converged);
  REQUIRE(high.report.converged);
  CHECK(sup_distance(low.solution, high.solution) <= 10.0 * opts.tol);
}

TEST_CASE("solver keeps going without a certificate") {
  // Y slightly above 1/7: no certificate, but the iteration itself behaves
  const double lambda = std::exp(10.0);
  const double alpha = 0.16 * std::numbers::pi / std::asinh(lambda);
  const ModelParams p{.alpha = alpha, .lambda = lambda, .m0 = 1.0};
  SolveOptions opts;
  opts.tol = 1e-9;
  const auto [sol, rep] = solve_fixed_point(p, make_grid(lambda, 96), opts);
  CHECK_FALSE(rep.contraction.feasible);
  CHECK(rep.converged);
}

TEST_CASE("solve rejects the massless case and bad options") {
  const ModelParams p{.alpha = 0.1, .lambda = 1.0, .m0 = 0.0};
  CHECK_THROWS_AS(solve_fixed_point(p, make_grid(1.0, 8)), std::invalid_argument);
  const ModelParams ok{.alpha = 0.1, .lambda = 1.0, .m0 = 1.0};
  SolveOptions opts;
  opts.tol = 0.0;
  CHECK_THROWS_AS(solve_fixed_point(ok, make_grid(1.0, 8), opts),
                  std::invalid_argument);
}

TEST_CASE("non-convergence is reported, not thrown") {
  const ModelParams p{.alpha = 1.0 / 137.0, .lambda = std::exp(8.0), .m0 = 1.0};
  SolveOptions opts;
  opts.tol = 1e-10;
  opts.max_iter = 2;
  const auto [sol, rep] = solve_fixed_point(p, make_grid(p.lambda, 64), opts);
  CHECK_FALSE(rep.converged);
  CHECK(rep.iterations == 2);
  CHECK(rep.final_residual > 0.0);
}

TEST_CASE("report serialization carries the contract fields") {
  const ModelParams p{.alpha = 1.0 / 137.0, .lambda = std::exp(4.0), .m0 = 1.0};
  const auto [sol, rep] = solve_fixed_point(p, make_grid(p.lambda, 48));
  std::ostringstream os;
  rep.write(os);
  const std::string text = os.str();
  for (const char* key : {"Y:", "epsilon:", "delta:", "theoretical_rate:",
                          "iterations:", "final_residual:", "converged:",
                          "feasible:"}) {
    CHECK(text.find(key) != std::string::npos);
  }
}
