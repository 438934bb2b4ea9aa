#include <cmath>
#include <cstdlib>
#include <memory>
#include <random>
#include <sstream>
#include <stdexcept>

#include <doctest.h>

#include "dressed/dressing.hpp"

using namespace dressed;

namespace {

GridPtr make_grid(double lambda, std::size_t n, double ratio = 1e-6) {
  return std::make_shared<MomentumGrid>(MomentumGrid::log_spaced(lambda, n, ratio));
}

}  // namespace

TEST_CASE("ModelParams validation") {
  CHECK_NOTHROW(ModelParams{}.validate());
  CHECK_THROWS_AS((ModelParams{.alpha = -0.1}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ModelParams{.lambda = 0.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ModelParams{.m0 = -1.0}.validate()), std::invalid_argument);
  CHECK_NOTHROW((ModelParams{.alpha = 0.0, .lambda = 2.0, .m0 = 0.0}.validate()));
}

TEST_CASE("MomentumGrid construction") {
  const auto grid = MomentumGrid::log_spaced(2.0, 64, 1e-8);
  CHECK(grid.size() == 64);
  CHECK(grid.lambda() == 2.0);
  CHECK(grid.nodes().front() == doctest::Approx(2.0 * 1e-8).epsilon(1e-14));
  for (std::size_t i = 1; i < grid.size(); ++i) {
    CHECK(grid.nodes()[i] > grid.nodes()[i - 1]);
  }

  CHECK_THROWS_AS(MomentumGrid(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(MomentumGrid({1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(MomentumGrid({-1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(MomentumGrid::log_spaced(1.0, 8, 1.5), std::invalid_argument);
  CHECK_NOTHROW(MomentumGrid({0.5, 1.0, 2.0}));
}

TEST_CASE("eval: free solution and node reproduction") {
  const ModelParams p{.alpha = 0.0, .lambda = 4.0, .m0 = 1.5};
  const auto grid = make_grid(4.0, 33);
  const auto f = DressingFunctions::free_solution(grid, p);

  for (double u : {1e-7, 0.003, 0.5, 1.0, 3.99, 4.0}) {
    const auto g = f.eval(u);
    CHECK(g.g0 == 1.5);
    CHECK(g.g1 == u);
  }
  for (std::size_t i = 0; i < grid->size(); i += 5) {
    const double u = grid->nodes()[i];
    const auto g = f.eval(u);
    CHECK(g.g0 == f.h0()[i]);
    CHECK(g.g1 == u * f.h1()[i]);
  }

  CHECK_THROWS_AS(f.eval(0.0), std::domain_error);
  CHECK_THROWS_AS(f.eval(-1.0), std::domain_error);
  CHECK_THROWS_AS(f.eval(4.0 + 1e-9), std::domain_error);
}

TEST_CASE("eval: interpolation stays between monotone samples") {
  const auto grid = make_grid(1.0, 40);
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> step(0.0, 0.3);
  std::vector<double> h0(grid->size()), h1(grid->size());
  double a = 1.0, b = 1.0;
  for (std::size_t i = 0; i < grid->size(); ++i) {
    h0[i] = (a += step(rng));
    h1[i] = (b += step(rng));
  }
  const DressingFunctions f(grid, h0, h1);
  std::uniform_real_distribution<double> pick(0.0, 1.0);
  for (int k = 0; k < 2000; ++k) {
    const std::size_t i = static_cast<std::size_t>(pick(rng) * (grid->size() - 1));
    const double ul = grid->nodes()[i], ur = grid->nodes()[i + 1];
    const double u = ul + pick(rng) * (ur - ul);
    const auto g = f.eval(u);
    CHECK(g.g0 >= h0[i]);
    CHECK(g.g0 <= h0[i + 1]);
    CHECK(g.g1 / u >= h1[i]);
    CHECK(g.g1 / u <= h1[i + 1]);
  }
}

TEST_CASE("sup_distance is a metric") {
  const ModelParams p{.alpha = 0.0, .lambda = 1.0, .m0 = 1.0};
  const auto grid = make_grid(1.0, 24);
  const auto f = DressingFunctions::free_solution(grid, p);
  CHECK(sup_distance(f, f) == 0.0);

  std::vector<double> shifted(grid->size(), 1.0 + 0.25);
  const DressingFunctions g(grid, shifted, std::vector<double>(grid->size(), 1.0));
  CHECK(sup_distance(f, g) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(sup_distance(g, f) == doctest::Approx(0.25).epsilon(1e-15));

  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> val(0.5, 2.0);
  const auto random_fn = [&] {
    std::vector<double> h0(grid->size()), h1(grid->size());
    for (std::size_t i = 0; i < grid->size(); ++i) {
      h0[i] = val(rng);
      h1[i] = val(rng);
    }
    return DressingFunctions(grid, h0, h1);
  };
  for (int k = 0; k < 200; ++k) {
    const auto a = random_fn(), b = random_fn(), c = random_fn();
    CHECK(sup_distance(a, c) <= sup_distance(a, b) + sup_distance(b, c) + 1e-15);
    CHECK(sup_distance(a, b) >= 0.0);
  }

  const auto other = make_grid(1.0, 23);
  const auto h = DressingFunctions::free_solution(other, p);
  CHECK_THROWS_AS(sup_distance(f, h), std::invalid_argument);
}

TEST_CASE("membership_check against the box") {
  const ModelParams p{.alpha = 0.1, .lambda = 1.0, .m0 = 2.0};
  const auto grid = make_grid(1.0, 16);
  const auto corner = DressingFunctions::free_solution(grid, p);
  CHECK(membership_check(corner, p, {0.0, 0.0}));
  CHECK(membership_check(corner, p, {0.3, 0.7}));

  const double delta = 0.1;
  std::vector<double> too_big(grid->size(), (1.0 + 2.0 * delta) * p.m0);
  const DressingFunctions bad(grid, too_big, std::vector<double>(grid->size(), 1.0));
  CHECK_FALSE(membership_check(bad, p, {1.0, delta}));

  std::vector<double> low_h1(grid->size(), 0.999);
  const DressingFunctions bad2(grid, std::vector<double>(grid->size(), p.m0), low_h1);
  CHECK_FALSE(membership_check(bad2, p, {0.5, 0.5}));
}

TEST_CASE("CSV serialization") {
  const ModelParams p{.alpha = 0.0, .lambda = 1.0, .m0 = 1.0};
  const auto grid = make_grid(1.0, 8);
  const auto f = DressingFunctions::free_solution(grid, p);
  std::ostringstream os;
  write_csv(os, f);
  const std::string text = os.str();
  CHECK(text.rfind("u,g0,g1,g1_over_u\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 9);
  CHECK(text.find('\r') == std::string::npos);

  // first data row round-trips the node exactly
  std::istringstream is(text);
  std::string line;
  std::getline(is, line);
  std::getline(is, line);
  const double u = std::strtod(line.c_str(), nullptr);
  CHECK(u == grid->nodes()[0]);
}
