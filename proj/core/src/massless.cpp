#include "dressed/massless.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dressed {

namespace {

// Above this x = lambda/u the direct bracket loses digits: the x^2/3 term
// is annihilated by the log product, leaving O(log x). The regrouped series
// is already exact to ~1e-20 here.
constexpr double kBracketSeriesCut = 10.0;

double bracket_direct(double x) {
  const double x2 = x * x;
  return (2.0 / 3.0) * std::log(std::abs(x2 - 1.0)) - x2 / 3.0 +
         (x / 6.0) * std::log(std::abs((x + 1.0) / (x - 1.0))) * (3.0 + x2);
}

// Regrouped with the artanh series of log((x+1)/(x-1)); exact cancellation
// of the x^2 pieces leaves
//   B(x) = (4/3) log x + 10/9 + (2/3) log1p(-1/x^2) + sum_k c_k x^(-2k),
//   c_k = 1/(2k+1) + 1/(3(2k+3)).
double bracket_series(double x) {
  const double r = 1.0 / (x * x);
  double sum = (4.0 / 3.0) * std::log(x) + 10.0 / 9.0 +
               (2.0 / 3.0) * std::log1p(-r);
  double power = r;
  for (int k = 1; k <= 6; ++k) {
    sum += (1.0 / (2 * k + 1) + 1.0 / (3.0 * (2 * k + 3))) * power;
    power *= r;
  }
  return sum;
}

double bracket(double x) {
  return x > kBracketSeriesCut ? bracket_series(x) : bracket_direct(x);
}

}  // namespace

double massless_g1(double u, const ModelParams& p) {
  p.validate();
  if (p.m0 != 0.0) throw std::invalid_argument("massless_g1: requires m0 == 0");
  if (!(u > 0.0) || u > p.lambda) {
    throw std::domain_error("massless_g1: u must lie in (0, lambda)");
  }
  if (u == p.lambda) {
    throw std::domain_error("massless_g1: bracket is log-singular at u == lambda");
  }
  return u * (1.0 + p.alpha / (2.0 * std::numbers::pi) * bracket(p.lambda / u));
}

double massless_asymptote(double u, const ModelParams& p) {
  p.validate();
  if (!(u > 0.0) || u > p.lambda) {
    throw std::domain_error("massless_asymptote: u must lie in (0, lambda]");
  }
  return u + 2.0 * p.alpha / (3.0 * std::numbers::pi) * u * std::log(p.lambda / u);
}

}  // namespace dressed
