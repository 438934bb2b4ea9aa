#include "dressed/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace dressed {

namespace {

// Above this z the closed form z*Q0 - 1 loses digits (z*Q0 -> 1); the
// artanh tail series Q1(z) = sum_{j>=1} z^(-2j)/(2j+1) takes over.
constexpr double kQ1SeriesCut = 5.0;

double q1_series(double z) {
  const double r = 1.0 / (z * z);
  double power = r;
  double sum = power / 3.0;
  for (int j = 2; j <= 40; ++j) {
    power *= r;
    const double term = power / (2 * j + 1);
    sum += term;
    if (term < 0x1p-60 * sum) break;
  }
  return sum;
}

}  // namespace

double legendre_q0(double z) {
  if (!(z > 1.0)) throw std::domain_error("legendre_q0: z must be > 1");
  return 0.5 * std::log1p(2.0 / (z - 1.0));
}

double legendre_q1(double z) {
  if (!(z > 1.0)) throw std::domain_error("legendre_q1: z must be > 1");
  if (z > kQ1SeriesCut) return q1_series(z);
  return z * legendre_q0(z) - 1.0;
}

double reduced_kernel(Channel c, double u, double v) {
  return reduced_kernel(c, u, v, std::abs(u - v));
}

double reduced_kernel(Channel c, double u, double v, double gap) {
  if (!(v > 0.0)) throw std::domain_error("reduced_kernel: v must be > 0");
  if (!(u >= 0.0)) throw std::domain_error("reduced_kernel: u must be >= 0");
  if (u == 0.0) return c == Channel::Scalar ? 2.0 : 0.0;
  if (!(gap > 0.0)) {
    throw std::domain_error("reduced_kernel: diagonal u == v is singular");
  }
  // Q0((u/v + v/u)/2) = log1p(4uv/gap^2)/2. Stable on both sides: near the
  // diagonal z - 1 = gap^2/(2uv) would cancel, far from it log(1 + small)
  // would round.
  const double q0 = 0.5 * std::log1p(4.0 * u * v / (gap * gap));
  if (c == Channel::Scalar) return (v / u) * q0;
  const double z = 0.5 * (u / v + v / u);
  const double q1 = z > kQ1SeriesCut ? q1_series(z) : z * q0 - 1.0;
  return (v / u) * q1;
}

double kernel_tail(double v) {
  if (!(v > 1.0)) throw std::domain_error("kernel_tail: v must be > 1");
  return 4.0 / (3.0 * v) + 8.0 / (15.0 * v * v * v);
}

}  // namespace dressed
