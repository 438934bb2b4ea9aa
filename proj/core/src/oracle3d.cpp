#include "dressed/oracle3d.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

namespace dressed {

namespace {

// 20-point Gauss-Legendre rule on [-1, 1], nodes by Newton on the
// recurrence.
struct GaussRule {
  std::array<double, 20> x{};
  std::array<double, 20> w{};

  GaussRule() {
    const int n = static_cast<int>(x.size());
    for (int i = 0; i < (n + 1) / 2; ++i) {
      double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double deriv = 0.0;
      for (int iter = 0; iter < 64; ++iter) {
        double p0 = 1.0, p1 = 0.0;
        for (int j = 0; j < n; ++j) {
          const double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1.0);
        }
        deriv = n * (t * p0 - p1) / (t * t - 1.0);
        const double step = p0 / deriv;
        t -= step;
        if (std::abs(step) < 1e-15) break;
      }
      x[i] = -t;
      x[n - 1 - i] = t;
      w[i] = w[n - 1 - i] = 2.0 / ((1.0 - t * t) * deriv * deriv);
    }
  }
};

const GaussRule& gauss_rule() {
  static const GaussRule rule;
  return rule;
}

// Polar-angle integral over the shell |q| = v, rewritten in s = log|p - q|:
//   scalar: integrand 1; vector: (u^2 + v^2 - e^{2s}) / (2uv).
// The left stretch where e^{2s} is below rounding of u^2 + v^2 contributes
// the constant integrand exactly; the remainder is Gauss-integrated on
// panels short enough to resolve e^{2s}.
double polar_integral(Channel c, double u, double v, double gap) {
  const double s_lo = std::log(gap);
  const double s_hi = std::log(u + v);
  if (c == Channel::Scalar) return s_hi - s_lo;

  const double a2 = u * u + v * v;
  const double b2 = 2.0 * u * v;
  const double s_cut = std::max(
      s_lo, 0.5 * std::log(a2 * std::numeric_limits<double>::epsilon()));
  double total = (s_cut - s_lo) * a2 / b2;
  const GaussRule& rule = gauss_rule();
  const int panels = std::max(1, static_cast<int>(std::ceil((s_hi - s_cut) / 2.0)));
  for (int k = 0; k < panels; ++k) {
    const double pa = s_cut + (s_hi - s_cut) * k / panels;
    const double pb = s_cut + (s_hi - s_cut) * (k + 1) / panels;
    const double mid = 0.5 * (pa + pb);
    const double half = 0.5 * (pb - pa);
    double sum = 0.0;
    for (std::size_t j = 0; j < rule.x.size(); ++j) {
      const double s = mid + half * rule.x[j];
      sum += rule.w[j] * (a2 - std::exp(2.0 * s)) / b2;
    }
    total += half * sum;
  }
  return total;
}

// Positive breakpoints between a and b so that consecutive ratios stay
// modest and the m0 / u scales fall on panel edges.
std::vector<double> radial_breaks(double a, double b, double u, double m0) {
  std::vector<double> pts{a, b};
  const double anchors[] = {m0, u};
  for (double s : anchors) {
    if (!(s > 0.0)) continue;
    for (double factor : {0.1, 1.0, 10.0}) {
      const double x = s * factor;
      if (x > a && x < b) pts.push_back(x);
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  // keep per-piece dynamic range below ~1e2
  std::vector<double> out;
  out.push_back(pts.front());
  for (std::size_t i = 1; i < pts.size(); ++i) {
    double left = out.back();
    if (left > 0.0) {
      while (pts[i] / left > 100.0) {
        left = std::sqrt(left * pts[i]);
        out.push_back(left);
      }
    }
    out.push_back(pts[i]);
  }
  return out;
}

}  // namespace

Oracle3dResult direct_3d_rhs(Channel c, const DressingFunctions& f, double u,
                             const ModelParams& p, double tol) {
  p.validate();
  if (!(u > 0.0) || !(u < p.lambda)) {
    throw std::domain_error("direct_3d_rhs: u must lie in (0, lambda)");
  }
  const double base = c == Channel::Scalar ? p.m0 : u;
  if (p.alpha == 0.0) return {base, 0.0, true};

  const auto weight = [&f, c](double v) {
    const DressingPair g = f.eval(v);
    const double energy = std::sqrt(g.g0 * g.g0 + g.g1 * g.g1);
    return (c == Channel::Scalar ? g.g0 : g.g1) / energy;
  };
  // Radial integrand (v/u) * P_c(u, v) * w_c(v) with P_c the numeric polar
  // integral; gap is the exact distance to the shell v = u.
  const auto shell = [&](double v, double gap) {
    return (v / u) * polar_integral(c, u, v, gap) * weight(v);
  };

  boost::math::quadrature::tanh_sinh<double> integrator(12);
  double sum = 0.0;
  double err = 0.0;
  const auto accumulate = [&](auto&& fn, double a, double b) {
    if (!(b > a)) return;
    double piece_err = 0.0;  // absolute, per boost's convention
    const double piece = integrator.integrate(fn, a, b, tol, &piece_err);
    sum += piece;
    err += piece_err;
  };

  // Shells next to v = u, integrated in the distance t = |v - u|.
  const double below = std::min(u / 2.0, u);
  accumulate([&](double t) { return shell(u - t, t); }, 0.0, below);
  const double above = std::min(u / 2.0, p.lambda - u);
  accumulate([&](double t) { return shell(u + t, t); }, 0.0, above);

  // Remaining shells are far from the diagonal.
  const auto plain = [&](double v) { return shell(v, std::abs(v - u)); };
  for (auto [a, b] : {std::pair{0.0, u - below}, std::pair{u + above, p.lambda}}) {
    const std::vector<double> pts = radial_breaks(a, b, u, p.m0);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      accumulate(plain, pts[i], pts[i + 1]);
    }
  }

  Oracle3dResult out;
  out.value = base + p.alpha / (2.0 * std::numbers::pi) * sum;
  out.error_estimate = p.alpha / (2.0 * std::numbers::pi) * err;
  out.converged = out.error_estimate <= 50.0 * tol * std::abs(out.value);
  return out;
}

}  // namespace dressed
