#include "dressed/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <utility>

#include "dressed/format.hpp"

namespace dressed {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

ContractionData contraction_parameters(const ModelParams& p) {
  p.validate();
  if (p.m0 == 0.0) {
    throw std::domain_error(
        "contraction_parameters: Y is undefined for m0 == 0");
  }
  ContractionData c;
  c.Y = p.alpha * std::asinh(p.lambda / p.m0) / std::numbers::pi;
  c.epsilon = c.Y < 9.0 / 50.0 ? 50.0 * c.Y / (9.0 - 50.0 * c.Y) : kInf;
  c.delta = c.Y < 1.0 ? c.Y / (1.0 - c.Y) : kInf;
  c.theoretical_rate = c.Y == 0.0 ? 0.0 : (2.0 + c.epsilon + c.delta) * c.Y;
  c.feasible = c.Y < 1.0 / 7.0;
  return c;
}

double feasibility_cutoff(double alpha) {
  if (!(alpha > 0.0)) return kInf;
  return std::sinh(std::numbers::pi / (7.0 * alpha));
}

double log_feasibility_cutoff(double alpha) {
  if (!(alpha > 0.0)) return kInf;
  const double x = std::numbers::pi / (7.0 * alpha);
  if (x < 20.0) return std::log(std::sinh(x));
  return x - std::numbers::ln2 + std::log1p(-std::exp(-2.0 * x));
}

double SolveReport::max_measured_rate() const {
  double r = 0.0;
  for (double x : measured_rates) r = std::max(r, x);
  return r;
}

void SolveReport::write(std::ostream& os) const {
  os << "Y: " << format_g17(contraction.Y) << '\n'
     << "epsilon: " << format_g17(contraction.epsilon) << '\n'
     << "delta: " << format_g17(contraction.delta) << '\n'
     << "theoretical_rate: " << format_g17(contraction.theoretical_rate) << '\n'
     << "feasible: " << (contraction.feasible ? "true" : "false") << '\n'
     << "iterations: " << iterations << '\n'
     << "final_residual: " << format_g17(final_residual) << '\n'
     << "converged: " << (converged ? "true" : "false") << '\n'
     << "max_measured_rate: " << format_g17(max_measured_rate()) << '\n'
     << "max_quadrature_error: " << format_g17(max_quadrature_error) << '\n'
     << "quadrature_warnings: " << quadrature_warnings << '\n';
}

DressingFunctions apply_T(const ModelParams& p, const DressingFunctions& f,
                          const QuadratureSettings& quad, TApplyStats* stats) {
  p.validate();
  if (f.grid().lambda() != p.lambda) {
    throw std::invalid_argument("apply_T: grid cutoff differs from params");
  }
  const auto& nodes = f.grid().nodes();
  const std::size_t n = nodes.size();

  if (p.alpha == 0.0) {
    return DressingFunctions(f.grid_ptr(), std::vector<double>(n, p.m0),
                             std::vector<double>(n, 1.0));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (f.h0()[i] == 0.0 && f.h1()[i] == 0.0) {
      throw std::runtime_error(
          "apply_T: vanishing denominator sqrt(g0^2 + g1^2) at u = " +
          format_g17(nodes[i]));
    }
  }

  const double prefactor = p.alpha / (2.0 * std::numbers::pi);
  // quad.tol measures accuracy of the map components g0 and g1 (the same
  // absolute scale as the sup metric); the raw integrals carry 2 pi / alpha
  // times that. The interpolated integrand kinks at the grid nodes.
  QuadratureSettings scaled = quad;
  scaled.tol = quad.tol / prefactor;
  scaled.breakpoints = &f.grid().nodes();
  const auto w0 = [&f](double v) {
    const DressingPair g = f.eval(v);
    return g.g0 / std::sqrt(g.g0 * g.g0 + g.g1 * g.g1);
  };
  const auto w1 = [&f](double v) {
    const DressingPair g = f.eval(v);
    return g.g1 / std::sqrt(g.g0 * g.g0 + g.g1 * g.g1);
  };

  std::vector<double> h0(n), h1(n);
  TApplyStats local;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = nodes[i];
    const IntegralResult r0 = integrate_singular(Channel::Scalar, u, w0, p, scaled);
    const IntegralResult r1 = integrate_singular(Channel::Vector, u, w1, p, scaled);
    h0[i] = p.m0 + prefactor * r0.value;
    h1[i] = 1.0 + prefactor * r1.value / u;
    local.max_quadrature_error =
        std::max({local.max_quadrature_error, r0.error_estimate, r1.error_estimate});
    if (!r0.converged) ++local.warnings;
    if (!r1.converged) ++local.warnings;
  }
  if (stats) *stats = local;
  return DressingFunctions(f.grid_ptr(), std::move(h0), std::move(h1));
}

SolveResult solve_fixed_point(const ModelParams& p, GridPtr grid,
                              const SolveOptions& opts) {
  return solve_fixed_point(p, DressingFunctions::free_solution(std::move(grid), p),
                           opts);
}

SolveResult solve_fixed_point(const ModelParams& p, DressingFunctions initial,
                              const SolveOptions& opts) {
  p.validate();
  if (!(p.m0 > 0.0)) {
    throw std::invalid_argument(
        "solve_fixed_point: requires m0 > 0; the massless case has a closed form");
  }
  if (!(opts.tol > 0.0)) {
    throw std::invalid_argument("solve_fixed_point: tol must be > 0");
  }

  SolveReport report;
  report.contraction = contraction_parameters(p);

  // Rates are only meaningful while the previous residual is clearly above
  // rounding noise of the iterates.
  const double rate_floor =
      10.0 * std::numeric_limits<double>::epsilon() * (p.m0 + p.lambda);

  DressingFunctions g = std::move(initial);
  double prev_residual = -1.0;
  for (int it = 1; it <= opts.max_iter; ++it) {
    TApplyStats stats;
    DressingFunctions next = apply_T(p, g, opts.quad, &stats);
    const double residual = sup_distance(next, g);
    report.residuals.push_back(residual);
    report.iterations = static_cast<std::size_t>(it);
    report.max_quadrature_error =
        std::max(report.max_quadrature_error, stats.max_quadrature_error);
    report.quadrature_warnings += stats.warnings;
    if (prev_residual > rate_floor) {
      report.measured_rates.push_back(residual / prev_residual);
    }
    g = std::move(next);
    if (residual < opts.tol || residual < 1e-300) {
      report.converged = true;
      break;
    }
    prev_residual = residual;
  }
  report.final_residual = report.residuals.back();
  return {std::move(g), std::move(report)};
}

}  // namespace dressed
