#include "dressed/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace dressed {

namespace {

// Least-squares line through (u_i, h1_i) over the smallest nodes; the
// intercept estimates lim h1(u -> 0). Corrections enter at O(u^2), so a
// linear fit this close to zero is already conservative.
double extrapolate_h1(const DressingFunctions& f) {
  const auto& nodes = f.grid().nodes();
  const std::size_t k = std::min<std::size_t>(4, nodes.size());
  if (k == 1) return f.h1()[0];
  double su = 0, sh = 0, suu = 0, suh = 0;
  for (std::size_t i = 0; i < k; ++i) {
    su += nodes[i];
    sh += f.h1()[i];
    suu += nodes[i] * nodes[i];
    suh += nodes[i] * f.h1()[i];
  }
  const double n = static_cast<double>(k);
  const double denom = n * suu - su * su;
  if (denom == 0.0) return f.h1()[0];
  const double slope = (n * suh - su * sh) / denom;
  return (sh - slope * su) / n;
}

}  // namespace

WavefunctionRenorm wavefunction_renorm(const DressingFunctions& f,
                                       const ModelParams& p,
                                       const QuadratureSettings& quad) {
  p.validate();
  if (p.m0 == 0.0) {
    throw std::domain_error(
        "wavefunction_renorm: g1(u)/u diverges logarithmically for m0 == 0");
  }
  WavefunctionRenorm out;
  if (p.alpha == 0.0) {
    out.Z_inv = out.Z = out.Z_inv_extrapolated = 1.0;
    return out;
  }
  // K1(u, v)/u -> 4/(3v) as u -> 0; g1(v)/v stays finite, so divide first.
  const auto limit_integrand = [&f](double v) {
    const DressingPair g = f.eval(v);
    const double energy = std::sqrt(g.g0 * g.g0 + g.g1 * g.g1);
    return (4.0 / 3.0) * (g.g1 / v) / energy;
  };
  QuadratureSettings q = quad;
  q.breakpoints = &f.grid().nodes();
  out.integral = integrate_de(limit_integrand, 0.0, p.lambda, p.m0, q);
  out.Z_inv = 1.0 + p.alpha / (2.0 * std::numbers::pi) * out.integral.value;
  out.Z = 1.0 / out.Z_inv;
  out.Z_inv_extrapolated = extrapolate_h1(f);
  out.methods_agree =
      std::abs(out.Z_inv - out.Z_inv_extrapolated) <= 1e-4 * std::abs(out.Z_inv);
  return out;
}

double physical_mass(const DressingFunctions& f, double Z, const ModelParams& p) {
  p.validate();
  if (!(p.m0 > 0.0)) {
    throw std::domain_error("physical_mass: requires m0 > 0");
  }
  return Z * f.h0().front();
}

MassTheoremReport verify_mass_theorem(const DressingFunctions& f,
                                      const ModelParams& p) {
  p.validate();
  if (!(p.m0 > 0.0)) {
    throw std::domain_error("verify_mass_theorem: requires m0 > 0");
  }
  MassTheoremReport rep;
  rep.min_margin = std::numeric_limits<double>::infinity();
  const auto& nodes = f.grid().nodes();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double margin = f.h0()[i] / p.m0 - f.h1()[i];
    if (margin < rep.min_margin) {
      rep.min_margin = margin;
      rep.u_at_min = nodes[i];
    }
  }
  if (p.alpha == 0.0) {
    rep.verdict = MassTheoremReport::Verdict::DegenerateFree;
  } else {
    rep.verdict = rep.min_margin > 0.0 ? MassTheoremReport::Verdict::Pass
                                       : MassTheoremReport::Verdict::Fail;
  }
  return rep;
}

double dispersion(const DressingFunctions& f, double u) {
  const DressingPair g = f.eval(u);
  return std::sqrt(g.g0 * g.g0 + g.g1 * g.g1);
}

Observables compute_observables(const DressingFunctions& f, const ModelParams& p,
                                const QuadratureSettings& quad) {
  Observables obs;
  obs.renorm = wavefunction_renorm(f, p, quad);
  obs.g0_at_zero = f.h0().front();
  if (f.grid().size() > 1) {
    const double u0 = f.grid().nodes()[0];
    const double u1 = f.grid().nodes()[1];
    obs.g0_at_zero_extrapolated =
        f.h0()[0] - (f.h0()[1] - f.h0()[0]) * u0 * u0 / (u1 * u1 - u0 * u0);
  } else {
    obs.g0_at_zero_extrapolated = obs.g0_at_zero;
  }
  obs.m_phys = physical_mass(f, obs.renorm.Z, p);
  obs.dispersion.reserve(f.grid().size());
  for (double u : f.grid().nodes()) obs.dispersion.push_back(dispersion(f, u));
  return obs;
}

}  // namespace dressed
