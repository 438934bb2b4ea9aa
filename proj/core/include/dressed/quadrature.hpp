#pragma once

#include <functional>

#include "dressed/dressing.hpp"
#include "dressed/kernels.hpp"

namespace dressed {

struct QuadratureSettings {
  double tol = 1e-12;           // absolute accuracy target for the integral
  int node_budget = 200;        // tanh-sinh nodes per panel
  double panel_fraction = 0.5;  // s: singular panels span [u(1-s), u(1+s)]
  // Interior points where the integrand is merely continuous (sampled
  // integrands kink at their grid nodes). Regular stretches then integrate
  // cell-aligned, each cell analytic. Not owned; must outlive the call.
  const std::vector<double>* breakpoints = nullptr;
};

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = true;  // false: tol not reached within the node budget
};

using Integrand = std::function<double(double)>;

// integral_0^lambda K_c(u, v) w(v) dv with the integrable log singularity on
// the diagonal. The domain splits at u(1 -+ s); tanh-sinh nodes cluster at
// the panel edges touching v = u, and the kernel there is fed the exact
// node-to-diagonal distance. The outer panels are subdivided geometrically
// so structure at the m0 and u scales stays resolved. u = 0 and u = lambda
// get edge-adapted panels. Throws std::runtime_error on a non-finite
// integrand sample, reporting the offending v.
IntegralResult integrate_singular(Channel c, double u, const Integrand& w,
                                  const ModelParams& p,
                                  const QuadratureSettings& s = {});

// Tanh-sinh integration of a kernel-free integrand on [a, b] with the same
// geometric subdivision; structure_scale plays the role of m0.
IntegralResult integrate_de(const Integrand& f, double a, double b,
                            double structure_scale,
                            const QuadratureSettings& s = {});

}  // namespace dressed
