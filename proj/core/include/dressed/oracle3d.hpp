#pragma once

#include "dressed/dressing.hpp"
#include "dressed/kernels.hpp"

namespace dressed {

struct Oracle3dResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = true;
};

// Right-hand side of the original 3D momentum-space integral for one
// channel, evaluated without the reduced Q0/Q1 kernels: the azimuth
// contributes 2 pi analytically, the polar angle is Gauss-integrated in
// log|p - q| (the substitution that regularizes |p - q|^-2), and the radial
// integral runs on an independent adaptive tanh-sinh rule split at v = u.
// Serves as the cross-check of the angular reduction.
Oracle3dResult direct_3d_rhs(Channel c, const DressingFunctions& f, double u,
                             const ModelParams& p, double tol = 1e-9);

}  // namespace dressed
