#pragma once

#include <vector>

#include "dressed/dressing.hpp"
#include "dressed/quadrature.hpp"

namespace dressed {

struct WavefunctionRenorm {
  double Z_inv = 1.0;               // limiting-kernel value (primary)
  double Z = 1.0;
  double Z_inv_extrapolated = 1.0;  // small-node extrapolation cross-check
  bool methods_agree = true;        // within 1e-4 relative
  IntegralResult integral{};
};

// Z^-1 = lim_{u->0+} g1(u)/u. Primary route: the u -> 0 limit of the Vector
// kernel, Z^-1 = 1 + alpha/(2 pi) int_0^lambda 4/(3v) g1/sqrt(g0^2+g1^2) dv.
// Cross-check: linear extrapolation of h1 over the smallest grid nodes.
// Throws std::domain_error for m0 == 0 where the limit diverges.
WavefunctionRenorm wavefunction_renorm(const DressingFunctions& f,
                                       const ModelParams& p,
                                       const QuadratureSettings& quad = {});

// Physical mass m = Z * g0(0+), with g0(0+) the constant extension of h0.
double physical_mass(const DressingFunctions& f, double Z, const ModelParams& p);

struct MassTheoremReport {
  enum class Verdict { Pass, Fail, DegenerateFree };
  double min_margin = 0.0;  // min over nodes of g0(u)/m0 - g1(u)/u
  double u_at_min = 0.0;
  Verdict verdict = Verdict::Pass;
};

// Checks the strict ordering g0(u)/m0 > g1(u)/u at every node. alpha == 0 is
// the degenerate free case: equality everywhere, reported as such.
MassTheoremReport verify_mass_theorem(const DressingFunctions& f,
                                      const ModelParams& p);

// Dispersion E(u) = sqrt(g0(u)^2 + g1(u)^2) for u in (0, lambda].
double dispersion(const DressingFunctions& f, double u);

struct Observables {
  WavefunctionRenorm renorm{};
  double g0_at_zero = 0.0;
  double g0_at_zero_extrapolated = 0.0;  // two-node Richardson cross-check
  double m_phys = 0.0;
  std::vector<double> dispersion;  // E at each grid node
};

Observables compute_observables(const DressingFunctions& f, const ModelParams& p,
                                const QuadratureSettings& quad = {});

}  // namespace dressed
