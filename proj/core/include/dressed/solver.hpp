#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "dressed/dressing.hpp"
#include "dressed/quadrature.hpp"

namespace dressed {

// Certification constants of the fixed-point argument, all functions of
// Y = alpha * arsinh(lambda/m0) / pi.
struct ContractionData {
  double Y = 0.0;
  double epsilon = 0.0;           // 50Y/(9 - 50Y); +inf once Y >= 9/50
  double delta = 0.0;             // Y/(1 - Y); +inf once Y >= 1
  double theoretical_rate = 0.0;  // (2 + epsilon + delta) Y
  bool feasible = false;          // Y < 1/7: unique fixed point certified
};

// Throws std::domain_error for m0 == 0 (Y is undefined; use the massless
// closed form instead).
ContractionData contraction_parameters(const ModelParams& p);

// lambda/m0 at which Y reaches 1/7 for this alpha: sinh(pi/(7 alpha)).
// Overflows to +inf for small alpha; the log variant stays finite.
double feasibility_cutoff(double alpha);
double log_feasibility_cutoff(double alpha);

struct SolveOptions {
  double tol = 1e-10;  // sup_distance target
  int max_iter = 200;
  // quad.tol is the absolute accuracy of the map components g0 and g1;
  // apply_T rescales it into the integral tolerance.
  QuadratureSettings quad{};
};

struct SolveReport {
  std::size_t iterations = 0;
  std::vector<double> residuals;       // sup_distance per iteration
  std::vector<double> measured_rates;  // consecutive residual ratios
  ContractionData contraction{};
  bool converged = false;
  double final_residual = 0.0;
  double max_quadrature_error = 0.0;
  int quadrature_warnings = 0;

  double max_measured_rate() const;
  void write(std::ostream& os) const;  // key: value lines
};

struct TApplyStats {
  double max_quadrature_error = 0.0;
  int warnings = 0;
};

// One application of the map T: at every grid node,
//   T0(g)(u) = m0 + alpha/(2 pi) * int K0(u,v) g0/sqrt(g0^2+g1^2) dv,
//   T1(g)(u) = u  + alpha/(2 pi) * int K1(u,v) g1/sqrt(g0^2+g1^2) dv,
// with the integrand interpolated from f. Output lives on the same grid.
DressingFunctions apply_T(const ModelParams& p, const DressingFunctions& f,
                          const QuadratureSettings& quad = {},
                          TApplyStats* stats = nullptr);

struct SolveResult {
  DressingFunctions solution;
  SolveReport report;
};

// Banach iteration g <- T(g) from the box's lower corner (m0, u) until
// sup_distance < tol or max_iter. Requires m0 > 0. An infeasible Y still
// iterates; the report just loses its certificate.
SolveResult solve_fixed_point(const ModelParams& p, GridPtr grid,
                              const SolveOptions& opts = {});

// Same iteration from a caller-chosen admissible start.
SolveResult solve_fixed_point(const ModelParams& p, DressingFunctions initial,
                              const SolveOptions& opts = {});

}  // namespace dressed
