#include "dressed/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace dressed {

namespace {

// Truncation of the tanh-sinh abscissa t; complements reach ~6e-38 of the
// panel width there, far below any log-singular contribution we resolve.
constexpr double kTMax = 4.0;

// Per-panel geometric refinement ratio for regular sections when the
// integrand's kink locations are unknown.
constexpr double kPanelRatio = 16.0;

struct PanelResult {
  double value = 0.0;
  double error = 0.0;
  bool converged = false;
};

struct Panel {
  double a = 0.0;
  double b = 0.0;
  // Which end carries the v = u singularity; None for regular panels.
  enum class Edge { None, Left, Right } edge = Edge::None;
};

// Trapezoidal sums over nested tanh-sinh levels on [a, b]. The integrand
// receives the node and its exact distances to both ends, so callers can
// evaluate log-singular factors without cancellation. Levels refine until
// successive sums differ by <= tol or the node budget is spent.
template <class F>
PanelResult de_panel(const F& f, double a, double b, double tol,
                     int node_budget) {
  const double width = b - a;
  const double half = 0.5 * width;
  constexpr double kHalfPi = 1.5707963267948966;

  auto sample = [&](double t) -> double {
    const double g = kHalfPi * std::sinh(t);
    const double ag = std::abs(g);
    const double e2 = std::exp(-2.0 * ag);
    const double complement = width * e2 / (1.0 + e2);  // half*(1 - tanh|g|)
    const double cg = std::cosh(g);
    const double weight = half * kHalfPi * std::cosh(t) / (cg * cg);
    if (!(complement > 0.0) || weight == 0.0) return 0.0;
    double x, da, db;
    if (t >= 0.0) {
      db = complement;
      x = b - complement;
      da = width - complement;
    } else {
      da = complement;
      x = a + complement;
      db = width - complement;
    }
    if (!(x > a) || !(x < b)) return 0.0;
    const double y = f(x, da, db);
    if (!std::isfinite(y)) {
      throw std::runtime_error(
          "integrate: non-finite integrand sample at v = " + std::to_string(x));
    }
    return weight * y;
  };

  int max_level = 0;
  while (8 * (2 << max_level) + 1 <= node_budget) ++max_level;

  double sum = sample(0.0);
  for (int k = 1; k <= static_cast<int>(kTMax); ++k) {
    sum += sample(static_cast<double>(k)) + sample(static_cast<double>(-k));
  }
  double h = 1.0;
  PanelResult res;
  res.value = h * sum;
  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    const int count = static_cast<int>(kTMax / h);
    for (int k = 1; k <= count; k += 2) {
      sum += sample(k * h) + sample(-k * h);
    }
    const double value = h * sum;
    res.error = std::abs(value - res.value);
    res.value = value;
    if (level >= 2 && res.error <= tol) {
      res.converged = true;
      break;
    }
  }
  return res;
}

// 8-point Gauss-Legendre half-rule on [0, 1] scale; applied to stretches
// that are analytic end to end (one interpolation cell, say).
constexpr std::array<double, 4> kGaussX = {
    0.18343464249564980, 0.52553240991632899,
    0.79666647741362674, 0.96028985649753623};
constexpr std::array<double, 4> kGaussW = {
    0.36268378337836198, 0.31370664587788729,
    0.22238103445337447, 0.10122853629037626};

template <class F>
PanelResult gauss_cell(const F& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  double magnitude = 0.0;
  for (std::size_t j = 0; j < kGaussX.size(); ++j) {
    for (double sign : {-1.0, 1.0}) {
      const double x = mid + sign * half * kGaussX[j];
      if (!(x > a) || !(x < b)) continue;
      const double y = f(x, x - a, b - x);
      if (!std::isfinite(y)) {
        throw std::runtime_error(
            "integrate: non-finite integrand sample at v = " +
            std::to_string(x));
      }
      sum += kGaussW[j] * y;
      magnitude += kGaussW[j] * std::abs(y);
    }
  }
  PanelResult res;
  res.value = half * sum;
  // analytic on the closed cell by the caller's declaration: roundoff-level
  res.error = 16.0 * std::numeric_limits<double>::epsilon() * half * magnitude;
  res.converged = true;
  return res;
}

// Splits [a, b] into log-uniform sections of ratio <= kPanelRatio starting
// from max(a, sigma/8), with one closing panel down to a. sigma is the
// smallest scale at which the integrand has structure.
void append_geometric_panels(std::vector<Panel>& panels, double a, double b,
                             double sigma) {
  if (!(b > a)) return;
  double lo = std::max(a, sigma / 8.0);
  if (!(lo > 0.0) || lo >= b) {
    panels.push_back({a, b, Panel::Edge::None});
    return;
  }
  if (lo > a) panels.push_back({a, lo, Panel::Edge::None});
  const int n = std::max(
      1, static_cast<int>(std::ceil(std::log(b / lo) / std::log(kPanelRatio))));
  double left = lo;
  for (int k = 1; k <= n; ++k) {
    const double right = k == n ? b : lo * std::pow(b / lo, double(k) / n);
    panels.push_back({left, right, Panel::Edge::None});
    left = right;
  }
}

// Regular stretch: cell-aligned when breakpoints are declared, geometric
// otherwise. Cells get the Gauss rule, everything else tanh-sinh.
void append_regular_panels(std::vector<Panel>& panels, double a, double b,
                           double sigma, const std::vector<double>* breaks) {
  if (!(b > a)) return;
  if (breaks == nullptr || breaks->empty()) {
    append_geometric_panels(panels, a, b, sigma);
    return;
  }
  double left = a;
  auto it = std::upper_bound(breaks->begin(), breaks->end(), a);
  for (; it != breaks->end() && *it < b; ++it) {
    if (*it > left) {
      panels.push_back({left, *it, Panel::Edge::None});
      left = *it;
    }
  }
  if (b > left) panels.push_back({left, b, Panel::Edge::None});
}

// Singular stretch with the diagonal on the given end. Cell-aligned pieces
// all run tanh-sinh (the log branch point sits too close for Gauss); only
// the piece touching the diagonal needs the exact edge distance.
void append_singular_panels(std::vector<Panel>& panels, double a, double b,
                            Panel::Edge edge, const std::vector<double>* breaks) {
  if (!(b > a)) return;
  if (breaks == nullptr || breaks->empty()) {
    panels.push_back({a, b, edge});
    return;
  }
  std::vector<double> cuts{a};
  auto it = std::upper_bound(breaks->begin(), breaks->end(), a);
  for (; it != breaks->end() && *it < b; ++it) {
    if (*it > cuts.back()) cuts.push_back(*it);
  }
  cuts.push_back(b);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const bool touches = edge == Panel::Edge::Left ? i == 0 : i + 2 == cuts.size();
    panels.push_back({cuts[i], cuts[i + 1],
                      touches ? edge : Panel::Edge::None});
  }
}

struct Workspace {
  std::vector<Panel> panels;
  double tol = 0.0;
  int node_budget = 0;
  bool cell_aligned = false;
  // Gauss cells are for analytic stretches; pieces this close to the
  // diagonal (relative to their width) run tanh-sinh instead.
  double diagonal = -1.0;
};

template <class F>
IntegralResult run_panels(const Workspace& ws, const F& f) {
  IntegralResult out;
  if (ws.panels.empty()) return out;
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  const double panel_tol = ws.tol / static_cast<double>(ws.panels.size());
  for (const Panel& pan : ws.panels) {
    if (!(pan.b > pan.a)) continue;
    bool use_gauss = ws.cell_aligned && pan.edge == Panel::Edge::None &&
                     pan.b <= 1.25 * pan.a;  // wide cells go to tanh-sinh
    if (use_gauss && ws.diagonal >= 0.0) {
      const double dist = std::min(std::abs(ws.diagonal - pan.a),
                                   std::abs(ws.diagonal - pan.b));
      if (dist < 4.0 * (pan.b - pan.a)) use_gauss = false;
    }
    PanelResult r;
    if (use_gauss) {
      r = gauss_cell([&](double x, double da, double db) { return f(x, da, db, pan.edge); },
                     pan.a, pan.b);
    } else {
      r = de_panel([&](double x, double da, double db) { return f(x, da, db, pan.edge); },
                   pan.a, pan.b, panel_tol, ws.node_budget);
    }
    out.value += r.value;
    out.error_estimate += r.error;
  }
  // Accuracy is judged for the integral as a whole; a many-panel sum cannot
  // be certified below its own roundoff.
  if (out.error_estimate > std::max(ws.tol, 256.0 * kEps * std::abs(out.value))) {
    out.converged = false;
  }
  return out;
}

}  // namespace

IntegralResult integrate_singular(Channel c, double u, const Integrand& w,
                                  const ModelParams& p,
                                  const QuadratureSettings& s) {
  p.validate();
  if (!(u >= 0.0) || u > p.lambda) {
    throw std::domain_error("integrate_singular: u must lie in [0, lambda]");
  }
  if (!(s.tol > 0.0)) {
    throw std::invalid_argument("integrate_singular: tol must be > 0");
  }
  if (!(s.panel_fraction > 0.0 && s.panel_fraction < 1.0)) {
    throw std::invalid_argument(
        "integrate_singular: panel_fraction must lie in (0, 1)");
  }
  if (u == 0.0 && c == Channel::Vector) {
    return {0.0, 0.0, true};  // K1(0+, v) = 0
  }

  double sigma = p.lambda;
  if (p.m0 > 0.0) sigma = std::min(sigma, p.m0);
  if (u > 0.0) sigma = std::min(sigma, u);

  Workspace ws;
  ws.tol = s.tol;
  ws.node_budget = s.node_budget;
  ws.cell_aligned = s.breakpoints != nullptr && !s.breakpoints->empty();
  ws.diagonal = u;
  if (u == 0.0) {
    append_regular_panels(ws.panels, 0.0, p.lambda, sigma, s.breakpoints);
  } else {
    const double left = u * (1.0 - s.panel_fraction);
    const double right = std::min(u * (1.0 + s.panel_fraction), p.lambda);
    append_regular_panels(ws.panels, 0.0, left, sigma, s.breakpoints);
    append_singular_panels(ws.panels, left, u, Panel::Edge::Right, s.breakpoints);
    if (u < p.lambda) {
      append_singular_panels(ws.panels, u, right, Panel::Edge::Left, s.breakpoints);
      append_regular_panels(ws.panels, right, p.lambda, sigma, s.breakpoints);
    }
  }

  return run_panels(ws, [&](double v, double da, double db, Panel::Edge edge) {
    double gap;
    switch (edge) {
      case Panel::Edge::Left:
        gap = da;
        break;
      case Panel::Edge::Right:
        gap = db;
        break;
      default:
        gap = std::abs(u - v);
    }
    return reduced_kernel(c, u, v, gap) * w(v);
  });
}

IntegralResult integrate_de(const Integrand& f, double a, double b,
                            double structure_scale,
                            const QuadratureSettings& s) {
  if (!(b > a)) throw std::invalid_argument("integrate_de: need b > a");
  if (!(s.tol > 0.0)) throw std::invalid_argument("integrate_de: tol must be > 0");
  const double sigma = structure_scale > 0.0 ? structure_scale : b - a;
  Workspace ws;
  ws.tol = s.tol;
  ws.node_budget = s.node_budget;
  ws.cell_aligned = s.breakpoints != nullptr && !s.breakpoints->empty();
  append_regular_panels(ws.panels, a, b, sigma, s.breakpoints);
  return run_panels(
      ws, [&f](double x, double, double, Panel::Edge) { return f(x); });
}

}  // namespace dressed
