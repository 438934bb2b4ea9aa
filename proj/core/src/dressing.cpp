#include "dressed/dressing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <utility>

#include "dressed/format.hpp"

namespace dressed {

std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void ModelParams::validate() const {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("ModelParams: alpha must be finite and >= 0");
  }
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("ModelParams: lambda must be finite and > 0");
  }
  if (!(m0 >= 0.0) || !std::isfinite(m0)) {
    throw std::invalid_argument("ModelParams: m0 must be finite and >= 0");
  }
}

MomentumGrid::MomentumGrid(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw std::invalid_argument("MomentumGrid: empty node list");
  double prev = 0.0;
  for (double u : nodes_) {
    if (!std::isfinite(u) || !(u > prev)) {
      throw std::invalid_argument(
          "MomentumGrid: nodes must be finite, positive and strictly increasing");
    }
    prev = u;
  }
  log_nodes_.reserve(nodes_.size());
  for (double u : nodes_) log_nodes_.push_back(std::log(u));
}

MomentumGrid MomentumGrid::log_spaced(double lambda, std::size_t n,
                                      double u_min_ratio) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("MomentumGrid: lambda must be finite and > 0");
  }
  if (n == 0) throw std::invalid_argument("MomentumGrid: need at least one node");
  if (n > 1 && !(u_min_ratio > 0.0 && u_min_ratio < 1.0)) {
    throw std::invalid_argument("MomentumGrid: u_min_ratio must lie in (0, 1)");
  }
  std::vector<double> nodes(n);
  nodes.back() = lambda;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n - 1);
    nodes[i] = lambda * std::pow(u_min_ratio, 1.0 - t);
  }
  return MomentumGrid(std::move(nodes));
}

DressingFunctions::DressingFunctions(GridPtr grid, std::vector<double> h0,
                                     std::vector<double> h1)
    : grid_(std::move(grid)), h0_(std::move(h0)), h1_(std::move(h1)) {
  if (!grid_) throw std::invalid_argument("DressingFunctions: null grid");
  if (h0_.size() != grid_->size() || h1_.size() != grid_->size()) {
    throw std::invalid_argument("DressingFunctions: sample size differs from grid");
  }
  for (std::size_t i = 0; i < h0_.size(); ++i) {
    if (!std::isfinite(h0_[i]) || !std::isfinite(h1_[i])) {
      throw std::invalid_argument("DressingFunctions: non-finite sample");
    }
  }
}

DressingFunctions DressingFunctions::free_solution(GridPtr grid,
                                                   const ModelParams& p) {
  p.validate();
  const std::size_t n = grid->size();
  return DressingFunctions(std::move(grid), std::vector<double>(n, p.m0),
                           std::vector<double>(n, 1.0));
}

DressingPair DressingFunctions::eval(double u) const {
  const auto& nodes = grid_->nodes();
  if (!(u > 0.0) || u > nodes.back()) {
    throw std::domain_error("DressingFunctions::eval: u must lie in (0, lambda]");
  }
  if (u <= nodes.front()) {
    return {h0_.front(), u * h1_.front()};
  }
  const auto& xs = grid_->log_nodes();
  const double x = std::log(u);
  // first node with log >= x; u > nodes.front() guarantees it > begin()
  auto it = std::lower_bound(xs.begin(), xs.end(), x);
  if (it == xs.end()) {
    return {h0_.back(), u * h1_.back()};
  }
  const std::size_t r = static_cast<std::size_t>(it - xs.begin());
  if (xs[r] == x) {
    return {h0_[r], u * h1_[r]};
  }
  const std::size_t l = r - 1;
  const double t = (x - xs[l]) / (xs[r] - xs[l]);
  const double g0 = h0_[l] + t * (h0_[r] - h0_[l]);
  const double h1 = h1_[l] + t * (h1_[r] - h1_[l]);
  return {g0, u * h1};
}

double sup_distance(const DressingFunctions& f, const DressingFunctions& g) {
  if (f.grid_ptr() != g.grid_ptr() && !(f.grid() == g.grid())) {
    throw std::invalid_argument("sup_distance: grids differ");
  }
  const auto& nodes = f.grid().nodes();
  double d = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double di = std::abs(f.h0()[i] - g.h0()[i]) +
                      nodes[i] * std::abs(f.h1()[i] - g.h1()[i]);
    d = std::max(d, di);
  }
  return d;
}

bool membership_check(const DressingFunctions& f, const ModelParams& p,
                      const BoundsBox& b) {
  const double g0_hi = (1.0 + b.delta) * p.m0;
  const double h1_hi = 1.0 + b.epsilon;
  for (std::size_t i = 0; i < f.h0().size(); ++i) {
    if (f.h0()[i] < p.m0 || f.h0()[i] > g0_hi) return false;
    if (f.h1()[i] < 1.0 || f.h1()[i] > h1_hi) return false;
  }
  return true;
}

void write_csv(std::ostream& os, const DressingFunctions& f) {
  os << "u,g0,g1,g1_over_u\n";
  const auto& nodes = f.grid().nodes();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    os << format_g17(nodes[i]) << ',' << format_g17(f.h0()[i]) << ','
       << format_g17(nodes[i] * f.h1()[i]) << ',' << format_g17(f.h1()[i])
       << '\n';
  }
}

}  // namespace dressed
