#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <vector>

namespace dressed {

// Physical inputs. After rescaling, everything depends only on alpha and
// lambda/m0; the canonical internal choice is m0 = 1.
struct ModelParams {
  double alpha = 1.0 / 137.0;  // fine-structure coupling, >= 0
  double lambda = 1.0;         // UV cutoff momentum in units of m0, > 0
  double m0 = 1.0;             // bare mass; 0 selects the massless path

  void validate() const;  // throws std::invalid_argument
};

// Admissibility box: m0 <= g0(u) <= (1+delta) m0 and u <= g1(u) <= (1+eps) u.
struct BoundsBox {
  double epsilon = 0.0;
  double delta = 0.0;
};

// Strictly increasing radial sample points on (0, lambda]; the last node is
// the cutoff itself.
class MomentumGrid {
 public:
  explicit MomentumGrid(std::vector<double> nodes);

  // n log-uniform nodes from lambda*u_min_ratio up to lambda.
  static MomentumGrid log_spaced(double lambda, std::size_t n,
                                 double u_min_ratio = 1e-8);

  const std::vector<double>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& log_nodes() const noexcept { return log_nodes_; }
  double lambda() const noexcept { return nodes_.back(); }
  std::size_t size() const noexcept { return nodes_.size(); }

  friend bool operator==(const MomentumGrid& a, const MomentumGrid& b) {
    return a.nodes_ == b.nodes_;
  }

 private:
  std::vector<double> nodes_;
  std::vector<double> log_nodes_;
};

using GridPtr = std::shared_ptr<const MomentumGrid>;

struct DressingPair {
  double g0;
  double g1;
};

// The unknown pair sampled on a grid. Stored as h0(u) = g0(u) and
// h1(u) = g1(u)/u, so the free solution is exactly representable and g1
// stays resolved relative to u near zero. Evaluation is piecewise linear
// in (log u, h) with constant extension of (h0, h1) below the first node.
class DressingFunctions {
 public:
  DressingFunctions(GridPtr grid, std::vector<double> h0, std::vector<double> h1);

  // h0 = m0, h1 = 1: the free solution, also the lower corner of every box.
  static DressingFunctions free_solution(GridPtr grid, const ModelParams& p);

  // (g0(u), g1(u)) for u in (0, lambda]; throws std::domain_error outside.
  DressingPair eval(double u) const;

  const MomentumGrid& grid() const noexcept { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }
  const std::vector<double>& h0() const noexcept { return h0_; }
  const std::vector<double>& h1() const noexcept { return h1_; }

 private:
  GridPtr grid_;
  std::vector<double> h0_;
  std::vector<double> h1_;
};

// max over nodes of |f.g0 - g.g0| + |f.g1 - g.g1|, the metric of the
// contraction argument. Throws std::invalid_argument on mismatched grids.
double sup_distance(const DressingFunctions& f, const DressingFunctions& g);

// True iff every node satisfies m0 <= g0(u) <= (1+delta) m0 and
// u <= g1(u) <= (1+epsilon) u.
bool membership_check(const DressingFunctions& f, const ModelParams& p,
                      const BoundsBox& b);

// CSV with header u,g0,g1,g1_over_u; 17 significant digits, LF endings.
void write_csv(std::ostream& os, const DressingFunctions& f);

}  // namespace dressed
