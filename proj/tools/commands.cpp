#include "commands.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>
#include <vector>

#include "dressed/dressing.hpp"
#include "dressed/format.hpp"
#include "dressed/kernels.hpp"
#include "dressed/massless.hpp"
#include "dressed/observables.hpp"
#include "dressed/oracle3d.hpp"
#include "dressed/quadrature.hpp"
#include "dressed/solver.hpp"

namespace dressed::cli {

namespace {

namespace fs = std::filesystem;

struct RunArtifacts {
  ModelParams params;
  SolveResult result;
  Observables observables;
  MassTheoremReport theorem;
};

ModelParams to_params(const RunConfig& cfg, double alpha, double lambda) {
  return ModelParams{.alpha = alpha, .lambda = lambda * cfg.m0, .m0 = cfg.m0};
}

SolveOptions to_options(const RunConfig& cfg) {
  SolveOptions opts;
  opts.tol = cfg.tol;
  opts.max_iter = cfg.max_iter;
  opts.quad.tol = cfg.quad_tol;
  opts.quad.node_budget = cfg.quad_node_budget;
  return opts;
}

RunArtifacts solve_one(const RunConfig& cfg, double alpha, double lambda) {
  const ModelParams params = to_params(cfg, alpha, lambda);
  auto grid = std::make_shared<MomentumGrid>(MomentumGrid::log_spaced(
      params.lambda, static_cast<std::size_t>(cfg.grid_n), cfg.u_min_ratio));
  SolveResult result = solve_fixed_point(params, std::move(grid), to_options(cfg));
  Observables obs =
      compute_observables(result.solution, params, to_options(cfg).quad);
  MassTheoremReport theorem = verify_mass_theorem(result.solution, params);
  return RunArtifacts{params, std::move(result), std::move(obs), theorem};
}

std::ofstream open_out(const fs::path& path) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);  // LF endings everywhere
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  return out;
}

const char* verdict_name(MassTheoremReport::Verdict v) {
  switch (v) {
    case MassTheoremReport::Verdict::Pass:
      return "pass";
    case MassTheoremReport::Verdict::Fail:
      return "fail";
    default:
      return "degenerate-free";
  }
}

void write_report(std::ostream& os, const RunConfig& cfg, const RunArtifacts& art) {
  os << "alpha: " << format_g17(art.params.alpha) << '\n'
     << "lambda_over_m0: " << format_g17(art.params.lambda / art.params.m0) << '\n'
     << "m0: " << format_g17(art.params.m0) << '\n'
     << "grid_n: " << cfg.grid_n << '\n'
     << "u_min_ratio: " << format_g17(cfg.u_min_ratio) << '\n'
     << "tol: " << format_g17(cfg.tol) << '\n';
  art.result.report.write(os);
  const auto& c = art.result.report.contraction;
  os << "certified_contraction: "
     << (c.feasible && art.result.report.converged ? "true" : "false") << '\n'
     << "lambda_crit_over_m0: " << format_g17(feasibility_cutoff(art.params.alpha))
     << '\n'
     << "log_lambda_crit_over_m0: "
     << format_g17(log_feasibility_cutoff(art.params.alpha)) << '\n';
  const auto& obs = art.observables;
  os << "Z_inv: " << format_g17(obs.renorm.Z_inv) << '\n'
     << "Z: " << format_g17(obs.renorm.Z) << '\n'
     << "Z_inv_extrapolated: " << format_g17(obs.renorm.Z_inv_extrapolated) << '\n'
     << "z_methods_agree: " << (obs.renorm.methods_agree ? "true" : "false") << '\n'
     << "g0_at_zero: " << format_g17(obs.g0_at_zero) << '\n'
     << "m_phys: " << format_g17(obs.m_phys) << '\n'
     << "m_over_m0: " << format_g17(obs.m_phys / art.params.m0) << '\n'
     << "mass_theorem_margin: " << format_g17(art.theorem.min_margin) << '\n'
     << "mass_theorem_verdict: " << verdict_name(art.theorem.verdict) << '\n';
}

void write_solution_csv(std::ostream& os, const RunArtifacts& art) {
  os << "u,g0,g1,g1_over_u,dispersion\n";
  const auto& f = art.result.solution;
  const auto& nodes = f.grid().nodes();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    os << format_g17(nodes[i]) << ',' << format_g17(f.h0()[i]) << ','
       << format_g17(nodes[i] * f.h1()[i]) << ',' << format_g17(f.h1()[i]) << ','
       << format_g17(art.observables.dispersion[i]) << '\n';
  }
}

// Runs fn(i) for i in [0, n) on up to `workers` threads.
void parallel_for(int n, int workers, const std::function<void(int)>& fn) {
  if (workers <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  const int count = std::min(workers, n);
  pool.reserve(static_cast<std::size_t>(count));
  for (int t = 0; t < count; ++t) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

DressingFunctions smooth_box_member(const GridPtr& grid, const ModelParams& p,
                                    const BoundsBox& box, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const double a0 = 2.0 * std::numbers::pi * u01(rng), b0 = 0.5 + 1.5 * u01(rng);
  const double a1 = 2.0 * std::numbers::pi * u01(rng), b1 = 0.5 + 1.5 * u01(rng);
  std::vector<double> h0(grid->size()), h1(grid->size());
  for (std::size_t i = 0; i < grid->size(); ++i) {
    const double x = std::log(grid->nodes()[i]);
    h0[i] = p.m0 * (1.0 + box.delta * (0.5 + 0.5 * std::sin(a0 + b0 * x)));
    h1[i] = 1.0 + box.epsilon * (0.5 + 0.5 * std::sin(a1 + b1 * x));
  }
  return DressingFunctions(grid, std::move(h0), std::move(h1));
}

std::vector<Check> verify_battery(const RunConfig& cfg) {
  std::vector<Check> checks;
  std::mt19937_64 rng(20240210);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  const auto add = [&checks](std::string name, bool pass, std::string detail) {
    checks.push_back({std::move(name), pass, std::move(detail)});
  };

  {  // Q1(z) = z Q0(z) - 1 and kernel symmetry
    double worst = 0.0, worst_sym = 0.0;
    for (int i = 0; i < 20000; ++i) {
      const double z = 1.0 + std::pow(10.0, -9.0 + 15.0 * u01(rng));
      const double zq0 = z * legendre_q0(z);
      worst = std::max(worst, std::abs(legendre_q1(z) - (zq0 - 1.0)) /
                                  std::max(1.0, zq0));
      const double u = std::pow(10.0, -6.0 + 12.0 * u01(rng));
      const double v = std::pow(10.0, -6.0 + 12.0 * u01(rng));
      if (u == v) continue;
      for (Channel c : {Channel::Scalar, Channel::Vector}) {
        const double a = u * u * reduced_kernel(c, u, v);
        const double b = v * v * reduced_kernel(c, v, u);
        if (a < 0.0 || b < 0.0) worst_sym = 1.0;
        worst_sym = std::max(worst_sym, std::abs(a - b) / std::abs(a));
      }
    }
    add("legendre_q1_identity", worst <= 1e-14, "max deviation " + format_g17(worst));
    add("kernel_symmetry", worst_sym <= 1e-13, "max deviation " + format_g17(worst_sym));
  }

  {  // log((t+1)/(t-1)) < 2t/(t^2-1), and its second-order companion
    int violations = 0, violations2 = 0;
    for (int i = 0; i < 100000; ++i) {
      const double t = i % 2 == 0 ? 1.0 + std::pow(10.0, -9.0 + 15.0 * u01(rng))
                                  : 1.0 + (1e6 - 1.0) * u01(rng);
      if (std::log1p(2.0 / (t - 1.0)) >= 2.0 * t / ((t - 1.0) * (t + 1.0))) {
        ++violations;
      }
      const double t2m1 = (t - 1.0) * (t + 1.0);
      if (2.0 / t2m1 >= 2.0 * t * t / (t2m1 * t2m1)) ++violations2;
    }
    add("inequality_first_order", violations == 0,
        std::to_string(violations) + " violations in 100000 draws");
    add("inequality_second_order", violations2 == 0,
        std::to_string(violations2) + " violations in 100000 draws");
  }

  {  // tail expansion
    bool ok = true;
    double worst = 0.0;
    for (double v : {10.0, 100.0, 1000.0}) {
      const double diff =
          std::abs(v * legendre_q1(0.5 * (1.0 / v + v)) - kernel_tail(v));
      worst = std::max(worst, diff * std::pow(v, 5));
      ok = ok && diff <= std::pow(v, -5);
    }
    add("kernel_tail", ok, "max |v Q1 - tail| * v^5 = " + format_g17(worst));
  }

  {  // massless closed form against one map application
    const ModelParams p{.alpha = cfg.alpha > 0.0 ? cfg.alpha : 0.1,
                        .lambda = 1.0,
                        .m0 = 0.0};
    std::vector<double> nodes;
    for (int i = 0; i < 50; ++i) {
      nodes.push_back(std::pow(10.0, -6.0 + 6.0 * (i / 49.0)) * 0.9);
    }
    nodes.push_back(1.0);
    const auto grid = std::make_shared<MomentumGrid>(std::move(nodes));
    const DressingFunctions start(grid, std::vector<double>(grid->size(), 0.0),
                                  std::vector<double>(grid->size(), 1.0));
    const QuadratureSettings q{.tol = 1e-14, .node_budget = cfg.quad_node_budget};
    const auto once = apply_T(p, start, q);
    const auto twice = apply_T(p, once, q);
    double worst = 0.0, drift = 0.0;
    for (std::size_t i = 0; i + 1 < grid->size(); ++i) {
      const double u = grid->nodes()[i];
      const double exact = massless_g1(u, p);
      worst = std::max(worst, std::abs(u * once.h1()[i] - exact) / exact);
      drift = std::max(drift,
                       std::abs(twice.h1()[i] - once.h1()[i]) /
                           std::max(1.0, once.h1()[i]));
    }
    add("massless_oracle", worst <= 1e-8 && drift <= 1e-8,
        "map vs closed form " + format_g17(worst) + ", second application " +
            format_g17(drift));

    double prev = 1e300;
    bool monotone = true;
    for (double r : {1e-3, 1e-5, 1e-7}) {
      const double dev = std::abs(massless_g1(r, p) - massless_asymptote(r, p)) /
                         (r * std::log(1.0 / r));
      monotone = monotone && dev < prev;
      prev = dev;
    }
    add("massless_asymptote", monotone && prev <= 1e-2,
        "deviation at u/lambda = 1e-7: " + format_g17(prev));
  }

  const ModelParams p = to_params(cfg, cfg.alpha, cfg.lambda_over_m0);
  const auto grid = std::make_shared<MomentumGrid>(MomentumGrid::log_spaced(
      p.lambda, static_cast<std::size_t>(cfg.grid_n), cfg.u_min_ratio));
  const auto contraction = contraction_parameters(p);
  const BoundsBox box{contraction.epsilon, contraction.delta};

  {  // 3D reduction agreement on random admissible pairs
    double worst = 0.0;
    bool warned = false;
    const BoundsBox sample_box{contraction.feasible ? contraction.epsilon : 0.25,
                               contraction.feasible ? contraction.delta : 0.25};
    for (int k = 0; k < 20; ++k) {
      const auto f = smooth_box_member(grid, p, sample_box, rng);
      const double u = 0.9 * p.lambda * std::pow(10.0, -5.0 * u01(rng));
      for (Channel c : {Channel::Scalar, Channel::Vector}) {
        const Integrand w = [&f, c](double v) {
          const auto g = f.eval(v);
          return (c == Channel::Scalar ? g.g0 : g.g1) /
                 std::sqrt(g.g0 * g.g0 + g.g1 * g.g1);
        };
        QuadratureSettings q{.tol = 1e-9 * (c == Channel::Scalar ? p.m0 : u) *
                                    2.0 * std::numbers::pi /
                                    std::max(p.alpha, 1e-30),
                             .node_budget = cfg.quad_node_budget};
        q.breakpoints = &grid->nodes();
        const auto reduced_int = integrate_singular(c, u, w, p, q);
        const double reduced =
            (c == Channel::Scalar ? p.m0 : u) +
            p.alpha / (2.0 * std::numbers::pi) * reduced_int.value;
        const auto oracle = direct_3d_rhs(c, f, u, p, 1e-9);
        worst = std::max(worst, std::abs(oracle.value - reduced) /
                                    std::abs(reduced));
        warned = warned || !reduced_int.converged || !oracle.converged;
      }
    }
    add("reduction_agreement", worst <= 1e-6 && !warned,
        "max relative mismatch " + format_g17(worst) +
            (warned ? " (accuracy warning)" : ""));
  }

  {  // solve-based checks
    const auto art = solve_one(cfg, cfg.alpha, cfg.lambda_over_m0);
    const auto& rep = art.result.report;
    add("solver_converged", rep.converged,
        "final residual " + format_g17(rep.final_residual));

    bool rate_ok = true;
    for (double r : rep.measured_rates) {
      rate_ok = rate_ok && (!contraction.feasible ||
                            r <= contraction.theoretical_rate);
    }
    add("contraction_rate_bound", rate_ok,
        "max measured " + format_g17(rep.max_measured_rate()) + " vs bound " +
            format_g17(contraction.theoretical_rate));

    add("lemma_membership",
        !contraction.feasible || membership_check(art.result.solution, p, box),
        contraction.feasible ? "final iterate inside the (epsilon, delta) box"
                             : "skipped: no certificate for these parameters");

    // invariance of the box under one application
    bool invariant = true;
    if (contraction.feasible) {
      for (int k = 0; k < 6; ++k) {
        const auto f = smooth_box_member(grid, p, box, rng);
        invariant = invariant && membership_check(apply_T(p, f, to_options(cfg).quad), p, box);
      }
    }
    add("lemma_invariance", invariant,
        contraction.feasible ? "T(f) stayed in the box for 6 random members"
                             : "skipped: no certificate for these parameters");

    const double arsinh = std::asinh(p.lambda / p.m0);
    const double cap0 = p.m0 * (1.0 + p.alpha / std::numbers::pi *
                                          (1.0 + contraction.delta) * arsinh);
    const double cap1 = 1.0 + 50.0 * p.alpha / (9.0 * std::numbers::pi) *
                                  (1.0 + contraction.epsilon) * arsinh;
    bool bounds_ok = true;
    for (std::size_t i = 0; i < grid->size(); ++i) {
      bounds_ok = bounds_ok && art.result.solution.h0()[i] <= cap0 &&
                  art.result.solution.h1()[i] <= cap1;
    }
    add("lemma_pointwise_bounds", !contraction.feasible || bounds_ok,
        "g0 cap " + format_g17(cap0) + ", g1/u cap " + format_g17(cap1));

    const auto& obs = art.observables;
    const bool z_ok = p.alpha == 0.0
                          ? obs.renorm.Z_inv == 1.0
                          : obs.renorm.Z_inv > 1.0 && obs.renorm.methods_agree;
    add("wavefunction_renorm", z_ok,
        "Z_inv " + format_g17(obs.renorm.Z_inv) + " vs extrapolated " +
            format_g17(obs.renorm.Z_inv_extrapolated));
    const bool m_ok = p.alpha == 0.0 ? obs.m_phys == p.m0 : obs.m_phys > p.m0;
    add("mass_shift", m_ok, "m/m0 = " + format_g17(obs.m_phys / p.m0));
    add("mass_theorem",
        art.theorem.verdict != MassTheoremReport::Verdict::Fail,
        "min margin " + format_g17(art.theorem.min_margin));
  }

  return checks;
}

}  // namespace

int run_solve(const RunConfig& cfg) {
  cfg.validate();
  const auto art = solve_one(cfg, cfg.alpha, cfg.lambda_over_m0);

  auto csv = open_out(fs::path(cfg.out_dir) / "solution.csv");
  write_solution_csv(csv, art);
  auto report = open_out(fs::path(cfg.out_dir) / "report.txt");
  write_report(report, cfg, art);

  if (!art.result.report.converged) return kExitNotConverged;
  if (art.theorem.verdict == MassTheoremReport::Verdict::Fail) {
    return kExitVerifyFailed;
  }
  return kExitOk;
}

int run_sweep(const RunConfig& cfg) {
  cfg.validate();
  const auto plan = cfg.sweep_plan();
  if (plan.empty()) {
    throw ConfigError(
        "sweep needs sweep_alpha, sweep_lambda_over_m0 or sweep_points");
  }

  struct Row {
    std::string text;
    bool failed = false;
  };
  std::vector<Row> rows(plan.size());
  parallel_for(static_cast<int>(plan.size()), cfg.workers, [&](int i) {
    const auto [alpha, lambda] = plan[static_cast<std::size_t>(i)];
    std::ostringstream row;
    row << format_g17(alpha) << ',' << format_g17(lambda) << ',';
    try {
      const auto art = solve_one(cfg, alpha, lambda);
      const auto& c = art.result.report.contraction;
      const bool converged = art.result.report.converged;
      row << format_g17(c.Y) << ',' << format_g17(c.epsilon) << ','
          << format_g17(c.delta) << ',' << format_g17(c.theoretical_rate) << ','
          << art.result.report.iterations << ','
          << format_g17(art.observables.renorm.Z) << ','
          << format_g17(art.observables.m_phys / art.params.m0) << ','
          << format_g17(art.theorem.min_margin) << ','
          << (converged ? "ok" : "not_converged");
      rows[static_cast<std::size_t>(i)].failed = !converged;
    } catch (const std::exception& e) {
      row << ",,,,,,,," << "error";
      rows[static_cast<std::size_t>(i)].failed = true;
      std::cerr << "sweep point alpha=" << format_g17(alpha)
                << " lambda_over_m0=" << format_g17(lambda) << ": " << e.what()
                << '\n';
    }
    rows[static_cast<std::size_t>(i)].text = row.str();
  });

  auto csv = open_out(fs::path(cfg.out_dir) / "sweep.csv");
  csv << "alpha,lambda_over_m0,Y,epsilon,delta,theoretical_rate,iterations,Z,"
         "m_over_m0,theorem_margin,status\n";
  bool any_failed = false;
  for (const Row& row : rows) {
    csv << row.text << '\n';
    any_failed = any_failed || row.failed;
  }
  return any_failed ? kExitNotConverged : kExitOk;
}

int run_verify(const RunConfig& cfg) {
  cfg.validate();
  const auto checks = verify_battery(cfg);

  auto out = open_out(fs::path(cfg.out_dir) / "verify.txt");
  bool all_pass = true;
  for (const Check& c : checks) {
    out << c.name << ": " << (c.pass ? "PASS" : "FAIL") << " (" << c.detail
        << ")\n";
    all_pass = all_pass && c.pass;
  }
  out << "result: " << (all_pass ? "all checks passed" : "checks failed")
      << '\n';
  return all_pass ? kExitOk : kExitVerifyFailed;
}

}  // namespace dressed::cli
