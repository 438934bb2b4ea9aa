#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "run_config.hpp"

namespace {

using dressed::cli::RunConfig;

struct RawOptions {
  std::string config_path;
  std::string alpha;
  std::string lambda_over_m0;
  std::string tol;
  int grid_n = -1;
  int max_iter = -1;
  int workers = -1;
  std::string out_dir;
};

void add_common_options(CLI::App& cmd, RawOptions& raw) {
  cmd.add_option("--config", raw.config_path, "key = value configuration file");
  cmd.add_option("--alpha", raw.alpha,
                 "coupling constant (accepts forms like 1/137)");
  cmd.add_option("--lambda-over-m0", raw.lambda_over_m0,
                 "cutoff in bare-mass units (accepts forms like e^10)");
  cmd.add_option("--grid-n", raw.grid_n, "number of radial grid nodes");
  cmd.add_option("--tol", raw.tol, "fixed-point residual target");
  cmd.add_option("--max-iter", raw.max_iter, "iteration cap");
  cmd.add_option("--out", raw.out_dir, "output directory");
  cmd.add_option("--workers", raw.workers, "parallel sweep workers");
}

RunConfig assemble(const RawOptions& raw) {
  RunConfig cfg;
  if (!raw.config_path.empty()) {
    dressed::cli::apply_config_file(cfg, raw.config_path);
  }
  if (!raw.alpha.empty()) cfg.alpha = dressed::cli::parse_real(raw.alpha);
  if (!raw.lambda_over_m0.empty()) {
    cfg.lambda_over_m0 = dressed::cli::parse_real(raw.lambda_over_m0);
  }
  if (!raw.tol.empty()) cfg.tol = dressed::cli::parse_real(raw.tol);
  if (raw.grid_n >= 0) cfg.grid_n = raw.grid_n;
  if (raw.max_iter >= 0) cfg.max_iter = raw.max_iter;
  if (raw.workers >= 0) cfg.workers = raw.workers;
  if (!raw.out_dir.empty()) cfg.out_dir = raw.out_dir;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Self-consistent dressing of the cutoff electron-positron field:\n"
      "fixed point of the coupled (g0, g1) kernel equations plus the\n"
      "renormalization observables Z and m."};
  app.require_subcommand(1);

  RawOptions raw_solve, raw_sweep, raw_verify;
  CLI::App* solve = app.add_subcommand(
      "solve", "solve one parameter point; writes solution.csv and report.txt");
  add_common_options(*solve, raw_solve);
  CLI::App* sweep = app.add_subcommand(
      "sweep", "solve a list of parameter points; writes sweep.csv");
  add_common_options(*sweep, raw_sweep);
  CLI::App* verify = app.add_subcommand(
      "verify", "run the property battery; writes verify.txt");
  add_common_options(*verify, raw_verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : dressed::cli::kExitConfig;
  }

  try {
    if (solve->parsed()) return dressed::cli::run_solve(assemble(raw_solve));
    if (sweep->parsed()) return dressed::cli::run_sweep(assemble(raw_sweep));
    return dressed::cli::run_verify(assemble(raw_verify));
  } catch (const dressed::cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return dressed::cli::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return dressed::cli::kExitConfig;
  }
}
