#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dressed::cli {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Everything the three subcommands need. Defaults match the library; the
// config file and the command line both write into this, flags last.
struct RunConfig {
  double alpha = 1.0 / 137.0;
  double lambda_over_m0 = 22026.465794806718;  // e^10
  double m0 = 1.0;
  int grid_n = 512;
  double u_min_ratio = 1e-8;
  double tol = 1e-10;
  int max_iter = 200;
  double quad_tol = 1e-12;
  int quad_node_budget = 200;
  std::string out_dir = "out";
  int workers = 1;
  std::vector<std::pair<double, double>> sweep_points;  // explicit (alpha, lambda)
  std::vector<double> sweep_alpha;                      // product lists
  std::vector<double> sweep_lambda;

  void validate() const;  // throws ConfigError
  // product of the lists plus the explicit pairs, in file order
  std::vector<std::pair<double, double>> sweep_plan() const;
};

// Accepts plain decimals plus the forms e^X, 10^X and a/b that parameter
// scans are naturally written in.
double parse_real(const std::string& text);

// key = value lines; '#' starts a comment; unknown keys are errors.
void apply_config_file(RunConfig& cfg, const std::string& path);
void apply_key(RunConfig& cfg, const std::string& key, const std::string& value);

}  // namespace dressed::cli
