#include "run_config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace dressed::cli {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_plain(const std::string& text) {
  char* end = nullptr;
  const double x = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0') {
    throw ConfigError("cannot parse number: '" + text + "'");
  }
  return x;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_real(item));
  return out;
}

int parse_int(const std::string& text) {
  const double x = parse_real(text);
  const int n = static_cast<int>(x);
  if (static_cast<double>(n) != x) {
    throw ConfigError("expected an integer, got '" + text + "'");
  }
  return n;
}

}  // namespace

double parse_real(const std::string& raw) {
  const std::string text = trim(raw);
  if (text.empty()) throw ConfigError("empty number");
  if (const auto caret = text.find('^'); caret != std::string::npos) {
    const std::string base = trim(text.substr(0, caret));
    const double expo = parse_plain(trim(text.substr(caret + 1)));
    if (base == "e") return std::exp(expo);
    return std::pow(parse_plain(base), expo);
  }
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    const double num = parse_plain(trim(text.substr(0, slash)));
    const double den = parse_plain(trim(text.substr(slash + 1)));
    if (den == 0.0) throw ConfigError("division by zero in '" + text + "'");
    return num / den;
  }
  return parse_plain(text);
}

void apply_key(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "alpha") {
    cfg.alpha = parse_real(value);
  } else if (key == "lambda_over_m0") {
    cfg.lambda_over_m0 = parse_real(value);
  } else if (key == "m0") {
    cfg.m0 = parse_real(value);
  } else if (key == "grid_n") {
    cfg.grid_n = parse_int(value);
  } else if (key == "u_min_ratio") {
    cfg.u_min_ratio = parse_real(value);
  } else if (key == "tol") {
    cfg.tol = parse_real(value);
  } else if (key == "max_iter") {
    cfg.max_iter = parse_int(value);
  } else if (key == "quad_tol") {
    cfg.quad_tol = parse_real(value);
  } else if (key == "quad_node_budget") {
    cfg.quad_node_budget = parse_int(value);
  } else if (key == "out") {
    cfg.out_dir = trim(value);
  } else if (key == "workers") {
    cfg.workers = parse_int(value);
  } else if (key == "sweep_alpha") {
    cfg.sweep_alpha = parse_list(value);
  } else if (key == "sweep_lambda_over_m0") {
    cfg.sweep_lambda = parse_list(value);
  } else if (key == "sweep_points") {
    cfg.sweep_points.clear();
    for (const auto& pair : split(value, ';')) {
      const auto colon = pair.find(':');
      if (colon == std::string::npos) {
        throw ConfigError("sweep_points entries are alpha:lambda_over_m0, got '" +
                          pair + "'");
      }
      cfg.sweep_points.emplace_back(parse_real(pair.substr(0, colon)),
                                    parse_real(pair.substr(colon + 1)));
    }
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": expected 'key = value'");
    }
    try {
      apply_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

void RunConfig::validate() const {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw ConfigError("alpha must be finite and >= 0");
  }
  if (!(lambda_over_m0 > 0.0) || !std::isfinite(lambda_over_m0)) {
    throw ConfigError("lambda_over_m0 must be finite and > 0");
  }
  if (!(m0 > 0.0)) {
    throw ConfigError("m0 must be > 0 (the massless case has no solver run)");
  }
  if (grid_n < 2) throw ConfigError("grid_n must be >= 2");
  if (!(u_min_ratio > 0.0 && u_min_ratio < 1.0)) {
    throw ConfigError("u_min_ratio must lie in (0, 1)");
  }
  if (!(tol > 0.0)) throw ConfigError("tol must be > 0");
  if (max_iter < 1) throw ConfigError("max_iter must be >= 1");
  if (!(quad_tol > 0.0)) throw ConfigError("quad_tol must be > 0");
  if (quad_node_budget < 17) throw ConfigError("quad_node_budget must be >= 17");
  if (workers < 1) throw ConfigError("workers must be >= 1");
  if (out_dir.empty()) throw ConfigError("output directory must not be empty");
}

std::vector<std::pair<double, double>> RunConfig::sweep_plan() const {
  std::vector<double> alphas = sweep_alpha;
  std::vector<double> lambdas = sweep_lambda;
  if (alphas.empty() && !lambdas.empty()) alphas = {alpha};
  if (lambdas.empty() && !sweep_alpha.empty()) lambdas = {lambda_over_m0};
  std::vector<std::pair<double, double>> plan;
  for (double a : alphas) {
    for (double l : lambdas) plan.emplace_back(a, l);
  }
  plan.insert(plan.end(), sweep_points.begin(), sweep_points.end());
  return plan;
}

}  // namespace dressed::cli
