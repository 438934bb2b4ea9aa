#pragma once

#include "run_config.hpp"

namespace dressed::cli {

// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitNotConverged = 2;
inline constexpr int kExitVerifyFailed = 3;

int run_solve(const RunConfig& cfg);   // solution.csv + report.txt
int run_sweep(const RunConfig& cfg);   // sweep.csv
int run_verify(const RunConfig& cfg);  // verify.txt

}  // namespace dressed::cli
