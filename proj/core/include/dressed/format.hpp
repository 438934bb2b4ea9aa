#pragma once

#include <string>

namespace dressed {

// Shortest text with 17 significant digits; enough to round-trip a double,
// so report and CSV output is bit-stable across runs.
std::string format_g17(double x);

}  // namespace dressed
