#pragma once

#include "dressed/dressing.hpp"

namespace dressed {

// Closed form for the zero-bare-mass dressing,
//   g1(u) = u * (1 + alpha/(2 pi) * B(lambda/u)),
// where B is the integrated Vector kernel. Requires m0 == 0 and
// 0 < u < lambda (the bracket is log-singular at u == lambda).
double massless_g1(double u, const ModelParams& p);

// Small-u behaviour u + (2 alpha / 3 pi) * u * log(lambda/u); the free term
// plus the leading logarithmic correction.
double massless_asymptote(double u, const ModelParams& p);

}  // namespace dressed
