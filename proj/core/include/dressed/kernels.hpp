#pragma once

namespace dressed {

// Angular channel of the reduced radial equations: Scalar couples the
// mass-like component through Q0, Vector the momentum-like component
// through Q1.
enum class Channel { Scalar, Vector };

// Legendre function of the second kind, Q0(z) = log((z+1)/(z-1))/2.
// Strictly positive and strictly decreasing for z > 1; throws
// std::domain_error for z <= 1.
double legendre_q0(double z);

// Q1(z) = z*Q0(z) - 1 for z > 1. Large z switches to the artanh tail
// series, where the subtraction would otherwise cancel to noise.
double legendre_q1(double z);

// Angular-reduced kernel K_c(u, v) = (v/u) * Q_c((u/v + v/u)/2).
// u = 0 returns the analytic limit: 2 for Scalar, 0 for Vector.
// Throws std::domain_error on the diagonal u == v.
double reduced_kernel(Channel c, double u, double v);

// Same kernel with |u - v| supplied by a caller that tracks the distance
// to the diagonal exactly (quadrature nodes clustered at v = u).
double reduced_kernel(Channel c, double u, double v, double gap);

// Two-term large-v expansion of v*Q1((1/v + v)/2), namely
// 4/(3v) + 8/(15 v^3). Validity region v >= 2; used as a quadrature
// tail check.
double kernel_tail(double v);

}  // namespace dressed
