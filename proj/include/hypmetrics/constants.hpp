#pragma once

// Scalar constants and one-dimensional roots used by the metric comparison
// bounds, computed at solver level rather than hard-coded so each value
// carries a residual certificate.

namespace hypmetrics {

struct RootResult {
  double value;
  double residual;  // f(value)
  int iterations;
};

// Root of e^t = 2 + t on (0, inf); also satisfies e^t - 1 = t + 1.
RootResult solve_t0();

// Root of log x = 1/x on (1, inf).
RootResult solve_log_reciprocal();

// Root of x (2 - log x) = 1 on (0, 1).
RootResult solve_midpoint_eq();

// 4 + log(3 + 2 sqrt 2), the additive constant of the classical planar
// comparison between the hyperbolic density and the boundary distance.
double planar_comparison_k();

// (1 + log(1/(1-t))) / (1-t) for 0 < t < 1: bound on the ratio of boundary
// pair densities between points y with |y - x0| <= t d(x0).
double continuity_ratio_bound(double t);

// y (1 + |log(T/y)|) for T, y > 0; strictly increasing in y.
double monotone_f(double T, double y);

// Distortion bound K^(1/(n-1))
//   + (1 + K^(1/(n-1)) (log(8 g^2) - 1)) / (1 + log 10 + 2 log g)
// where g is the Grotzsch-type constant of dimension n (g >= 4).
double c1_bound(int n, double K, double grotzsch);

// Radial Holder exponent K^(1/(1-n)).
double alpha(int n, double K);

}  // namespace hypmetrics
