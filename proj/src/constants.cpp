#include "hypmetrics/constants.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace hypmetrics {

namespace {

// Bisection to a coarse bracket, then Newton inside it.  The bracket is
// never abandoned, so convergence does not depend on the Newton start.
RootResult solve_bracketed(const std::function<double(double)>& f,
                           const std::function<double(double)>& df, double lo,
                           double hi) {
  double flo = f(lo);
  int iterations = 0;
  for (int i = 0; i < 60; ++i) {
    ++iterations;
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((flo <= 0.0) == (fm <= 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-3) break;
  }
  double x = 0.5 * (lo + hi);
  for (int i = 0; i < 50; ++i) {
    ++iterations;
    const double fx = f(x);
    const double step = fx / df(x);
    double next = x - step;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == x) break;
    x = next;
    if (std::abs(f(x)) < 1e-15 * (1.0 + std::abs(x))) break;
  }
  return RootResult{x, f(x), iterations};
}

}  // namespace

RootResult solve_t0() {
  return solve_bracketed([](double t) { return std::exp(t) - 2.0 - t; },
                         [](double t) { return std::exp(t) - 1.0; }, 0.5, 2.0);
}

RootResult solve_log_reciprocal() {
  return solve_bracketed([](double x) { return std::log(x) - 1.0 / x; },
                         [](double x) { return 1.0 / x + 1.0 / (x * x); },
                         1.0, 3.0);
}

RootResult solve_midpoint_eq() {
  return solve_bracketed(
      [](double x) { return x * (2.0 - std::log(x)) - 1.0; },
      [](double x) { return 1.0 - std::log(x); }, 0.05, 0.99);
}

double planar_comparison_k() {
  return 4.0 + std::log(3.0 + 2.0 * std::sqrt(2.0));
}

double continuity_ratio_bound(double t) {
  if (!(t > 0.0 && t < 1.0))
    throw std::invalid_argument("continuity_ratio_bound requires 0 < t < 1");
  return (1.0 + std::log(1.0 / (1.0 - t))) / (1.0 - t);
}

double monotone_f(double T, double y) {
  if (!(y > 0.0) || !(T > 0.0))
    throw std::invalid_argument("monotone_f requires T > 0 and y > 0");
  return y * (1.0 + std::abs(std::log(T / y)));
}

double c1_bound(int n, double K, double grotzsch) {
  if (n < 2) throw std::invalid_argument("c1_bound requires n >= 2");
  if (!(K >= 1.0)) throw std::invalid_argument("c1_bound requires K >= 1");
  if (!(grotzsch >= 4.0))
    throw std::invalid_argument("c1_bound requires grotzsch constant >= 4");
  const double kp = std::pow(K, 1.0 / (n - 1));
  const double num = 1.0 + kp * (std::log(8.0 * grotzsch * grotzsch) - 1.0);
  const double den = 1.0 + std::log(10.0) + 2.0 * std::log(grotzsch);
  return kp + num / den;
}

double alpha(int n, double K) {
  if (n < 2) throw std::invalid_argument("alpha requires n >= 2");
  if (!(K > 0.0)) throw std::invalid_argument("alpha requires K > 0");
  return std::pow(K, 1.0 / (1.0 - n));
}

}  // namespace hypmetrics
