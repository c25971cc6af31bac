#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "hypmetrics/constants.hpp"

using namespace hypmetrics;

// Reference values computed independently with 50-digit arithmetic.

TEST_CASE("root of e^t = 2 + t") {
  const RootResult r = solve_t0();
  CHECK(std::abs(r.value - 1.14619322062058259) < 1e-13);
  CHECK(std::abs(r.residual) < 1e-12);
  CHECK(std::exp(r.value) - 1.0 == doctest::Approx(r.value + 1.0).epsilon(1e-12));
}

TEST_CASE("root of log x = 1/x") {
  const RootResult r = solve_log_reciprocal();
  CHECK(std::abs(r.value - 1.76322283435189671) < 1e-13);
  CHECK(std::abs(std::log(r.value) - 1.0 / r.value) < 1e-14);
}

TEST_CASE("root of x(2 - log x) = 1") {
  const RootResult r = solve_midpoint_eq();
  CHECK(std::abs(r.value - 0.31784443289937268) < 1e-13);
  CHECK(std::abs(r.value * (2.0 - std::log(r.value)) - 1.0) < 1e-14);
}

TEST_CASE("planar comparison constant") {
  const double k = planar_comparison_k();
  CHECK(std::abs(k - 5.76274717403908605) < 1e-14);
  CHECK(std::abs(k + std::atan(1.0) - 6.54814533743653436) < 1e-13);
  CHECK(std::abs(1.0 / (2.0 * std::sqrt(2.0)) - 0.35355339059327376) < 1e-16);
}

TEST_CASE("derived anchors from the roots") {
  const double t0 = solve_t0().value;
  CHECK(std::abs((1.0 + t0) / (1.0 + t0 - std::log(2.0)) -
                 1.47703043224357811) < 1e-12);
  CHECK(std::abs((1.0 + t0) / (1.0 + std::log(1.0 + t0)) -
                 1.21687275629724832) < 1e-12);
}

TEST_CASE("continuity ratio bound") {
  CHECK(std::abs(continuity_ratio_bound(0.5) - 3.38629436111989062) < 1e-14);
  CHECK(continuity_ratio_bound(0.1) < continuity_ratio_bound(0.2));
  CHECK(continuity_ratio_bound(1e-9) == doctest::Approx(1.0));
  CHECK_THROWS_AS(continuity_ratio_bound(1.0), std::invalid_argument);
}

TEST_CASE("pointwise distortion bound and Holder exponent") {
  CHECK(std::abs(c1_bound(2, 1.0, 4.0) - 1.79866525822732658) < 1e-14);
  CHECK(std::abs(c1_bound(2, 2.0, 4.0) - 3.43272617254395780) < 1e-14);
  CHECK(std::abs(c1_bound(2, 4.0, 4.0) - 6.70084800117722026) < 1e-14);
  CHECK(c1_bound(3, 2.0, 2.0 * std::exp(2.0)) > 1.0);
  CHECK_THROWS_AS(c1_bound(2, 0.5, 4.0), std::invalid_argument);

  CHECK(alpha(2, 1.0) == doctest::Approx(1.0));
  CHECK(alpha(2, 2.0) == doctest::Approx(0.5));
  CHECK(alpha(3, 4.0) == doctest::Approx(0.5));
  CHECK(alpha(3, 8.0) == doctest::Approx(1.0 / std::sqrt(8.0)));
}

TEST_CASE("shared objective profile") {
  CHECK(monotone_f(1.0, 1.0) == doctest::Approx(1.0));
  CHECK(monotone_f(2.0, 1.0) == doctest::Approx(1.0 + std::log(2.0)));
  CHECK(monotone_f(1.0, 2.0) == doctest::Approx(2.0 * (1.0 + std::log(2.0))));
  // strictly increasing in y for fixed T
  double prev = 0.0;
  for (int i = 1; i <= 200; ++i) {
    const double y = 0.05 * i;
    const double f = monotone_f(0.7, y);
    CHECK(f > prev);
    prev = f;
  }
}
