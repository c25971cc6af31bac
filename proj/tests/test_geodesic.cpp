#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "hypmetrics/geodesic.hpp"
#include "hypmetrics/verify.hpp"

using namespace hypmetrics;

namespace {

Vector vec2(double x, double y) {
  Vector v(2);
  v << x, y;
  return v;
}

DomainSpec unit_disk() { return DomainSpec::open_ball(Vector::Zero(2), 1.0, {}); }

}  // namespace

TEST_CASE("Gauss-Legendre rules integrate polynomials exactly") {
  for (int order : {2, 4, 8, 16}) {
    const Quadrature& q = gauss_legendre(order);
    REQUIRE(static_cast<int>(q.nodes.size()) == order);
    double wsum = 0.0, x2 = 0.0, x4 = 0.0;
    for (int i = 0; i < order; ++i) {
      wsum += q.weights[i];
      x2 += q.weights[i] * q.nodes[i] * q.nodes[i];
      x4 += q.weights[i] * std::pow(q.nodes[i], 4);
    }
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(x2 == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
    // order m is exact through degree 2m - 1
    if (order >= 3) CHECK(x4 == doctest::Approx(2.0 / 5.0).epsilon(1e-13));
  }
}

TEST_CASE("segment certification") {
  const DomainSpec dom = DomainSpec::open_ball(
      Vector::Zero(2), 2.0, {Obstacle::ball(Vector::Zero(2), 0.5)});
  CHECK(certify_segment(dom, vec2(1.0, 0.8), vec2(-0.2, 1.2)));
  // Crossing the removed ball can never certify.
  CHECK(!certify_segment(dom, vec2(-1.0, 0), vec2(1.0, 0)));
  // A segment leaving the ambient ball cannot certify either.
  CHECK(!certify_segment(dom, vec2(1.2, 0), vec2(1.2, 1.9)));
}

TEST_CASE("radial quasihyperbolic edge in the unit disk") {
  // Along [0, 0.5 e1] the clearance is 1 - r, so the weight is log 2.
  const double w = edge_weight(unit_disk(), Vector::Zero(2), vec2(0.5, 0),
                               MetricKind::quasihyperbolic, 16);
  CHECK(w == doctest::Approx(std::log(2.0)).epsilon(1e-9));
}

TEST_CASE("in a ball the nearest-pair density matches the quasihyperbolic one") {
  // Every clearance chord interval [0, 2R] contains the clearance itself, so
  // the log correction vanishes and the densities coincide.
  const auto ws = edge_weights(unit_disk(), vec2(0.1, -0.2), vec2(0.45, 0.3),
                               8, SamplingBudget{64, 1});
  CHECK(ws[2] == doctest::Approx(ws[3]).epsilon(1e-12));
  CHECK(ws[0] <= ws[3] + 1e-12);
}

TEST_CASE("graph distance basics") {
  const DomainSpec dom = DomainSpec::open_ball(
      Vector::Zero(2), 2.0, {Obstacle::ball(vec2(0.0, 0.0), 0.4)});
  const Vector z = vec2(-1.2, 0.1);
  const Vector w = vec2(1.1, -0.2);
  GraphParams params;
  params.h = 0.2;
  params.refinements = 1;
  params.quad_order = 8;
  params.budget = SamplingBudget{32, 3};

  const DistanceResult a = distance(dom, z, w, MetricKind::quasihyperbolic, params);
  const DistanceResult b = distance(dom, w, z, MetricKind::quasihyperbolic, params);
  CHECK(std::isfinite(a.value));
  CHECK(a.value > 0.0);
  CHECK(a.is_upper_bound);
  CHECK(a.value == doctest::Approx(b.value).epsilon(1e-12));
  REQUIRE(a.path.size() >= 2);
  CHECK((a.path.front() - z).norm() < 1e-12);
  CHECK((a.path.back() - w).norm() < 1e-12);

  // Coincident endpoints short-circuit.
  const DistanceResult zero = distance(dom, z, z, MetricKind::d_lambda, params);
  CHECK(zero.value == 0.0);
}

TEST_CASE("refinement never increases the reported value") {
  const DomainSpec dom = unit_disk();
  const Vector z = vec2(-0.3, 0.0);
  const Vector w = vec2(0.4, 0.35);
  double prev = 1e300;
  for (int r : {0, 1, 2}) {
    GraphParams params;
    params.h = 0.15;
    params.refinements = r;
    params.quad_order = 8;
    const DistanceResult res =
        distance(dom, z, w, MetricKind::quasihyperbolic, params);
    CHECK(res.value <= prev + 1e-12);
    prev = res.value;
  }
}

TEST_CASE("disk center-to-half-radius distance approaches log 2") {
  const DistanceResult res = distance(unit_disk(), Vector::Zero(2),
                                      vec2(0.5, 0),
                                      MetricKind::quasihyperbolic, {});
  CHECK(std::abs(res.value - std::log(2.0)) < 2e-3);
  CHECK(res.refinement_level == 3);
}

TEST_CASE("tube graphs connect endpoints along a known corridor") {
  const DomainSpec dom = DomainSpec::open_ball(Vector::Zero(3), 2.0, {});
  Vector z = Vector::Zero(3), w = Vector::Zero(3);
  z[0] = -0.8;
  w[0] = 0.9;
  GraphParams params;
  params.h = (z - w).norm() / 4.0;
  params.quad_order = 4;
  params.budget = SamplingBudget{16, 5};
  const PathGraph graph =
      build_graph_in_tube(dom, z, w, params, {z, w}, 2.5 * params.h);
  const DistanceResult res = shortest_path(graph, MetricKind::d_lambda_pprime);
  CHECK(std::isfinite(res.value));
  CHECK(res.value > 0.0);
}

TEST_CASE("masked kinds cannot be queried") {
  const DomainSpec dom = unit_disk();
  GraphParams params;
  params.h = 0.25;
  params.kinds = {false, false, false, true};
  const PathGraph graph =
      build_graph(dom, vec2(-0.3, 0), vec2(0.4, 0), params);
  CHECK_NOTHROW(shortest_path(graph, MetricKind::quasihyperbolic));
  CHECK_THROWS_AS(shortest_path(graph, MetricKind::d_lambda),
                  std::invalid_argument);
}

TEST_CASE("endpoints outside the domain are rejected") {
  const DomainSpec dom = unit_disk();
  GraphParams params;
  params.h = 0.25;
  CHECK_THROWS_AS(build_graph(dom, vec2(1.5, 0), vec2(0, 0), params),
                  DomainError);
  CHECK_THROWS_AS(
      distance(dom, vec2(0, 0), vec2(1.5, 0), MetricKind::d_lambda, params),
      DomainError);
}
