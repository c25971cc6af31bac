#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "hypmetrics/geometry.hpp"
#include "hypmetrics/rng.hpp"

using namespace hypmetrics;

namespace {

Vector vec2(double x, double y) {
  Vector v(2);
  v << x, y;
  return v;
}

Vector e1(int dim) {
  Vector v = Vector::Zero(dim);
  v[0] = 1.0;
  return v;
}

}  // namespace

TEST_CASE("construction rejects invalid inputs") {
  CHECK_THROWS_AS(DomainSpec::whole_space(1, {Obstacle::point(Vector::Ones(1))}),
                  DomainError);
  // complement of a whole-space domain needs at least two points
  CHECK_THROWS_AS(DomainSpec::whole_space(2, {Obstacle::point(vec2(0, 0))}),
                  DomainError);
  CHECK_THROWS_AS(DomainSpec::whole_space(2, {}), DomainError);
  // overlapping obstacles
  CHECK_THROWS_AS(
      DomainSpec::whole_space(2, {Obstacle::ball(vec2(0, 0), 1.0),
                                  Obstacle::ball(vec2(1, 0), 0.5)}),
      DomainError);
  CHECK_THROWS_AS(
      DomainSpec::whole_space(2, {Obstacle::ball(vec2(0, 0), 1.0),
                                  Obstacle::point(vec2(0.5, 0))}),
      DomainError);
  // obstacle must sit strictly inside the ambient ball
  CHECK_THROWS_AS(
      DomainSpec::open_ball(vec2(0, 0), 1.0, {Obstacle::ball(vec2(0.8, 0), 0.3)}),
      DomainError);
  CHECK_THROWS_AS(DomainSpec::open_ball(vec2(0, 0), -1.0, {}), DomainError);
  // dimension mismatch between primitives
  CHECK_THROWS_AS(
      DomainSpec::whole_space(3, {Obstacle::point(vec2(0, 0)),
                                  Obstacle::point(Vector::Ones(3))}),
      DomainError);
  CHECK_NOTHROW(DomainSpec::open_ball(vec2(0, 0), 1.0, {}));
  CHECK_NOTHROW(DomainSpec::whole_space(
      2, {Obstacle::point(vec2(0, 0)), Obstacle::point(vec2(1, 0))}));
}

TEST_CASE("membership and clearance") {
  const DomainSpec disk = DomainSpec::open_ball(vec2(0, 0), 2.0,
                                                {Obstacle::ball(vec2(0, 0), 0.5)});
  CHECK(contains(disk, vec2(1, 0)));
  CHECK(!contains(disk, vec2(0.3, 0)));   // inside the removed ball
  CHECK(!contains(disk, vec2(2.5, 0)));   // outside the ambient ball
  CHECK(!contains(disk, vec2(2.0, 0)));   // ambient sphere is not in D
  CHECK(in_complement(disk, vec2(0.3, 0)));
  CHECK(in_complement(disk, vec2(2.0, 0)));
  CHECK(!in_complement(disk, vec2(1, 0)));
  CHECK(dist_to_complement(disk, vec2(1.25, 0)) == doctest::Approx(0.75));
  CHECK(dist_to_complement(disk, vec2(0.6, 0)) == doctest::Approx(0.1));
}

TEST_CASE("nearest boundary points and degeneracy") {
  const DomainSpec annulus = DomainSpec::open_ball(
      vec2(0, 0), 2.0, {Obstacle::ball(vec2(0, 0), 0.5)});
  // Equidistant from both circles: one nearest point on each.
  const NearestBoundary tie = nearest_boundary_points(annulus, vec2(1.25, 0));
  CHECK(tie.points.size() == 2);
  CHECK(!tie.whole_sphere());
  for (const Vector& p : tie.points)
    CHECK(std::abs((p - vec2(1.25, 0)).norm() - 0.75) < 1e-12);

  const DomainSpec ball = DomainSpec::open_ball(vec2(0, 0), 1.0, {});
  const NearestBoundary center = nearest_boundary_points(ball, vec2(0, 0));
  CHECK(center.whole_sphere());
  CHECK(center.points.size() == 1);
  CHECK(center.points[0].norm() == doctest::Approx(1.0));
}

TEST_CASE("boundary pieces and distance intervals") {
  const DomainSpec dom = DomainSpec::whole_space(
      2, {Obstacle::ball(vec2(0, 0), 1.0), Obstacle::point(vec2(3, 0))});
  const auto pieces = boundary_pieces(dom);
  REQUIRE(pieces.size() == 2);

  // Sphere piece seen from (2, 0): distances span [1, 3].
  const BoundarySphere* sphere = nullptr;
  const BoundarySphere* atom = nullptr;
  for (const auto& p : pieces) (p.radius > 0 ? sphere : atom) = &p;
  REQUIRE(sphere != nullptr);
  REQUIRE(atom != nullptr);

  const Interval iv = distance_interval(*sphere, vec2(2, 0));
  CHECK(iv.lo == doctest::Approx(1.0));
  CHECK(iv.hi == doctest::Approx(3.0));
  CHECK(iv.contains(2.0));
  CHECK(iv.clamp(0.5) == doctest::Approx(1.0));
  CHECK(iv.clamp(5.0) == doctest::Approx(3.0));

  CHECK(piece_distance(*sphere, vec2(2, 0)) == doctest::Approx(1.0));
  CHECK(piece_distance(*atom, vec2(2, 0)) == doctest::Approx(1.0));
  CHECK((nearest_on_piece(*sphere, vec2(2, 0)) - vec2(1, 0)).norm() < 1e-12);
  CHECK((farthest_on_piece(*sphere, vec2(2, 0)) - vec2(-1, 0)).norm() < 1e-12);

  const Vector hit = boundary_point_at_distance(*sphere, vec2(2, 0), 2.5);
  CHECK(std::abs((hit - vec2(2, 0)).norm() - 2.5) < 1e-12);
  CHECK(std::abs(hit.norm() - 1.0) < 1e-12);
}

TEST_CASE("boundary sampling lands on the boundary") {
  const DomainSpec dom = DomainSpec::open_ball(
      vec2(0.1, -0.2), 2.0, {Obstacle::ball(vec2(0.5, 0.5), 0.3),
                             Obstacle::point(vec2(-1, 0))});
  const auto samples = sample_boundary(dom, 200, 7);
  CHECK(samples.size() >= 200);
  const auto pieces = boundary_pieces(dom);
  bool atom_seen = false;
  for (const Vector& s : samples) {
    double dmin = 1e300;
    for (const auto& p : pieces) dmin = std::min(dmin, piece_distance(p, s));
    CHECK(dmin < 1e-9);
    CHECK(!contains(dom, s));
    CHECK(in_complement(dom, s));
    if ((s - vec2(-1, 0)).norm() < 1e-12) atom_seen = true;
  }
  CHECK(atom_seen);  // removed points always appear in the sample
}

TEST_CASE("orthonormal frames") {
  Rng rng(3);
  for (int dim : {2, 3, 4}) {
    Vector pref = rng.direction(dim) * 2.7;
    const auto frame = orthonormal_frame(dim, {pref});
    REQUIRE(static_cast<int>(frame.size()) == dim);
    for (int i = 0; i < dim; ++i) {
      CHECK(frame[i].norm() == doctest::Approx(1.0));
      for (int j = i + 1; j < dim; ++j)
        CHECK(std::abs(frame[i].dot(frame[j])) < 1e-12);
    }
    CHECK(std::abs(frame[0].dot(pref.normalized())) == doctest::Approx(1.0));
  }
}

TEST_CASE("degenerate preferred directions fall back cleanly") {
  Vector zero2 = Vector::Zero(2);
  const auto frame = orthonormal_frame(2, {zero2});
  REQUIRE(frame.size() == 2);
  CHECK(std::abs(frame[0].dot(frame[1])) < 1e-12);

  Vector u = vec2(0.6, -0.8);
  const Vector v = orthogonal_unit(u);
  CHECK(v.norm() == doctest::Approx(1.0));
  CHECK(std::abs(v.dot(u)) < 1e-12);
}
