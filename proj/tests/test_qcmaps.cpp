#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "hypmetrics/qcmaps.hpp"
#include "hypmetrics/verify.hpp"

using namespace hypmetrics;

namespace {

Vector vec2(double x, double y) {
  Vector v(2);
  v << x, y;
  return v;
}

Vector e1(int dim, double t = 1.0) {
  Vector v = Vector::Zero(dim);
  v[0] = t;
  return v;
}

}  // namespace

TEST_CASE("map application") {
  // Radial stretch with K = 2 sends 4 e1 to 2 e1 (exponent 1/K - 1 = -1/2).
  const QcMap stretch = RadialStretch{2.0};
  CHECK((hypmetrics::apply(stretch, e1(2, 4.0)) - e1(2, 2.0)).norm() < 1e-12);
  CHECK(hypmetrics::apply(stretch, Vector::Zero(2)).norm() == 0.0);

  const QcMap inv = Inversion{Vector::Zero(2), 1.0};
  CHECK((hypmetrics::apply(inv, e1(2, 2.0)) - e1(2, 0.5)).norm() < 1e-12);

  Similarity sim = Similarity::identity(2);
  sim.s = 2.0;
  sim.Q << 0, -1, 1, 0;  // quarter turn
  sim.v = vec2(0, 1);
  CHECK((hypmetrics::apply(QcMap{sim}, e1(2)) - vec2(0, 3)).norm() < 1e-12);

  Matrix a(2, 2);
  a << 2, 0, 0, 1;
  CHECK((hypmetrics::apply(QcMap{LinearMap{a}}, vec2(1, 1)) - vec2(2, 1)).norm() < 1e-12);
}

TEST_CASE("inverse maps undo application") {
  Rng rng(17);
  std::vector<QcMap> maps;
  maps.push_back(RadialStretch{2.0});
  maps.push_back(RadialStretch{0.5});
  maps.push_back(Inversion{vec2(0.3, -0.2), 1.4});
  maps.push_back(random_similarity(2, rng));
  Matrix a(2, 2);
  a << 1.5, 0.4, -0.2, 0.9;
  maps.push_back(LinearMap{a});

  for (const QcMap& m : maps) {
    const QcMap mi = inverse(m);
    for (int trial = 0; trial < 10; ++trial) {
      Vector x = vec2(rng.uniform(-2, 2), rng.uniform(-2, 2));
      if ((x - vec2(0.3, -0.2)).norm() < 0.2) continue;  // near inversion center
      if (x.norm() < 1e-3) continue;
      const Vector y = hypmetrics::apply(mi, hypmetrics::apply(m, x));
      CHECK((y - x).norm() < 1e-9 * std::max(1.0, x.norm()));
    }
  }
}

TEST_CASE("dilatations") {
  Matrix a(2, 2);
  a << 2, 0, 0, 1;
  const Dilatation lin = dilatation(QcMap{LinearMap{a}}, 2);
  CHECK(lin.outer == doctest::Approx(2.0));
  CHECK(lin.inner == doctest::Approx(2.0));
  CHECK(lin.maximal == doctest::Approx(2.0));
  CHECK(lin.alpha == doctest::Approx(0.5));

  // Radial stretch in R^3: singular values {1/K, 1, 1} of the derivative give
  // outer K and inner K^2.
  const Dilatation rad = dilatation(QcMap{RadialStretch{2.0}}, 3);
  CHECK(rad.outer == doctest::Approx(2.0));
  CHECK(rad.inner == doctest::Approx(4.0));
  CHECK(rad.maximal == doctest::Approx(4.0));
  CHECK(rad.alpha == doctest::Approx(0.5));

  const Dilatation rad2 = dilatation(QcMap{RadialStretch{2.0}}, 2);
  CHECK(rad2.maximal == doctest::Approx(2.0));

  const Dilatation conf = dilatation(QcMap{Inversion{Vector::Zero(2), 1.0}}, 2);
  CHECK(conf.maximal == doctest::Approx(1.0));
  CHECK(conf.alpha == doctest::Approx(1.0));

  Rng rng(9);
  const Dilatation sim = dilatation(QcMap{random_similarity(3, rng)}, 3);
  CHECK(sim.maximal == doctest::Approx(1.0));
}

TEST_CASE("map validation") {
  Matrix bad(2, 2);
  bad << 1, 1, 1, 1;  // singular
  CHECK_THROWS_AS(validate(QcMap{LinearMap{bad}}, 2), std::invalid_argument);

  Similarity skew = Similarity::identity(2);
  skew.Q << 1, 0.1, 0, 1;  // not orthogonal
  CHECK_THROWS_AS(validate(QcMap{skew}, 2), std::invalid_argument);

  CHECK_THROWS_AS(validate(QcMap{RadialStretch{-1.0}}, 2), std::invalid_argument);
  CHECK_THROWS_AS(validate(QcMap{Inversion{Vector::Zero(2), 0.0}}, 2),
                  std::invalid_argument);
  CHECK_NOTHROW(validate(QcMap{RadialStretch{2.0}}, 3));
}

TEST_CASE("radial stretch pushes origin-centred domains") {
  const DomainSpec dom = DomainSpec::whole_space(
      2, {Obstacle::point(e1(2, 4.0)), Obstacle::point(e1(2, 16.0))});
  const DomainSpec img = push_domain(QcMap{RadialStretch{2.0}}, dom);
  REQUIRE(img.obstacles().size() == 2);
  CHECK((img.obstacles()[0].center - e1(2, 2.0)).norm() < 1e-12);
  CHECK((img.obstacles()[1].center - e1(2, 4.0)).norm() < 1e-12);

  // Origin-centred removed ball maps to one with radius r^{1/K}.
  const DomainSpec ball_dom = DomainSpec::open_ball(
      Vector::Zero(2), 4.0, {Obstacle::ball(Vector::Zero(2), 0.25)});
  const DomainSpec ball_img = push_domain(QcMap{RadialStretch{2.0}}, ball_dom);
  CHECK(ball_img.has_ambient_ball());
  CHECK(ball_img.ambient_radius() == doctest::Approx(2.0));
  REQUIRE(ball_img.obstacles().size() == 1);
  CHECK(ball_img.obstacles()[0].radius == doctest::Approx(0.5));

  // Off-centre removed balls are not spheres after the stretch.
  const DomainSpec off = DomainSpec::whole_space(
      2, {Obstacle::ball(e1(2, 3.0), 0.5), Obstacle::point(e1(2, -2.0))});
  CHECK_THROWS_AS(push_domain(QcMap{RadialStretch{2.0}}, off),
                  std::invalid_argument);
}

TEST_CASE("similarity pushes any domain") {
  Similarity sim = Similarity::identity(2);
  sim.s = 3.0;
  sim.v = vec2(1, -1);
  const DomainSpec dom = DomainSpec::open_ball(
      vec2(0.5, 0), 2.0, {Obstacle::ball(vec2(0, 0.4), 0.3)});
  const DomainSpec img = push_domain(QcMap{sim}, dom);
  CHECK(img.ambient_radius() == doctest::Approx(6.0));
  CHECK((img.ambient_center() - vec2(2.5, -1)).norm() < 1e-12);
  REQUIRE(img.obstacles().size() == 1);
  CHECK(img.obstacles()[0].radius == doctest::Approx(0.9));
  CHECK((img.obstacles()[0].center - vec2(1, 0.2)).norm() < 1e-12);
}

TEST_CASE("inversion pushes: removed ball containing the center turns inside out") {
  // Complement of the closed unit disk maps onto the punctured unit disk.
  const DomainSpec dom =
      DomainSpec::whole_space(2, {Obstacle::ball(Vector::Zero(2), 1.0)});
  const DomainSpec img =
      push_domain(QcMap{Inversion{Vector::Zero(2), 1.0}}, dom);
  CHECK(img.has_ambient_ball());
  CHECK(img.ambient_radius() == doctest::Approx(1.0));
  CHECK(img.ambient_center().norm() < 1e-12);
  REQUIRE(img.obstacles().size() == 1);
  CHECK(img.obstacles()[0].kind == Obstacle::Kind::removed_point);
  CHECK(img.obstacles()[0].center.norm() < 1e-12);
}

TEST_CASE("inversion pushes: puncture at the center swaps with infinity") {
  // Punctured unit ball inverts to the exterior of the closed unit ball.
  const DomainSpec dom = DomainSpec::open_ball(
      Vector::Zero(2), 1.0, {Obstacle::point(Vector::Zero(2))});
  const DomainSpec img =
      push_domain(QcMap{Inversion{Vector::Zero(2), 1.0}}, dom);
  CHECK(!img.has_ambient_ball());
  REQUIRE(img.obstacles().size() == 1);
  CHECK(img.obstacles()[0].kind == Obstacle::Kind::removed_ball);
  CHECK(img.obstacles()[0].radius == doctest::Approx(1.0));

  // Whole-space version keeps the puncture at the center.
  const DomainSpec dom2 = DomainSpec::whole_space(
      2, {Obstacle::point(Vector::Zero(2)), Obstacle::point(e1(2, 3.0))});
  const DomainSpec img2 =
      push_domain(QcMap{Inversion{Vector::Zero(2), 1.0}}, dom2);
  REQUIRE(img2.obstacles().size() == 2);
  bool origin_puncture = false, mapped_puncture = false;
  for (const Obstacle& o : img2.obstacles()) {
    if (o.center.norm() < 1e-12) origin_puncture = true;
    if ((o.center - e1(2, 1.0 / 3.0)).norm() < 1e-12) mapped_puncture = true;
  }
  CHECK(origin_puncture);
  CHECK(mapped_puncture);
}

TEST_CASE("inversion pushes: center outside the ambient ball") {
  const DomainSpec dom = DomainSpec::open_ball(Vector::Zero(2), 1.0, {});
  const DomainSpec img =
      push_domain(QcMap{Inversion{e1(2, 3.0), 1.0}}, dom);
  CHECK(img.has_ambient_ball());
  CHECK((img.ambient_center() - e1(2, 21.0 / 8.0)).norm() < 1e-12);
  CHECK(img.ambient_radius() == doctest::Approx(1.0 / 8.0));
  CHECK(img.obstacles().empty());

  // Boundary samples must land on the image boundary.
  const QcMap inv = Inversion{e1(2, 3.0), 1.0};
  for (const Vector& p : sample_boundary(dom, 50, 4)) {
    const Vector q = hypmetrics::apply(inv, p);
    CHECK(std::abs((q - img.ambient_center()).norm() - img.ambient_radius()) <
          1e-12);
  }

  // The center sitting on the closure of the domain is unsupported.
  CHECK_THROWS_AS(push_domain(QcMap{Inversion{e1(2, 0.5), 1.0}}, dom),
                  std::invalid_argument);
}

TEST_CASE("pointwise distortion ratio for similarities is exactly one") {
  Rng rng(31);
  for (int i = 0; i < 5; ++i) {
    const DomainSpec dom = random_domain(rng, 2);
    const Vector z = random_interior_point(dom, rng);
    const double ratio = check_qc1(QcMap{random_similarity(2, rng)}, dom, z);
    CHECK(ratio == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("distance distortion for a similarity is an isometry") {
  Rng rng(13);
  const DomainSpec dom = DomainSpec::open_ball(
      Vector::Zero(2), 2.0, {Obstacle::ball(vec2(0.2, 0.3), 0.4)});
  const Vector z = vec2(-1.2, 0.3);
  const Vector w = vec2(1.0, -0.8);
  GraphParams params;
  params.h = 0.25;
  params.refinements = 1;
  params.quad_order = 4;
  params.budget = SamplingBudget{16, 7};
  const Qc2Result res =
      check_qc2(QcMap{random_similarity(2, rng)}, dom, z, w, params);
  CHECK(std::isfinite(res.lhs));
  CHECK(res.lhs == doctest::Approx(res.source_distance).epsilon(1e-6));
  CHECK(res.alpha == doctest::Approx(1.0));
  CHECK(res.rhs_budget ==
        doctest::Approx(std::max(res.source_distance,
                                 std::pow(res.source_distance, res.alpha))));
}
