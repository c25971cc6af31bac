#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>

#include "hypmetrics/domain_io.hpp"
#include "hypmetrics/qcmaps.hpp"

using namespace hypmetrics;

namespace {

std::string invariant_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const DomainError& e) {
    return e.invariant;
  }
  return "";
}

}  // namespace

TEST_CASE("domain round trip") {
  Vector c(2);
  c << 0.5, -0.25;
  Vector p(2);
  p << -1, 0;
  const DomainSpec dom = DomainSpec::open_ball(
      c, 2.5, {Obstacle::ball(Vector::Zero(2), 0.25), Obstacle::point(p)});
  const DomainSpec back = domain_from_json(to_json(dom));
  CHECK(back.dim() == 2);
  CHECK(back.has_ambient_ball());
  CHECK((back.ambient_center() - c).norm() < 1e-15);
  CHECK(back.ambient_radius() == doctest::Approx(2.5));
  REQUIRE(back.obstacles().size() == 2);
  CHECK(back.obstacles()[0].radius == doctest::Approx(0.25));
  CHECK(back.obstacles()[1].kind == Obstacle::Kind::removed_point);

  const DomainSpec ws = DomainSpec::whole_space(
      3, {Obstacle::point(Vector::Zero(3)), Obstacle::point(Vector::Ones(3))});
  const DomainSpec ws_back = domain_from_json(to_json(ws));
  CHECK(!ws_back.has_ambient_ball());
  CHECK(ws_back.dim() == 3);
}

TEST_CASE("domain parsing from literals") {
  const Json j = Json::parse(R"({
    "dim": 2,
    "ambient": {"ball": {"center": [0, 0], "radius": 2}},
    "obstacles": [
      {"ball": {"center": [0.5, 0], "radius": 0.25}},
      {"point": {"center": [-1, 0]}}
    ]
  })");
  const DomainSpec dom = domain_from_json(j);
  CHECK(dom.dim() == 2);
  CHECK(dom.obstacles().size() == 2);

  const Json ws = Json::parse(R"({
    "dim": 2,
    "ambient": "whole_space",
    "obstacles": [{"point": {"center": [1, 0]}}, {"point": {"center": [2, 0]}}]
  })");
  CHECK(!domain_from_json(ws).has_ambient_ball());
}

TEST_CASE("domain parse errors carry invariant names") {
  CHECK(invariant_of([] {
          domain_from_json(Json::parse(R"({"dim": 1, "ambient": "whole_space",
            "obstacles": []})"));
        }) == "dim_at_least_2");
  CHECK(invariant_of([] {
          domain_from_json(Json::parse(R"({"dim": 2, "ambient": "whole_space",
            "obstacles": [{"blob": {}}]})"));
        }) == "obstacle_kind_unknown");
  CHECK(invariant_of([] {
          domain_from_json(Json::parse(R"({"dim": 2, "ambient": "whole_space",
            "obstacles": [{"ball": {"center": [0,0], "radius": -1}}]})"));
        }) == "obstacle_radius_positive");
  CHECK(invariant_of([] {
          domain_from_json(Json::parse(R"({"dim": 2,
            "obstacles": [{"point": {"center": [0,0]}}]})"));
        }) == "ambient_missing");
  CHECK(invariant_of([] {
          domain_from_json(Json::parse(R"({"dim": 2, "ambient": "whole_space",
            "obstacles": [{"point": {"center": [0,"x"]}}]})"));
        }) == "coordinates_numeric");
  CHECK(invariant_of([] { load_domain("/no/such/file.json"); }) ==
        "domain_file_unreadable");
}

TEST_CASE("map round trips preserve behavior") {
  Vector x(2);
  x << 0.7, -0.4;

  std::vector<QcMap> maps;
  Similarity sim = Similarity::identity(2);
  sim.s = 1.5;
  sim.Q << 0, -1, 1, 0;
  sim.v = Vector::Ones(2);
  maps.push_back(sim);
  maps.push_back(RadialStretch{2.0});
  Matrix a(2, 2);
  a << 2, 0.3, 0, 1;
  maps.push_back(LinearMap{a});
  maps.push_back(Inversion{Vector::Zero(2), 1.2});

  for (const QcMap& m : maps) {
    const QcMap back = qcmap_from_json(to_json(m), 2);
    CHECK((hypmetrics::apply(back, x) - hypmetrics::apply(m, x)).norm() < 1e-14);
  }
}

TEST_CASE("map parse errors") {
  CHECK(invariant_of([] {
          qcmap_from_json(Json::parse(R"({"warp": {}})"), 2);
        }) == "map_kind_unknown");
  CHECK(invariant_of([] {
          qcmap_from_json(Json::parse(R"({"radial_stretch": {"K": 0}})"), 2);
        }) == "radial_stretch_positive");
  CHECK(invariant_of([] {
          qcmap_from_json(
              Json::parse(R"({"linear": {"matrix": [[1, 1], [1, 1]]}})"), 2);
        }) == "map_invalid");
  CHECK(invariant_of([] {
          qcmap_from_json(
              Json::parse(R"({"inversion": {"center": [0, 0], "radius": 1}})"),
              3);
        }) == "coordinates_dim");
  CHECK(invariant_of([] { load_qcmap("/no/such/map.json", 2); }) ==
        "map_file_unreadable");
}
