#include "hypmetrics/domain_io.hpp"

#include <cmath>
#include <fstream>
#include <utility>
#include <vector>

namespace hypmetrics {

namespace {

[[noreturn]] void fail(const std::string& invariant, const std::string& msg) {
  throw DomainError(invariant, msg);
}

double positive_number(const Json& j, const char* what,
                       const char* invariant) {
  if (!j.is_number())
    fail(invariant, std::string(what) + " must be a number");
  const double v = j.get<double>();
  if (!(v > 0.0) || !std::isfinite(v))
    fail(invariant, std::string(what) + " must be positive and finite");
  return v;
}

}  // namespace

Json to_json(const Vector& v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Vector vector_from_json(const Json& j, int expected_dim) {
  if (!j.is_array())
    fail("coordinates_array", "coordinates must be a JSON array");
  if (expected_dim >= 0 && static_cast<int>(j.size()) != expected_dim)
    fail("coordinates_dim",
         "expected " + std::to_string(expected_dim) + " coordinates, got " +
             std::to_string(j.size()));
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const Json& c = j[static_cast<std::size_t>(i)];
    if (!c.is_number())
      fail("coordinates_numeric", "coordinates must be numbers");
    v[i] = c.get<double>();
    if (!std::isfinite(v[i]))
      fail("coordinates_finite", "coordinates must be finite");
  }
  return v;
}

Json to_json(const DomainSpec& domain) {
  Json j;
  j["dim"] = domain.dim();
  if (domain.has_ambient_ball())
    j["ambient"] = {{"ball",
                     {{"center", to_json(domain.ambient_center())},
                      {"radius", domain.ambient_radius()}}}};
  else
    j["ambient"] = "whole_space";
  Json obstacles = Json::array();
  for (const Obstacle& o : domain.obstacles()) {
    if (o.kind == Obstacle::Kind::removed_point)
      obstacles.push_back({{"point", {{"center", to_json(o.center)}}}});
    else
      obstacles.push_back({{"ball",
                            {{"center", to_json(o.center)},
                             {"radius", o.radius}}}});
  }
  j["obstacles"] = std::move(obstacles);
  return j;
}

DomainSpec domain_from_json(const Json& j) {
  if (!j.is_object()) fail("domain_object", "domain spec must be an object");
  if (!j.contains("dim") || !j["dim"].is_number_integer())
    fail("dim_integer", "domain spec needs an integer \"dim\"");
  const int dim = j["dim"].get<int>();
  if (dim < 2) fail("dim_at_least_2", "dimension must be at least 2");

  std::vector<Obstacle> obstacles;
  if (j.contains("obstacles")) {
    if (!j["obstacles"].is_array())
      fail("obstacles_array", "\"obstacles\" must be an array");
    for (const Json& o : j["obstacles"]) {
      if (o.is_object() && o.contains("point")) {
        obstacles.push_back(
            Obstacle::point(vector_from_json(o["point"].at("center"), dim)));
      } else if (o.is_object() && o.contains("ball")) {
        const Json& b = o["ball"];
        obstacles.push_back(Obstacle::ball(
            vector_from_json(b.at("center"), dim),
            positive_number(b.at("radius"), "obstacle radius",
                            "obstacle_radius_positive")));
      } else {
        fail("obstacle_kind_unknown",
             "each obstacle must be {\"point\": ...} or {\"ball\": ...}");
      }
    }
  }

  if (!j.contains("ambient"))
    fail("ambient_missing", "domain spec needs an \"ambient\" entry");
  const Json& ambient = j["ambient"];
  if (ambient.is_string() && ambient.get<std::string>() == "whole_space")
    return DomainSpec::whole_space(dim, std::move(obstacles));
  if (ambient.is_object() && ambient.contains("ball")) {
    const Json& b = ambient["ball"];
    return DomainSpec::open_ball(
        vector_from_json(b.at("center"), dim),
        positive_number(b.at("radius"), "ambient radius",
                        "ambient_radius_positive"),
        std::move(obstacles));
  }
  fail("ambient_kind_unknown",
       "\"ambient\" must be \"whole_space\" or {\"ball\": ...}");
}

DomainSpec load_domain(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("domain_file_unreadable", "cannot open " + path);
  Json j;
  in >> j;
  return domain_from_json(j);
}

Json to_json(const QcMap& map) {
  if (const auto* sim = std::get_if<Similarity>(&map)) {
    Json rot = Json::array();
    for (Eigen::Index r = 0; r < sim->Q.rows(); ++r) {
      Json row = Json::array();
      for (Eigen::Index c = 0; c < sim->Q.cols(); ++c)
        row.push_back(sim->Q(r, c));
      rot.push_back(std::move(row));
    }
    return {{"similarity",
             {{"scale", sim->s},
              {"rotation", std::move(rot)},
              {"translation", to_json(sim->v)}}}};
  }
  if (const auto* rs = std::get_if<RadialStretch>(&map))
    return {{"radial_stretch", {{"K", rs->K}}}};
  if (const auto* lin = std::get_if<LinearMap>(&map)) {
    Json mat = Json::array();
    for (Eigen::Index r = 0; r < lin->A.rows(); ++r) {
      Json row = Json::array();
      for (Eigen::Index c = 0; c < lin->A.cols(); ++c)
        row.push_back(lin->A(r, c));
      mat.push_back(std::move(row));
    }
    return {{"linear", {{"matrix", std::move(mat)}}}};
  }
  const auto& inv = std::get<Inversion>(map);
  return {{"inversion",
           {{"center", to_json(inv.center)}, {"radius", inv.radius}}}};
}

namespace {

Matrix matrix_from_json(const Json& j, int dim, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    fail("matrix_shape", std::string(what) + " must be a " +
                             std::to_string(dim) + "x" + std::to_string(dim) +
                             " array of arrays");
  Matrix m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != dim)
      fail("matrix_shape", std::string(what) + " row has wrong length");
    for (int c = 0; c < dim; ++c) {
      const Json& e = row[static_cast<std::size_t>(c)];
      if (!e.is_number())
        fail("matrix_numeric", std::string(what) + " entries must be numbers");
      m(r, c) = e.get<double>();
    }
  }
  return m;
}

}  // namespace

QcMap qcmap_from_json(const Json& j, int dim) {
  if (!j.is_object()) fail("map_object", "map spec must be an object");
  QcMap map;
  if (j.contains("similarity")) {
    const Json& s = j["similarity"];
    Similarity sim;
    sim.s = positive_number(s.at("scale"), "similarity scale",
                            "similarity_scale_positive");
    sim.Q = s.contains("rotation")
                ? matrix_from_json(s["rotation"], dim, "rotation")
                : Matrix::Identity(dim, dim);
    sim.v = s.contains("translation")
                ? vector_from_json(s["translation"], dim)
                : Vector::Zero(dim);
    map = std::move(sim);
  } else if (j.contains("radial_stretch")) {
    map = RadialStretch{positive_number(j["radial_stretch"].at("K"),
                                        "radial stretch K",
                                        "radial_stretch_positive")};
  } else if (j.contains("linear")) {
    map = LinearMap{matrix_from_json(j["linear"].at("matrix"), dim, "matrix")};
  } else if (j.contains("inversion")) {
    const Json& s = j["inversion"];
    map = Inversion{vector_from_json(s.at("center"), dim),
                    positive_number(s.at("radius"), "inversion radius",
                                    "inversion_radius_positive")};
  } else {
    fail("map_kind_unknown",
         "map spec must contain one of similarity, radial_stretch, linear, "
         "inversion");
  }
  try {
    validate(map, dim);
  } catch (const std::invalid_argument& e) {
    fail("map_invalid", e.what());
  }
  return map;
}

QcMap load_qcmap(const std::string& path, int dim) {
  std::ifstream in(path);
  if (!in) fail("map_file_unreadable", "cannot open " + path);
  Json j;
  in >> j;
  return qcmap_from_json(j, dim);
}

}  // namespace hypmetrics
