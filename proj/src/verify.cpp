#include "hypmetrics/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "hypmetrics/constants.hpp"
#include "hypmetrics/density.hpp"
#include "hypmetrics/domain_io.hpp"
#include "hypmetrics/geodesic.hpp"
#include "hypmetrics/reference.hpp"

namespace hypmetrics {

namespace {

void check(VerifyReport& rep, bool ok, std::string case_id, double expected,
           double observed, const std::string& detail) {
  if (!ok)
    rep.failures.push_back(
        VerifyFailure{std::move(case_id), expected, observed, detail});
}

void track_max(VerifyReport& rep, const std::string& name, double v) {
  auto it = rep.extremes.find(name);
  if (it == rep.extremes.end() || v > it->second) rep.extremes[name] = v;
}

void track_min(VerifyReport& rep, const std::string& name, double v) {
  auto it = rep.extremes.find(name);
  if (it == rep.extremes.end() || v < it->second) rep.extremes[name] = v;
}

std::string detail_json(std::uint64_t seed, int index,
                        const DomainSpec& domain, const Vector& z,
                        const Vector* w = nullptr) {
  Json j{{"seed", seed}, {"index", index}, {"domain", to_json(domain)},
         {"z", to_json(z)}};
  if (w) j["w"] = to_json(*w);
  return j.dump();
}

bool on_boundary(const DomainSpec& domain, const Vector& p, double tol) {
  for (const BoundarySphere& piece : boundary_pieces(domain))
    if (piece_distance(piece, p) <= tol) return true;
  return false;
}

}  // namespace

DomainSpec small_ball_domain(int dim, double eps) {
  Vector e1 = Vector::Zero(dim);
  e1[0] = 1.0;
  return DomainSpec::whole_space(
      dim, {Obstacle::point(2.0 * e1), Obstacle::ball(e1, eps)});
}

DomainSpec two_point_domain(int dim) {
  Vector e1 = Vector::Zero(dim);
  e1[0] = 1.0;
  return DomainSpec::whole_space(
      dim, {Obstacle::point(e1), Obstacle::point(2.0 * e1)});
}

DomainSpec random_domain(Rng& rng, int dim) {
  for (int attempt = 0; attempt < 400; ++attempt) {
    const bool ball_ambient = rng.uniform() < 0.5;
    Vector ambient_center(dim);
    for (int k = 0; k < dim; ++k) ambient_center[k] = rng.uniform(-0.3, 0.3);
    const double R = rng.uniform(2.0, 3.5);

    int count = 1 + static_cast<int>(rng.uniform(0.0, 4.0));
    count = std::min(count, 4);
    std::vector<Obstacle> obstacles;
    int points = 0;
    for (int i = 0; i < count; ++i) {
      Vector c(dim);
      for (int k = 0; k < dim; ++k) c[k] = rng.uniform(-1.0, 1.0);
      if (rng.uniform() < 0.4) {
        obstacles.push_back(Obstacle::point(std::move(c)));
        ++points;
      } else {
        obstacles.push_back(
            Obstacle::ball(std::move(c), rng.log_uniform(1e-3, 0.6)));
      }
    }
    if (!ball_ambient && points == count && count < 2) {
      Vector c(dim);
      for (int k = 0; k < dim; ++k) c[k] = rng.uniform(-1.0, 1.0);
      obstacles.push_back(Obstacle::point(std::move(c)));
    }
    try {
      if (ball_ambient)
        return DomainSpec::open_ball(std::move(ambient_center), R,
                                     std::move(obstacles));
      return DomainSpec::whole_space(dim, std::move(obstacles));
    } catch (const DomainError&) {
      // overlapping draw; try again
    }
  }
  return two_point_domain(dim);
}

DomainSpec random_bounded_domain(Rng& rng, int dim) {
  for (int attempt = 0; attempt < 400; ++attempt) {
    Vector ambient_center(dim);
    for (int k = 0; k < dim; ++k) ambient_center[k] = rng.uniform(-0.2, 0.2);
    const double R = rng.uniform(1.6, 2.6);
    const int count = static_cast<int>(rng.uniform(0.0, 3.0));
    std::vector<Obstacle> obstacles;
    for (int i = 0; i < count; ++i) {
      Vector c(dim);
      for (int k = 0; k < dim; ++k) c[k] = rng.uniform(-0.9, 0.9);
      if (rng.uniform() < 0.4)
        obstacles.push_back(Obstacle::point(std::move(c)));
      else
        obstacles.push_back(
            Obstacle::ball(std::move(c), rng.log_uniform(0.02, 0.35)));
    }
    try {
      return DomainSpec::open_ball(std::move(ambient_center), R,
                                   std::move(obstacles));
    } catch (const DomainError&) {
    }
  }
  return DomainSpec::open_ball(Vector::Zero(dim), 2.0, {});
}

DomainSpec random_radial_domain(Rng& rng, int dim) {
  for (int attempt = 0; attempt < 400; ++attempt) {
    const bool ball_ambient = rng.uniform() < 0.5;
    const double R = rng.uniform(2.5, 4.0);
    std::vector<Obstacle> obstacles;
    double r0 = 0.0;
    if (rng.uniform() < 0.7) {
      r0 = rng.log_uniform(0.05, 0.5);
      obstacles.push_back(Obstacle::ball(Vector::Zero(dim), r0));
    }
    int point_count = 1 + (rng.uniform() < 0.5 ? 1 : 0);
    if (!ball_ambient && obstacles.empty()) point_count = std::max(point_count, 2);
    for (int i = 0; i < point_count; ++i) {
      const double lo = std::max(2.0 * r0, 0.2);
      const double hi = ball_ambient ? 0.8 * R : 2.5;
      obstacles.push_back(
          Obstacle::point(rng.log_uniform(lo, hi) * rng.direction(dim)));
    }
    try {
      if (ball_ambient)
        return DomainSpec::open_ball(Vector::Zero(dim), R,
                                     std::move(obstacles));
      return DomainSpec::whole_space(dim, std::move(obstacles));
    } catch (const DomainError&) {
    }
  }
  return two_point_domain(dim);
}

Vector random_interior_point(const DomainSpec& domain, Rng& rng) {
  const int n = domain.dim();
  const double scale = std::max(1.0, domain.characteristic_scale());
  for (int attempt = 0; attempt < 4000; ++attempt) {
    Vector x(n);
    if (domain.has_ambient_ball()) {
      const double r =
          domain.ambient_radius() * std::pow(rng.uniform(), 1.0 / n);
      x = domain.ambient_center() + r * rng.direction(n);
    } else {
      const double half = 1.2 * scale + 0.5;
      for (int k = 0; k < n; ++k) x[k] = rng.uniform(-half, half);
    }
    if (!contains(domain, x)) continue;
    const double d = dist_to_complement(domain, x);
    if (d < 1e-4 * scale) continue;
    if (rng.uniform() < 0.5) return x;
    // Pull toward the nearest boundary point for a log-uniform clearance.
    const NearestBoundary nb = nearest_boundary_points(domain, x);
    const Vector& p = nb.points.front();
    const double target = rng.log_uniform(1e-3 * scale, d);
    if (target >= d) return x;
    Vector y = p + (target / d) * (x - p);
    if (contains(domain, y) && dist_to_complement(domain, y) >= 0.25 * target)
      return y;
    return x;
  }
  throw DomainError("point_in_domain",
                    "failed to sample an interior point of the domain");
}

Matrix random_orthogonal(int dim, Rng& rng) {
  Matrix g(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) g(r, c) = rng.normal();
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR();
  for (int k = 0; k < dim; ++k)
    if (r(k, k) < 0.0) q.col(k) = -q.col(k);
  return q;
}

Similarity random_similarity(int dim, Rng& rng) {
  Similarity sim;
  sim.s = rng.log_uniform(0.25, 4.0);
  sim.Q = random_orthogonal(dim, rng);
  sim.v = Vector(dim);
  for (int k = 0; k < dim; ++k) sim.v[k] = rng.uniform(-2.0, 2.0);
  return sim;
}

VerifyReport verify_density_chain(std::uint64_t seed, int cases) {
  VerifyReport rep;
  rep.suite = "density-chain";
  Rng rng(seed);
  for (int i = 0; i < cases; ++i) {
    const int dim = 2 + (i % 2);
    const DomainSpec domain = random_domain(rng, dim);
    const Vector z = random_interior_point(domain, rng);
    const std::string detail = detail_json(seed, i, domain, z);
    const std::array<DensityValue, 3> all = eval_all_densities(domain, z);
    const double v_l = all[0].value;
    const double v_p = all[1].value;
    const double v_pp = all[2].value;
    const double d = dist_to_complement(domain, z);
    const double b = beta(domain, z);
    ++rep.cases;
    const std::string id = std::to_string(i);
    check(rep, v_pp <= v_p + 1e-9, "chain-a/" + id, v_p + 1e-9, v_pp, detail);
    check(rep, v_p <= v_l + 1e-9, "chain-b/" + id, v_l + 1e-9, v_p, detail);
    check(rep, v_l <= 2.15 * v_pp * (1.0 + 1e-6), "chain-c/" + id,
          2.15 * v_pp * (1.0 + 1e-6), v_l, detail);
    check(rep, v_l * d <= 1.0 + 1e-9, "product/" + id, 1.0 + 1e-9, v_l * d,
          detail);
    const double ident = d * (1.0 + b);
    check(rep, std::abs(all[2].reciprocal - ident) <= 1e-10 * ident,
          "identity/" + id, ident, all[2].reciprocal, detail);
    track_max(rep, "max_lambda_over_lambda_pp", v_l / v_pp);
    track_max(rep, "max_lambda_times_d", v_l * d);
    track_max(rep, "max_beta", b);
  }
  return rep;
}

VerifyReport verify_domain_monotonicity(std::uint64_t seed, int cases) {
  VerifyReport rep;
  rep.suite = "domain-monotonicity";
  Rng rng(seed);
  int made = 0;
  int budget = cases * 30;
  while (made < cases && budget-- > 0) {
    const int dim = 2 + (made % 2);
    const DomainSpec outer = random_domain(rng, dim);
    const Vector z = random_interior_point(outer, rng);
    const double scale = std::max(1.0, outer.characteristic_scale());

    // Carve one more obstacle out of the domain, away from z.
    bool built = false;
    DomainSpec inner = outer;
    for (int attempt = 0; attempt < 40 && !built; ++attempt) {
      const Vector p = random_interior_point(outer, rng);
      const double dp = dist_to_complement(outer, p);
      const double gap = (p - z).norm();
      if (gap < 1e-2 * scale) continue;
      const double rmax = 0.8 * std::min(dp, 0.8 * gap);
      if (rmax <= 1e-6 * scale) continue;
      std::vector<Obstacle> obstacles = outer.obstacles();
      if (rng.uniform() < 0.3)
        obstacles.push_back(Obstacle::point(p));
      else
        obstacles.push_back(Obstacle::ball(p, rng.uniform(0.2, 0.9) * rmax));
      try {
        inner = outer.has_ambient_ball()
                    ? DomainSpec::open_ball(outer.ambient_center(),
                                            outer.ambient_radius(),
                                            std::move(obstacles))
                    : DomainSpec::whole_space(dim, std::move(obstacles));
        built = true;
      } catch (const DomainError&) {
      }
    }
    if (!built) continue;

    const double v_outer = eval_density(outer, z, DensityKind::lambda).value;
    const double v_inner = eval_density(inner, z, DensityKind::lambda).value;
    const std::string detail = detail_json(seed, made, inner, z);
    ++rep.cases;
    check(rep, v_outer <= v_inner + 1e-9, "monotone/" + std::to_string(made),
          v_inner + 1e-9, v_outer, detail);
    track_max(rep, "max_gap", v_outer - v_inner);
    ++made;
  }
  if (made < cases)
    rep.failures.push_back(VerifyFailure{"generation", double(cases),
                                         double(made),
                                         "instance generation exhausted"});
  return rep;
}

VerifyReport verify_small_ball_example() {
  VerifyReport rep;
  rep.suite = "small-ball-example";
  const double eps = 0.01;
  for (int dim : {2, 3}) {
    const DomainSpec domain = small_ball_domain(dim, eps);
    const Vector z = Vector::Zero(dim);
    const std::string detail = detail_json(0, dim, domain, z);
    const std::array<DensityValue, 3> all = eval_all_densities(domain, z);
    const double r_l = all[0].reciprocal;
    const double r_p = all[1].reciprocal;
    const double r_pp = all[2].reciprocal;
    ++rep.cases;
    const std::string id = "dim" + std::to_string(dim);
    check(rep, r_pp >= 1.0 + 0.9 * eps && r_pp <= 1.0 + 1.1 * eps,
          "recip-pp/" + id, 1.0 + 0.9 * eps, r_pp, detail);
    check(rep,
          r_p >= 1.0 + eps * eps / 9.0 && r_p <= 1.0 + 0.75 * eps * eps,
          "recip-p/" + id, 1.0 + eps * eps / 9.0, r_p, detail);
    check(rep, std::abs(r_l - 1.0) <= 1e-9, "recip-l/" + id, 1.0, r_l,
          detail);
    check(rep, all[0].exceptional_midpoint, "exceptional/" + id, 1.0, 0.0,
          detail);
    check(rep, all[2].value < all[1].value - 1e-9, "strict-a/" + id,
          all[1].value, all[2].value, detail);
    check(rep, all[1].value < all[0].value - 1e-9, "strict-b/" + id,
          all[0].value, all[1].value, detail);
    rep.extremes["recip_pp_dim" + std::to_string(dim)] = r_pp;
    rep.extremes["recip_p_dim" + std::to_string(dim)] = r_p;
    rep.extremes["recip_l_dim" + std::to_string(dim)] = r_l;
  }
  return rep;
}

VerifyReport verify_two_point_example() {
  VerifyReport rep;
  rep.suite = "two-point-example";
  for (int dim : {2, 3}) {
    const DomainSpec wide = two_point_domain(dim);
    const DomainSpec narrow = small_ball_domain(dim, 0.01);
    const Vector z = Vector::Zero(dim);
    const std::string detail = detail_json(0, dim, wide, z);
    const std::array<DensityValue, 3> vw = eval_all_densities(wide, z);
    const std::array<DensityValue, 3> vn = eval_all_densities(narrow, z);
    ++rep.cases;
    const std::string id = "dim" + std::to_string(dim);
    for (int k = 0; k < 3; ++k)
      check(rep, std::abs(vw[k].value - 1.0) <= 1e-9,
            "unit-" + std::to_string(k) + "/" + id, 1.0, vw[k].value, detail);
    // Shrinking the domain lowers the boundary-pair densities here.
    check(rep, vw[1].value > vn[1].value + 1e-9, "reverse-p/" + id,
          vn[1].value, vw[1].value, detail);
    check(rep, vw[2].value > vn[2].value + 1e-9, "reverse-pp/" + id,
          vn[2].value, vw[2].value, detail);
  }
  return rep;
}

VerifyReport verify_distance_chain(std::uint64_t seed, int cases) {
  VerifyReport rep;
  rep.suite = "distance-chain";
  Rng rng(seed);
  int made = 0;
  int budget = cases * 20;
  while (made < cases && budget-- > 0) {
    const int dim = 2 + (made % 2);
    const DomainSpec domain = random_bounded_domain(rng, dim);
    const double R = domain.ambient_radius();
    Vector z, w;
    bool ok = false;
    for (int attempt = 0; attempt < 60 && !ok; ++attempt) {
      z = random_interior_point(domain, rng);
      w = random_interior_point(domain, rng);
      ok = dist_to_complement(domain, z) > 0.08 * R &&
           dist_to_complement(domain, w) > 0.08 * R &&
           (z - w).norm() > 0.3 * R;
      if (dim == 3) ok = ok && certify_segment(domain, z, w);
    }
    if (!ok) continue;

    GraphParams params;
    params.budget = SamplingBudget{16, seed + static_cast<std::uint64_t>(made)};
    params.quad_order = 4;
    params.h = dim == 2 ? R / 8.0 : (z - w).norm() / 4.0;
    const double tube = 2.5 * params.h;

    std::array<double, 4> v{};
    bool finite = false;
    for (int round = 0; round < 2 && !finite; ++round) {
      const PathGraph graph =
          dim == 2 ? build_graph(domain, z, w, params)
                   : build_graph_in_tube(domain, z, w, params, {z, w}, tube);
      finite = true;
      for (int k = 0; k < 4; ++k) {
        v[k] = shortest_path(graph, static_cast<MetricKind>(k)).value;
        finite = finite && std::isfinite(v[k]);
      }
      if (!finite) params.h *= 0.5;
    }
    const std::string detail = detail_json(seed, made, domain, z, &w);
    ++rep.cases;
    const std::string id = std::to_string(made);
    if (!finite) {
      rep.failures.push_back(VerifyFailure{
          "connected/" + id, 0.0,
          std::numeric_limits<double>::infinity(), detail});
      ++made;
      continue;
    }
    check(rep, v[2] <= v[1] + 1e-9, "chain-a/" + id, v[1] + 1e-9, v[2],
          detail);
    check(rep, v[1] <= v[0] + 1e-9, "chain-b/" + id, v[0] + 1e-9, v[1],
          detail);
    check(rep, v[0] <= 2.15 * v[2] + 1e-9, "chain-c/" + id, 2.15 * v[2] + 1e-9,
          v[0], detail);
    check(rep, v[0] <= v[3] + 1e-9, "qh-bound/" + id, v[3] + 1e-9, v[0],
          detail);
    track_max(rep, "max_d_over_dpp", v[0] / v[2]);
    ++made;
  }
  if (made < cases)
    rep.failures.push_back(VerifyFailure{"generation", double(cases),
                                         double(made),
                                         "instance generation exhausted"});

  // Radial sanity value in the unit disk: the quasihyperbolic distance from
  // the center to 0.5 e1 is log 2 along the radius.
  const DomainSpec disk = DomainSpec::open_ball(Vector::Zero(2), 1.0, {});
  Vector w0 = Vector::Zero(2);
  w0[0] = 0.5;
  const DistanceResult qh = distance(disk, Vector::Zero(2), w0,
                                     MetricKind::quasihyperbolic, GraphParams{});
  ++rep.cases;
  check(rep, std::abs(qh.value - std::log(2.0)) <= 2e-3, "disk-log2",
        std::log(2.0), qh.value, "{}");
  rep.extremes["disk_log2_error"] = qh.value - std::log(2.0);
  return rep;
}

VerifyReport verify_witness_classification(std::uint64_t seed, int cases) {
  VerifyReport rep;
  rep.suite = "witness-classification";
  Rng rng(seed);
  for (int i = 0; i < cases; ++i) {
    const int dim = 2 + (i % 2);
    const DomainSpec domain = random_domain(rng, dim);
    const Vector z = random_interior_point(domain, rng);
    const std::string detail = detail_json(seed, i, domain, z);
    const DensityValue val = eval_density(domain, z, DensityKind::lambda);
    const double scale = std::max(1.0, domain.characteristic_scale());
    const double tol = 1e-8 * scale;
    ++rep.cases;
    const std::string id = std::to_string(i);

    const double obj = pair_objective(z, val.witness_a, val.witness_b);
    check(rep, std::abs(obj - val.reciprocal) <= 1e-10 * val.reciprocal,
          "reproduce/" + id, val.reciprocal, obj, detail);
    if (val.exceptional_midpoint) {
      const Vector mid = 0.5 * (z + val.witness_b);
      check(rep, (val.witness_a - mid).norm() <= 1e-10 * scale,
            "midpoint/" + id, 0.0, (val.witness_a - mid).norm(), detail);
      const double da = (z - val.witness_a).norm();
      const double ab = (val.witness_a - val.witness_b).norm();
      check(rep, std::abs(da - ab) <= 1e-10 * scale, "equidistant/" + id, da,
            ab, detail);
      check(rep, in_complement(domain, val.witness_a), "a-complement/" + id,
            1.0, 0.0, detail);
      check(rep, on_boundary(domain, val.witness_b, tol), "b-boundary/" + id,
            1.0, 0.0, detail);
    } else {
      check(rep, on_boundary(domain, val.witness_a, tol), "a-boundary/" + id,
            1.0, 0.0, detail);
      check(rep, on_boundary(domain, val.witness_b, tol), "b-boundary/" + id,
            1.0, 0.0, detail);
    }
  }
  return rep;
}

VerifyReport verify_density_continuity(std::uint64_t seed, int cases) {
  VerifyReport rep;
  rep.suite = "density-continuity";
  Rng rng(seed);
  for (int i = 0; i < cases; ++i) {
    const int dim = 2 + (i % 2);
    const DomainSpec domain = random_domain(rng, dim);
    const Vector x0 = random_interior_point(domain, rng);
    const double d0 = dist_to_complement(domain, x0);
    const double t = rng.uniform(0.05, 0.9);
    const double radius = t * d0 * std::pow(rng.uniform(), 1.0 / dim);
    const Vector y = x0 + radius * rng.direction(dim);
    const std::string detail = detail_json(seed, i, domain, x0, &y);
    const double vx =
        eval_density(domain, x0, DensityKind::lambda_prime).value;
    const double vy = eval_density(domain, y, DensityKind::lambda_prime).value;
    const double ratio = vx / vy;
    const double bound = continuity_ratio_bound(t);
    ++rep.cases;
    const std::string id = std::to_string(i);
    check(rep, ratio <= bound + 1e-9, "upper/" + id, bound, ratio, detail);
    check(rep, ratio >= 1.0 / bound - 1e-9, "lower/" + id, 1.0 / bound, ratio,
          detail);
    track_max(rep, "max_ratio_over_bound",
              std::max(ratio / bound, 1.0 / (ratio * bound)));
  }
  return rep;
}

VerifyReport verify_objective_monotonicity(std::uint64_t seed, int triples) {
  VerifyReport rep;
  rep.suite = "objective-monotonicity";
  Rng rng(seed);
  const double ts[3] = {0.1, 1.0, 10.0};
  for (int i = 0; i < triples; ++i) {
    const double T = ts[i % 3];
    double y1 = rng.uniform(1e-6, 100.0);
    double y2 = rng.uniform(1e-6, 100.0);
    if (y1 > y2) std::swap(y1, y2);
    if (y2 - y1 < 1e-9 * y2) y2 = y1 * (1.0 + 1e-6);
    ++rep.cases;
    check(rep, monotone_f(T, y1) < monotone_f(T, y2),
          "mono/" + std::to_string(i), monotone_f(T, y2), monotone_f(T, y1),
          "{\"T\":" + std::to_string(T) + ",\"y1\":" + std::to_string(y1) +
              ",\"y2\":" + std::to_string(y2) + "}");
  }
  return rep;
}

VerifyReport verify_disk_sandwich(int samples, std::uint64_t seed) {
  VerifyReport rep;
  rep.suite = "disk-sandwich";
  const double k = planar_comparison_k();
  const double lo = 1.0 / (2.0 * std::sqrt(2.0));
  const double hi = k + std::numbers::pi / 4.0;
  Rng rng(seed);
  for (const ReferenceDomain tag :
       {ReferenceDomain::unit_disk, ReferenceDomain::punctured_disk}) {
    const DomainSpec spec = reference_domain_spec(tag);
    const bool punctured = tag == ReferenceDomain::punctured_disk;
    const int count = samples / 2;
    for (int j = 0; j < count; ++j) {
      const double r = punctured ? rng.log_uniform(1e-3, 0.97)
                                 : rng.uniform(0.02, 0.98);
      const double th = rng.uniform(0.0, 2.0 * std::numbers::pi);
      Vector z(2);
      z << r * std::cos(th), r * std::sin(th);
      const double eta = reference_hyperbolic_density(tag, z);
      const double d = dist_to_complement(spec, z);
      const double b = beta(spec, z);
      const double prod = eta * d * (b + k);
      ++rep.cases;
      const std::string id =
          (punctured ? "punctured/" : "disk/") + std::to_string(j);
      const std::string detail = detail_json(seed, j, spec, z);
      check(rep, prod >= lo - 1e-12, "sandwich-lo/" + id, lo, prod, detail);
      check(rep, prod <= hi + 1e-12, "sandwich-hi/" + id, hi, prod, detail);
      check(rep, eta * d * b <= hi + 1e-12, "beta-upper/" + id, hi,
            eta * d * b, detail);
      track_min(rep, "min_product", prod);
      track_max(rep, "max_product", prod);
    }
  }
  return rep;
}

VerifyReport verify_qc_pointwise(std::uint64_t seed, int cases) {
  VerifyReport rep;
  rep.suite = "qc-pointwise";
  Rng rng(seed);
  const double kvals[3] = {1.5, 2.0, 4.0};
  for (int i = 0; i < cases; ++i) {
    const int dim = 2 + ((i >> 1) & 1);
    const std::string id = std::to_string(i);
    if ((i & 1) == 0) {
      const DomainSpec domain = random_domain(rng, dim);
      const Vector z = random_interior_point(domain, rng);
      const QcMap map = random_similarity(dim, rng);
      const double ratio = check_qc1(map, domain, z);
      ++rep.cases;
      check(rep, std::abs(ratio - 1.0) <= 1e-9, "similarity/" + id, 1.0,
            ratio, detail_json(seed, i, domain, z));
      track_max(rep, "max_similarity_dev", std::abs(ratio - 1.0));
    } else {
      const double k_target = kvals[(i / 2) % 3];
      const QcMap map =
          RadialStretch{std::pow(k_target, 1.0 / (dim - 1))};
      const double grotzsch = dim == 2 ? 4.0 : 2.0 * std::exp(dim - 1.0);
      const double c1 = c1_bound(dim, k_target, grotzsch);
      const DomainSpec domain = random_radial_domain(rng, dim);
      const Vector z = random_interior_point(domain, rng);
      const double ratio = check_qc1(map, domain, z);
      ++rep.cases;
      const std::string detail = detail_json(seed, i, domain, z);
      check(rep,
            std::abs(dilatation(map, dim).maximal - k_target) <=
                1e-9 * k_target,
            "dilatation/" + id, k_target, dilatation(map, dim).maximal,
            detail);
      check(rep, ratio <= c1 + 1e-9, "radial-hi/" + id, c1, ratio, detail);
      check(rep, ratio >= 1.0 / c1 - 1e-9, "radial-lo/" + id, 1.0 / c1, ratio,
            detail);
      track_max(rep, "max_radial_ratio", ratio);
      track_min(rep, "min_radial_ratio", ratio);
    }
  }
  return rep;
}

VerifyReport verify_qc_distance(std::uint64_t seed, int cases) {
  VerifyReport rep;
  rep.suite = "qc-distance";
  Rng rng(seed);
  for (int i = 0; i < cases; ++i) {
    const bool sim_case = (i % 2) == 0;
    DomainSpec domain = DomainSpec::open_ball(Vector::Zero(2), 2.0, {});
    QcMap map = Similarity::identity(2);
    if (sim_case) {
      domain = random_bounded_domain(rng, 2);
      map = random_similarity(2, rng);
    } else {
      for (int attempt = 0; attempt < 50; ++attempt) {
        domain = random_radial_domain(rng, 2);
        if (domain.has_ambient_ball()) break;
      }
      map = RadialStretch{(i / 2) % 2 == 0 ? 1.5 : 2.0};
    }
    const double R = domain.ambient_radius();
    Vector z, w;
    bool ok = false;
    for (int attempt = 0; attempt < 60 && !ok; ++attempt) {
      z = random_interior_point(domain, rng);
      w = random_interior_point(domain, rng);
      ok = dist_to_complement(domain, z) > 0.05 * R &&
           dist_to_complement(domain, w) > 0.05 * R &&
           (z - w).norm() > 0.2 * R;
    }
    if (!ok) continue;
    GraphParams params;
    params.h = R / 6.0;
    params.quad_order = 4;
    params.budget = SamplingBudget{16, seed + static_cast<std::uint64_t>(i)};
    params.refinements = 1;
    const Qc2Result res = check_qc2(map, domain, z, w, params);
    const std::string detail = detail_json(seed, i, domain, z, &w);
    ++rep.cases;
    const std::string id = std::to_string(i);
    check(rep, std::isfinite(res.lhs) && res.lhs > 0.0, "finite/" + id, 1.0,
          res.lhs, detail);
    check(rep, res.rhs_budget > 0.0, "rhs-positive/" + id, 1.0,
          res.rhs_budget, detail);
    if (!(std::isfinite(res.lhs) && res.rhs_budget > 0.0)) continue;
    const double ratio = res.lhs / res.rhs_budget;
    GraphParams refined = params;
    refined.refinements = 2;
    const Qc2Result res2 = check_qc2(map, domain, z, w, refined);
    const double ratio2 = res2.lhs / res2.rhs_budget;
    check(rep, std::abs(ratio2 - ratio) <= 0.25 * std::max(ratio, ratio2),
          "stable/" + id, ratio, ratio2, detail);
    if (sim_case)
      check(rep,
            std::abs(res.lhs - res.source_distance) <=
                1e-6 * res.source_distance,
            "isometry/" + id, res.source_distance, res.lhs, detail);
    track_max(rep, "max_ratio", std::max(ratio, ratio2));
  }
  return rep;
}

VerifyReport verify_roots() {
  VerifyReport rep;
  rep.suite = "roots";
  const std::string d = "{}";
  const auto expect = [&rep, &d](bool ok, const std::string& id,
                                 double expected, double observed) {
    ++rep.cases;
    check(rep, ok, id, expected, observed, d);
  };

  const RootResult t0 = solve_t0();
  expect(std::abs(t0.value - 1.14619) <= 1e-5, "t0-value", 1.14619, t0.value);
  expect(std::abs(t0.residual) <= 1e-12, "t0-residual", 0.0, t0.residual);
  expect(std::abs((std::exp(t0.value) - 1.0) - (t0.value + 1.0)) <= 1e-10,
         "t0-identity", t0.value + 1.0, std::exp(t0.value) - 1.0);

  const RootResult lr = solve_log_reciprocal();
  expect(std::abs(lr.value - 1.76322) <= 1e-5, "logrecip-value", 1.76322,
         lr.value);
  expect(std::abs(std::log(lr.value) - 1.0 / lr.value) <= 1e-12,
         "logrecip-residual", 1.0 / lr.value, std::log(lr.value));

  const RootResult me = solve_midpoint_eq();
  expect(std::abs(me.value - 0.317844) <= 1e-5, "midpoint-value", 0.317844,
         me.value);
  expect(std::abs(me.value * (2.0 - std::log(me.value)) - 1.0) <= 1e-12,
         "midpoint-residual", 1.0, me.value * (2.0 - std::log(me.value)));

  const double k = planar_comparison_k();
  expect(std::abs(k - 5.7627) <= 1e-4, "k-value", 5.7627, k);
  expect(std::abs((k - 4.0) - std::log(3.0 + 2.0 * std::sqrt(2.0))) <= 1e-12,
         "k-identity", std::log(3.0 + 2.0 * std::sqrt(2.0)), k - 4.0);
  expect(std::abs((3.0 + 2.0 * std::sqrt(2.0)) * (3.0 - 2.0 * std::sqrt(2.0)) -
                  1.0) <= 1e-12,
         "conjugate", 1.0,
         (3.0 + 2.0 * std::sqrt(2.0)) * (3.0 - 2.0 * std::sqrt(2.0)));

  // Uniqueness scans: exactly one sign change for each root equation.
  int changes = 0;
  double prev = std::log(0.01) - 1.0 / 0.01;
  for (int i = 1; i <= 10000; ++i) {
    const double x = 0.01 * std::pow(10000.0, i / 10000.0);
    const double f = std::log(x) - 1.0 / x;
    if ((prev < 0.0) != (f < 0.0)) ++changes;
    prev = f;
  }
  expect(changes == 1, "logrecip-unique", 1.0, changes);
  changes = 0;
  prev = 0.001 * (2.0 - std::log(0.001)) - 1.0;
  for (int i = 1; i <= 10000; ++i) {
    const double x = 0.001 + (1.0 - 2e-3) * i / 10000.0;
    const double f = x * (2.0 - std::log(x)) - 1.0;
    if ((prev < 0.0) != (f < 0.0)) ++changes;
    prev = f;
  }
  expect(changes == 1, "midpoint-unique", 1.0, changes);

  // Threshold behavior of e^t - 2 - t around its positive root.
  bool threshold_ok = true;
  for (int i = 0; i <= 3000; ++i) {
    const double t = 3.0 * i / 3000.0;
    if (std::abs(t - t0.value) < 1e-6) continue;
    const double f = std::exp(t) - 2.0 - t;
    if (t < t0.value ? f >= 0.0 : f <= 0.0) threshold_ok = false;
  }
  expect(threshold_ok, "t0-threshold", 1.0, threshold_ok ? 1.0 : 0.0);

  // Interchange inequality at the midpoint-equation root.
  const double g = me.value;
  const double lhs = 1.0 + std::abs(std::log(1.0 / g - 1.0));
  const double rhs = (1.0 / (1.0 - g)) * (1.0 + std::abs(std::log(g)));
  expect(lhs < rhs, "interchange", rhs, lhs);

  // Numeric anchors.
  const double a1 = (1.0 + t0.value) / (1.0 + t0.value - std::log(2.0));
  expect(std::abs(a1 - 1.47703) <= 1e-4 && a1 < 1.48, "anchor-1", 1.47703,
         a1);
  const double a2 = (std::log(t0.value + 1.0) + 1.0) / (t0.value + 1.0);
  expect(std::abs(1.0 / a2 - 1.21687) <= 1e-4 && 1.0 / a2 < 1.22, "anchor-2",
         1.21687, 1.0 / a2);

  // Derived formula values.
  expect(std::abs(continuity_ratio_bound(0.5) -
                  2.0 * (1.0 + std::log(2.0))) <= 1e-12,
         "ratio-bound-half", 2.0 * (1.0 + std::log(2.0)),
         continuity_ratio_bound(0.5));
  const double c1_ref =
      1.0 + std::log(128.0) / (1.0 + std::log(10.0) + std::log(16.0));
  expect(std::abs(c1_bound(2, 1.0, 4.0) - c1_ref) <= 1e-12, "c1-base", c1_ref,
         c1_bound(2, 1.0, 4.0));
  expect(c1_bound(2, 4.0, 4.0) > c1_bound(2, 1.0, 4.0), "c1-monotone",
         c1_bound(2, 1.0, 4.0), c1_bound(2, 4.0, 4.0));
  expect(std::abs(alpha(2, 1.0) - 1.0) <= 1e-15, "alpha-1", 1.0,
         alpha(2, 1.0));
  expect(std::abs(alpha(3, 8.0) - 1.0 / std::sqrt(8.0)) <= 1e-15, "alpha-8",
         1.0 / std::sqrt(8.0), alpha(3, 8.0));
  expect(std::abs(alpha(2, 2.0) - 0.5) <= 1e-15, "alpha-2", 0.5,
         alpha(2, 2.0));
  expect(std::abs(monotone_f(1.0, 1.0) - 1.0) <= 1e-15, "f-1", 1.0,
         monotone_f(1.0, 1.0));
  expect(std::abs(monotone_f(2.0, 1.0) - (1.0 + std::log(2.0))) <= 1e-15,
         "f-2", 1.0 + std::log(2.0), monotone_f(2.0, 1.0));
  expect(std::abs(monotone_f(1.0, 2.0) - 2.0 * (1.0 + std::log(2.0))) <=
             1e-15,
         "f-3", 2.0 * (1.0 + std::log(2.0)), monotone_f(1.0, 2.0));
  return rep;
}

std::vector<VerifyReport> verify_all(std::uint64_t seed) {
  std::vector<VerifyReport> reports;
  reports.push_back(verify_density_chain(seed, 100));
  reports.push_back(verify_domain_monotonicity(seed + 1, 40));
  reports.push_back(verify_small_ball_example());
  reports.push_back(verify_two_point_example());
  reports.push_back(verify_distance_chain(seed + 2, 6));
  reports.push_back(verify_witness_classification(seed + 3, 60));
  reports.push_back(verify_density_continuity(seed + 4, 100));
  reports.push_back(verify_objective_monotonicity(seed + 5, 10000));
  reports.push_back(verify_disk_sandwich(200, seed + 6));
  reports.push_back(verify_qc_pointwise(seed + 7, 30));
  reports.push_back(verify_qc_distance(seed + 8, 4));
  reports.push_back(verify_roots());
  return reports;
}

}  // namespace hypmetrics
