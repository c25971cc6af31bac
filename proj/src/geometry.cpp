#include "hypmetrics/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hypmetrics/rng.hpp"

namespace hypmetrics {

namespace {

constexpr double kPi = std::numbers::pi;

Vector axis(int dim, int k) {
  Vector v = Vector::Zero(dim);
  v[k] = 1.0;
  return v;
}

void validate_obstacles(int dim, const std::vector<Obstacle>& obstacles,
                        bool has_ambient, const Vector& ambient_center,
                        double ambient_radius) {
  for (const Obstacle& o : obstacles) {
    if (o.center.size() != dim)
      throw DomainError("obstacle_dim_matches",
                        "obstacle center dimension differs from domain dim");
    if (o.kind == Obstacle::Kind::removed_ball && !(o.radius > 0.0))
      throw DomainError("obstacle_radius_positive",
                        "removed ball radius must be > 0");
    if (o.kind == Obstacle::Kind::removed_point && o.radius != 0.0)
      throw DomainError("obstacle_point_radius_zero",
                        "removed point must have radius 0");
  }
  for (std::size_t i = 0; i < obstacles.size(); ++i) {
    for (std::size_t j = i + 1; j < obstacles.size(); ++j) {
      const double gap = (obstacles[i].center - obstacles[j].center).norm() -
                         obstacles[i].radius - obstacles[j].radius;
      if (!(gap > 0.0))
        throw DomainError("obstacles_pairwise_disjoint",
                          "obstacle closures must be pairwise disjoint");
    }
  }
  if (has_ambient) {
    for (const Obstacle& o : obstacles) {
      const double reach = (o.center - ambient_center).norm() + o.radius;
      if (!(reach < ambient_radius))
        throw DomainError("obstacle_inside_ambient",
                          "obstacles must lie strictly inside the ambient ball");
    }
  }
}

}  // namespace

DomainSpec DomainSpec::whole_space(int dim, std::vector<Obstacle> obstacles) {
  if (dim < 2)
    throw DomainError("dim_at_least_2", "domain dimension must be >= 2");
  validate_obstacles(dim, obstacles, false, Vector(), 0.0);
  // R^n \ D must contain at least two points: a removed ball contributes
  // infinitely many, a removed point exactly one.
  int complement_points = 0;
  for (const Obstacle& o : obstacles)
    complement_points += o.kind == Obstacle::Kind::removed_ball ? 2 : 1;
  if (complement_points < 2)
    throw DomainError("complement_two_points",
                      "complement must contain at least two points");
  DomainSpec d;
  d.dim_ = dim;
  d.obstacles_ = std::move(obstacles);
  d.scale_ = 0.0;
  for (const Obstacle& o : d.obstacles_)
    d.scale_ = std::max(d.scale_, o.center.norm() + o.radius);
  return d;
}

DomainSpec DomainSpec::open_ball(Vector center, double radius,
                                 std::vector<Obstacle> obstacles) {
  const int dim = static_cast<int>(center.size());
  if (dim < 2)
    throw DomainError("dim_at_least_2", "domain dimension must be >= 2");
  if (!(radius > 0.0))
    throw DomainError("ambient_radius_positive",
                      "ambient ball radius must be > 0");
  validate_obstacles(dim, obstacles, true, center, radius);
  DomainSpec d;
  d.dim_ = dim;
  d.has_ambient_ball_ = true;
  d.ambient_center_ = std::move(center);
  d.ambient_radius_ = radius;
  d.obstacles_ = std::move(obstacles);
  d.scale_ = d.ambient_center_.norm() + radius;
  for (const Obstacle& o : d.obstacles_)
    d.scale_ = std::max(d.scale_, o.center.norm() + o.radius);
  return d;
}

std::vector<BoundarySphere> boundary_pieces(const DomainSpec& domain) {
  std::vector<BoundarySphere> pieces;
  pieces.reserve(domain.obstacles().size() + 1);
  for (const Obstacle& o : domain.obstacles())
    pieces.push_back(BoundarySphere{o.center, o.radius, false});
  if (domain.has_ambient_ball())
    pieces.push_back(BoundarySphere{domain.ambient_center(),
                                    domain.ambient_radius(), true});
  return pieces;
}

bool contains(const DomainSpec& domain, const Vector& x) {
  if (domain.has_ambient_ball() &&
      !((x - domain.ambient_center()).norm() < domain.ambient_radius()))
    return false;
  for (const Obstacle& o : domain.obstacles()) {
    if (!((x - o.center).norm() > o.radius)) return false;
  }
  return true;
}

bool in_complement(const DomainSpec& domain, const Vector& x) {
  if (domain.has_ambient_ball() &&
      (x - domain.ambient_center()).norm() >= domain.ambient_radius())
    return true;
  for (const Obstacle& o : domain.obstacles()) {
    if ((x - o.center).norm() <= o.radius) return true;
  }
  return false;
}

double dist_to_complement(const DomainSpec& domain, const Vector& z) {
  if (!contains(domain, z))
    throw DomainError("point_in_domain",
                      "query point must lie in the domain");
  double d = std::numeric_limits<double>::infinity();
  for (const Obstacle& o : domain.obstacles())
    d = std::min(d, (z - o.center).norm() - o.radius);
  if (domain.has_ambient_ball())
    d = std::min(d, domain.ambient_radius() -
                        (z - domain.ambient_center()).norm());
  return d;
}

NearestBoundary nearest_boundary_points(const DomainSpec& domain,
                                        const Vector& z, double tol) {
  const double d = dist_to_complement(domain, z);
  const double slack = tol * std::max(d, domain.characteristic_scale());
  NearestBoundary result;
  for (const BoundarySphere& piece : boundary_pieces(domain)) {
    if (piece_distance(piece, z) > d + slack) continue;
    const double rho = (z - piece.center).norm();
    if (piece.radius > 0.0 && rho <= slack) {
      // z at the center: the whole sphere is equidistant.
      result.degenerate_spheres.push_back(piece);
      result.points.push_back(piece.center +
                              piece.radius * axis(domain.dim(), 0));
    } else {
      result.points.push_back(nearest_on_piece(piece, z));
    }
  }
  return result;
}

std::vector<Vector> sample_boundary(const DomainSpec& domain, int count,
                                    std::uint64_t seed) {
  if (count < 1)
    throw DomainError("sample_count_positive", "sample count must be >= 1");
  const int n = domain.dim();
  std::vector<Vector> samples;
  std::vector<BoundarySphere> spheres;
  for (const BoundarySphere& piece : boundary_pieces(domain)) {
    if (piece.radius == 0.0)
      samples.push_back(piece.center);  // removed points always included
    else
      spheres.push_back(piece);
  }
  if (spheres.empty()) return samples;

  // Share the remaining budget by (n-1)-measure, i.e. by radius^(n-1).
  double total_weight = 0.0;
  for (const BoundarySphere& s : spheres)
    total_weight += std::pow(s.radius, n - 1);
  const int remaining =
      std::max(static_cast<int>(spheres.size()),
               count - static_cast<int>(samples.size()));

  Rng rng(seed);
  for (const BoundarySphere& s : spheres) {
    const double w = std::pow(s.radius, n - 1) / total_weight;
    const int m = std::max(1, static_cast<int>(std::lround(remaining * w)));
    for (Vector& p : sphere_surface_samples(s, m, rng))
      samples.push_back(std::move(p));
  }
  return samples;
}

std::vector<Vector> sphere_surface_samples(const BoundarySphere& piece,
                                           int count, Rng& rng) {
  const int n = static_cast<int>(piece.center.size());
  std::vector<Vector> samples;
  samples.reserve(count);
  if (piece.radius == 0.0) {
    samples.push_back(piece.center);
    return samples;
  }
  // Land a few ulps on the complement side of the strict membership
  // predicates: removed spheres shrink inward, the ambient sphere grows
  // outward.  The margin covers the cancellation error of recomputing
  // |p - center| when |center| dwarfs the radius.
  const double safety = 64.0 * std::numeric_limits<double>::epsilon() *
                        (piece.center.norm() + piece.radius) / piece.radius;
  const double radius =
      piece.radius * (piece.ambient ? 1.0 + safety : 1.0 - safety);
  if (n == 2) {
    const double phase = rng.uniform(0.0, 2.0 * kPi);
    for (int k = 0; k < count; ++k) {
      const double th = phase + 2.0 * kPi * k / count;
      Vector p = piece.center;
      p[0] += radius * std::cos(th);
      p[1] += radius * std::sin(th);
      samples.push_back(std::move(p));
    }
  } else if (n == 3) {
    // Fibonacci spiral with a seeded random rotation.
    const Vector ax = rng.direction(3);
    const double ang = rng.uniform(0.0, 2.0 * kPi);
    const Eigen::Matrix3d rot =
        Eigen::AngleAxisd(ang, Eigen::Vector3d(ax[0], ax[1], ax[2]))
            .toRotationMatrix();
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < count; ++k) {
      const double y = 1.0 - 2.0 * (k + 0.5) / count;
      const double r_xy = std::sqrt(std::max(0.0, 1.0 - y * y));
      const double th = golden * k;
      Eigen::Vector3d u(r_xy * std::cos(th), y, r_xy * std::sin(th));
      u = rot * u;
      samples.push_back(piece.center + radius * Vector(u));
    }
  } else {
    for (int k = 0; k < count; ++k)
      samples.push_back(piece.center + radius * rng.direction(n));
  }
  return samples;
}

double piece_distance(const BoundarySphere& piece, const Vector& x) {
  return std::abs((x - piece.center).norm() - piece.radius);
}

Vector nearest_on_piece(const BoundarySphere& piece, const Vector& x) {
  if (piece.radius == 0.0) return piece.center;
  const Vector u = x - piece.center;
  const double rho = u.norm();
  if (rho == 0.0)
    return piece.center + piece.radius * axis(static_cast<int>(x.size()), 0);
  return piece.center + (piece.radius / rho) * u;
}

Vector farthest_on_piece(const BoundarySphere& piece, const Vector& x) {
  if (piece.radius == 0.0) return piece.center;
  const Vector u = x - piece.center;
  const double rho = u.norm();
  if (rho == 0.0)
    return piece.center - piece.radius * axis(static_cast<int>(x.size()), 0);
  return piece.center - (piece.radius / rho) * u;
}

Interval distance_interval(const BoundarySphere& piece, const Vector& a) {
  const double rho = (a - piece.center).norm();
  return Interval{std::abs(rho - piece.radius), rho + piece.radius};
}

Interval distance_interval(const BoundarySphere& first,
                           const BoundarySphere& second) {
  const double d = (first.center - second.center).norm();
  // |a - second.center| sweeps [|d - r1|, d + r1] as a moves over `first`,
  // so the attainable |a - b| is the union of [|rho - r2|, rho + r2].
  const double rho_lo = std::abs(d - first.radius);
  const double rho_hi = d + first.radius;
  double lo;
  if (rho_lo <= second.radius && second.radius <= rho_hi)
    lo = 0.0;
  else
    lo = std::min(std::abs(rho_lo - second.radius),
                  std::abs(rho_hi - second.radius));
  return Interval{lo, rho_hi + second.radius};
}

Vector orthogonal_unit(const Vector& u) {
  int k = 0;
  for (int i = 1; i < u.size(); ++i)
    if (std::abs(u[i]) < std::abs(u[k])) k = i;
  Vector w = Vector::Zero(u.size());
  w[k] = 1.0;
  w -= w.dot(u) * u;
  return w / w.norm();
}

std::vector<Vector> orthonormal_frame(int dim,
                                      const std::vector<Vector>& preferred) {
  std::vector<Vector> frame;
  auto push = [&](Vector v) {
    const double input_norm = v.norm();
    if (input_norm == 0.0) return;
    v /= input_norm;
    for (const Vector& f : frame) v -= v.dot(f) * f;
    const double norm = v.norm();
    if (norm > 1e-10) frame.push_back(v / norm);
  };
  for (const Vector& d : preferred) {
    if (static_cast<int>(frame.size()) == dim) break;
    push(d);
  }
  for (int k = 0; k < dim && static_cast<int>(frame.size()) < dim; ++k)
    push(axis(dim, k));
  return frame;
}

Vector boundary_point_at_distance(const BoundarySphere& piece, const Vector& a,
                                  double t) {
  if (piece.radius == 0.0) return piece.center;
  const Vector diff = a - piece.center;
  const double rho = diff.norm();
  if (rho == 0.0)
    return piece.center +
           piece.radius * axis(static_cast<int>(a.size()), 0);
  t = distance_interval(piece, a).clamp(t);
  const double r = piece.radius;
  double c = (rho * rho + r * r - t * t) / (2.0 * rho * r);
  c = std::clamp(c, -1.0, 1.0);
  const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
  const Vector u = diff / rho;
  Vector b = piece.center + (r * c) * u;
  if (s > 0.0) b += (r * s) * orthogonal_unit(u);
  return b;
}

std::pair<Vector, Vector> boundary_pair_at_distance(
    const BoundarySphere& first, const BoundarySphere& second, double t) {
  t = distance_interval(first, second).clamp(t);
  const Vector diff = second.center - first.center;
  const double d = diff.norm();
  if (d == 0.0 || first.radius == 0.0) {
    const Vector a =
        first.radius == 0.0
            ? first.center
            : first.center + first.radius *
                                 axis(static_cast<int>(first.center.size()), 0);
    return {a, boundary_point_at_distance(second, a, t)};
  }
  // Choose rho = |a - second.center| so that t is attainable from a, i.e.
  // rho in [|d - r1|, d + r1] (a on `first`) and |rho - r2| <= t <= rho + r2.
  const double lo = std::max(std::abs(d - first.radius),
                             std::abs(t - second.radius));
  const double hi = std::min(d + first.radius, t + second.radius);
  const double rho = 0.5 * (lo + std::max(lo, hi));
  const double r1 = first.radius;
  double c = (d * d + r1 * r1 - rho * rho) / (2.0 * d * r1);
  c = std::clamp(c, -1.0, 1.0);
  const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
  const Vector u = diff / d;
  Vector a = first.center + (r1 * c) * u;
  if (s > 0.0) a += (r1 * s) * orthogonal_unit(u);
  return {a, boundary_point_at_distance(second, a, t)};
}

}  // namespace hypmetrics
