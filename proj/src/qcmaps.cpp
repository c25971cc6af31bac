#include "hypmetrics/qcmaps.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace hypmetrics {

namespace {

double pow_int(double base, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

// Image of the sphere |x - q| = rho under inversion; valid only when the
// inversion center is off the sphere (t != rho).
BoundarySphere invert_sphere(const Inversion& inv, const Vector& q,
                             double rho) {
  const Vector u = q - inv.center;
  const double denom = u.squaredNorm() - rho * rho;
  if (denom == 0.0)
    throw std::invalid_argument(
        "inversion maps a boundary sphere through its center to a plane");
  const double r2 = inv.radius * inv.radius;
  BoundarySphere img;
  img.center = inv.center + (r2 / denom) * u;
  img.radius = r2 * rho / std::abs(denom);
  img.ambient = false;
  return img;
}

Obstacle map_obstacle(const QcMap& map, const Obstacle& o) {
  if (o.kind == Obstacle::Kind::removed_point)
    return Obstacle::point(apply(map, o.center));
  if (const auto* sim = std::get_if<Similarity>(&map))
    return Obstacle::ball(apply(map, o.center), sim->s * o.radius);
  if (const auto* lin = std::get_if<LinearMap>(&map)) {
    const double s = std::pow(std::abs(lin->A.determinant()),
                              1.0 / static_cast<double>(lin->A.rows()));
    return Obstacle::ball(apply(map, o.center), s * o.radius);
  }
  if (const auto* rs = std::get_if<RadialStretch>(&map)) {
    if (o.center.norm() > 0.0)
      throw std::invalid_argument(
          "radial stretch maps only origin-centered balls to balls");
    return Obstacle::ball(o.center, std::pow(o.radius, 1.0 / rs->K));
  }
  const auto& inv = std::get<Inversion>(map);
  const BoundarySphere img = invert_sphere(inv, o.center, o.radius);
  return Obstacle::ball(img.center, img.radius);
}

}  // namespace

Similarity Similarity::identity(int dim) {
  return Similarity{1.0, Matrix::Identity(dim, dim), Vector::Zero(dim)};
}

Similarity Similarity::scaling(int dim, double s) {
  return Similarity{s, Matrix::Identity(dim, dim), Vector::Zero(dim)};
}

void validate(const QcMap& map, int dim) {
  if (const auto* sim = std::get_if<Similarity>(&map)) {
    if (!(sim->s > 0.0))
      throw std::invalid_argument("similarity scale must be positive");
    if (sim->Q.rows() != dim || sim->Q.cols() != dim || sim->v.size() != dim)
      throw std::invalid_argument("similarity dimension mismatch");
    const double defect =
        (sim->Q.transpose() * sim->Q - Matrix::Identity(dim, dim))
            .cwiseAbs()
            .maxCoeff();
    if (defect > 1e-12)
      throw std::invalid_argument("similarity matrix is not orthogonal");
    return;
  }
  if (const auto* rs = std::get_if<RadialStretch>(&map)) {
    if (!(rs->K > 0.0))
      throw std::invalid_argument("radial stretch exponent must be positive");
    return;
  }
  if (const auto* lin = std::get_if<LinearMap>(&map)) {
    if (lin->A.rows() != dim || lin->A.cols() != dim)
      throw std::invalid_argument("linear map dimension mismatch");
    if (lin->A.fullPivLu().rank() != dim)
      throw std::invalid_argument("linear map must be invertible");
    return;
  }
  const auto& inv = std::get<Inversion>(map);
  if (inv.center.size() != dim)
    throw std::invalid_argument("inversion dimension mismatch");
  if (!(inv.radius > 0.0))
    throw std::invalid_argument("inversion radius must be positive");
}

Vector apply(const QcMap& map, const Vector& x) {
  if (const auto* sim = std::get_if<Similarity>(&map))
    return sim->s * (sim->Q * x) + sim->v;
  if (const auto* rs = std::get_if<RadialStretch>(&map)) {
    const double r = x.norm();
    if (r == 0.0) return x;
    return std::pow(r, 1.0 / rs->K - 1.0) * x;
  }
  if (const auto* lin = std::get_if<LinearMap>(&map)) return lin->A * x;
  const auto& inv = std::get<Inversion>(map);
  const Vector u = x - inv.center;
  const double d2 = u.squaredNorm();
  if (d2 == 0.0)
    throw std::invalid_argument("inversion is undefined at its center");
  return inv.center + (inv.radius * inv.radius / d2) * u;
}

QcMap inverse(const QcMap& map) {
  if (const auto* sim = std::get_if<Similarity>(&map)) {
    Similarity out;
    out.s = 1.0 / sim->s;
    out.Q = sim->Q.transpose();
    out.v = -(out.s) * (out.Q * sim->v);
    return out;
  }
  if (const auto* rs = std::get_if<RadialStretch>(&map))
    return RadialStretch{1.0 / rs->K};
  if (const auto* lin = std::get_if<LinearMap>(&map))
    return LinearMap{lin->A.fullPivLu().inverse()};
  return std::get<Inversion>(map);
}

Dilatation dilatation(const QcMap& map, int n) {
  Dilatation d{1.0, 1.0, 1.0, 1.0};
  if (std::holds_alternative<Similarity>(map) ||
      std::holds_alternative<Inversion>(map)) {
    // conformal: nothing to do
  } else if (const auto* rs = std::get_if<RadialStretch>(&map)) {
    // Derivative singular values are proportional to {1/K, 1, ..., 1}:
    // 1/K radially and 1 along the n-1 tangential directions.
    const double a = 1.0 / rs->K;
    const double hi = std::max(a, 1.0);
    const double lo = std::min(a, 1.0);
    d.outer = pow_int(hi, n) / a;
    d.inner = a / pow_int(lo, n);
  } else {
    const auto& lin = std::get<LinearMap>(map);
    Eigen::JacobiSVD<Matrix> svd(lin.A);
    const Eigen::VectorXd sv = svd.singularValues();
    const double prod = sv.prod();
    d.outer = pow_int(sv(0), n) / prod;
    d.inner = prod / pow_int(sv(sv.size() - 1), n);
  }
  d.maximal = std::max(d.outer, d.inner);
  d.alpha = std::pow(d.maximal, 1.0 / (1.0 - static_cast<double>(n)));
  return d;
}

DomainSpec push_domain(const QcMap& map, const DomainSpec& domain) {
  const int n = domain.dim();
  validate(map, n);

  if (const auto* lin = std::get_if<LinearMap>(&map)) {
    const double s = std::pow(std::abs(lin->A.determinant()),
                              1.0 / static_cast<double>(n));
    const double defect =
        (lin->A.transpose() * lin->A - s * s * Matrix::Identity(n, n))
            .cwiseAbs()
            .maxCoeff();
    if (defect > 1e-10 * s * s)
      throw std::invalid_argument(
          "linear map must be conformal (scalar times orthogonal) to push a "
          "domain exactly");
  }

  if (const auto* inv = std::get_if<Inversion>(&map)) {
    // Locate the inversion center among the complement primitives; this
    // decides which primitive's image becomes the new ambient ball.
    int host = -1;
    bool host_is_point = false;
    const auto& obs = domain.obstacles();
    for (int i = 0; i < static_cast<int>(obs.size()); ++i) {
      const double t = (obs[i].center - inv->center).norm();
      if (obs[i].kind == Obstacle::Kind::removed_ball && t < obs[i].radius) {
        host = i;
        break;
      }
      if (obs[i].kind == Obstacle::Kind::removed_point && t == 0.0) {
        host = i;
        host_is_point = true;
        break;
      }
    }
    const bool outside_ambient =
        domain.has_ambient_ball() &&
        (inv->center - domain.ambient_center()).norm() >
            domain.ambient_radius();
    if (host < 0 && !outside_ambient)
      throw std::invalid_argument(
          "inversion center must lie strictly inside an obstacle, at a "
          "removed point, or strictly outside the ambient ball");

    std::vector<Obstacle> mapped;
    for (int i = 0; i < static_cast<int>(obs.size()); ++i)
      if (i != host) mapped.push_back(map_obstacle(map, obs[i]));

    if (host >= 0 && host_is_point) {
      // The puncture swaps with the end at infinity.
      if (domain.has_ambient_ball()) {
        const BoundarySphere amb = invert_sphere(
            *inv, domain.ambient_center(), domain.ambient_radius());
        mapped.push_back(Obstacle::ball(amb.center, amb.radius));
        return DomainSpec::whole_space(n, std::move(mapped));
      }
      mapped.push_back(Obstacle::point(inv->center));
      return DomainSpec::whole_space(n, std::move(mapped));
    }
    if (host >= 0) {
      // The hosting ball turns inside out and becomes the ambient ball.
      const BoundarySphere amb =
          invert_sphere(*inv, obs[host].center, obs[host].radius);
      if (domain.has_ambient_ball()) {
        const BoundarySphere old = invert_sphere(
            *inv, domain.ambient_center(), domain.ambient_radius());
        mapped.push_back(Obstacle::ball(old.center, old.radius));
      } else {
        mapped.push_back(Obstacle::point(inv->center));
      }
      return DomainSpec::open_ball(amb.center, amb.radius, std::move(mapped));
    }
    // Center outside the ambient ball: inside stays inside.
    const BoundarySphere amb =
        invert_sphere(*inv, domain.ambient_center(), domain.ambient_radius());
    return DomainSpec::open_ball(amb.center, amb.radius, std::move(mapped));
  }

  // Similarity, conformal linear, radial stretch: primitives map in place.
  std::vector<Obstacle> mapped;
  for (const Obstacle& o : domain.obstacles())
    mapped.push_back(map_obstacle(map, o));
  if (!domain.has_ambient_ball())
    return DomainSpec::whole_space(n, std::move(mapped));
  if (const auto* sim = std::get_if<Similarity>(&map))
    return DomainSpec::open_ball(apply(map, domain.ambient_center()),
                                 sim->s * domain.ambient_radius(),
                                 std::move(mapped));
  if (const auto* lin = std::get_if<LinearMap>(&map)) {
    const double s = std::pow(std::abs(lin->A.determinant()),
                              1.0 / static_cast<double>(n));
    return DomainSpec::open_ball(apply(map, domain.ambient_center()),
                                 s * domain.ambient_radius(),
                                 std::move(mapped));
  }
  const auto& rs = std::get<RadialStretch>(map);
  if (domain.ambient_center().norm() > 0.0)
    throw std::invalid_argument(
        "radial stretch maps only origin-centered balls to balls");
  return DomainSpec::open_ball(domain.ambient_center(),
                               std::pow(domain.ambient_radius(), 1.0 / rs.K),
                               std::move(mapped));
}

double check_qc1(const QcMap& map, const DomainSpec& domain, const Vector& z,
                 const SamplingBudget& budget) {
  const DomainSpec image = push_domain(map, domain);
  const Vector fz = apply(map, z);
  const double num =
      eval_density(domain, z, DensityKind::lambda, budget).value *
      dist_to_complement(domain, z);
  const double den =
      eval_density(image, fz, DensityKind::lambda, budget).value *
      dist_to_complement(image, fz);
  return num / den;
}

Qc2Result check_qc2(const QcMap& map, const DomainSpec& domain,
                    const Vector& z, const Vector& w,
                    const GraphParams& params) {
  Qc2Result res{};
  res.alpha = dilatation(map, domain.dim()).alpha;
  if ((z - w).norm() == 0.0) return res;

  const DomainSpec image = push_domain(map, domain);
  const Vector fz = apply(map, z);
  const Vector fw = apply(map, w);
  const double d = distance(domain, z, w, MetricKind::d_lambda, params).value;
  GraphParams image_params = params;
  image_params.h = params.h * (fz - fw).norm() / (z - w).norm();
  res.lhs =
      distance(image, fz, fw, MetricKind::d_lambda, image_params).value;
  res.source_distance = d;
  res.rhs_budget = std::max(d, std::pow(d, res.alpha));
  return res;
}

}  // namespace hypmetrics
