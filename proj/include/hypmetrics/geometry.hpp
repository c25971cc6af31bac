#pragma once

// Domains in R^n (n >= 2) whose complement is a finite union of removed
// points, removed closed balls, and optionally the exterior of an open
// ambient ball.  Every boundary component is a sphere of radius >= 0 (a
// removed point is the degenerate radius-0 case), which keeps the exact
// nearest/farthest/chord queries below uniform across primitive kinds.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace hypmetrics {

using Vector = Eigen::VectorXd;

// Thrown when a domain (or a query against one) violates a structural
// invariant; `invariant` names the violated rule machine-readably.
class DomainError : public std::runtime_error {
 public:
  DomainError(std::string invariant_name, const std::string& what)
      : std::runtime_error(what), invariant(std::move(invariant_name)) {}
  std::string invariant;
};

struct Obstacle {
  enum class Kind { removed_point, removed_ball };

  Kind kind;
  Vector center;
  double radius;  // 0 for removed points, > 0 for removed closed balls

  static Obstacle point(Vector c) {
    return Obstacle{Kind::removed_point, std::move(c), 0.0};
  }
  static Obstacle ball(Vector c, double r) {
    return Obstacle{Kind::removed_ball, std::move(c), r};
  }
};

// Validated description of a domain D.  Construction enforces:
//   dim >= 2, positive radii, matching dimensions, obstacles pairwise
//   disjoint, obstacles strictly inside an ambient ball, and a complement
//   containing at least two points.
class DomainSpec {
 public:
  static DomainSpec whole_space(int dim, std::vector<Obstacle> obstacles);
  static DomainSpec open_ball(Vector center, double radius,
                              std::vector<Obstacle> obstacles);

  int dim() const { return dim_; }
  bool has_ambient_ball() const { return has_ambient_ball_; }
  const Vector& ambient_center() const { return ambient_center_; }
  double ambient_radius() const { return ambient_radius_; }
  const std::vector<Obstacle>& obstacles() const { return obstacles_; }

  // Length scale for relative tolerances: max over boundary primitives of
  // |center| + radius (at least the largest obstacle radius).
  double characteristic_scale() const { return scale_; }

 private:
  DomainSpec() = default;

  int dim_ = 0;
  bool has_ambient_ball_ = false;
  Vector ambient_center_;
  double ambient_radius_ = 0.0;
  std::vector<Obstacle> obstacles_;
  double scale_ = 1.0;
};

// One boundary component, viewed as the sphere |x - center| = radius.
// radius == 0 encodes a removed point; `ambient` marks the ambient sphere.
struct BoundarySphere {
  Vector center;
  double radius;
  bool ambient;
};

std::vector<BoundarySphere> boundary_pieces(const DomainSpec& domain);

// Open-set membership x in D and closed-set membership x in R^n \ D.  The
// two are exact complements of each other by construction.
bool contains(const DomainSpec& domain, const Vector& x);
bool in_complement(const DomainSpec& domain, const Vector& x);

// d(z, boundary of D) for z in D; throws DomainError("point_in_domain")
// otherwise.  Equals the distance to the complement because D is open.
double dist_to_complement(const DomainSpec& domain, const Vector& z);

struct NearestBoundary {
  std::vector<Vector> points;  // one representative per nearest primitive
  // Primitives whose whole sphere is equidistant from z (z at the center);
  // `points` still holds one canonical representative for each.
  std::vector<BoundarySphere> degenerate_spheres;
  bool whole_sphere() const { return !degenerate_spheres.empty(); }
};

// All boundary primitives within relative tolerance `tol` of the minimum
// distance contribute their nearest point.
NearestBoundary nearest_boundary_points(const DomainSpec& domain,
                                        const Vector& z, double tol = 1e-10);

// Deterministic quasi-uniform sample of the boundary.  Spheres receive a
// share of `count` proportional to their (n-1)-measure (but at least one
// point each); removed points are always included once.
std::vector<Vector> sample_boundary(const DomainSpec& domain, int count,
                                    std::uint64_t seed);

// --- Exact sphere queries used by the density solvers. ---

struct Interval {
  double lo;
  double hi;
  bool contains(double t) const { return lo <= t && t <= hi; }
  double clamp(double t) const { return t < lo ? lo : (t > hi ? hi : t); }
};

// Distance from x to the sphere (as a point set).
double piece_distance(const BoundarySphere& piece, const Vector& x);

// Nearest / farthest point of the sphere from x.  For x at the center the
// whole sphere ties and a canonical axis representative is returned.
Vector nearest_on_piece(const BoundarySphere& piece, const Vector& x);
Vector farthest_on_piece(const BoundarySphere& piece, const Vector& x);

// Range of |a - b| for b on `piece`, a fixed.
Interval distance_interval(const BoundarySphere& piece, const Vector& a);

// Range of |a - b| over a on `first` and b on `second`.
Interval distance_interval(const BoundarySphere& first,
                           const BoundarySphere& second);

// A point b on `piece` with |a - b| = t (t is clamped into the attainable
// range first).
Vector boundary_point_at_distance(const BoundarySphere& piece, const Vector& a,
                                  double t);

// A pair (a, b), a on `first`, b on `second`, with |a - b| = t (clamped).
std::pair<Vector, Vector> boundary_pair_at_distance(
    const BoundarySphere& first, const BoundarySphere& second, double t);

// Unit vector orthogonal to u (deterministic choice).
Vector orthogonal_unit(const Vector& u);

// Orthonormal basis spanning the `preferred` directions first (in order),
// completed with canonical axes.  Degenerate or duplicate directions are
// dropped.  Used wherever a construction should commute with similarities.
std::vector<Vector> orthonormal_frame(int dim,
                                      const std::vector<Vector>& preferred);

class Rng;

// `count` quasi-uniform points on one sphere (radius 0 yields the center).
std::vector<Vector> sphere_surface_samples(const BoundarySphere& piece,
                                           int count, Rng& rng);

}  // namespace hypmetrics
