#pragma once

// Catalog of explicit quasiconformal test maps: closed-form dilatations,
// exact image domains for the primitive families each map preserves, and
// checkers for the pointwise and distance distortion bounds.

#include <variant>

#include <Eigen/Dense>

#include "hypmetrics/density.hpp"
#include "hypmetrics/geodesic.hpp"
#include "hypmetrics/geometry.hpp"

namespace hypmetrics {

using Matrix = Eigen::MatrixXd;

// x -> s Q x + v with s > 0 and Q orthogonal.
struct Similarity {
  double s;
  Matrix Q;
  Vector v;

  static Similarity identity(int dim);
  static Similarity scaling(int dim, double s);
};

// x -> x |x|^{1/K - 1} (0 -> 0), the radial power stretch.  K > 0; the map
// with parameter 1/K is its inverse, and both share the same maximal
// dilatation, so the catalog is closed under inversion of maps.
struct RadialStretch {
  double K;
};

// x -> A x with A invertible.
struct LinearMap {
  Matrix A;
};

// x -> center + radius^2 (x - center)/|x - center|^2.
struct Inversion {
  Vector center;
  double radius;
};

using QcMap = std::variant<Similarity, RadialStretch, LinearMap, Inversion>;

// Checks the variant's structural invariants (orthogonal Q, positive scale
// factors, invertible A, matching dimensions); throws std::invalid_argument.
void validate(const QcMap& map, int dim);

Vector apply(const QcMap& map, const Vector& x);

// Inverse within the same catalog (an inversion is its own inverse).
QcMap inverse(const QcMap& map);

struct Dilatation {
  double outer;    // smallest K with |f'(x)|^n <= K |J_f(x)|
  double inner;    // smallest K with |J_f(x)| <= K l(f'(x))^n
  double maximal;  // max(outer, inner)
  double alpha;    // maximal^{1/(1-n)}, the Holder exponent
};

// Closed-form dilatations from the derivative's singular values; constant
// over the domain for every catalog map.
Dilatation dilatation(const QcMap& map, int n);

// Exact image domain.  Supported combinations:
//   Similarity     any domain;
//   LinearMap      only when A is a scalar multiple of an orthogonal matrix;
//   RadialStretch  balls (obstacle or ambient) centered at the origin,
//                  removed points anywhere;
//   Inversion      center strictly inside an obstacle ball, exactly at a
//                  removed point, or strictly outside the ambient closed
//                  ball.  Sphere images are spheres in all three cases; the
//                  roles of ambient and obstacle primitives are exchanged as
//                  the map swaps inside and outside.
// Throws std::invalid_argument for anything else.
DomainSpec push_domain(const QcMap& map, const DomainSpec& domain);

// (lambda_D(z) d(z, bd D)) / (lambda_D'(f(z)) d(f(z), bd D')) where
// D' = push_domain(map, domain).  For a K-quasiconformal map this ratio
// lies in [1/C1, C1] with C1 = c1_bound at the map's maximal dilatation.
double check_qc1(const QcMap& map, const DomainSpec& domain, const Vector& z,
                 const SamplingBudget& budget = {});

struct Qc2Result {
  double lhs;              // image-domain distance between mapped endpoints
  double rhs_budget;       // max(d, d^alpha), d = source-domain distance
  double source_distance;  // d
  double alpha;            // Holder exponent of the map
};

// Data for the distance distortion bound lhs <= C2 * rhs_budget.  Both
// sides are graph upper bounds; the image graph's spacing is scaled by
// |f(z) - f(w)| / |z - w| so the two graphs resolve comparably.
Qc2Result check_qc2(const QcMap& map, const DomainSpec& domain,
                    const Vector& z, const Vector& w,
                    const GraphParams& params = {});

}  // namespace hypmetrics
