#include "hypmetrics/reference.hpp"

#include <cmath>
#include <stdexcept>

namespace hypmetrics {

double reference_hyperbolic_density(ReferenceDomain tag, const Vector& z) {
  if (z.size() != 2)
    throw std::invalid_argument("reference densities are planar");
  const double r = z.norm();
  if (tag == ReferenceDomain::unit_disk) {
    if (r >= 1.0)
      throw std::invalid_argument("point outside the unit disk");
    return 1.0 / (1.0 - r * r);
  }
  if (r >= 1.0 || r == 0.0)
    throw std::invalid_argument("point outside the punctured unit disk");
  return 1.0 / (2.0 * r * std::log(1.0 / r));
}

DomainSpec reference_domain_spec(ReferenceDomain tag) {
  const Vector origin = Vector::Zero(2);
  if (tag == ReferenceDomain::unit_disk)
    return DomainSpec::open_ball(origin, 1.0, {});
  return DomainSpec::open_ball(origin, 1.0, {Obstacle::point(origin)});
}

}  // namespace hypmetrics
