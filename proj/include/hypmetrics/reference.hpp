#pragma once

// Closed-form hyperbolic densities of two plane reference domains, used to
// cross-check computed quantities against the classical two-sided bounds
// relating the hyperbolic density to boundary distance.

#include "hypmetrics/geometry.hpp"

namespace hypmetrics {

enum class ReferenceDomain { unit_disk, punctured_disk };

// unit_disk:      1 / (1 - |z|^2)        for |z| < 1
// punctured_disk: 1 / (2 |z| log(1/|z|)) for 0 < |z| < 1
// Throws std::invalid_argument outside the named domain or off-plane.
double reference_hyperbolic_density(ReferenceDomain tag, const Vector& z);

// The corresponding DomainSpec (dim 2), for feeding the computed-side
// quantities of the same comparison.
DomainSpec reference_domain_spec(ReferenceDomain tag);

}  // namespace hypmetrics
