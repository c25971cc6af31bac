#pragma once

// Pointwise hyperbolic-type metric densities on a domain D.  All three share
// the objective |z - a| (1 + |log(|a - b| / |z - a|)|) and differ in where
// the pair (a, b) may range:
//   lambda         a, b anywhere in R^n \ D,
//   lambda_prime   a, b on the boundary of D,
//   lambda_pprime  a, b on the boundary with |z - a| = d(z, boundary).
// Evaluations return the infimum (`reciprocal`), the density (its inverse),
// and a witness pair reproducing the infimum.

#include <array>
#include <cstdint>

#include "hypmetrics/geometry.hpp"

namespace hypmetrics {

enum class DensityKind { lambda, lambda_prime, lambda_pprime };

struct SamplingBudget {
  int samples = 2048;  // boundary samples per primitive
  std::uint64_t seed = 0;
};

struct DensityValue {
  double value;       // the density at z
  double reciprocal;  // the infimum; value * reciprocal == 1
  Vector witness_a;
  Vector witness_b;
  // True when the infimum is attained by an interior midpoint configuration
  // a = (z + b)/2 strictly beating every boundary pair.
  bool exceptional_midpoint = false;
};

// |z - a| (1 + |log(|a - b| / |z - a|)|); +infinity when a == b.  Throws
// std::invalid_argument when a == z.
double pair_objective(const Vector& z, const Vector& a, const Vector& b);

// inf |log(|a - b| / d)| over boundary pairs with |z - a| = d(z, boundary).
// Exact: per boundary primitive the attainable chord lengths form an
// interval, so the inner minimisation reduces to clamping d into it.
double beta(const DomainSpec& domain, const Vector& z);

DensityValue eval_density(const DomainSpec& domain, const Vector& z,
                          DensityKind kind, const SamplingBudget& budget = {});

// All three kinds at once, sharing the boundary pair search.  Indexed by
// static_cast<int>(DensityKind).  The reported infima are nested by
// construction: lambda <= lambda_prime <= lambda_pprime reciprocals.
std::array<DensityValue, 3> eval_all_densities(const DomainSpec& domain,
                                               const Vector& z,
                                               const SamplingBudget& budget = {});

// Exhaustive pair sweep over sampled candidate pools, no local refinement.
// Test oracle for eval_density; `grid` is the pool size per role.
DensityValue brute_force_density(const DomainSpec& domain, const Vector& z,
                                 DensityKind kind, int grid,
                                 std::uint64_t seed);

}  // namespace hypmetrics
