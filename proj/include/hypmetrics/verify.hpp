#pragma once

// Property suites.  Each suite checks one inequality family or worked
// example end to end over seeded random instances and returns a
// machine-readable report; every failure record carries the inputs needed
// to re-run that single case.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hypmetrics/geometry.hpp"
#include "hypmetrics/qcmaps.hpp"
#include "hypmetrics/rng.hpp"

namespace hypmetrics {

struct VerifyFailure {
  std::string case_id;
  double expected;  // the violated bound
  double observed;
  std::string detail;  // JSON: inputs sufficient to reproduce the case
};

struct VerifyReport {
  std::string suite;
  int cases = 0;
  std::vector<VerifyFailure> failures;
  // Named empirical extremes (e.g. the largest density ratio seen), kept so
  // slack in the asserted constants stays visible across runs.
  std::map<std::string, double> extremes;

  bool passed() const { return failures.empty(); }
};

// --- example domains used by several suites and by the CLI docs ---

// R^n minus ({2 e1} union the closed ball B(e1, eps)).
DomainSpec small_ball_domain(int dim, double eps);
// R^n minus the two points {e1, 2 e1}.
DomainSpec two_point_domain(int dim);

// --- randomized instance generators ---

// dim 2 or 3; one to four obstacles with log-uniform radii; ambient ball or
// whole space.  Always satisfies the DomainSpec invariants.
DomainSpec random_domain(Rng& rng, int dim);
// Like random_domain but restricted to an ambient ball (bounded domains
// keep the path-graph suites small).
DomainSpec random_bounded_domain(Rng& rng, int dim);
// Domains preserved exactly by radial stretches: balls centered at the
// origin, removed points anywhere.
DomainSpec random_radial_domain(Rng& rng, int dim);

// Point of D whose clearance is log-uniform-ish, so both near-boundary and
// deep-interior regimes occur.
Vector random_interior_point(const DomainSpec& domain, Rng& rng);

Matrix random_orthogonal(int dim, Rng& rng);
Similarity random_similarity(int dim, Rng& rng);

// --- suites ---

// Pointwise chain lambda'' <= lambda' <= lambda <= 2.15 lambda'', the
// product lambda d <= 1, and the identity 1/lambda'' = d (1 + beta).
VerifyReport verify_density_chain(std::uint64_t seed, int cases);
// Removing part of the complement can only decrease lambda.
VerifyReport verify_domain_monotonicity(std::uint64_t seed, int cases);
// Worked example: small removed ball plus a removed point; all three
// densities differ and the midpoint configuration wins for lambda.
VerifyReport verify_small_ball_example();
// Worked example: two removed points; all three densities coincide.
VerifyReport verify_two_point_example();
// Path-distance chain on one shared graph, plus the quasihyperbolic
// upper bound and the unit-disk radial sanity value log 2.
VerifyReport verify_distance_chain(std::uint64_t seed, int cases);
// Every lambda witness is a boundary pair or a certified midpoint
// configuration that reproduces the reported infimum.
VerifyReport verify_witness_classification(std::uint64_t seed, int cases);
// lambda'(x0)/lambda'(y) within the continuity ratio bound for
// |y - x0| <= t d(x0).
VerifyReport verify_density_continuity(std::uint64_t seed, int cases);
// Strict monotonicity of y (1 + |log(T/y)|) in y.
VerifyReport verify_objective_monotonicity(std::uint64_t seed, int triples);
// Two-sided planar sandwich eta d (beta + k) in [1/(2 sqrt 2), k + pi/4]
// on the reference disk domains, plus the upper bound eta d beta <= k+pi/4.
VerifyReport verify_disk_sandwich(int samples, std::uint64_t seed);
// Pointwise distortion ratio: 1 for similarities, within [1/C1, C1] for
// radial stretches.
VerifyReport verify_qc_pointwise(std::uint64_t seed, int cases);
// Distance distortion data: finite, refinement-stable, isometric for
// similarities; records the empirical maximum of lhs / max(d, d^alpha).
VerifyReport verify_qc_distance(std::uint64_t seed, int cases);
// Root values, residual certificates, uniqueness scans, numeric anchors.
VerifyReport verify_roots();

// All suites at desk-scale case counts, in a fixed order.
std::vector<VerifyReport> verify_all(std::uint64_t seed);

}  // namespace hypmetrics
