#pragma once

// Discrete upper bounds for the path metrics obtained by integrating a
// density along curves in D: the three hyperbolic-type densities and the
// quasihyperbolic density 1/d(x, boundary).  Curves are restricted to
// polylines through a clearance-filtered lattice, so every reported value is
// the length of an admissible curve and hence an upper bound of the metric.

#include <array>
#include <cstdint>
#include <vector>

#include "hypmetrics/density.hpp"
#include "hypmetrics/geometry.hpp"

namespace hypmetrics {

enum class MetricKind {
  d_lambda = 0,
  d_lambda_prime = 1,
  d_lambda_pprime = 2,
  quasihyperbolic = 3
};

struct GraphParams {
  double h = 0.05;                // lattice spacing
  int refinements = 3;            // tube refinement rounds (spacing halves)
  double neighbor_factor = 2.5;   // edge radius, in units of h
  double clearance_factor = 0.25;  // minimum node clearance, in units of h
  int quad_order = 16;            // Gauss-Legendre points per sub-segment
  SamplingBudget budget{64, 0};   // density budget at quadrature nodes
  // Which per-kind weights to compute; uncomputed weights are NaN.
  std::array<bool, 4> kinds{true, true, true, true};
};

struct PathGraph {
  struct Edge {
    int u, v;
    std::array<double, 4> weight;  // indexed by MetricKind
  };
  std::vector<Vector> nodes;  // nodes[0] = z, nodes[1] = w
  std::vector<Edge> edges;
  double spacing;
  int refinement_level;
  std::uint64_t seed;
};

struct DistanceResult {
  double value;  // +infinity when the endpoints are not graph-connected
  std::vector<Vector> path;
  MetricKind kind;
  int refinement_level;
  bool is_upper_bound;  // always true for graph paths
};

struct Quadrature {
  std::vector<double> nodes;    // on (-1, 1)
  std::vector<double> weights;  // summing to 2
};

// Gauss-Legendre rule computed by Newton iteration on the Legendre
// polynomial; cached per order.
const Quadrature& gauss_legendre(int order);

// True when the segment [p, q] provably lies in D: either it is covered by
// the clearance balls of its endpoints (|p - q| < d(p) + d(q)) or both
// halves certify recursively.
bool certify_segment(const DomainSpec& domain, const Vector& p,
                     const Vector& q, int max_depth = 24);

// Composite Gauss-Legendre weights for all four kinds along [p, q].  The
// segment is subdivided until the clearance varies by < 10% per piece, so
// near-boundary edges get proportionally more quadrature points.  Density
// evaluations share one boundary search per node; entries for kinds not in
// `kinds` are NaN.
std::array<double, 4> edge_weights(const DomainSpec& domain, const Vector& p,
                                   const Vector& q, int quad_order,
                                   const SamplingBudget& budget,
                                   const std::array<bool, 4>& kinds = {
                                       true, true, true, true});

double edge_weight(const DomainSpec& domain, const Vector& p, const Vector& q,
                   MetricKind kind, int quad_order,
                   const SamplingBudget& budget = {64, 0});

// Lattice graph over the ambient region (the ambient ball, or a bounding
// ball of radius 4 (|z - w| + obstacle extent) for whole-space domains).
// The lattice lives in a frame derived from z, w and the obstacle centers,
// so construction commutes with similarities and with swapping z and w.
PathGraph build_graph(const DomainSpec& domain, const Vector& z,
                      const Vector& w, const GraphParams& params);

// Tube variant used by refinement: keeps only lattice nodes within
// `tube_radius` of the polyline, plus the polyline nodes themselves with
// their consecutive edges (so refinement never increases the value).
PathGraph build_graph_in_tube(const DomainSpec& domain, const Vector& z,
                              const Vector& w, const GraphParams& params,
                              const std::vector<Vector>& polyline,
                              double tube_radius);

// Deterministic Dijkstra from nodes[0] to nodes[1].
DistanceResult shortest_path(const PathGraph& graph, MetricKind kind);

// Full pipeline: base graph, then `refinements` rounds of halved-spacing
// tube re-gridding around the best path found so far.
DistanceResult distance(const DomainSpec& domain, const Vector& z,
                        const Vector& w, MetricKind kind,
                        const GraphParams& params = {});

}  // namespace hypmetrics
