#include "hypmetrics/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <queue>
#include <unordered_map>

namespace hypmetrics {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr int kMaxSplitDepth = 10;

// Densities for all four kinds at one point.  The three lambda reciprocals
// are nested, and each candidate objective is >= d(x), so the pointwise
// order lambda_pprime <= lambda_prime <= lambda <= 1/d holds exactly.
std::array<double, 4> densities_at(const DomainSpec& domain, const Vector& x,
                                   const SamplingBudget& budget,
                                   const std::array<bool, 4>& kinds) {
  std::array<double, 4> rho{kNaN, kNaN, kNaN, kNaN};
  const double d = dist_to_complement(domain, x);
  if (kinds[3]) rho[3] = 1.0 / d;
  if (kinds[0] || kinds[1]) {
    const std::array<DensityValue, 3> v = eval_all_densities(domain, x, budget);
    for (int k = 0; k < 3; ++k)
      if (kinds[k]) rho[k] = v[k].value;
  } else if (kinds[2]) {
    // The nearest-pair density alone is closed-form; skip the pair search.
    rho[2] =
        eval_density(domain, x, DensityKind::lambda_pprime, budget).value;
  }
  return rho;
}

// Split [p, q] until the clearance varies by < 10% per piece.
void split_by_clearance(const DomainSpec& domain, const Vector& p,
                        const Vector& q, double dp, double dq, int depth,
                        std::vector<std::pair<Vector, Vector>>& out) {
  if (depth < kMaxSplitDepth &&
      std::max(dp, dq) > 1.1 * std::min(dp, dq)) {
    const Vector m = 0.5 * (p + q);
    const double dm = dist_to_complement(domain, m);
    split_by_clearance(domain, p, m, dp, dm, depth + 1, out);
    split_by_clearance(domain, m, q, dm, dq, depth + 1, out);
    return;
  }
  out.emplace_back(p, q);
}

}  // namespace

const Quadrature& gauss_legendre(int order) {
  static std::map<int, Quadrature> cache;
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;

  Quadrature q;
  q.nodes.resize(order);
  q.weights.resize(order);
  for (int i = 0; i < (order + 1) / 2; ++i) {
    // Chebyshev-like initial guess, then Newton on P_order.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-15) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= order; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = order * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    q.nodes[i] = -x;
    q.weights[i] = w;
    q.nodes[order - 1 - i] = x;
    q.weights[order - 1 - i] = w;
  }
  return cache.emplace(order, std::move(q)).first->second;
}

bool certify_segment(const DomainSpec& domain, const Vector& p,
                     const Vector& q, int max_depth) {
  if (!contains(domain, p) || !contains(domain, q)) return false;
  const double len = (p - q).norm();
  if (len < dist_to_complement(domain, p) + dist_to_complement(domain, q))
    return true;
  if (max_depth <= 0) return false;
  const Vector m = 0.5 * (p + q);
  return certify_segment(domain, p, m, max_depth - 1) &&
         certify_segment(domain, m, q, max_depth - 1);
}

std::array<double, 4> edge_weights(const DomainSpec& domain, const Vector& p,
                                   const Vector& q, int quad_order,
                                   const SamplingBudget& budget,
                                   const std::array<bool, 4>& kinds) {
  std::array<double, 4> total{};
  for (int k = 0; k < 4; ++k) total[k] = kinds[k] ? 0.0 : kNaN;
  if ((p - q).norm() == 0.0) return total;

  std::vector<std::pair<Vector, Vector>> pieces;
  split_by_clearance(domain, p, q, dist_to_complement(domain, p),
                     dist_to_complement(domain, q), 0, pieces);
  const Quadrature& quad = gauss_legendre(quad_order);
  for (const auto& [a, b] : pieces) {
    const Vector mid = 0.5 * (a + b);
    const Vector half = 0.5 * (b - a);
    const double half_len = half.norm();
    for (int i = 0; i < quad_order; ++i) {
      const Vector x = mid + quad.nodes[i] * half;
      const std::array<double, 4> rho = densities_at(domain, x, budget, kinds);
      for (int k = 0; k < 4; ++k)
        if (kinds[k]) total[k] += quad.weights[i] * half_len * rho[k];
    }
  }
  return total;
}

double edge_weight(const DomainSpec& domain, const Vector& p, const Vector& q,
                   MetricKind kind, int quad_order,
                   const SamplingBudget& budget) {
  std::array<bool, 4> kinds{false, false, false, false};
  kinds[static_cast<int>(kind)] = true;
  return edge_weights(domain, p, q, quad_order, budget,
                      kinds)[static_cast<int>(kind)];
}

namespace {

// Lattice nodes in an equivariant frame anchored at the z-w midpoint.
std::vector<Vector> lattice_nodes(const DomainSpec& domain, const Vector& z,
                                  const Vector& w, const GraphParams& params,
                                  const Vector& region_center,
                                  double region_radius) {
  const int n = domain.dim();
  std::vector<Vector> preferred;
  preferred.push_back(w - z);
  const Vector anchor = 0.5 * (z + w);
  for (const Obstacle& o : domain.obstacles())
    preferred.push_back(o.center - anchor);
  if (domain.has_ambient_ball())
    preferred.push_back(domain.ambient_center() - anchor);
  const std::vector<Vector> frame = orthonormal_frame(n, preferred);

  const double h = params.h;
  const double clearance = params.clearance_factor * h;
  const double span = region_radius + (anchor - region_center).norm();
  const int m = static_cast<int>(std::floor(span / h)) + 1;

  std::vector<Vector> nodes;
  std::vector<int> idx(n, -m);
  while (true) {
    Vector x = anchor;
    for (int k = 0; k < n; ++k) x += (h * idx[k]) * frame[k];
    if ((x - region_center).norm() <= region_radius && contains(domain, x) &&
        dist_to_complement(domain, x) >= clearance)
      nodes.push_back(std::move(x));
    int k = 0;
    while (k < n && ++idx[k] > m) idx[k++] = -m;
    if (k == n) break;
  }
  return nodes;
}

PathGraph assemble_graph(const DomainSpec& domain, const Vector& z,
                         const Vector& w, const GraphParams& params,
                         std::vector<Vector> extra_nodes,
                         const std::vector<std::pair<int, int>>& forced_edges,
                         int refinement_level) {
  PathGraph g;
  g.spacing = params.h;
  g.refinement_level = refinement_level;
  g.seed = params.budget.seed;
  g.nodes.push_back(z);
  g.nodes.push_back(w);
  const double radius = params.neighbor_factor * params.h;
  for (Vector& x : extra_nodes) {
    if ((x - z).norm() < 1e-9 * params.h || (x - w).norm() < 1e-9 * params.h)
      continue;
    g.nodes.push_back(std::move(x));
  }

  // Neighbor search via integer cell hash (cell size = edge radius).
  const int n = domain.dim();
  std::unordered_map<std::int64_t, std::vector<int>> cells;
  const auto cell_coords = [&](const Vector& x) {
    std::vector<std::int64_t> c(n);
    for (int k = 0; k < n; ++k)
      c[k] = static_cast<std::int64_t>(std::floor(x[k] / radius));
    return c;
  };
  const auto coords_key = [&](const std::vector<std::int64_t>& c) {
    std::int64_t key = 1469598103934665603LL;
    for (int k = 0; k < n; ++k) key = (key ^ c[k]) * 1099511628211LL;
    return key;
  };
  for (int i = 0; i < static_cast<int>(g.nodes.size()); ++i)
    cells[coords_key(cell_coords(g.nodes[i]))].push_back(i);

  std::vector<std::pair<int, int>> pairs = forced_edges;
  std::vector<std::int64_t> nb(n);
  for (int i = 0; i < static_cast<int>(g.nodes.size()); ++i) {
    const std::vector<std::int64_t> c = cell_coords(g.nodes[i]);
    // Visit all neighbor cells (3^n combinations).
    std::vector<int> off(n, -1);
    while (true) {
      for (int k = 0; k < n; ++k) nb[k] = c[k] + off[k];
      auto it = cells.find(coords_key(nb));
      if (it != cells.end()) {
        for (int j : it->second) {
          if (j <= i) continue;
          if ((g.nodes[i] - g.nodes[j]).norm() <= radius)
            pairs.emplace_back(i, j);
        }
      }
      int k = 0;
      while (k < n && ++off[k] > 1) off[k++] = -1;
      if (k == n) break;
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  for (const auto& [i, j] : pairs) {
    if (i == j) continue;
    if (!certify_segment(domain, g.nodes[i], g.nodes[j])) continue;
    PathGraph::Edge e;
    e.u = i;
    e.v = j;
    e.weight = edge_weights(domain, g.nodes[i], g.nodes[j], params.quad_order,
                            params.budget, params.kinds);
    g.edges.push_back(std::move(e));
  }
  return g;
}

void bounding_region(const DomainSpec& domain, const Vector& z,
                     const Vector& w, Vector& center, double& radius) {
  if (domain.has_ambient_ball()) {
    center = domain.ambient_center();
    radius = domain.ambient_radius();
    return;
  }
  center = 0.5 * (z + w);
  double extent = 0.0;
  for (const Obstacle& o : domain.obstacles())
    extent = std::max(extent, (o.center - center).norm() + o.radius);
  radius = 4.0 * ((z - w).norm() + extent);
}

double point_segment_distance(const Vector& x, const Vector& a,
                              const Vector& b) {
  const Vector ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return (x - a).norm();
  const double t = std::clamp(ab.dot(x - a) / len2, 0.0, 1.0);
  return (x - (a + t * ab)).norm();
}

}  // namespace

PathGraph build_graph(const DomainSpec& domain, const Vector& z,
                      const Vector& w, const GraphParams& params) {
  if (!contains(domain, z) || !contains(domain, w))
    throw DomainError("point_in_domain", "endpoints must lie in the domain");
  Vector center;
  double radius;
  bounding_region(domain, z, w, center, radius);
  return assemble_graph(domain, z, w, params,
                        lattice_nodes(domain, z, w, params, center, radius),
                        {}, 0);
}

PathGraph build_graph_in_tube(const DomainSpec& domain, const Vector& z,
                              const Vector& w, const GraphParams& params,
                              const std::vector<Vector>& polyline,
                              double tube_radius) {
  if (!contains(domain, z) || !contains(domain, w))
    throw DomainError("point_in_domain", "endpoints must lie in the domain");
  Vector center;
  double radius;
  bounding_region(domain, z, w, center, radius);
  std::vector<Vector> nodes =
      lattice_nodes(domain, z, w, params, center, radius);
  const auto in_tube = [&](const Vector& x) {
    for (std::size_t i = 0; i + 1 < polyline.size(); ++i)
      if (point_segment_distance(x, polyline[i], polyline[i + 1]) <=
          tube_radius)
        return true;
    return false;
  };
  std::erase_if(nodes, [&](const Vector& x) { return !in_tube(x); });

  // Keep the previous path itself so the refined value cannot regress.
  for (std::size_t i = 0; i < polyline.size(); ++i) {
    const bool is_z = (polyline[i] - z).norm() == 0.0;
    const bool is_w = (polyline[i] - w).norm() == 0.0;
    if (!is_z && !is_w) nodes.push_back(polyline[i]);
  }
  PathGraph g = assemble_graph(domain, z, w, params, std::move(nodes), {}, 0);
  // Re-add consecutive polyline edges the radius test may have missed.
  const auto find_node = [&](const Vector& x) {
    for (int i = 0; i < static_cast<int>(g.nodes.size()); ++i)
      if ((g.nodes[i] - x).norm() == 0.0) return i;
    return -1;
  };
  for (std::size_t i = 0; i + 1 < polyline.size(); ++i) {
    const int u = find_node(polyline[i]);
    const int v = find_node(polyline[i + 1]);
    if (u < 0 || v < 0 || u == v) continue;
    const auto exists = [&] {
      for (const PathGraph::Edge& e : g.edges)
        if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) return true;
      return false;
    }();
    if (exists) continue;
    if (!certify_segment(domain, g.nodes[u], g.nodes[v])) continue;
    PathGraph::Edge e;
    e.u = std::min(u, v);
    e.v = std::max(u, v);
    e.weight = edge_weights(domain, g.nodes[u], g.nodes[v], params.quad_order,
                            params.budget, params.kinds);
    g.edges.push_back(std::move(e));
  }
  return g;
}

DistanceResult shortest_path(const PathGraph& graph, MetricKind kind) {
  const int k = static_cast<int>(kind);
  const int n = static_cast<int>(graph.nodes.size());
  std::vector<std::vector<std::pair<int, double>>> adj(n);
  for (const PathGraph::Edge& e : graph.edges) {
    const double w = e.weight[k];
    if (std::isnan(w))
      throw std::invalid_argument(
          "requested MetricKind has no weights in this graph");
    adj[e.u].emplace_back(e.v, w);
    adj[e.v].emplace_back(e.u, w);
  }
  std::vector<double> dist(n, kInf);
  std::vector<int> parent(n, -1);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[0] = 0.0;
  pq.emplace(0.0, 0);
  while (!pq.empty()) {
    const auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) continue;
    if (u == 1) break;
    for (const auto& [v, w] : adj[u]) {
      const double nd = d + w;
      if (nd < dist[v]) {
        dist[v] = nd;
        parent[v] = u;
        pq.emplace(nd, v);
      }
    }
  }
  DistanceResult res;
  res.kind = kind;
  res.refinement_level = graph.refinement_level;
  res.is_upper_bound = true;
  res.value = dist[1];
  if (std::isfinite(dist[1])) {
    std::vector<int> chain;
    for (int v = 1; v != -1; v = parent[v]) chain.push_back(v);
    std::reverse(chain.begin(), chain.end());
    for (int v : chain) res.path.push_back(graph.nodes[v]);
  }
  return res;
}

DistanceResult distance(const DomainSpec& domain, const Vector& z,
                        const Vector& w, MetricKind kind,
                        const GraphParams& params) {
  if (!contains(domain, z) || !contains(domain, w))
    throw DomainError("point_in_domain", "endpoints must lie in the domain");
  if ((z - w).norm() == 0.0)
    return DistanceResult{0.0, {z}, kind, 0, true};
  GraphParams p = params;
  p.kinds = {false, false, false, false};
  p.kinds[static_cast<int>(kind)] = true;
  PathGraph g = build_graph(domain, z, w, p);
  DistanceResult best = shortest_path(g, kind);
  for (int r = 1; r <= params.refinements; ++r) {
    if (best.path.size() < 2) break;
    const double tube_radius = 4.0 * p.h;
    p.h *= 0.5;
    PathGraph refined =
        build_graph_in_tube(domain, z, w, p, best.path, tube_radius);
    refined.refinement_level = r;
    DistanceResult res = shortest_path(refined, kind);
    res.refinement_level = r;
    if (res.value <= best.value) best = res;
    best.refinement_level = r;
  }
  return best;
}

}  // namespace hypmetrics
