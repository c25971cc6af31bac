#include "hypmetrics/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "hypmetrics/rng.hpp"

namespace hypmetrics {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTieTol = 1e-12;      // relative window for value ties
constexpr double kNearestTol = 1e-10;  // relative window for nearest pieces
constexpr double kRefineTol = 1e-12;   // angular step tolerance
constexpr int kMaxRefineIter = 200;    // pattern search polling rounds
constexpr double kChartStep = 1e-6;    // central-difference step (radians)
constexpr double kCreaseBand = 1e-2;   // |log(t/s)| window treated as crease

struct Candidate {
  double val = kInf;
  Vector a;
  Vector b;
};

bool lex_less(const Vector& x, const Vector& y) {
  for (int i = 0; i < x.size(); ++i) {
    if (x[i] < y[i]) return true;
    if (x[i] > y[i]) return false;
  }
  return false;
}

// Strict improvement, with lexicographically smallest (a, b) among ties.
bool better(const Candidate& c, const Candidate& incumbent) {
  if (!std::isfinite(incumbent.val)) return std::isfinite(c.val);
  if (!std::isfinite(c.val)) return false;
  const double tol = kTieTol * std::max(c.val, incumbent.val);
  if (c.val < incumbent.val - tol) return true;
  if (incumbent.val < c.val - tol) return false;
  if (lex_less(c.a, incumbent.a)) return true;
  if (lex_less(incumbent.a, c.a)) return false;
  return lex_less(c.b, incumbent.b);
}

// Objective for fixed |z - a| = s and chord length t = |a - b|.
double chord_objective(double s, double t) {
  if (!(t > 0.0)) return kInf;
  return s * (1.0 + std::abs(std::log(t / s)));
}

// Inner minimisation over b for fixed a: on every primitive the attainable
// chords form an interval, and |log(t/s)| is minimised by clamping s into it.
struct InnerBest {
  double val = kInf;
  int piece = -1;
  double chord = 0.0;
};

InnerBest best_chord_for(const std::vector<BoundarySphere>& pieces,
                         const Vector& z, const Vector& a) {
  const double s = (z - a).norm();
  InnerBest best;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const double t = distance_interval(pieces[i], a).clamp(s);
    const double v = chord_objective(s, t);
    if (v < best.val) best = InnerBest{v, static_cast<int>(i), t};
  }
  return best;
}

Candidate realize(const std::vector<BoundarySphere>& pieces, const Vector& z,
                  const Vector& a) {
  const InnerBest inner = best_chord_for(pieces, z, a);
  if (inner.piece < 0) return Candidate{};
  const Vector b = boundary_point_at_distance(pieces[inner.piece], a,
                                              inner.chord);
  return Candidate{pair_objective(z, a, b), a, b};
}

// Candidates for the nearest-point-constrained density: a ranges over the
// nearest boundary set, b over all primitives via exact chord clamping.
std::vector<Candidate> pprime_candidates(const DomainSpec& domain,
                                         const Vector& z) {
  const std::vector<BoundarySphere> pieces = boundary_pieces(domain);
  const double d = dist_to_complement(domain, z);
  const double slack =
      kNearestTol * std::max(d, domain.characteristic_scale());
  std::vector<Candidate> cands;
  for (const BoundarySphere& p : pieces) {
    if (piece_distance(p, z) > d + slack) continue;
    const double rho = (z - p.center).norm();
    if (p.radius > 0.0 && rho <= slack) {
      // z at the center: every point of the sphere is nearest, so minimise
      // over the joint chord range of the sphere pair.
      for (const BoundarySphere& q : pieces) {
        const double t = distance_interval(p, q).clamp(d);
        if (!(t > 0.0)) continue;
        const auto [a, b] = boundary_pair_at_distance(p, q, t);
        cands.push_back(Candidate{pair_objective(z, a, b), a, b});
      }
    } else {
      const Vector a = nearest_on_piece(p, z);
      const double s = (z - a).norm();
      for (const BoundarySphere& q : pieces) {
        const double t = distance_interval(q, a).clamp(s);
        if (!(t > 0.0)) continue;
        const Vector b = boundary_point_at_distance(q, a, t);
        cands.push_back(Candidate{pair_objective(z, a, b), a, b});
      }
    }
  }
  return cands;
}

// Derivative-free descent over one sphere: poll 2(n-1) great-circle rotations
// of the current point, halve the angle when no poll improves.
template <typename F>
Vector pattern_search_sphere(const BoundarySphere& p, const Vector& start,
                             F&& objective, int max_iter) {
  const int n = static_cast<int>(start.size());
  Vector u = (start - p.center).normalized();
  Vector best_point = p.center + p.radius * u;
  double best_val = objective(best_point);
  double step = 0.5;
  for (int it = 0; it < max_iter && step > kRefineTol; ++it) {
    // Tangent frame at u.
    std::vector<Vector> tangent;
    tangent.reserve(n - 1);
    for (int k = 0; k < n && static_cast<int>(tangent.size()) < n - 1; ++k) {
      Vector t = Vector::Zero(n);
      t[k] = 1.0;
      t -= t.dot(u) * u;
      for (const Vector& prev : tangent) t -= t.dot(prev) * prev;
      const double norm = t.norm();
      if (norm > 1e-8) tangent.push_back(t / norm);
    }
    const double cs = std::cos(step), sn = std::sin(step);
    Vector move_u;
    double move_val = best_val;
    bool moved = false;
    for (const Vector& t : tangent) {
      for (const double sign : {1.0, -1.0}) {
        const Vector u2 = cs * u + (sign * sn) * t;
        const Vector a2 = p.center + p.radius * u2;
        const double v2 = objective(a2);
        if (v2 < move_val) {
          move_val = v2;
          move_u = u2;
          moved = true;
        }
      }
    }
    if (moved) {
      u = move_u.normalized();
      best_val = move_val;
      best_point = p.center + p.radius * u;
    } else {
      step *= 0.5;
    }
  }
  return best_point;
}

// --- local polish ---------------------------------------------------------
// The pattern search above finds the right basin but converges slowly along
// the |log| creases and rotated valleys of the objective, and its final
// value depends slightly on the ambient coordinate frame.  The helpers
// below finish the minimisation with chart-based Newton steps so the
// reported infimum is frame independent to near machine precision.

// Tangent chart at a point of a sphere piece; x in R^(n-1) maps to a nearby
// surface point.  Rebuilt at every outer iteration, so the linearisation
// error never accumulates.
struct Chart {
  const BoundarySphere* piece;
  Vector u0;
  std::vector<Vector> tan;
};

Chart make_chart(const BoundarySphere& p, const Vector& a) {
  Chart ch;
  ch.piece = &p;
  ch.u0 = (a - p.center).normalized();
  const int n = static_cast<int>(ch.u0.size());
  for (int k = 0; k < n && static_cast<int>(ch.tan.size()) < n - 1; ++k) {
    Vector t = Vector::Zero(n);
    t[k] = 1.0;
    t -= t.dot(ch.u0) * ch.u0;
    for (const Vector& prev : ch.tan) t -= t.dot(prev) * prev;
    const double norm = t.norm();
    if (norm > 1e-6) ch.tan.push_back(t / norm);
  }
  return ch;
}

Vector chart_point(const Chart& ch, const Vector& x) {
  Vector u = ch.u0;
  for (std::size_t i = 0; i < ch.tan.size(); ++i) u += x[i] * ch.tan[i];
  return ch.piece->center + ch.piece->radius * u.normalized();
}

// Safeguarded Newton descent of a smooth functional on one sphere piece.
// Returns every accepted iterate; the caller scores them with the true
// pooled objective and keeps improvements only.
template <typename F>
std::vector<Vector> newton_iterates(const BoundarySphere& p, Vector a, F&& f,
                                    int rounds = 10) {
  std::vector<Vector> out;
  const double h = kChartStep;
  double fa = f(a);
  if (!std::isfinite(fa)) return out;
  for (int it = 0; it < rounds; ++it) {
    const Chart ch = make_chart(p, a);
    const int m = static_cast<int>(ch.tan.size());
    if (m == 0) break;
    Vector x = Vector::Zero(m);
    Vector grad(m);
    Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      Vector xp = x, xm = x;
      xp[i] += h;
      xm[i] -= h;
      const double fp = f(chart_point(ch, xp));
      const double fm = f(chart_point(ch, xm));
      grad[i] = (fp - fm) / (2.0 * h);
      hess(i, i) = (fp - 2.0 * fa + fm) / (h * h);
    }
    if (m == 2) {
      Vector xpp = x, xpm = x, xmp = x, xmm = x;
      xpp[0] += h;
      xpp[1] += h;
      xpm[0] += h;
      xpm[1] -= h;
      xmp[0] -= h;
      xmp[1] += h;
      xmm[0] -= h;
      xmm[1] -= h;
      const double mixed =
          (f(chart_point(ch, xpp)) - f(chart_point(ch, xpm)) -
           f(chart_point(ch, xmp)) + f(chart_point(ch, xmm))) /
          (4.0 * h * h);
      hess(0, 1) = hess(1, 0) = mixed;
    }
    Vector dx(m);
    bool newton_ok = false;
    if (m == 1) {
      if (hess(0, 0) > 0.0) {
        dx[0] = -grad[0] / hess(0, 0);
        newton_ok = std::isfinite(dx[0]);
      }
    } else {
      const double det = hess(0, 0) * hess(1, 1) - hess(0, 1) * hess(1, 0);
      if (det > 0.0 && hess(0, 0) > 0.0) {
        dx[0] = (-grad[0] * hess(1, 1) + grad[1] * hess(0, 1)) / det;
        dx[1] = (-grad[1] * hess(0, 0) + grad[0] * hess(1, 0)) / det;
        newton_ok = dx.allFinite();
      }
    }
    if (!newton_ok) {
      const double gn = grad.norm();
      if (!(gn > 0.0)) break;
      dx = -(1e-3 / gn) * grad;
    }
    if (dx.norm() > 0.1) dx *= 0.1 / dx.norm();
    Vector a_try = chart_point(ch, dx);
    double f_try = f(a_try);
    int cuts = 0;
    while (!(f_try < fa) && cuts < 4) {
      dx *= 0.25;
      a_try = chart_point(ch, dx);
      f_try = f(a_try);
      ++cuts;
    }
    if (!(f_try < fa)) break;
    a = a_try;
    fa = f_try;
    out.push_back(a);
    if (dx.norm() < 1e-12) break;
  }
  return out;
}

// Minimise f on one sphere piece subject to g = 0 (g dimensionless and
// smooth).  In the plane the constraint set is isolated points, so this is
// a root solve; on a 2-sphere it alternates a feasibility Newton step with
// a tangential quadratic-fit descent step.
template <typename F, typename G>
std::vector<Vector> constrained_iterates(const BoundarySphere& p, Vector a,
                                         F&& f, G&& g, int rounds = 14) {
  std::vector<Vector> out;
  const double h = kChartStep;
  for (int it = 0; it < rounds; ++it) {
    const Chart ch = make_chart(p, a);
    const int m = static_cast<int>(ch.tan.size());
    if (m == 0) break;
    const double g0 = g(a);
    if (!std::isfinite(g0)) break;
    Vector gg(m);
    for (int i = 0; i < m; ++i) {
      Vector xp = Vector::Zero(m), xm = Vector::Zero(m);
      xp[i] += h;
      xm[i] -= h;
      gg[i] = (g(chart_point(ch, xp)) - g(chart_point(ch, xm))) / (2.0 * h);
    }
    const double ggn2 = gg.squaredNorm();
    if (!(ggn2 > 1e-16)) break;
    Vector step = -(g0 / ggn2) * gg;
    if (step.norm() > 0.1) step *= 0.1 / step.norm();
    a = chart_point(ch, step);
    out.push_back(a);
    if (m == 1) {
      if (std::abs(g0) < 1e-14) break;
      continue;
    }
    const Chart ch2 = make_chart(p, a);
    const double g1 = g(a);
    Vector gg2(m);
    for (int i = 0; i < m; ++i) {
      Vector xp = Vector::Zero(m), xm = Vector::Zero(m);
      xp[i] += h;
      xm[i] -= h;
      gg2[i] = (g(chart_point(ch2, xp)) - g(chart_point(ch2, xm))) / (2.0 * h);
    }
    if (!(gg2.norm() > 1e-8)) break;
    Vector tau(2);
    tau << -gg2[1], gg2[0];
    tau.normalize();
    const double f0 = f(a);
    const double fp = f(chart_point(ch2, h * tau));
    const double fm = f(chart_point(ch2, -h * tau));
    const double d1 = (fp - fm) / (2.0 * h);
    const double d2 = (fp - 2.0 * f0 + fm) / (h * h);
    double alpha = d2 > 0.0 ? -d1 / d2 : (d1 > 0.0 ? -1e-2 : 1e-2);
    if (!std::isfinite(alpha)) break;
    alpha = std::clamp(alpha, -0.05, 0.05);
    a = chart_point(ch2, alpha * tau);
    out.push_back(a);
    if (std::abs(alpha) < 1e-13 && std::abs(g1) < 1e-13) break;
  }
  return out;
}

// Extreme points (nearest and farthest to z) of the circle cut out of a
// sphere piece by the plane through center + offset * normal.  Exact, so
// crease candidates built from it commute with similarities.
std::vector<Vector> circle_extremes(const BoundarySphere& p,
                                    const Vector& normal, double offset,
                                    const Vector& z) {
  std::vector<Vector> out;
  if (!(std::abs(offset) <= p.radius)) return out;
  const double rho2 = p.radius * p.radius - offset * offset;
  const double rho = std::sqrt(std::max(rho2, 0.0));
  const Vector cc = p.center + offset * normal;
  if (static_cast<int>(z.size()) == 2) {
    Vector t(2);
    t << -normal[1], normal[0];
    out.push_back(cc + rho * t);
    out.push_back(cc - rho * t);
    return out;
  }
  Vector w = z - cc;
  w -= w.dot(normal) * normal;
  const double wn = w.norm();
  const Vector dir = wn > 1e-12 * p.radius ? Vector(w / wn)
                                           : orthogonal_unit(normal);
  out.push_back(cc + rho * dir);
  out.push_back(cc - rho * dir);
  return out;
}

// Points of sphere `p` whose distance from `focus` equals `reach`
// (the intersection of p with the sphere around the focus).
std::vector<Vector> sphere_cut_extremes(const BoundarySphere& p,
                                        const Vector& focus, double reach,
                                        const Vector& z) {
  const Vector dc = focus - p.center;
  const double d = dc.norm();
  if (!(d > 0.0)) return {};
  const Vector n = dc / d;
  const double offset =
      (d * d + p.radius * p.radius - reach * reach) / (2.0 * d);
  return circle_extremes(p, n, offset, z);
}

struct SearchEffort {
  bool thorough;  // angular grid + sample-seeded starts + full polling
  int max_iter;
};

SearchEffort effort_for(const SamplingBudget& budget) {
  if (budget.samples >= 256) return SearchEffort{true, kMaxRefineIter};
  return SearchEffort{false, 60};
}

// Finish one piece's local search.  Identify the active inner piece and its
// clamp state at the incumbent witness, then either take the nearest point
// (clamp strictly interior), run Newton on the smooth clamped branch, or
// slide along the |log| crease with a constrained step.  The branch is
// re-detected after each improvement, so clamp-state switches cannot strand
// the iteration on a stale model; every trial point is scored with the true
// pooled objective and only improvements are kept.
Candidate polish_boundary(const std::vector<BoundarySphere>& pieces,
                          const Vector& z, const BoundarySphere& p,
                          Candidate best) {
  if (!std::isfinite(best.val) || !(p.radius > 0.0)) return best;
  Vector a = best.a;
  for (int round = 0; round < 3; ++round) {
    const double s = (z - a).norm();
    const InnerBest ib = best_chord_for(pieces, z, a);
    if (ib.piece < 0 || !(s > 0.0)) break;
    const BoundarySphere& q = pieces[ib.piece];
    const Interval iv = distance_interval(q, a);
    const bool interior = ib.chord == s;
    const double dl = iv.lo > 0.0 ? std::log(s / iv.lo) : kInf;
    const double dh = iv.hi > 0.0 ? std::log(iv.hi / s) : kInf;
    const double nearness =
        interior ? std::min(dl, dh) : std::abs(std::log(ib.chord / s));
    std::vector<Vector> iterates;
    if (interior && nearness > kCreaseBand) {
      iterates.push_back(nearest_on_piece(p, z));
    } else if (nearness > kCreaseBand) {
      const bool low = ib.chord > s;
      const auto f = [&](const Vector& aa) {
        const Interval r = distance_interval(q, aa);
        return chord_objective((z - aa).norm(), low ? r.lo : r.hi);
      };
      iterates = newton_iterates(p, a, f);
    } else {
      const bool low = interior ? dl <= dh : ib.chord > s;
      const auto f = [&](const Vector& aa) { return (z - aa).norm(); };
      const auto g = [&](const Vector& aa) {
        const Interval r = distance_interval(q, aa);
        const double tau = low ? r.lo : r.hi;
        const double ss = (z - aa).norm();
        return tau > 0.0 && ss > 0.0 ? std::log(tau / ss) : kInf;
      };
      iterates = constrained_iterates(p, a, f, g);
    }
    bool improved = false;
    for (const Vector& pt : iterates) {
      const Candidate c = realize(pieces, z, pt);
      if (better(c, best)) {
        best = c;
        improved = true;
      }
    }
    if (!improved) break;
    a = best.a;
  }
  return best;
}

// Boundary-pair density search: exact inner minimisation over b, multistart
// local search over a on each sphere, seeded by geometric directions, a
// deterministic angular grid, and the sampling budget.
Candidate lambda_prime_search(const DomainSpec& domain, const Vector& z,
                              const SamplingBudget& budget) {
  const std::vector<BoundarySphere> pieces = boundary_pieces(domain);
  const int n = domain.dim();
  const SearchEffort effort = effort_for(budget);
  Candidate best;
  for (const Candidate& c : pprime_candidates(domain, z))
    if (better(c, best)) best = c;

  Rng rng(budget.seed);
  for (const BoundarySphere& p : pieces) {
    if (p.radius == 0.0) {
      const Candidate c = realize(pieces, z, p.center);
      if (better(c, best)) best = c;
      continue;
    }
    // Geometric start directions: toward z and toward every other center.
    std::vector<Vector> dirs;
    const Vector to_z = z - p.center;
    if (to_z.norm() > 0.0) dirs.push_back(to_z.normalized());
    for (const BoundarySphere& q : pieces) {
      const Vector dc = q.center - p.center;
      if (dc.norm() > 0.0) dirs.push_back(dc.normalized());
    }
    std::vector<Vector> starts;
    for (const Vector& u : dirs) {
      starts.push_back(p.center + p.radius * u);
      starts.push_back(p.center - p.radius * u);
    }
    if (effort.thorough) {
      // The frame directions are geometric (z and piece centers), so the
      // start grid commutes with similarities up to arbitrary completion.
      const std::vector<Vector> frame = orthonormal_frame(n, dirs);
      if (n == 2) {
        constexpr int kGrid = 48;
        for (int k = 0; k < kGrid; ++k) {
          const double th = 2.0 * std::numbers::pi * k / kGrid;
          starts.push_back(p.center + p.radius * (std::cos(th) * frame[0] +
                                                  std::sin(th) * frame[1]));
        }
      } else if (n == 3) {
        constexpr int kAz = 12, kPol = 5;
        for (int j = 0; j < kPol; ++j) {
          const double ph = std::numbers::pi * (j + 0.5) / kPol;
          for (int k = 0; k < kAz; ++k) {
            const double th = 2.0 * std::numbers::pi * k / kAz;
            const Vector u = std::sin(ph) * (std::cos(th) * frame[0] +
                                             std::sin(th) * frame[1]) +
                             std::cos(ph) * frame[2];
            starts.push_back(p.center + p.radius * u);
          }
        }
        starts.push_back(p.center + p.radius * frame[2]);
        starts.push_back(p.center - p.radius * frame[2]);
      }
      // Best few boundary samples as extra starts.
      std::vector<std::pair<double, Vector>> scored;
      for (Vector& s : sphere_surface_samples(p, budget.samples, rng))
        scored.emplace_back(best_chord_for(pieces, z, s).val, std::move(s));
      const std::size_t keep = std::min<std::size_t>(4, scored.size());
      std::partial_sort(scored.begin(), scored.begin() + keep, scored.end(),
                        [](const auto& x, const auto& y) {
                          return x.first < y.first;
                        });
      for (std::size_t i = 0; i < keep; ++i)
        starts.push_back(std::move(scored[i].second));
    }
    const auto objective = [&](const Vector& a) {
      return best_chord_for(pieces, z, a).val;
    };
    Candidate piece_best;
    for (const Vector& s : starts) {
      const Vector a = pattern_search_sphere(p, s, objective, effort.max_iter);
      const Candidate c = realize(pieces, z, a);
      if (better(c, piece_best)) piece_best = c;
    }
    // Exact crease candidates against every removed point: |a - b| = |z - a|
    // confines a to the circle cut out of p by the (z, b) bisector plane,
    // and the best a on that circle is closed form.
    for (const BoundarySphere& q : pieces) {
      if (q.radius != 0.0) continue;
      const Vector span = q.center - z;
      const double sn = span.norm();
      if (!(sn > 0.0)) continue;
      const Vector normal = span / sn;
      const double offset =
          (0.5 * (z + q.center) - p.center).dot(normal);
      for (const Vector& a : circle_extremes(p, normal, offset, z)) {
        const Candidate c = realize(pieces, z, a);
        if (better(c, piece_best)) piece_best = c;
      }
    }
    const Candidate polished = polish_boundary(pieces, z, p, piece_best);
    if (better(polished, best)) best = polished;
  }
  return best;
}

// Interior midpoint route: minimise |z - b|/2 over boundary points b whose
// midpoint with z lies in the complement.
Candidate midpoint_search(const DomainSpec& domain, const Vector& z,
                          const SamplingBudget& budget) {
  const std::vector<BoundarySphere> pieces = boundary_pieces(domain);
  const SearchEffort effort = effort_for(budget);
  const auto feasible = [&](const Vector& b) {
    return in_complement(domain, 0.5 * (z + b));
  };
  const auto as_candidate = [&](const Vector& b) {
    const Vector a = 0.5 * (z + b);
    return Candidate{pair_objective(z, a, b), a, b};
  };
  Rng rng(budget.seed + 1);
  Candidate best;
  for (const BoundarySphere& q : pieces) {
    Vector seed_b;
    double seed_norm = kInf;
    const auto consider = [&](const Vector& b) {
      if (!feasible(b)) return;
      const double norm = (z - b).norm();
      if (norm < seed_norm) {
        seed_norm = norm;
        seed_b = b;
      }
      const Candidate c = as_candidate(b);
      if (better(c, best)) best = c;
    };
    consider(nearest_on_piece(q, z));
    consider(farthest_on_piece(q, z));
    // The constrained optimum sits where the midpoint touches a complement
    // sphere k: |(z + b)/2 - c_k| = r_k confines b to the sphere around
    // 2 c_k - z of radius 2 r_k, so each crease is a sphere-sphere cut with
    // closed-form extreme points.  When rounding pushes the midpoint a hair
    // inside the domain, retry with the midpoint nudged across.
    for (const BoundarySphere& k : pieces) {
      const Vector focus = 2.0 * k.center - z;
      for (const Vector& b : sphere_cut_extremes(q, focus, 2.0 * k.radius, z)) {
        if (feasible(b)) {
          consider(b);
          continue;
        }
        Vector m = 0.5 * (z + b);
        Vector dir = k.ambient ? Vector(m - k.center) : Vector(k.center - m);
        const double dn = dir.norm();
        if (!(dn > 0.0)) continue;
        const double delta = 64.0 * std::numeric_limits<double>::epsilon() *
                             (k.center.norm() + k.radius + m.norm() + 1.0);
        m += (delta / dn) * dir;
        consider(2.0 * m - z);
      }
    }
    const int count = effort.thorough ? budget.samples
                                      : std::max(2, budget.samples / 4);
    for (const Vector& b : sphere_surface_samples(q, count, rng)) consider(b);
    if (q.radius > 0.0 && std::isfinite(seed_norm)) {
      const auto objective = [&](const Vector& b) {
        return feasible(b) ? (z - b).norm() : kInf;
      };
      const Vector b = pattern_search_sphere(q, seed_b, objective,
                                             effort.max_iter);
      if (feasible(b)) {
        const Candidate c = as_candidate(b);
        if (better(c, best)) best = c;
      }
    }
  }
  return best;
}

DensityValue finalize(const Candidate& best, bool exceptional) {
  DensityValue v;
  v.reciprocal = best.val;
  v.value = 1.0 / best.val;
  v.witness_a = best.a;
  v.witness_b = best.b;
  v.exceptional_midpoint = exceptional;
  return v;
}

}  // namespace

double pair_objective(const Vector& z, const Vector& a, const Vector& b) {
  const double s = (z - a).norm();
  if (s == 0.0)
    throw std::invalid_argument("pair_objective requires a != z");
  const double t = (a - b).norm();
  return chord_objective(s, t);
}

double beta(const DomainSpec& domain, const Vector& z) {
  if (!contains(domain, z))
    throw DomainError("point_in_domain", "beta requires z in the domain");
  const std::vector<BoundarySphere> pieces = boundary_pieces(domain);
  const double d = dist_to_complement(domain, z);
  const double slack =
      kNearestTol * std::max(d, domain.characteristic_scale());
  double best = kInf;
  for (const BoundarySphere& p : pieces) {
    if (piece_distance(p, z) > d + slack) continue;
    const double rho = (z - p.center).norm();
    const bool degenerate = p.radius > 0.0 && rho <= slack;
    const Vector a = degenerate ? Vector() : nearest_on_piece(p, z);
    for (const BoundarySphere& q : pieces) {
      const Interval range =
          degenerate ? distance_interval(p, q) : distance_interval(q, a);
      const double t = range.clamp(d);
      if (!(t > 0.0)) continue;
      best = std::min(best, std::abs(std::log(t / d)));
    }
  }
  return best;
}

DensityValue eval_density(const DomainSpec& domain, const Vector& z,
                          DensityKind kind, const SamplingBudget& budget) {
  if (budget.samples < 2)
    throw std::invalid_argument("SamplingBudget.samples must be >= 2");
  if (!contains(domain, z))
    throw DomainError("point_in_domain",
                      "eval_density requires z in the domain");
  if (kind == DensityKind::lambda_pprime) {
    Candidate best;
    for (const Candidate& c : pprime_candidates(domain, z))
      if (better(c, best)) best = c;
    return finalize(best, false);
  }
  const Candidate boundary_best = lambda_prime_search(domain, z, budget);
  if (kind == DensityKind::lambda_prime) return finalize(boundary_best, false);
  const Candidate midpoint_best = midpoint_search(domain, z, budget);
  if (midpoint_best.val <
      boundary_best.val * (1.0 - kTieTol))
    return finalize(midpoint_best, true);
  return finalize(boundary_best, false);
}

std::array<DensityValue, 3> eval_all_densities(const DomainSpec& domain,
                                               const Vector& z,
                                               const SamplingBudget& budget) {
  if (budget.samples < 2)
    throw std::invalid_argument("SamplingBudget.samples must be >= 2");
  if (!contains(domain, z))
    throw DomainError("point_in_domain",
                      "eval_all_densities requires z in the domain");
  Candidate pprime_best;
  for (const Candidate& c : pprime_candidates(domain, z))
    if (better(c, pprime_best)) pprime_best = c;
  const Candidate boundary_best = lambda_prime_search(domain, z, budget);
  const Candidate midpoint_best = midpoint_search(domain, z, budget);
  std::array<DensityValue, 3> out;
  if (midpoint_best.val < boundary_best.val * (1.0 - kTieTol))
    out[static_cast<int>(DensityKind::lambda)] = finalize(midpoint_best, true);
  else
    out[static_cast<int>(DensityKind::lambda)] = finalize(boundary_best, false);
  out[static_cast<int>(DensityKind::lambda_prime)] =
      finalize(boundary_best, false);
  out[static_cast<int>(DensityKind::lambda_pprime)] =
      finalize(pprime_best, false);
  return out;
}

DensityValue brute_force_density(const DomainSpec& domain, const Vector& z,
                                 DensityKind kind, int grid,
                                 std::uint64_t seed) {
  if (grid < 2)
    throw std::invalid_argument("brute_force_density requires grid >= 2");
  if (!contains(domain, z))
    throw DomainError("point_in_domain",
                      "brute_force_density requires z in the domain");

  // Candidate pool for a.
  std::vector<Vector> a_pool;
  std::vector<Vector> b_pool;
  if (kind == DensityKind::lambda_pprime) {
    const NearestBoundary nb = nearest_boundary_points(domain, z);
    a_pool = nb.points;
    Rng rng(seed + 2);
    for (const BoundarySphere& s : nb.degenerate_spheres)
      for (Vector& p : sphere_surface_samples(s, grid, rng))
        a_pool.push_back(std::move(p));
    b_pool = sample_boundary(domain, grid, seed);
  } else if (kind == DensityKind::lambda_prime) {
    a_pool = sample_boundary(domain, grid, seed);
    b_pool = a_pool;
  } else {
    // Boundary plus volumetric complement samples (obstacle closures and,
    // for a ball ambient, a shell outside it).
    a_pool = sample_boundary(domain, (grid + 1) / 2, seed);
    Rng rng(seed + 1);
    const int n = domain.dim();
    int regions = static_cast<int>(domain.obstacles().size()) +
                  (domain.has_ambient_ball() ? 1 : 0);
    const int per_region = std::max(1, (grid / 2) / std::max(1, regions));
    for (const Obstacle& o : domain.obstacles()) {
      if (o.kind == Obstacle::Kind::removed_point) {
        a_pool.push_back(o.center);
        continue;
      }
      for (int k = 0; k < per_region; ++k) {
        const double r = o.radius * std::pow(rng.uniform(), 1.0 / n);
        a_pool.push_back(o.center + r * rng.direction(n));
      }
    }
    if (domain.has_ambient_ball()) {
      const double R = domain.ambient_radius();
      for (int k = 0; k < per_region; ++k) {
        const double u = rng.uniform();
        const double r =
            R * std::pow(1.0 + u * (std::pow(2.0, n) - 1.0), 1.0 / n);
        a_pool.push_back(domain.ambient_center() + r * rng.direction(n));
      }
    }
    b_pool = a_pool;
  }

  const int n = domain.dim();
  Eigen::MatrixXd b_mat(n, static_cast<int>(b_pool.size()));
  for (std::size_t j = 0; j < b_pool.size(); ++j) b_mat.col(j) = b_pool[j];

  // Per a: the best b minimises max(t^2/s^2, s^2/t^2), a monotone proxy for
  // |log(t/s)|; one log per a suffices to get the value.
  const auto value_of = [](double s2, double metric) {
    return std::sqrt(s2) * (1.0 + 0.5 * std::log(metric));
  };
  std::vector<double> vals(a_pool.size(), kInf);
  std::vector<int> best_j(a_pool.size(), -1);
  Eigen::VectorXd d2;
  double best_val = kInf;
  for (std::size_t i = 0; i < a_pool.size(); ++i) {
    const double s2 = (z - a_pool[i]).squaredNorm();
    if (s2 == 0.0) continue;
    d2 = (b_mat.colwise() - a_pool[i]).colwise().squaredNorm();
    double best_metric = kInf;
    int bj = -1;
    for (int j = 0; j < d2.size(); ++j) {
      const double t2 = d2[j];
      if (!(t2 > 0.0)) continue;
      const double q = t2 / s2;
      const double metric = q >= 1.0 ? q : 1.0 / q;
      if (metric < best_metric) {
        best_metric = metric;
        bj = j;
      }
    }
    if (bj < 0) continue;
    vals[i] = value_of(s2, best_metric);
    best_j[i] = bj;
    best_val = std::min(best_val, vals[i]);
  }

  // Lexicographic tie-break among near-optimal pairs.
  Candidate best;
  for (std::size_t i = 0; i < a_pool.size(); ++i) {
    if (!(vals[i] <= best_val * (1.0 + kTieTol))) continue;
    const double s2 = (z - a_pool[i]).squaredNorm();
    d2 = (b_mat.colwise() - a_pool[i]).colwise().squaredNorm();
    for (int j = 0; j < d2.size(); ++j) {
      const double t2 = d2[j];
      if (!(t2 > 0.0)) continue;
      const double q = t2 / s2;
      const double metric = q >= 1.0 ? q : 1.0 / q;
      const double v = value_of(s2, metric);
      if (v <= best_val * (1.0 + kTieTol)) {
        const Candidate c{pair_objective(z, a_pool[i], b_pool[j]), a_pool[i],
                          b_pool[j]};
        if (better(c, best)) best = c;
      }
    }
  }

  // Witness off the boundary marks the interior midpoint configuration.
  bool exceptional = false;
  if (kind == DensityKind::lambda && best.a.size() > 0) {
    double boundary_dist = kInf;
    for (const BoundarySphere& piece : boundary_pieces(domain))
      boundary_dist = std::min(boundary_dist, piece_distance(piece, best.a));
    exceptional =
        boundary_dist > 1e-9 * std::max(1.0, domain.characteristic_scale());
  }
  return finalize(best, exceptional);
}

}  // namespace hypmetrics
