#include "hypmetrics/field.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace hypmetrics {

std::vector<FieldRow> field(const DomainSpec& domain, DensityKind kind,
                            const GridSpec& grid,
                            const SamplingBudget& budget) {
  const int n = domain.dim();
  if (grid.lo.size() != n || grid.hi.size() != n ||
      static_cast<int>(grid.counts.size()) != n)
    throw std::invalid_argument("grid axes must match the domain dimension");
  long total = 1;
  for (int c : grid.counts) {
    if (c < 1) throw std::invalid_argument("grid counts must be >= 1");
    total *= c;
  }
  if (total <= 0) throw std::invalid_argument("empty grid");

  constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
  std::vector<FieldRow> rows;
  rows.reserve(static_cast<std::size_t>(total));
  std::vector<int> idx(n, 0);
  while (true) {
    FieldRow row;
    row.point = Vector(n);
    for (int k = 0; k < n; ++k) {
      const double t =
          grid.counts[k] == 1
              ? 0.5
              : static_cast<double>(idx[k]) / (grid.counts[k] - 1);
      row.point[k] = grid.lo[k] + t * (grid.hi[k] - grid.lo[k]);
    }
    row.in_domain = contains(domain, row.point);
    if (row.in_domain) {
      row.boundary_dist = dist_to_complement(domain, row.point);
      const DensityValue v = eval_density(domain, row.point, kind, budget);
      row.reciprocal = v.reciprocal;
      row.value = v.value;
      row.exceptional = v.exceptional_midpoint;
    } else {
      row.boundary_dist = kNaN;
      row.reciprocal = kNaN;
      row.value = kNaN;
      row.exceptional = false;
    }
    rows.push_back(std::move(row));
    int k = n - 1;
    while (k >= 0 && ++idx[k] == grid.counts[k]) idx[k--] = 0;
    if (k < 0) break;
  }
  return rows;
}

void write_field_csv(std::ostream& out, const std::vector<FieldRow>& rows) {
  if (rows.empty()) return;
  const Eigen::Index n = rows.front().point.size();
  for (Eigen::Index k = 0; k < n; ++k) out << "x" << (k + 1) << ",";
  out << "status,boundary_dist,reciprocal,value,exceptional\n";
  const auto num = [&out](double v) {
    if (std::isnan(v))
      out << "nan";
    else
      out << v;
  };
  for (const FieldRow& row : rows) {
    for (Eigen::Index k = 0; k < n; ++k) out << row.point[k] << ",";
    out << (row.in_domain ? "ok" : "outside") << ",";
    num(row.boundary_dist);
    out << ",";
    num(row.reciprocal);
    out << ",";
    num(row.value);
    out << "," << (row.exceptional ? 1 : 0) << "\n";
  }
}

}  // namespace hypmetrics
