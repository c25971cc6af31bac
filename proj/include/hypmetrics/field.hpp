#pragma once

// Tabulated density values over a rectangular grid, for plotting and for
// bulk sanity checks.  Grid points outside the domain are kept in the
// output with a sentinel status so consumers see the full grid shape.

#include <iosfwd>
#include <vector>

#include "hypmetrics/density.hpp"
#include "hypmetrics/geometry.hpp"

namespace hypmetrics {

struct GridSpec {
  Vector lo;
  Vector hi;
  std::vector<int> counts;  // points per axis, every entry >= 1
};

struct FieldRow {
  Vector point;
  bool in_domain;
  double boundary_dist;  // NaN outside the domain
  double reciprocal;     // NaN outside the domain
  double value;          // NaN outside the domain
  bool exceptional;
};

// Row-major sweep over the grid (last axis fastest).  Throws
// std::invalid_argument on an empty or malformed grid.
std::vector<FieldRow> field(const DomainSpec& domain, DensityKind kind,
                            const GridSpec& grid,
                            const SamplingBudget& budget = {});

// Header "x1,..,xn,status,boundary_dist,reciprocal,value,exceptional";
// status is "ok" or "outside", numeric fields are "nan" outside.
void write_field_csv(std::ostream& out, const std::vector<FieldRow>& rows);

}  // namespace hypmetrics
