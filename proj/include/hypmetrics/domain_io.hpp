#pragma once

// JSON descriptions of domains and test maps.
//
// Domain format:
//   { "dim": n,
//     "ambient": "whole_space" | {"ball": {"center": [...], "radius": r}},
//     "obstacles": [ {"point": {"center": [...]}}
//                  | {"ball": {"center": [...], "radius": r}} ] }
//
// Map format (one key per variant):
//   {"similarity": {"scale": s, "rotation": [[...]], "translation": [...]}}
//     (rotation defaults to the identity, translation to zero)
//   {"radial_stretch": {"K": k}}
//   {"linear": {"matrix": [[...]]}}
//   {"inversion": {"center": [...], "radius": r}}
//
// Structural violations raise DomainError with the violated invariant's
// name; malformed JSON raises nlohmann::json exceptions unchanged.

#include <string>

#include "json.hpp"

#include "hypmetrics/geometry.hpp"
#include "hypmetrics/qcmaps.hpp"

namespace hypmetrics {

using Json = nlohmann::json;

Json to_json(const Vector& v);
Vector vector_from_json(const Json& j, int expected_dim);

Json to_json(const DomainSpec& domain);
DomainSpec domain_from_json(const Json& j);
DomainSpec load_domain(const std::string& path);

Json to_json(const QcMap& map);
QcMap qcmap_from_json(const Json& j, int dim);
QcMap load_qcmap(const std::string& path, int dim);

}  // namespace hypmetrics
