#pragma once

#include <optional>
#include <vector>

#include <json.hpp>

#include "graphmf/filling.hpp"
#include "graphmf/model.hpp"

namespace graphmf {

using Json = nlohmann::json;

/// Reads the manifest schema; throws InputError on schema errors (missing or unknown
/// keys, wrong types). Structural invariants are not checked here.
GraphManifold parse_manifest(const Json& j);

struct ValidationReport {
  std::optional<GraphManifold> manifold;
  std::vector<Violation> violations;
  bool valid() const { return violations.empty(); }
};

/// Schema errors surface as a single "schema" violation.
ValidationReport validate_manifest(const Json& j);

/// parse_manifest followed by require_valid.
GraphManifold load_manifest(const Json& j);

Json manifest_to_json(const GraphManifold& m);

Int parse_int(const Json& j, const char* what);
Rational parse_rational(const Json& j, const char* what);
Vector parse_vector(const Json& j, const char* what);
IntMatrix parse_matrix(const Json& j, const char* what);
BoundExpr parse_bound(const Json& j);

/// Integers that fit in 64 bits become JSON numbers, others decimal strings.
Json int_to_json(const Int& x);
/// Integral rationals as int_to_json, others as "p/q".
Json rational_to_json(const Rational& x);
Json vector_to_json(const Vector& v);
Json matrix_to_json(const IntMatrix& m);
Json lattice_to_json(const Lattice& l);
Json bound_to_json(const BoundExpr& b);

}  // namespace graphmf
