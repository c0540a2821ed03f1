#pragma once

#include "polyangle/geometry.hpp"
#include "polyangle/relations.hpp"
#include "polyangle/scalar.hpp"
#include "polyangle/spans.hpp"
#include "polyangle/vectors.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace polyangle {

/** Ordered JSON keeps key insertion order, so serialized output is stable. */
using Json = nlohmann::ordered_json;

/** Exact values serialize as "p/q" strings, estimates as {"mean", "se"}. */
Json scalar_to_json(const Scalar& s);

/** Inverse of scalar_to_json. */
Scalar scalar_from_json(const Json& j);

/**
 * Angle report entry: {"mean": x, "se": y, "exact": "p/q" | null}. Exact
 * entries still carry their mean so consumers can read one column.
 */
Json alpha_entry_to_json(const Scalar& s);

Json alpha_to_json(const AlphaVector& a);

/** Integers that fit in 64 bits serialize as numbers, larger ones as strings. */
Json int_to_json(const Int& value);

Json int_vector_to_json(const std::vector<Int>& values);

/** Polytope file payload: {"ambient_dim": d, "vertices": [["p/q", ...], ...]}. */
Json polytope_to_json(const VPolytope& p);

/**
 * Rebuild a polytope from its file payload. Coordinates round-trip
 * bit-exactly because both directions use the canonical "p/q" form.
 */
VPolytope polytope_from_json(const Json& j);

void write_polytope_file(const std::string& path, const VPolytope& p);

VPolytope read_polytope_file(const std::string& path);

/**
 * Residual row: {"relation": name, "k": int | null,
 * "residual": "p/q" | float, "sigma_ratio": float | null}.
 */
Json residual_to_json(const RelationResidual& r);

/**
 * Span verdict: {"theorem", "d", "expected_dim", "computed_dim", "mode",
 * "margin", "family"} plus "matched" and "notes" for human consumption.
 */
Json verdict_to_json(const SpanVerdict& v);

}  // namespace polyangle
