#pragma once

#include "argshift/liealg.hpp"

#include <string>

namespace argshift {

/// Reads an algebra from its JSON description:
///   {"dim": n,
///    "brackets": [{"i": 1, "j": 2, "terms": {"2": "1"}}, ...],
///    "invariants": ["<polynomial text>", ...],
///    "name": "..."}
/// Indices are 1-based and coefficients are rational strings. Construction
/// validates antisymmetry, the Jacobi identity and invariant membership;
/// violations surface as validation_error, malformed input as parse_error.
LieAlgebra algebra_from_json(const std::string& text);

/// Inverse of algebra_from_json; emits the same schema, deterministically
/// ordered.
std::string algebra_to_json(const LieAlgebra& alg);

/// Parses "0,1,-1/2" into a rational vector; throws parse_error on bad
/// entries or an empty list.
RatVec parse_csv_rationals(const std::string& csv);

} // namespace argshift
