#pragma once

// JSON encoding of operators as a tagged union:
//   {"type":"zero"}                         optional "dim"
//   {"type":"scaled_identity","alpha":a}    optional "dim"
//   {"type":"linear","M":[[...],...]}
//   {"type":"prox_quadratic","Q":[[...]],"q":[...]}
//   {"type":"prox_l1","weight":w}           optional "dim"
//   {"type":"prox_box","lo":[...],"hi":[...]}
//   {"type":"prox_affine","E":[[...]],"e":[...]}
//   {"type":"inverse","inner":{...}}
//   {"type":"block2x2","A":{...},"B":{...},"C":[[...]]}
// Matrices are row-major arrays of rows.

#include <nlohmann/json.hpp>

#include "drsplit/operator.hpp"

namespace drsplit {

using Json = nlohmann::json;

Json matrix_to_json(const Matrix& m);
Json vector_to_json(const Vector& v);

/// Throws Parse on malformed input.
Matrix matrix_from_json(const Json& j);
Vector vector_from_json(const Json& j);

Json to_json(const OperatorSpec& op);

/// Throws Parse for schema errors; construction errors (e.g. a non-monotone
/// matrix) propagate with their own codes.
OperatorSpec operator_from_json(const Json& j);

}  // namespace drsplit
