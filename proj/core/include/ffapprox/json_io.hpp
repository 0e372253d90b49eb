#pragma once

#include <json.hpp>
#include <string>

#include "ffapprox/geometry.hpp"

namespace ffapprox::io {

using nlohmann::json;

// Reads and parses a JSON file; syntax errors become InputError with line and
// column.
json load_json_file(const std::string& path);
json parse_json_text(const std::string& text, const std::string& origin);

FieldPtr field_from_json(const json& j, const std::string& where = "field");
json field_to_json(const Field& F);

// An element is an integer (its index, for prime fields the residue) or its
// coordinate vector.
Fq fq_from_json(const Field& F, const json& j, const std::string& where);
json fq_to_json(const Field& F, Fq a);

// Coefficients lowest degree first.
Poly poly_from_json(const FieldPtr& f, const json& j, const std::string& where);
json poly_to_json(const Poly& p);
RatFunc ratfunc_from_json(const FieldPtr& f, const json& j, const std::string& where);
json ratfunc_to_json(const RatFunc& r);
// Accepts a polynomial array, {"num","den"}, {"ratfunc": ...} or
// {"val","coeffs","prec"}.
Laurent laurent_from_json(const FieldPtr& f, const json& j, const std::string& where);
json laurent_to_json(const Laurent& x);

// {"field", "m", "n", "entries": row-major}
LaurentMatrix matrix_from_json(const json& j);
json matrix_to_json(const LaurentMatrix& A);
// {"r": [...], "s": [...]}
WeightedNormContext weights_from_json(const json& j);
json weights_to_json(const WeightedNormContext& c);
// {"theta": [...]} or a bare array.
VecKv vector_from_json(const FieldPtr& f, const json& j, const std::string& key);
json polyvec_to_json(const PolyVec& v);
PolyVec polyvec_from_json(const FieldPtr& f, const json& j, const std::string& where);

inline json logval_to_json(const LogVal& v) { return v.str(); }
LogVal logval_from_json(const json& j, const std::string& where);
inline json rational_to_json(const Rational& r) { return to_string(r); }

}  // namespace ffapprox::io
