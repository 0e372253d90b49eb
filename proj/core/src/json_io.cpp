#include "ffapprox/json_io.hpp"

#include <fstream>
#include <sstream>

#include "ffapprox/errors.hpp"

namespace ffapprox::io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw InputError(where + ": " + what);
}

const json& field_of(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) fail(where, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::int64_t int_of(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<std::int64_t>();
}

}  // namespace

json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON");
  }
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

FieldPtr field_from_json(const json& j, const std::string& where) {
  FieldSpec spec;
  spec.p = static_cast<std::uint32_t>(int_of(field_of(j, "p", where), where + ".p"));
  if (j.contains("e")) spec.e = static_cast<std::uint32_t>(int_of(j.at("e"), where + ".e"));
  if (j.contains("modulus")) {
    const json& mj = j.at("modulus");
    if (!mj.is_array()) fail(where + ".modulus", "expected an array");
    for (std::size_t i = 0; i < mj.size(); ++i)
      spec.modulus.push_back(static_cast<std::uint32_t>(int_of(mj[i], where + ".modulus[" + std::to_string(i) + "]")));
  }
  try {
    return Field::make(spec);
  } catch (const InputError& e) {
    fail(where, e.what());
  }
}

json field_to_json(const Field& F) {
  json j{{"p", F.p()}, {"e", F.e()}};
  if (F.e() > 1) j["modulus"] = F.spec().modulus;
  return j;
}

Fq fq_from_json(const Field& F, const json& j, const std::string& where) {
  if (j.is_number_integer()) {
    const std::int64_t v = j.get<std::int64_t>();
    if (F.e() == 1) return F.from_int(v);
    if (v < 0 || v >= static_cast<std::int64_t>(F.q())) fail(where, "element index out of range");
    return F.element(static_cast<std::uint32_t>(v));
  }
  if (j.is_array()) {
    if (j.size() != F.e()) fail(where, "coordinate vector has the wrong length");
    std::vector<std::uint32_t> c;
    for (std::size_t i = 0; i < j.size(); ++i) {
      const std::int64_t v = int_of(j[i], where + "[" + std::to_string(i) + "]");
      if (v < 0 || v >= static_cast<std::int64_t>(F.p())) fail(where, "coordinate out of range");
      c.push_back(static_cast<std::uint32_t>(v));
    }
    return F.from_coords(c);
  }
  fail(where, "expected a field element");
}

json fq_to_json(const Field& F, Fq a) {
  if (F.e() == 1) return a.index;
  return F.coords(a);
}

Poly poly_from_json(const FieldPtr& f, const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected a coefficient array");
  std::vector<Fq> c;
  for (std::size_t i = 0; i < j.size(); ++i) c.push_back(fq_from_json(*f, j[i], where + "[" + std::to_string(i) + "]"));
  return Poly(f, std::move(c));
}

json poly_to_json(const Poly& p) {
  json a = json::array();
  for (auto c : p.coeffs()) a.push_back(fq_to_json(*p.field(), c));
  return a;
}

RatFunc ratfunc_from_json(const FieldPtr& f, const json& j, const std::string& where) {
  if (j.is_array()) return RatFunc(poly_from_json(f, j, where));
  Poly num = poly_from_json(f, field_of(j, "num", where), where + ".num");
  Poly den = j.contains("den") ? poly_from_json(f, j.at("den"), where + ".den") : Poly::one(f);
  if (den.is_zero()) fail(where + ".den", "zero denominator");
  return RatFunc(std::move(num), std::move(den));
}

json ratfunc_to_json(const RatFunc& r) { return json{{"num", poly_to_json(r.num())}, {"den", poly_to_json(r.den())}}; }

Laurent laurent_from_json(const FieldPtr& f, const json& j, const std::string& where) {
  if (j.is_array()) return Laurent::from_poly(poly_from_json(f, j, where));
  if (!j.is_object()) fail(where, "expected a Laurent encoding");
  if (j.contains("ratfunc")) return Laurent::exact(ratfunc_from_json(f, j.at("ratfunc"), where + ".ratfunc"));
  if (j.contains("num")) return Laurent::exact(ratfunc_from_json(f, j, where));
  const std::int64_t val = int_of(field_of(j, "val", where), where + ".val");
  const json& cj = field_of(j, "coeffs", where);
  if (!cj.is_array()) fail(where + ".coeffs", "expected an array");
  std::vector<Fq> c;
  for (std::size_t i = 0; i < cj.size(); ++i)
    c.push_back(fq_from_json(*f, cj[i], where + ".coeffs[" + std::to_string(i) + "]"));
  const std::int64_t prec = j.contains("prec") ? int_of(j.at("prec"), where + ".prec")
                                               : static_cast<std::int64_t>(c.size());
  if (prec < 0) fail(where + ".prec", "negative precision");
  return Laurent::truncated(f, val, std::move(c), prec);
}

json laurent_to_json(const Laurent& x) {
  if (x.is_exact()) return json{{"ratfunc", ratfunc_to_json(*x.backing())}};
  const std::int64_t val = x.val_lower_bound(), known = x.known_bound();
  json c = json::array();
  for (auto a : x.window(val, known)) c.push_back(fq_to_json(*x.field(), a));
  return json{{"val", val}, {"coeffs", c}, {"prec", known - val}};
}

LaurentMatrix matrix_from_json(const json& j) {
  FieldPtr f = field_from_json(field_of(j, "field", "matrix"), "matrix.field");
  const std::int64_t m = int_of(field_of(j, "m", "matrix"), "matrix.m");
  const std::int64_t n = int_of(field_of(j, "n", "matrix"), "matrix.n");
  if (m < 1 || n < 1) fail("matrix", "dimensions must be positive");
  const json& e = field_of(j, "entries", "matrix");
  if (!e.is_array() || e.size() != static_cast<std::size_t>(m * n))
    fail("matrix.entries", "expected " + std::to_string(m * n) + " entries");
  LaurentMatrix A(f, static_cast<std::size_t>(m), static_cast<std::size_t>(n));
  for (std::size_t k = 0; k < e.size(); ++k)
    A.at(k / static_cast<std::size_t>(n), k % static_cast<std::size_t>(n)) =
        laurent_from_json(f, e[k], "matrix.entries[" + std::to_string(k) + "]");
  return A;
}

json matrix_to_json(const LaurentMatrix& A) {
  json e = json::array();
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) e.push_back(laurent_to_json(A.at(i, j)));
  return json{{"field", field_to_json(*A.field())}, {"m", A.rows()}, {"n", A.cols()}, {"entries", e}};
}

WeightedNormContext weights_from_json(const json& j) {
  auto vec = [&](const char* key) {
    const json& a = field_of(j, key, "weights");
    if (!a.is_array()) fail(std::string("weights.") + key, "expected an array");
    std::vector<std::int64_t> v;
    for (std::size_t i = 0; i < a.size(); ++i)
      v.push_back(int_of(a[i], std::string("weights.") + key + "[" + std::to_string(i) + "]"));
    return v;
  };
  WeightedNormContext c(vec("r"), vec("s"));
  c.validate();
  return c;
}

json weights_to_json(const WeightedNormContext& c) { return json{{"r", c.r}, {"s", c.s}}; }

VecKv vector_from_json(const FieldPtr& f, const json& j, const std::string& key) {
  const json& a = j.is_array() ? j : field_of(j, key.c_str(), key);
  if (!a.is_array()) fail(key, "expected an array");
  VecKv v;
  for (std::size_t i = 0; i < a.size(); ++i) v.push_back(laurent_from_json(f, a[i], key + "[" + std::to_string(i) + "]"));
  return v;
}

json polyvec_to_json(const PolyVec& v) {
  json a = json::array();
  for (const auto& p : v) a.push_back(poly_to_json(p));
  return a;
}

PolyVec polyvec_from_json(const FieldPtr& f, const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of polynomials");
  PolyVec v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(poly_from_json(f, j[i], where + "[" + std::to_string(i) + "]"));
  return v;
}

LogVal logval_from_json(const json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a log value string");
  try {
    return LogVal::parse(j.get<std::string>());
  } catch (const std::exception&) {
    fail(where, "malformed log value");
  }
}

}  // namespace ffapprox::io
