#include "ffapprox/logval.hpp"

#include <stdexcept>

#include "ffapprox/errors.hpp"

namespace ffapprox {

Rational parse_rational(const std::string& text) {
  auto parse_int = [&](const std::string& s) -> std::int64_t {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      throw InputError("not a rational: '" + text + "'");
    }
    if (used != s.size()) throw InputError("not a rational: '" + text + "'");
    return v;
  };
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_int(text));
  std::int64_t num = parse_int(text.substr(0, slash));
  std::int64_t den = parse_int(text.substr(slash + 1));
  if (den == 0) throw InputError("zero denominator in '" + text + "'");
  return Rational(num, den);
}

const Rational& LogVal::value() const {
  if (neg_inf_) throw std::logic_error("LogVal::value on neg_inf");
  return value_;
}

std::string LogVal::str() const { return neg_inf_ ? "neg_inf" : to_string(value_); }

LogVal LogVal::parse(const std::string& text) {
  if (text == "neg_inf") return neg_inf();
  return LogVal(parse_rational(text));
}

}  // namespace ffapprox
