#pragma once

#include <compare>
#include <string>

#include "ffapprox/rational.hpp"

namespace ffapprox {

// log_q of an absolute value or quasinorm: an exact rational or -infinity.
class LogVal {
 public:
  LogVal() : neg_inf_(true), value_(0) {}
  LogVal(Rational v) : neg_inf_(false), value_(v) {}  // NOLINT
  LogVal(std::int64_t v) : neg_inf_(false), value_(v) {}  // NOLINT
  LogVal(int v) : neg_inf_(false), value_(v) {}  // NOLINT

  static LogVal neg_inf() { return LogVal(); }

  bool is_neg_inf() const { return neg_inf_; }
  bool is_finite() const { return !neg_inf_; }
  // Throws std::logic_error for NEG_INF.
  const Rational& value() const;

  friend bool operator==(const LogVal& a, const LogVal& b) {
    if (a.neg_inf_ || b.neg_inf_) return a.neg_inf_ == b.neg_inf_;
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const LogVal& a, const LogVal& b) {
    if (a.neg_inf_ && b.neg_inf_) return std::strong_ordering::equal;
    if (a.neg_inf_) return std::strong_ordering::less;
    if (b.neg_inf_) return std::strong_ordering::greater;
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (a.value_ > b.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  // Multiplying the underlying quantities; NEG_INF absorbs.
  friend LogVal operator+(const LogVal& a, const LogVal& b) {
    if (a.neg_inf_ || b.neg_inf_) return neg_inf();
    return LogVal(a.value_ + b.value_);
  }
  // Scaling the exponent by a positive rational (a power of the quantity).
  LogVal scaled(const Rational& c) const {
    return neg_inf_ ? neg_inf() : LogVal(value_ * c);
  }

  std::string str() const;
  static LogVal parse(const std::string& text);

 private:
  bool neg_inf_;
  Rational value_;
};

inline LogVal max(const LogVal& a, const LogVal& b) { return a < b ? b : a; }
inline LogVal min(const LogVal& a, const LogVal& b) { return b < a ? b : a; }

}  // namespace ffapprox
