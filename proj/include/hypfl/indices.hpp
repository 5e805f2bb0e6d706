#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <limits>
#include <string>

#include "hypfl/errors.hpp"

namespace hypfl {

using Rational = boost::rational<std::int64_t>;

/// Exact rational from text: "inf" is rejected here, "3/2", "-0.25", "1e-1" accepted.
Rational parse_rational(const std::string& text);

/// Closest rational with denominator <= 10^9 (continued fractions). 0.1 -> 1/10.
Rational rational_from_double(double v);

inline double to_double(const Rational& r) { return double(r.numerator()) / double(r.denominator()); }

std::string to_string(const Rational& r);

/// Lebesgue-type exponent in (0, ∞]. Arithmetic follows 1/∞ = 0.
class ExtendedIndex {
 public:
  ExtendedIndex() = default;
  ExtendedIndex(std::int64_t v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  explicit ExtendedIndex(const Rational& v) : value_(v) {}

  static ExtendedIndex infinity() {
    ExtendedIndex e;
    e.infinite_ = true;
    return e;
  }
  static ExtendedIndex parse(const std::string& text);
  static ExtendedIndex from_double(double v);

  bool is_infinite() const { return infinite_; }
  const Rational& value() const { return value_; }
  Rational reciprocal() const { return infinite_ ? Rational(0) : Rational(1) / value_; }
  double to_double() const { return infinite_ ? std::numeric_limits<double>::infinity() : hypfl::to_double(value_); }

  /// Hölder conjugate, with p' = ∞ for p <= 1.
  ExtendedIndex conjugate() const;

  bool positive() const { return infinite_ || value_ > Rational(0); }

  friend bool operator==(const ExtendedIndex& a, const ExtendedIndex& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend bool operator<(const ExtendedIndex& a, const ExtendedIndex& b) {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.value_ < b.value_;
  }
  friend bool operator<=(const ExtendedIndex& a, const ExtendedIndex& b) { return !(b < a); }
  friend bool operator>(const ExtendedIndex& a, const ExtendedIndex& b) { return b < a; }
  friend bool operator>=(const ExtendedIndex& a, const ExtendedIndex& b) { return !(a < b); }

  std::string str() const;

 private:
  bool infinite_ = false;
  Rational value_{1};
};

/// (p, q, r, s, d) as used by the embedding predicates.
struct IndexTuple {
  ExtendedIndex p{2}, q{2}, r{2};
  Rational s{0};
  int d = 1;

  void validate() const;
};

}  // namespace hypfl
