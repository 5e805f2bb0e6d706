#include "hypfl/indices.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace hypfl {

namespace {

std::int64_t parse_int(const std::string& digits, const std::string& whole) {
  if (digits.empty()) throw ValidationError("malformed number '" + whole + "'");
  std::int64_t v = 0;
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) throw ValidationError("malformed number '" + whole + "'");
    if (v > (std::numeric_limits<std::int64_t>::max() - 9) / 10)
      throw ValidationError("number '" + whole + "' is too long for exact arithmetic");
    v = v * 10 + (c - '0');
  }
  return v;
}

Rational pow10(int e) {
  std::int64_t v = 1;
  for (int i = 0; i < e; ++i) v *= 10;
  return Rational(v);
}

Rational parse_decimal(const std::string& text) {
  std::string body = text;
  bool negative = false;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
    negative = body[0] == '-';
    body = body.substr(1);
  }
  int exponent = 0;
  if (auto e = body.find_first_of("eE"); e != std::string::npos) {
    const std::string exp_text = body.substr(e + 1);
    char* end = nullptr;
    const long ev = std::strtol(exp_text.c_str(), &end, 10);
    if (exp_text.empty() || *end != '\0' || std::labs(ev) > 15) throw ValidationError("malformed number '" + text + "'");
    exponent = int(ev);
    body = body.substr(0, e);
  }
  std::string int_part = body, frac_part;
  if (auto dot = body.find('.'); dot != std::string::npos) {
    int_part = body.substr(0, dot);
    frac_part = body.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) throw ValidationError("malformed number '" + text + "'");
  if (frac_part.size() > 15) throw ValidationError("number '" + text + "' has too many decimals for exact arithmetic");
  const std::int64_t ip = int_part.empty() ? 0 : parse_int(int_part, text);
  const std::int64_t fp = frac_part.empty() ? 0 : parse_int(frac_part, text);
  Rational v = Rational(ip) + Rational(fp) / pow10(int(frac_part.size()));
  if (exponent > 0) v *= pow10(exponent);
  if (exponent < 0) v /= pow10(-exponent);
  return negative ? -v : v;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  if (auto slash = text.find('/'); slash != std::string::npos) {
    const Rational num = parse_decimal(text.substr(0, slash));
    const Rational den = parse_decimal(text.substr(slash + 1));
    if (den == Rational(0)) throw ValidationError("zero denominator in '" + text + "'");
    return num / den;
  }
  return parse_decimal(text);
}

Rational rational_from_double(double v) {
  if (!std::isfinite(v)) throw ValidationError("non-finite value where a real number is required");
  const double limit = 1e9;
  const bool negative = v < 0;
  double x = std::abs(v);
  // Convergents h/k of the continued fraction of x.
  std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double rem = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double a = std::floor(rem);
    if (a > 9e15) break;
    const auto ai = std::int64_t(a);
    const std::int64_t h2 = ai * h1 + h0, k2 = ai * k1 + k0;
    if (double(k2) > limit || double(h2) > 9e15) break;
    h0 = h1, h1 = h2, k0 = k1, k1 = k2;
    if (std::abs(double(h1) / double(k1) - x) <= 1e-15 * std::max(1.0, x)) break;
    const double frac = rem - a;
    if (frac < 1e-18) break;
    rem = 1.0 / frac;
  }
  Rational r(h1, k1 == 0 ? 1 : k1);
  return negative ? -r : r;
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

ExtendedIndex ExtendedIndex::parse(const std::string& text) {
  std::string t;
  for (char c : text) t += char(std::tolower(static_cast<unsigned char>(c)));
  if (t == "inf" || t == "infinity" || t == "+inf") return infinity();
  return ExtendedIndex(parse_rational(text));
}

ExtendedIndex ExtendedIndex::from_double(double v) {
  if (std::isinf(v) && v > 0) return infinity();
  return ExtendedIndex(rational_from_double(v));
}

ExtendedIndex ExtendedIndex::conjugate() const {
  if (infinite_) return ExtendedIndex(1);
  if (value_ <= Rational(1)) return infinity();
  return ExtendedIndex(value_ / (value_ - 1));
}

std::string ExtendedIndex::str() const { return infinite_ ? "inf" : to_string(value_); }

void IndexTuple::validate() const {
  if (!p.positive() || !q.positive() || !r.positive())
    throw ValidationError("indices p, q, r must lie in (0, inf]");
  if (d < 1) throw ValidationError("dimension d must be a positive integer");
}

}  // namespace hypfl
