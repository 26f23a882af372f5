#pragma once

// Exact scalar types and conversions shared by every exact pipeline.

#include <gmpxx.h>

#include <cctype>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace egteq {

using Integer = mpz_class;
using Rational = mpq_class;

/// Thrown when a textual number cannot be parsed exactly.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline int sign(const Rational& v) { return sgn(v); }
inline int sign(const Integer& v) { return sgn(v); }
inline int sign(double v) { return (v > 0.0) - (v < 0.0); }

/// num / den in lowest terms.
inline Rational ratio(long num, long den) {
  if (den == 0) throw std::domain_error("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline double to_double(const Rational& v) { return v.get_d(); }
inline double to_double(double v) { return v; }

/// Every finite double is a binary fraction, so the embedding is exact.
inline Rational exact_from_double(double v) {
  if (!std::isfinite(v)) {
    throw std::domain_error("cannot embed non-finite value into the rationals");
  }
  Rational r;
  mpq_set_d(r.get_mpq_t(), v);
  return r;
}

inline std::string to_string(const Rational& v) { return v.get_str(); }

/// Parses "p/q", integers, and decimals with an optional exponent
/// ("-0.05", "1.5e-3") into the exact rational they denote.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&] { throw ParseError("not a number: '" + std::string(text) + "'"); };
  std::size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  std::string s(text.substr(b, e - b));
  if (s.empty()) fail();

  if (auto slash = s.find('/'); slash != std::string::npos) {
    Rational num = parse_rational(s.substr(0, slash));
    Rational den = parse_rational(s.substr(slash + 1));
    if (den == 0) fail();
    Rational r = num / den;
    return r;
  }

  std::size_t i = 0;
  bool negative = false;
  if (s[i] == '+' || s[i] == '-') {
    negative = s[i] == '-';
    ++i;
  }
  std::string digits;
  long long frac_digits = 0;
  bool seen_point = false;
  bool any_digit = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      any_digit = true;
      if (seen_point) ++frac_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) fail();
  long long exponent = 0;
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') fail();
    ++i;
    std::string exp_text = s.substr(i);
    if (exp_text.empty()) fail();
    std::size_t used = 0;
    try {
      exponent = std::stoll(exp_text, &used);
    } catch (const std::exception&) {
      fail();
    }
    if (used != exp_text.size() || exponent > 100000 || exponent < -100000) fail();
  }
  Integer mantissa(digits, 10);
  if (negative) mantissa = -mantissa;
  long long shift = exponent - frac_digits;
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  Rational r = shift >= 0 ? Rational(mantissa * scale) : Rational(mantissa, scale);
  r.canonicalize();
  return r;
}

/// Binomial coefficient with the convention C(n, k) = 0 outside 0 <= k <= n.
inline Integer binomial(long n, long k) {
  Integer r = 0;
  if (n < 0 || k < 0 || k > n) return r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

inline double binomial_d(long n, long k) { return binomial(n, k).get_d(); }

}  // namespace egteq
