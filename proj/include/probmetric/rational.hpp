#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

namespace probmetric {

/// Arbitrary precision integer.
using BigInt = boost::multiprecision::mpz_int;

/// Canonical reduced rational (denominator > 0, gcd(num, den) = 1).
using Rational = boost::multiprecision::mpq_rational;

inline BigInt numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

/// Parses `p`, `-p` or `p/q` with decimal integers. Throws std::invalid_argument.
inline Rational parse_rational(std::string_view text) {
  auto is_integer = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
  };
  auto strip_plus = [](std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    return std::string(s);
  };

  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  if (!is_integer(num)) throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  BigInt n(strip_plus(num));
  if (slash == std::string_view::npos) return Rational(n);

  std::string_view den = text.substr(slash + 1);
  if (!is_integer(den) || den.front() == '-' || den.front() == '+') {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  BigInt d(std::string{den});
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(n, d);
}

/// `3/4`, `1`, `0`.
inline std::string to_string(const Rational& r) { return r.str(); }

}  // namespace probmetric
