#include "pjlab/rational.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cmath>

namespace pjlab {

namespace {

Int ipow10(long long e) {
  Int r = 1;
  for (long long i = 0; i < e; ++i) r *= 10;
  return r;
}

Rat parse_decimal(const std::string& s) {
  // [+-]digits[.digits][eE[+-]digits]
  std::size_t pos = 0;
  bool neg = false;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) neg = s[pos++] == '-';
  std::string intpart, fracpart;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) intpart += s[pos++];
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) fracpart += s[pos++];
  }
  long long exp10 = 0;
  if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
    ++pos;
    bool eneg = false;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) eneg = s[pos++] == '-';
    std::string digits;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) digits += s[pos++];
    require(!digits.empty(), Errc::DomainError, "bad exponent in number: " + s);
    exp10 = std::stoll(digits);
    if (eneg) exp10 = -exp10;
  }
  require(pos == s.size() && (!intpart.empty() || !fracpart.empty()), Errc::DomainError,
          "cannot parse number: " + s);
  Int num = 0;
  for (char c : (intpart + fracpart)) num = num * 10 + (c - '0');
  long long shift = exp10 - static_cast<long long>(fracpart.size());
  Rat q;
  if (shift >= 0) q = Rat(num * ipow10(shift));
  else q = Rat(num, ipow10(-shift));
  return neg ? Rat(-q) : q;
}

}  // namespace

Rat parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Rat num = parse_decimal(s.substr(0, slash));
    Rat den = parse_decimal(s.substr(slash + 1));
    require(den != 0, Errc::DomainError, "zero denominator: " + s);
    return num / den;
  }
  return parse_decimal(s);
}

std::string rat_string(const Rat& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

double to_double(const Rat& q) { return q.convert_to<double>(); }

Rat rat_pow(const Rat& q, long long e) {
  if (e == 0) return Rat(1);
  require(q != 0 || e > 0, Errc::DomainError, "0 to a negative power");
  Rat base = e > 0 ? q : Rat(1 / q);
  unsigned long long k = static_cast<unsigned long long>(e > 0 ? e : -e);
  Rat acc = 1;
  while (k) {
    if (k & 1) acc *= base;
    base *= base;
    k >>= 1;
  }
  return acc;
}

Rat pow2(long long e) { return rat_pow(Rat(2), e); }

std::size_t bit_size(const Int& v) {
  if (v == 0) return 1;
  return boost::multiprecision::msb(boost::multiprecision::abs(v)) + 1;
}

std::size_t bit_size(const Rat& q) {
  return bit_size(Int(numerator(q))) + bit_size(Int(denominator(q)));
}

std::optional<Rat> SqrtRat::as_rational() const {
  if (sign == 0) return Rat(0);
  Int num = numerator(square), den = denominator(square);
  Int rn = boost::multiprecision::sqrt(num);
  Int rd = boost::multiprecision::sqrt(den);
  if (rn * rn != num || rd * rd != den) return std::nullopt;
  Rat v(rn, rd);
  return sign > 0 ? v : Rat(-v);
}

std::string SqrtRat::str() const {
  if (auto r = as_rational()) return rat_string(*r);
  return (sign < 0 ? std::string("-sqrt(") : std::string("sqrt(")) + rat_string(square) + ")";
}

}  // namespace pjlab
