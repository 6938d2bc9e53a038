#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <type_traits>

#include "pjlab/errors.hpp"

namespace pjlab {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

template <class R>
inline constexpr bool kExact = std::is_same_v<R, Rat>;

// Parses "a/b", integer, or decimal/scientific notation into an exact rational.
Rat parse_rational(const std::string& s);

// "a/b" (or just "a" when integral).
std::string rat_string(const Rat& q);

double to_double(const Rat& q);
inline double to_double(double x) { return x; }

// q^e for integer e (e < 0 allowed, q != 0).
Rat rat_pow(const Rat& q, long long e);

// 2^e as an exact rational.
Rat pow2(long long e);

// Bits needed to write numerator and denominator.
std::size_t bit_size(const Rat& q);

std::size_t bit_size(const Int& v);

inline Rat abs_val(const Rat& q) { return q < 0 ? Rat(-q) : q; }
inline double abs_val(double x) { return x < 0 ? -x : x; }

template <class R>
R scalar_cast(const Rat& q) {
  if constexpr (kExact<R>) {
    return q;
  } else {
    return to_double(q);
  }
}

template <class R>
R parse_scalar(const std::string& s) {
  return scalar_cast<R>(parse_rational(s));
}

// sign * sqrt(square); the exact-arithmetic carrier for p-biased basis values,
// which are square roots of rationals.
struct SqrtRat {
  int sign = 0;   // -1, 0, +1
  Rat square = 0; // >= 0; zero iff sign == 0

  static SqrtRat from_rational(const Rat& q) {
    SqrtRat r;
    if (q > 0) { r.sign = 1; r.square = q * q; }
    else if (q < 0) { r.sign = -1; r.square = q * q; }
    return r;
  }
  static SqrtRat sqrt_of(const Rat& q, int sign = 1) {
    require(q >= 0, Errc::DomainError, "sqrt of negative rational");
    SqrtRat r;
    if (q != 0) { r.sign = sign >= 0 ? 1 : -1; r.square = q; }
    return r;
  }

  SqrtRat operator*(const SqrtRat& o) const {
    SqrtRat r;
    r.sign = sign * o.sign;
    if (r.sign != 0) r.square = square * o.square;
    return r;
  }
  SqrtRat operator-() const {
    SqrtRat r{-sign, square};
    return r;
  }
  bool operator==(const SqrtRat& o) const { return sign == o.sign && (sign == 0 || square == o.square); }

  // value equality against a rational, decided exactly
  bool equals_rational(const Rat& q) const {
    if (sign == 0) return q == 0;
    if ((sign > 0) != (q > 0)) return false;
    return square == q * q;
  }
  // |value| <= |q|
  bool abs_le(const Rat& q) const { return square <= q * q; }

  double value() const { return sign * std::sqrt(to_double(square)); }

  // Exact rational value when square is a perfect square of a rational.
  std::optional<Rat> as_rational() const;

  std::string str() const;
};

}  // namespace pjlab
