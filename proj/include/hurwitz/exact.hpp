#pragma once

#include <algorithm>
#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace hurwitz {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt factorial(std::uint64_t n) {
  BigInt r = 1;
  for (std::uint64_t i = 2; i <= n; ++i) r *= i;
  return r;
}

// C(n, k) for n, k >= 0; zero when k > n.
inline BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

// C(x, k) for an arbitrary rational x, as used by the binomial basis.
inline Rational binomial_rational(const Rational& x, std::uint64_t k) {
  Rational r = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    r *= (x - Rational(i));
    r /= Rational(i + 1);
  }
  return r;
}

inline BigInt pow_int(const BigInt& base, std::uint64_t e) {
  BigInt r = 1;
  for (std::uint64_t i = 0; i < e; ++i) r *= base;
  return r;
}

inline std::string to_string(const BigInt& v) { return v.str(); }

inline std::string to_string(const Rational& v) {
  auto num = boost::multiprecision::numerator(v);
  auto den = boost::multiprecision::denominator(v);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline bool is_integer(const Rational& v) {
  return boost::multiprecision::denominator(v) == 1;
}

}  // namespace hurwitz
