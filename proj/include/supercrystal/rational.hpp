// Exact rational and modular helpers shared by every module.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace supercrystal {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline bool is_integral(const Rational& q) { return denominator(q) == 1; }

inline std::int64_t to_int64(const Rational& q) {
  if (!is_integral(q)) {
    throw std::domain_error("rational " + q.str() + " is not an integer");
  }
  return numerator(q).convert_to<std::int64_t>();
}

/// Canonical representative of a mod p in [0, p); identity when p == 0.
constexpr std::int64_t mod_canon(std::int64_t a, std::int64_t p) {
  if (p == 0) return a;
  std::int64_t r = a % p;
  return r < 0 ? r + p : r;
}

inline std::int64_t mod_canon(const BigInt& a, std::int64_t p) {
  if (p == 0) return a.convert_to<std::int64_t>();
  BigInt r = a % p;
  if (r < 0) r += p;
  return r.convert_to<std::int64_t>();
}

/// Reduce an integral rational mod p.  Non-integral values are reduced when the
/// denominator is a unit mod p; otherwise this throws.
inline std::int64_t mod_canon(const Rational& q, std::int64_t p) {
  if (is_integral(q)) return mod_canon(numerator(q), p);
  if (p == 0) throw std::domain_error("non-integral rational has no residue over Z");
  std::int64_t den = mod_canon(denominator(q), p);
  if (den == 0) throw std::domain_error("denominator not invertible mod p");
  // Fermat inverse, p prime.
  std::int64_t inv = 1, base = den, e = p - 2;
  while (e > 0) {
    if (e & 1) inv = inv * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return mod_canon(numerator(q), p) * inv % p;
}

constexpr bool congruent(std::int64_t a, std::int64_t b, std::int64_t p) {
  return mod_canon(a - b, p) == 0;
}

constexpr int sign_of_parity(int parity) { return parity ? -1 : 1; }

}  // namespace supercrystal
