#pragma once

// Coefficient fields. A field policy is a stateless struct bundling the
// element type with its arithmetic; the characteristic is passed in
// explicitly so that residues stay a plain 32-bit word.

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "chromatic/errors.hpp"

namespace chromatic {

struct Rationals {
  using value_type = mpq_class;
  static constexpr bool modular = false;
  static constexpr const char* name = "Q";

  static value_type from_int(long long n, std::uint32_t /*p*/) {
    return value_type(static_cast<long>(n));
  }
  static value_type from_rational(const mpq_class& q, std::uint32_t /*p*/) { return q; }
  static mpq_class to_rational(const value_type& a, std::uint32_t /*p*/) { return a; }
  static bool is_zero(const value_type& a) { return sgn(a) == 0; }
  static bool is_one(const value_type& a) { return a == 1; }
  static value_type add(const value_type& a, const value_type& b, std::uint32_t) { return a + b; }
  static value_type sub(const value_type& a, const value_type& b, std::uint32_t) { return a - b; }
  static value_type mul(const value_type& a, const value_type& b, std::uint32_t) { return a * b; }
  static value_type neg(const value_type& a, std::uint32_t) { return -a; }
  static value_type inv(const value_type& a, std::uint32_t) {
    if (is_zero(a)) throw MathError("division by zero in Q");
    return 1 / a;
  }
  static std::string to_string(const value_type& a) { return a.get_str(); }
  static value_type parse(const std::string& s, std::uint32_t) {
    value_type q(s);
    q.canonicalize();
    return q;
  }
};

struct PrimeField {
  using value_type = std::uint32_t;
  static constexpr bool modular = true;
  static constexpr const char* name = "F_p";

  static value_type from_int(long long n, std::uint32_t p) {
    long long r = n % static_cast<long long>(p);
    if (r < 0) r += p;
    return static_cast<value_type>(r);
  }
  /// Reduction Z_(p) -> F_p; throws if p divides the denominator.
  static value_type from_rational(const mpq_class& q, std::uint32_t p) {
    mpz_class num = q.get_num() % p;
    mpz_class den = q.get_den() % p;
    if (den == 0) throw MathError("coefficient " + q.get_str() + " is not p-local");
    if (num < 0) num += p;
    return mul(static_cast<value_type>(num.get_ui()), inv(static_cast<value_type>(den.get_ui()), p), p);
  }
  static mpq_class to_rational(const value_type& a, std::uint32_t) { return mpq_class(a); }
  static bool is_zero(value_type a) { return a == 0; }
  static bool is_one(value_type a) { return a == 1; }
  static value_type add(value_type a, value_type b, std::uint32_t p) {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<value_type>(s >= p ? s - p : s);
  }
  static value_type sub(value_type a, value_type b, std::uint32_t p) {
    return a >= b ? a - b : static_cast<value_type>(std::uint64_t{a} + p - b);
  }
  static value_type mul(value_type a, value_type b, std::uint32_t p) {
    return static_cast<value_type>(std::uint64_t{a} * b % p);
  }
  static value_type neg(value_type a, std::uint32_t p) { return a == 0 ? 0 : p - a; }
  static value_type inv(value_type a, std::uint32_t p) {
    if (a == 0) throw MathError("division by zero in F_p");
    value_type result = 1;
    value_type base = a;
    for (std::uint32_t e = p - 2; e; e >>= 1) {
      if (e & 1u) result = mul(result, base, p);
      base = mul(base, base, p);
    }
    return result;
  }
  static std::string to_string(value_type a) { return std::to_string(a); }
  static value_type parse(const std::string& s, std::uint32_t p) {
    return from_rational(mpq_class(s), p);
  }
};

/// Primality test for the small primes this library accepts.
bool is_prime(std::uint64_t n);

/// Throws PreconditionError unless p is an odd prime.
void require_odd_prime(std::uint64_t p);

/// p^e as a 64-bit integer; throws on overflow.
std::int64_t ipow(std::int64_t p, int e);

}  // namespace chromatic
