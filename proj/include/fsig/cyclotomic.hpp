#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_n) with rational coefficients.
// A value is stored as a polynomial in zeta_n reduced modulo the n-th
// cyclotomic polynomial, so representations are canonical and equality is
// exact coefficient comparison.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "fsig/error.hpp"

namespace fsig {

using Integer = mpz_class;
using Rational = mpq_class;

Rational make_rational(const Integer& num, const Integer& den);
Rational parse_rational(const std::string& s);  // "num/den" or "num"
std::string rational_str(const Rational& q);    // always "num/den"
bool is_integer(const Rational& q);

unsigned euler_phi(unsigned n);
std::vector<unsigned> divisors(unsigned n);
unsigned long mod_pow(unsigned long base, unsigned long exp, unsigned long mod);
// Multiplicative order of a mod m; requires gcd(a, m) = 1. Order mod 1 is 1.
unsigned multiplicative_order(unsigned long a, unsigned long m);
unsigned long gcd_ul(unsigned long a, unsigned long b);
unsigned long lcm_ul(unsigned long a, unsigned long b);

// Coefficients of Phi_n, index = exponent; monic of degree phi(n).
std::vector<Integer> cyclotomic_polynomial(unsigned n);

struct CycloNumber {
  unsigned order = 1;
  std::vector<Rational> c;  // length phi(order), c[k] multiplies zeta^k

  CycloNumber() : c(1, Rational(0)) {}

  static CycloNumber zero(unsigned n);
  static CycloNumber one(unsigned n);
  static CycloNumber from(unsigned n, const Rational& q);

  bool is_zero() const;
  bool operator==(const CycloNumber& o) const { return order == o.order && c == o.c; }
  bool operator!=(const CycloNumber& o) const { return !(*this == o); }
};

// zeta_n^k (k taken mod n).
CycloNumber zeta(unsigned n, long k);

CycloNumber operator+(const CycloNumber& a, const CycloNumber& b);
CycloNumber operator-(const CycloNumber& a, const CycloNumber& b);
CycloNumber operator-(const CycloNumber& a);
CycloNumber operator*(const CycloNumber& a, const CycloNumber& b);
CycloNumber operator*(const Rational& s, const CycloNumber& a);

CycloNumber invert(const CycloNumber& a);
// Ring automorphism zeta_n -> zeta_n^t; requires gcd(t, n) = 1.
CycloNumber galois(const CycloNumber& a, long t);
inline CycloNumber conj(const CycloNumber& a) { return galois(a, -1); }
// Rewrite at a larger order (a.order must divide new_order).
CycloNumber embed(const CycloNumber& a, unsigned new_order);
std::optional<Rational> as_rational(const CycloNumber& a);

// Multiplicative order of a root of unity; throws if the value is not one.
unsigned root_of_unity_order(const CycloNumber& a);
CycloNumber cyclo_pow(const CycloNumber& a, unsigned long e);

// 1 + theta + ... + theta^(q-1); theta must be a root of unity.
CycloNumber geometric_sum(const CycloNumber& theta, const Integer& q);

std::string to_string(const CycloNumber& a);

}  // namespace fsig
