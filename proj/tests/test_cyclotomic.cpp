#include <doctest.h>

#include <cmath>
#include <random>

#include "fsig/approx.hpp"
#include "fsig/cyclotomic.hpp"

using namespace fsig;

namespace {

CycloNumber rational_cyclo(unsigned n, long num, long den = 1) {
  return CycloNumber::from(n, make_rational(Integer(num), Integer(den)));
}

// Independent summation used to check the closed form.
CycloNumber naive_geometric_sum(const CycloNumber& theta, unsigned long q) {
  CycloNumber acc = CycloNumber::zero(theta.order);
  CycloNumber pow = CycloNumber::one(theta.order);
  for (unsigned long t = 0; t < q; ++t) {
    acc = acc + pow;
    pow = pow * theta;
  }
  return acc;
}

CycloNumber random_cyclo(unsigned n, std::mt19937& rng) {
  CycloNumber a = CycloNumber::zero(n);
  std::uniform_int_distribution<long> num(-6, 6);
  std::uniform_int_distribution<long> den(1, 4);
  for (auto& coef : a.c) coef = make_rational(Integer(num(rng)), Integer(den(rng)));
  return a;
}

}  // namespace

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_polynomial(1) == std::vector<Integer>{-1, 1});
  CHECK(cyclotomic_polynomial(4) == std::vector<Integer>{1, 0, 1});
  CHECK(cyclotomic_polynomial(12) == std::vector<Integer>{1, 0, -1, 0, 1});

  // prod_{d|n} Phi_d = x^n - 1, checked by direct multiplication.
  for (unsigned n : {2u, 6u, 8u, 15u, 24u, 36u}) {
    std::vector<Integer> prod{1};
    for (unsigned d : divisors(n)) {
      auto phi = cyclotomic_polynomial(d);
      std::vector<Integer> next(prod.size() + phi.size() - 1, Integer(0));
      for (size_t i = 0; i < prod.size(); ++i)
        for (size_t j = 0; j < phi.size(); ++j) next[i + j] += prod[i] * phi[j];
      prod = next;
    }
    REQUIRE(prod.size() == n + 1);
    CHECK(prod[0] == -1);
    CHECK(prod[n] == 1);
    for (size_t k = 1; k < n; ++k) CHECK(prod[k] == 0);
    CHECK(cyclotomic_polynomial(n).size() == euler_phi(n) + 1);
  }
}

TEST_CASE("zeta constructor") {
  CHECK(zeta(4, 2) == rational_cyclo(4, -1));
  CHECK(zeta(4, 0) == CycloNumber::one(4));
  // zeta(3,2) = -1 - zeta_3
  CycloNumber z32 = zeta(3, 2);
  CHECK(z32.c[0] == -1);
  CHECK(z32.c[1] == -1);
  // zeta(6,2) = zeta_6 - 1
  CycloNumber z62 = zeta(6, 2);
  CHECK(z62.c[0] == -1);
  CHECK(z62.c[1] == 1);
  // multiplicative order of zeta_n^k is n/gcd(n,k)
  CHECK(root_of_unity_order(zeta(12, 8)) == 3);
  CHECK(root_of_unity_order(zeta(12, 1)) == 12);
  CHECK(root_of_unity_order(zeta(5, -1)) == 5);
}

TEST_CASE("ring operations") {
  CycloNumber a = CycloNumber::one(3) + zeta(3, 1);   // 1 + z3
  CycloNumber b = CycloNumber::one(3) + zeta(3, 2);   // 1 + z3^2
  CHECK(a * b == CycloNumber::one(3));
  CHECK((a - a).is_zero());
  CHECK(CycloNumber::one(5) * zeta(5, 1) == zeta(5, 1));
  CHECK_THROWS_WITH_AS((void)(zeta(3, 1) + zeta(5, 1)), "incompatible cyclotomic orders", Error);
}

TEST_CASE("ring axioms on random samples") {
  std::mt19937 rng(20240811);
  for (unsigned n : {1u, 4u, 7u, 12u}) {
    for (int trial = 0; trial < 25; ++trial) {
      CycloNumber a = random_cyclo(n, rng), b = random_cyclo(n, rng), c = random_cyclo(n, rng);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      CHECK(a + b == b + a);
    }
  }
}

TEST_CASE("inversion") {
  CHECK(invert(zeta(3, 1)) == zeta(3, 2));
  CHECK(invert(rational_cyclo(7, 2)) == rational_cyclo(7, 1, 2));
  // 1/(1+i) = (1-i)/2
  CycloNumber inv = invert(CycloNumber::one(4) + zeta(4, 1));
  CHECK(inv.c[0] == make_rational(1, 2));
  CHECK(inv.c[1] == make_rational(-1, 2));
  CHECK_THROWS_WITH_AS((void)invert(CycloNumber::zero(6)), "division by zero", Error);

  std::mt19937 rng(7);
  for (unsigned n : {5u, 8u, 9u}) {
    for (int trial = 0; trial < 20; ++trial) {
      CycloNumber a = random_cyclo(n, rng);
      if (a.is_zero()) continue;
      CHECK(a * invert(a) == CycloNumber::one(n));
    }
  }
}

TEST_CASE("galois action") {
  CHECK(galois(zeta(5, 1), -1) == zeta(5, 4));
  CycloNumber x = rational_cyclo(3, 1) + rational_cyclo(3, 2) * zeta(3, 1);  // 1+2*z3
  CHECK(galois(x, 1) == x);
  CycloNumber gx = galois(x, 2);  // 1+2*z3^2 = -1-2*z3
  CHECK(gx.c[0] == -1);
  CHECK(gx.c[1] == -2);
  CHECK_THROWS_WITH_AS((void)galois(zeta(6, 1), 3), "not a Galois exponent", Error);

  std::mt19937 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    CycloNumber a = random_cyclo(12, rng), b = random_cyclo(12, rng);
    for (long t : {5L, 7L, 11L}) {
      CHECK(galois(a + b, t) == galois(a, t) + galois(b, t));
      CHECK(galois(a * b, t) == galois(a, t) * galois(b, t));
    }
    CHECK(galois(galois(a, 5), 7) == galois(a, 35 % 12));
    CHECK(conj(conj(a)) == a);
  }
}

TEST_CASE("embedding") {
  CHECK(embed(rational_cyclo(2, -1), 4) == rational_cyclo(4, -1));
  CycloNumber e = embed(zeta(3, 1), 6);  // zeta_6^2 = zeta_6 - 1
  CHECK(e.c[0] == -1);
  CHECK(e.c[1] == 1);
  CHECK(embed(rational_cyclo(1, 5, 3), 24) == rational_cyclo(24, 5, 3));
  CHECK_THROWS_AS((void)embed(zeta(4, 1), 6), Error);

  std::mt19937 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    CycloNumber a = random_cyclo(6, rng), b = random_cyclo(6, rng);
    CHECK(embed(a + b, 24) == embed(a, 24) + embed(b, 24));
    CHECK(embed(a * b, 24) == embed(a, 24) * embed(b, 24));
    if (a != b) CHECK(embed(a, 24) != embed(b, 24));  // injectivity
  }
}

TEST_CASE("as_rational") {
  CHECK(as_rational(CycloNumber::one(3) + zeta(3, 1) + zeta(3, 2)) == Rational(0));
  CHECK(!as_rational(zeta(5, 1)));
  CycloNumber prod = (CycloNumber::one(3) + zeta(3, 1)) * (CycloNumber::one(3) + zeta(3, 2));
  CHECK(as_rational(prod) == Rational(1));
}

TEST_CASE("geometric sums") {
  CHECK(geometric_sum(CycloNumber::one(7), 5) == rational_cyclo(7, 5));
  CHECK(geometric_sum(rational_cyclo(2, -1), 3) == rational_cyclo(2, 1));
  CHECK(geometric_sum(zeta(3, 1), 4) == CycloNumber::one(3));
  CHECK_THROWS_WITH_AS((void)geometric_sum(rational_cyclo(4, 2), 3), "not a root of unity", Error);

  // Exhaustive small-case agreement with the naive sum.
  for (unsigned m = 1; m <= 24; ++m) {
    for (unsigned k = 0; k < m; ++k) {
      CycloNumber theta = zeta(m, (long)k);
      CycloNumber acc = CycloNumber::zero(m);
      CycloNumber pow = CycloNumber::one(m);
      for (unsigned long q = 1; q <= 64; ++q) {
        acc = acc + pow;
        pow = pow * theta;
        REQUIRE(geometric_sum(theta, Integer((unsigned long)q)) == acc);
      }
    }
  }
}

TEST_CASE("large geometric sum reduces by exponent") {
  Integer big;
  mpz_ui_pow_ui(big.get_mpz_t(), 13, 12);  // 13^12 mod 8 = 1
  CHECK(geometric_sum(zeta(8, 1), big) == naive_geometric_sum(zeta(8, 1), 1));
}

TEST_CASE("complex enclosures") {
  auto inside = [](const ComplexBox& box, double re, double im) {
    return std::hypot(box.re - re, box.im - im) <= box.radius + 1e-13;
  };
  ComplexBox minus_one = approx_complex(rational_cyclo(6, -1));
  CHECK(inside(minus_one, -1.0, 0.0));
  CHECK(minus_one.radius < 1e-12);
  ComplexBox i_box = approx_complex(zeta(4, 1));
  CHECK(inside(i_box, 0.0, 1.0));
  // |1 - zeta_3| = sqrt(3)
  ComplexBox d = approx_complex(CycloNumber::one(3) - zeta(3, 1));
  CHECK(std::abs(std::hypot(d.re, d.im) - std::sqrt(3.0)) <= d.radius + 1e-13);
  // roots of unity lie on the unit circle
  for (unsigned n : {5u, 7u, 16u, 24u}) {
    for (unsigned k = 0; k < n; ++k) {
      ComplexBox b = approx_complex(zeta(n, (long)k));
      CHECK(std::abs(std::hypot(b.re, b.im) - 1.0) <= b.radius + 1e-13);
    }
  }
}

TEST_CASE("two_over_abs_upper certificates") {
  // |1-(-1)| = 2 -> exactly 1
  CHECK(two_over_abs_upper(CycloNumber::one(2) - rational_cyclo(2, -1)) == Rational(1));
  // |1-zeta_6| = 1 -> exactly 2
  CHECK(two_over_abs_upper(CycloNumber::one(6) - zeta(6, 1)) == Rational(2));
  // |1-zeta_3| = sqrt(3): bound must be >= 2/sqrt(3) and tight to ~1e-30
  Rational b = two_over_abs_upper(CycloNumber::one(3) - zeta(3, 1));
  double bd = b.get_d();
  double exact = 2.0 / std::sqrt(3.0);
  CHECK(bd >= exact - 1e-12);
  CHECK(bd <= exact + 1e-12);
  // upper-bound property on assorted roots of unity
  for (unsigned n : {4u, 5u, 8u, 12u}) {
    for (unsigned k = 1; k < n; ++k) {
      CycloNumber z = CycloNumber::one(n) - zeta(n, (long)k);
      double true_abs = std::hypot(1.0 - std::cos(2 * M_PI * k / n), std::sin(2 * M_PI * k / n));
      Rational ub = two_over_abs_upper(z);
      CHECK(ub.get_d() >= 2.0 / true_abs - 1e-9);
    }
  }
}
