#include "fsig/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace fsig {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) fail("division by zero");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      Rational q(Integer(s), 1);
      q.canonicalize();
      return q;
    }
    Integer num(s.substr(0, slash));
    Integer den(s.substr(slash + 1));
    if (den == 0) fail_input("rational with zero denominator: " + s);
    return make_rational(num, den);
  } catch (const std::invalid_argument&) {
    fail_input("malformed rational: " + s);
  }
}

std::string rational_str(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

unsigned euler_phi(unsigned n) {
  unsigned result = n;
  unsigned m = n;
  for (unsigned p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      result -= result / p;
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

std::vector<unsigned> divisors(unsigned n) {
  std::vector<unsigned> divs;
  for (unsigned d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      divs.push_back(d);
      if (d != n / d) divs.push_back(n / d);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

unsigned long mod_pow(unsigned long base, unsigned long exp, unsigned long mod) {
  if (mod == 1) return 0;
  unsigned long result = 1;
  base %= mod;
  while (exp > 0) {
    if (exp & 1) result = (unsigned long)(((__uint128_t)result * base) % mod);
    base = (unsigned long)(((__uint128_t)base * base) % mod);
    exp >>= 1;
  }
  return result;
}

unsigned long gcd_ul(unsigned long a, unsigned long b) { return std::gcd(a, b); }
unsigned long lcm_ul(unsigned long a, unsigned long b) { return std::lcm(a, b); }

unsigned multiplicative_order(unsigned long a, unsigned long m) {
  if (m == 1) return 1;
  if (gcd_ul(a % m, m) != 1) fail("multiplicative order undefined: arguments not coprime");
  unsigned long t = a % m;
  unsigned ord = 1;
  while (t != 1) {
    t = (unsigned long)(((__uint128_t)t * a) % m);
    ++ord;
  }
  return ord;
}

namespace {

using ZPoly = std::vector<Integer>;  // coeff[k] of x^k, highest nonzero last

// x^n - 1
ZPoly x_pow_minus_one(unsigned n) {
  ZPoly f(n + 1, Integer(0));
  f[0] = -1;
  f[n] = 1;
  return f;
}

// Exact division of f by monic g; remainder must vanish.
ZPoly exact_div(ZPoly f, const ZPoly& g) {
  if (g.empty() || g.back() != 1) fail("internal: divisor must be monic");
  int dg = (int)g.size() - 1;
  int df = (int)f.size() - 1;
  if (df < dg) fail("internal: degree underflow in exact_div");
  ZPoly q(df - dg + 1, Integer(0));
  for (int k = df - dg; k >= 0; --k) {
    Integer coef = f[k + dg];
    q[k] = coef;
    if (coef != 0)
      for (int j = 0; j <= dg; ++j) f[k + j] -= coef * g[j];
  }
  for (const Integer& r : f)
    if (r != 0) fail("internal: nonzero remainder in exact_div");
  return q;
}

ZPoly compute_cyclotomic(unsigned n) {
  // Phi_n = (x^n - 1) / prod_{d|n, d<n} Phi_d, built bottom-up over divisors.
  std::map<unsigned, ZPoly> phi;
  for (unsigned d : divisors(n)) {
    ZPoly f = x_pow_minus_one(d);
    for (unsigned e : divisors(d))
      if (e != d) f = exact_div(std::move(f), phi[e]);
    phi[d] = std::move(f);
  }
  return phi[n];
}

// Process-wide memo: the same few conductors recur throughout a run.
const ZPoly& cyclotomic_cached(unsigned n) {
  static std::map<unsigned, ZPoly> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_cyclotomic(n)).first;
  return it->second;
}

// Reduce a rational polynomial in zeta_n (any degree) mod Phi_n; returns
// exactly phi(n) coefficients.
std::vector<Rational> reduce_mod_phi(std::vector<Rational> poly, unsigned n) {
  const ZPoly& phi = cyclotomic_cached(n);
  int dg = (int)phi.size() - 1;
  int df = (int)poly.size() - 1;
  for (int k = df - dg; k >= 0; --k) {
    Rational coef = poly[k + dg];
    if (coef != 0)
      for (int j = 0; j <= dg; ++j) poly[k + j] -= coef * Rational(phi[j]);
  }
  poly.resize((size_t)dg);  // dg == phi(n)
  return poly;
}

}  // namespace

std::vector<Integer> cyclotomic_polynomial(unsigned n) {
  if (n < 1) fail("cyclotomic order must be positive");
  return cyclotomic_cached(n);
}

CycloNumber CycloNumber::zero(unsigned n) {
  if (n < 1) fail("cyclotomic order must be positive");
  CycloNumber z;
  z.order = n;
  z.c.assign(euler_phi(n), Rational(0));
  return z;
}

CycloNumber CycloNumber::one(unsigned n) { return from(n, Rational(1)); }

CycloNumber CycloNumber::from(unsigned n, const Rational& q) {
  CycloNumber z = zero(n);
  z.c[0] = q;
  return z;
}

bool CycloNumber::is_zero() const {
  for (const Rational& q : c)
    if (q != 0) return false;
  return true;
}

CycloNumber zeta(unsigned n, long k) {
  if (n < 1) fail("cyclotomic order must be positive");
  long kk = ((k % (long)n) + (long)n) % (long)n;
  std::vector<Rational> poly((size_t)kk + 1, Rational(0));
  poly[(size_t)kk] = 1;
  CycloNumber z;
  z.order = n;
  z.c = reduce_mod_phi(std::move(poly), n);
  return z;
}

static void check_orders(const CycloNumber& a, const CycloNumber& b) {
  if (a.order != b.order) fail("incompatible cyclotomic orders");
}

CycloNumber operator+(const CycloNumber& a, const CycloNumber& b) {
  check_orders(a, b);
  CycloNumber r = a;
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
  return r;
}

CycloNumber operator-(const CycloNumber& a, const CycloNumber& b) {
  check_orders(a, b);
  CycloNumber r = a;
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] -= b.c[i];
  return r;
}

CycloNumber operator-(const CycloNumber& a) {
  CycloNumber r = a;
  for (Rational& q : r.c) q = -q;
  return r;
}

CycloNumber operator*(const CycloNumber& a, const CycloNumber& b) {
  check_orders(a, b);
  size_t na = a.c.size(), nb = b.c.size();
  std::vector<Rational> prod(na + nb - 1, Rational(0));
  for (size_t i = 0; i < na; ++i) {
    if (a.c[i] == 0) continue;
    for (size_t j = 0; j < nb; ++j) {
      if (b.c[j] == 0) continue;
      prod[i + j] += a.c[i] * b.c[j];
    }
  }
  CycloNumber r;
  r.order = a.order;
  r.c = reduce_mod_phi(std::move(prod), a.order);
  return r;
}

CycloNumber operator*(const Rational& s, const CycloNumber& a) {
  CycloNumber r = a;
  for (Rational& q : r.c) q *= s;
  return r;
}

namespace {

using QPoly = std::vector<Rational>;

int degree(const QPoly& f) {
  for (int i = (int)f.size() - 1; i >= 0; --i)
    if (f[(size_t)i] != 0) return i;
  return -1;
}

// f mod g (g nonzero, not necessarily monic), plus quotient accumulation
// via callback on (coef, shift).
template <typename F>
QPoly poly_rem(QPoly f, const QPoly& g, F&& on_term) {
  int dg = degree(g);
  Rational lead = g[(size_t)dg];
  for (int df = degree(f); df >= dg; df = degree(f)) {
    Rational coef = f[(size_t)df] / lead;
    int shift = df - dg;
    on_term(coef, shift);
    for (int j = 0; j <= dg; ++j) f[(size_t)(shift + j)] -= coef * g[(size_t)j];
  }
  return f;
}

}  // namespace

CycloNumber invert(const CycloNumber& a) {
  if (a.is_zero()) fail("division by zero");
  unsigned n = a.order;
  unsigned phi = euler_phi(n);
  // Extended Euclid for gcd(a, Phi_n) = 1 over Q[x]: track s with
  // s*a = r (mod Phi_n); at termination r is a nonzero constant.
  QPoly r0(cyclotomic_polynomial(n).size());
  {
    const auto& phi_poly = cyclotomic_polynomial(n);
    for (size_t i = 0; i < phi_poly.size(); ++i) r0[i] = Rational(phi_poly[i]);
  }
  QPoly r1(a.c.begin(), a.c.end());
  QPoly s0(1, Rational(0));
  QPoly s1(1, Rational(1));
  while (true) {
    int d1 = degree(r1);
    if (d1 < 0) fail("internal: zero divisor in cyclotomic field");
    if (d1 == 0) break;
    QPoly quo_times_s1((size_t)std::max(0, degree(r0) - d1) + s1.size() + 1, Rational(0));
    QPoly r2 = poly_rem(std::move(r0), r1, [&](const Rational& coef, int shift) {
      for (size_t j = 0; j < s1.size(); ++j) {
        if (s1[j] == 0) continue;
        size_t idx = j + (size_t)shift;
        if (idx >= quo_times_s1.size()) quo_times_s1.resize(idx + 1, Rational(0));
        quo_times_s1[idx] += coef * s1[j];
      }
    });
    QPoly s2 = s0;
    if (s2.size() < quo_times_s1.size()) s2.resize(quo_times_s1.size(), Rational(0));
    for (size_t j = 0; j < quo_times_s1.size(); ++j) s2[j] -= quo_times_s1[j];
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  Rational unit = r1[0];
  CycloNumber result;
  result.order = n;
  s1.resize(std::max<size_t>(s1.size(), phi), Rational(0));
  for (Rational& q : s1) q /= unit;
  result.c = reduce_mod_phi(std::move(s1), n);
  return result;
}

CycloNumber galois(const CycloNumber& a, long t) {
  unsigned n = a.order;
  long tt = ((t % (long)n) + (long)n) % (long)n;
  if (std::gcd((unsigned long)tt, (unsigned long)n) != 1) fail("not a Galois exponent");
  std::vector<Rational> poly(n, Rational(0));
  for (size_t j = 0; j < a.c.size(); ++j) {
    if (a.c[j] == 0) continue;
    poly[(j * (size_t)tt) % n] += a.c[j];
  }
  CycloNumber r;
  r.order = n;
  r.c = reduce_mod_phi(std::move(poly), n);
  return r;
}

CycloNumber embed(const CycloNumber& a, unsigned new_order) {
  if (new_order % a.order != 0) fail("embed target order must be a multiple of the source order");
  unsigned stride = new_order / a.order;
  std::vector<Rational> poly((a.c.size() - 1) * stride + 1, Rational(0));
  for (size_t j = 0; j < a.c.size(); ++j) poly[j * stride] = a.c[j];
  CycloNumber r;
  r.order = new_order;
  r.c = reduce_mod_phi(std::move(poly), new_order);
  return r;
}

std::optional<Rational> as_rational(const CycloNumber& a) {
  for (size_t i = 1; i < a.c.size(); ++i)
    if (a.c[i] != 0) return std::nullopt;
  return a.c[0];
}

unsigned root_of_unity_order(const CycloNumber& a) {
  // All roots of unity in Q(zeta_n) have order dividing n (n even) or 2n.
  unsigned n = a.order;
  unsigned bound = (n % 2 == 0) ? n : 2 * n;
  CycloNumber one = CycloNumber::one(n);
  CycloNumber t = a;
  for (unsigned m = 1; m <= bound; ++m) {
    if (t == one) return m;
    t = t * a;
  }
  fail("not a root of unity");
}

CycloNumber cyclo_pow(const CycloNumber& a, unsigned long e) {
  CycloNumber result = CycloNumber::one(a.order);
  CycloNumber base = a;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

CycloNumber geometric_sum(const CycloNumber& theta, const Integer& q) {
  if (q < 1) fail("geometric_sum needs q >= 1");
  CycloNumber one = CycloNumber::one(theta.order);
  if (theta == one) {
    CycloNumber r = CycloNumber::zero(theta.order);
    r.c[0] = Rational(q);
    return r;
  }
  unsigned m = root_of_unity_order(theta);
  unsigned long r = mpz_fdiv_ui(q.get_mpz_t(), m);
  // (1 - theta^q) / (1 - theta); theta^q depends only on q mod m.
  CycloNumber num = one - cyclo_pow(theta, r);
  if (num.is_zero()) return CycloNumber::zero(theta.order);
  return num * invert(one - theta);
}

std::string to_string(const CycloNumber& a) {
  std::ostringstream os;
  bool first = true;
  for (size_t j = 0; j < a.c.size(); ++j) {
    if (a.c[j] == 0) continue;
    Rational q = a.c[j];
    if (!first) {
      os << (q < 0 ? " - " : " + ");
      if (q < 0) q = -q;
    }
    first = false;
    os << q.get_str();
    if (j > 0) {
      os << "*z" << a.order;
      if (j > 1) os << "^" << j;
    }
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace fsig
