#include "fsig/oracle.hpp"

#include <algorithm>
#include <numeric>

namespace fsig {

namespace {

std::vector<unsigned long> prime_factors_ul(unsigned long n) {
  std::vector<unsigned long> fs;
  for (unsigned long d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      fs.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) fs.push_back(n);
  return fs;
}

// -- small dense polynomials over F_p, used only for field construction --

using PPoly = std::vector<unsigned long>;  // coeff[k] of x^k

PPoly pmul_mod(const PPoly& a, const PPoly& b, const PPoly& f, unsigned long p) {
  PPoly prod(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  }
  // reduce mod monic f
  size_t s = f.size() - 1;
  for (size_t k = prod.size(); k-- > s;) {
    unsigned long c = prod[k];
    if (c == 0) continue;
    prod[k] = 0;
    for (size_t j = 0; j < s; ++j)
      prod[k - s + j] = (prod[k - s + j] + (p - f[j] % p) * c) % p;
  }
  prod.resize(s);
  return prod;
}

PPoly ppow_mod(PPoly base, unsigned long e, const PPoly& f, unsigned long p) {
  PPoly r(f.size() - 1, 0);
  r[0] = 1;
  while (e > 0) {
    if (e & 1) r = pmul_mod(r, base, f, p);
    base = pmul_mod(base, base, f, p);
    e >>= 1;
  }
  return r;
}

PPoly pgcd(PPoly a, PPoly b, unsigned long p) {
  auto deg = [](const PPoly& x) {
    for (size_t i = x.size(); i-- > 0;)
      if (x[i] != 0) return (long)i;
    return -1L;
  };
  auto inv_mod_p = [p](unsigned long v) { return mod_pow(v, p - 2, p); };
  while (deg(b) >= 0) {
    long db = deg(b);
    unsigned long lead_inv = inv_mod_p(b[(size_t)db]);
    for (long da = deg(a); da >= db; da = deg(a)) {
      unsigned long c = (a[(size_t)da] * lead_inv) % p;
      for (long j = 0; j <= db; ++j)
        a[(size_t)(da - db + j)] = (a[(size_t)(da - db + j)] + (p - (c * b[(size_t)j]) % p)) % p;
    }
    std::swap(a, b);
  }
  return a;
}

bool is_irreducible(const PPoly& f, unsigned long p) {
  size_t s = f.size() - 1;
  PPoly x(s, 0);
  if (s == 1) return true;
  x[1] = 1;
  // x^(p^s) == x (mod f) and gcd(x^(p^(s/t)) - x, f) = 1 for prime t | s
  PPoly xp = x;
  std::vector<PPoly> frob_powers;  // xp after j Frobenius steps, j = 1..s
  for (size_t j = 1; j <= s; ++j) {
    xp = ppow_mod(xp, p, f, p);
    frob_powers.push_back(xp);
  }
  PPoly top = frob_powers[s - 1];
  if (top != x) return false;
  for (unsigned long t : prime_factors_ul((unsigned long)s)) {
    PPoly diff = frob_powers[s / t - 1];
    diff[1] = (diff[1] + p - 1) % p;
    PPoly g = pgcd(f, diff, p);
    long dg = -1;
    for (size_t i = g.size(); i-- > 0;)
      if (g[i] != 0) {
        dg = (long)i;
        break;
      }
    if (dg != 0) return false;
  }
  return true;
}

}  // namespace

FiniteFieldContext::FiniteFieldContext(unsigned long p, unsigned root_order)
    : p_(p), root_order_(root_order) {
  if (root_order_ == 0) fail("root order must be positive");
  if (std::gcd(p_, (unsigned long)root_order_) != 1)
    fail("oracle requires p coprime to the cyclotomy and group exponent");
  s_ = multiplicative_order(p_, root_order_);
  card_ = 1;
  for (unsigned i = 0; i < s_; ++i) {
    if (card_ > (1UL << 40) / p_) fail("oracle field too large");
    card_ *= p_;
  }

  // Monic irreducible of degree s, found by scanning constant-first.
  if (s_ > 1) {
    unsigned long total = card_;
    bool found = false;
    for (unsigned long code = 0; code < total && !found; ++code) {
      PPoly f(s_ + 1, 0);
      unsigned long rest = code;
      for (unsigned i = 0; i < s_; ++i) {
        f[i] = rest % p_;
        rest /= p_;
      }
      f[s_] = 1;
      if (f[0] == 0) continue;  // reducible: x divides
      if (is_irreducible(f, p_)) {
        irred_.assign(f.begin(), f.end() - 1);
        found = true;
      }
    }
    if (!found) fail("internal: no irreducible polynomial found");
  }

  if (card_ <= 256) {
    mul_tab_.assign(256 * 256, 0);
    add_tab_.assign(256 * 256, 0);
    for (unsigned long a = 0; a < card_; ++a)
      for (unsigned long b = 0; b < card_; ++b) {
        add_tab_[a * 256 + b] = (uint8_t)add(a, b);
        mul_tab_[a * 256 + b] = (uint8_t)mul_slow(a, b);
      }
  }

  // xi of order exactly root_order: project candidates to the subgroup of
  // that order and test against the prime divisors.
  if (root_order_ == 1) {
    xi_ = 1;
  } else {
    auto prime_divs = prime_factors_ul(root_order_);
    if ((card_ - 1) % root_order_ != 0) fail("internal: field does not contain the needed roots");
    unsigned long cofactor = (card_ - 1) / root_order_;
    bool found = false;
    for (unsigned long z = 2; z < card_ && !found; ++z) {
      unsigned long cand = pow(z, cofactor);
      if (cand == 0 || cand == 1) continue;
      bool full_order = true;
      for (unsigned long t : prime_divs)
        if (pow(cand, root_order_ / t) == 1) {
          full_order = false;
          break;
        }
      if (full_order) {
        xi_ = cand;
        found = true;
      }
    }
    if (!found) fail("internal: no element of the required order");
  }
}

unsigned long FiniteFieldContext::add(unsigned long a, unsigned long b) const {
  if (s_ == 1) return (a + b) % p_;
  unsigned long out = 0, mult = 1;
  for (unsigned i = 0; i < s_; ++i) {
    out += ((a % p_ + b % p_) % p_) * mult;
    a /= p_;
    b /= p_;
    mult *= p_;
  }
  return out;
}

unsigned long FiniteFieldContext::neg(unsigned long a) const {
  if (s_ == 1) return (p_ - a % p_) % p_;
  unsigned long out = 0, mult = 1;
  for (unsigned i = 0; i < s_; ++i) {
    out += ((p_ - a % p_) % p_) * mult;
    a /= p_;
    mult *= p_;
  }
  return out;
}

unsigned long FiniteFieldContext::mul_slow(unsigned long a, unsigned long b) const {
  if (s_ == 1) return (a * b) % p_;
  PPoly pa(s_, 0), pb(s_, 0);
  for (unsigned i = 0; i < s_; ++i) {
    pa[i] = a % p_;
    a /= p_;
    pb[i] = b % p_;
    b /= p_;
  }
  PPoly f = irred_;
  f.push_back(1);
  PPoly prod = pmul_mod(pa, pb, f, p_);
  unsigned long out = 0, mult = 1;
  for (unsigned i = 0; i < s_; ++i) {
    out += prod[i] * mult;
    mult *= p_;
  }
  return out;
}

unsigned long FiniteFieldContext::mul(unsigned long a, unsigned long b) const {
  if (has_tables()) return mul_tab_[a * 256 + b];
  return mul_slow(a, b);
}

unsigned long FiniteFieldContext::pow(unsigned long a, unsigned long e) const {
  unsigned long r = 1;
  while (e > 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

unsigned long FiniteFieldContext::inv(unsigned long a) const {
  if (a == 0) fail("division by zero in finite field");
  return pow(a, card_ - 2);
}

FiniteFieldContext make_context(const FiniteMatrixGroup& g, unsigned long p) {
  unsigned root = (unsigned)std::lcm((unsigned long)g.cyclotomy, (unsigned long)g.exponent());
  return FiniteFieldContext(p, root);
}

std::vector<unsigned long> reduce_matrix(const CycloMatrix& g, const FiniteFieldContext& ctx) {
  if (ctx.root_order() % g.order != 0)
    fail("matrix cyclotomy incompatible with the finite field context");
  unsigned long xi_n = ctx.pow(ctx.xi(), ctx.root_order() / g.order);
  std::vector<unsigned long> out;
  out.reserve(g.entries.size());
  for (const CycloNumber& entry : g.entries) {
    unsigned long acc = 0;
    for (size_t j = 0; j < entry.c.size(); ++j) {
      const Rational& coef = entry.c[j];
      if (coef == 0) continue;
      unsigned long den = mpz_fdiv_ui(coef.get_den().get_mpz_t(), ctx.p());
      if (den == 0) fail_input("entry not p-integral");
      unsigned long num = mpz_fdiv_ui(coef.get_num().get_mpz_t(), ctx.p());
      unsigned long scalar = ctx.mul(num, ctx.inv(den));
      acc = ctx.add(acc, ctx.mul(scalar, ctx.pow(xi_n, j)));
    }
    out.push_back(acc);
  }
  return out;
}

ActionMatrix frobenius_quotient_action(const std::vector<unsigned long>& gbar, unsigned dim,
                                       const FiniteFieldContext& ctx, const Integer& q_in) {
  // q must be p^e
  Integer q = q_in;
  if (q < 1) fail("q must be positive");
  Integer t = q;
  while (t > 1) {
    if (!mpz_divisible_ui_p(t.get_mpz_t(), ctx.p()))
      fail("Frobenius powers are only G-stable for q = p^e");
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), ctx.p());
  }
  if (!q.fits_ulong_p()) fail("oracle instance too large");
  unsigned long qu = q.get_ui();

  ActionMatrix a;
  a.q = qu;
  a.dim = dim;
  a.n = 1;
  for (unsigned i = 0; i < dim; ++i) {
    if (a.n > (size_t)1 << 40) fail("oracle instance too large");
    a.n *= qu;
  }
  bool bytes = ctx.has_tables();
  if (bytes)
    a.bytes.assign(a.n * a.n, 0);
  else
    a.words.assign(a.n * a.n, 0);

  // strides: index(lambda) = sum lambda_i * q^(dim-1-i)
  std::vector<size_t> stride(dim, 1);
  for (unsigned i = dim; i-- > 1;) stride[i - 1] = stride[i] * qu;

  // Two sparse accumulators over the monomial basis.
  std::vector<unsigned long> cur(a.n, 0), nxt(a.n, 0);
  std::vector<size_t> cur_active, nxt_active;

  for (size_t col = 0; col < a.n; ++col) {
    cur_active.clear();
    cur[0] = 1;
    cur_active.push_back(0);

    size_t rest = col;
    for (unsigned var = 0; var < dim; ++var) {
      unsigned long lambda = (unsigned long)(rest / stride[var]);
      rest %= stride[var];
      // multiply lambda times by the image of x_var
      for (unsigned long step = 0; step < lambda; ++step) {
        nxt_active.clear();
        for (size_t idx : cur_active) {
          unsigned long c = cur[idx];
          if (c == 0) continue;
          for (unsigned i = 0; i < dim; ++i) {
            unsigned long gij = gbar[i * dim + var];
            if (gij == 0) continue;
            unsigned long digit = (unsigned long)(idx / stride[i]) % qu;
            // exponent reaching q: the monomial dies in S/m^[q]
            if (digit + 1 >= qu) continue;
            size_t nidx = idx + stride[i];
            if (nxt[nidx] == 0) nxt_active.push_back(nidx);
            nxt[nidx] = ctx.add(nxt[nidx], ctx.mul(c, gij));
          }
        }
        for (size_t idx : cur_active) cur[idx] = 0;
        std::swap(cur, nxt);
        std::swap(cur_active, nxt_active);
      }
    }

    if (bytes)
      for (size_t idx : cur_active) a.bytes[idx * a.n + col] = (uint8_t)cur[idx];
    else
      for (size_t idx : cur_active) a.words[idx * a.n + col] = cur[idx];
    for (size_t idx : cur_active) cur[idx] = 0;
  }
  return a;
}

namespace {

// rank(A - mu*I) by in-place elimination; byte fast path with the field
// tables, generic word path otherwise.
size_t rank_shifted_bytes(const ActionMatrix& a, unsigned long mu, const FiniteFieldContext& ctx) {
  size_t n = a.n;
  std::vector<uint8_t> m = a.bytes;
  const uint8_t* mul_tab = ctx.mul_table();
  const uint8_t* add_tab = ctx.add_table();
  uint8_t neg_mu = (uint8_t)ctx.neg(mu);
  for (size_t i = 0; i < n; ++i)
    m[i * n + i] = add_tab[(size_t)m[i * n + i] * 256 + neg_mu];

  size_t rank = 0;
  for (size_t col = 0; col < n && rank < n; ++col) {
    size_t pivot = rank;
    while (pivot < n && m[pivot * n + col] == 0) ++pivot;
    if (pivot == n) continue;
    if (pivot != rank)
      std::swap_ranges(m.begin() + (long)(pivot * n + col), m.begin() + (long)(pivot * n + n),
                       m.begin() + (long)(rank * n + col));
    unsigned long pinv = ctx.inv(m[rank * n + col]);
    const uint8_t* prow = &m[rank * n];
    for (size_t r = rank + 1; r < n; ++r) {
      uint8_t v = m[r * n + col];
      if (v == 0) continue;
      uint8_t fneg = (uint8_t)ctx.neg(ctx.mul(v, pinv));
      const uint8_t* frow = &mul_tab[(size_t)fneg * 256];
      uint8_t* row = &m[r * n];
      for (size_t c = col; c < n; ++c)
        row[c] = add_tab[(size_t)row[c] * 256 + frow[prow[c]]];
    }
    ++rank;
  }
  return rank;
}

size_t rank_shifted_words(const ActionMatrix& a, unsigned long mu, const FiniteFieldContext& ctx) {
  size_t n = a.n;
  std::vector<unsigned long> m = a.words;
  unsigned long neg_mu = ctx.neg(mu);
  for (size_t i = 0; i < n; ++i) m[i * n + i] = ctx.add(m[i * n + i], neg_mu);

  size_t rank = 0;
  for (size_t col = 0; col < n && rank < n; ++col) {
    size_t pivot = rank;
    while (pivot < n && m[pivot * n + col] == 0) ++pivot;
    if (pivot == n) continue;
    if (pivot != rank)
      std::swap_ranges(m.begin() + (long)(pivot * n + col), m.begin() + (long)(pivot * n + n),
                       m.begin() + (long)(rank * n + col));
    unsigned long pinv = ctx.inv(m[rank * n + col]);
    for (size_t r = rank + 1; r < n; ++r) {
      unsigned long v = m[r * n + col];
      if (v == 0) continue;
      unsigned long fneg = ctx.neg(ctx.mul(v, pinv));
      for (size_t c = col; c < n; ++c)
        m[r * n + c] = ctx.add(m[r * n + c], ctx.mul(fneg, m[rank * n + c]));
    }
    ++rank;
  }
  return rank;
}

size_t rank_shifted(const ActionMatrix& a, unsigned long mu, const FiniteFieldContext& ctx) {
  return a.byte_mode() ? rank_shifted_bytes(a, mu, ctx) : rank_shifted_words(a, mu, ctx);
}

}  // namespace

CycloNumber brauer_character_of_action(const ActionMatrix& a, unsigned m,
                                       const FiniteFieldContext& ctx, unsigned value_order) {
  if (ctx.root_order() % m != 0 || value_order % m != 0)
    fail("element order incompatible with the context");
  CycloNumber value = CycloNumber::zero(value_order);
  size_t total = 0;
  for (unsigned k = 0; k < m; ++k) {
    unsigned long mu = ctx.pow(ctx.xi(), (unsigned long)(ctx.root_order() / m) * k);
    size_t mult = a.n - rank_shifted(a, mu, ctx);
    if (mult > 0) {
      value = value + Rational((unsigned long)mult) * zeta(value_order, (long)((size_t)k * (value_order / m)));
      total += mult;
    }
  }
  if (total != a.n) fail("matrix not semisimple");
  return value;
}

OracleRun oracle_run(const FiniteMatrixGroup& g, const CharacterTable& table, unsigned long p,
                     unsigned e, size_t cap) {
  OracleRun run;
  run.p = p;
  run.e = e;
  mpz_ui_pow_ui(run.q.get_mpz_t(), p, e);
  Integer basis_count;
  mpz_pow_ui(basis_count.get_mpz_t(), run.q.get_mpz_t(), g.dim);
  if (basis_count > (unsigned long)cap) fail("oracle instance too large");

  FiniteFieldContext ctx = make_context(g, p);
  unsigned value_order = table.cyclotomy;
  for (unsigned c = 0; c < g.num_classes(); ++c) {
    std::vector<unsigned long> gbar = reduce_matrix(g.elements[g.class_reps[c]], ctx);
    ActionMatrix a = frobenius_quotient_action(gbar, g.dim, ctx, run.q);
    run.characters.push_back(
        brauer_character_of_action(a, g.element_orders[c], ctx, value_order));
  }

  // Same inner-product formula as the main path, fed with the kernel-rank
  // characters instead of the geometric-sum character.
  ClassFunction oracle_chi;
  oracle_chi.values = run.characters;
  for (unsigned i = 0; i < table.num_rows(); ++i) {
    ClassFunction twisted = twist_character(table.rows[i], e, p, table.cyclotomy);
    CycloNumber ip = inner_product(twisted, oracle_chi, table.class_sizes, table.group_order);
    std::optional<Rational> r = as_rational(ip);
    if (!r || !is_integer(*r) || *r < 0)
      fail("inconsistent input (oracle multiplicity is not a nonnegative integer)");
    run.mults.push_back(r->get_num());
  }
  return run;
}

}  // namespace fsig
