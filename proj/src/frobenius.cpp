#include "fsig/frobenius.hpp"

#include <numeric>

#include "fsig/approx.hpp"

namespace fsig {

ClassFunction bullet_character(const FiniteMatrixGroup& g,
                               const std::vector<EigenvalueProfile>& profiles,
                               const Integer& q) {
  if (q < 1) fail("q must be positive");
  unsigned m = g.exponent();
  ClassFunction out;
  for (unsigned c = 0; c < g.num_classes(); ++c) {
    const EigenvalueProfile& prof = profiles[c];
    CycloNumber value = CycloNumber::one(m);
    for (unsigned k = 0; k < prof.m; ++k) {
      if (prof.mults[k] == 0) continue;
      CycloNumber s = geometric_sum(zeta(m, (long)((size_t)k * (m / prof.m))), q);
      value = value * cyclo_pow(s, prof.mults[k]);
    }
    out.values.push_back(std::move(value));
  }
  return out;
}

namespace {

Integer pow_integer(unsigned long base, unsigned long exp) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
  return r;
}

Integer to_nonneg_integer(const CycloNumber& v) {
  std::optional<Rational> r = as_rational(v);
  if (!r || !is_integer(*r) || *r < 0)
    fail("inconsistent input (multiplicity is not a nonnegative integer)");
  return r->get_num();
}

}  // namespace

FrobeniusDecomposition multiplicities(const CharacterTable& table, const ClassFunction& bullet,
                                      unsigned e, unsigned long p) {
  if (std::gcd(p, (unsigned long)table.group_order) != 1)
    fail("p must be coprime to the group order");
  FrobeniusDecomposition dec;
  dec.p = p;
  dec.e = e;
  dec.q = pow_integer(p, e);
  Integer dim_total = 0;
  for (unsigned i = 0; i < table.num_rows(); ++i) {
    ClassFunction twisted = twist_character(table.rows[i], e, p, table.cyclotomy);
    CycloNumber ip = inner_product(twisted, bullet, table.class_sizes, table.group_order);
    Integer ci = to_nonneg_integer(ip);
    dim_total += ci * table.dims[i];
    dec.mults.push_back(std::move(ci));
  }
  Integer qd = to_nonneg_integer(bullet.values[0]);  // bullet(1) = q^d
  if (dim_total != qd) fail("inconsistent input (dimension count does not match q^d)");
  return dec;
}

Rational generalized_f_signature(const CharacterTable& table, unsigned i) {
  if (i >= table.num_rows()) fail("character index out of range");
  return make_rational(table.dims[i], table.group_order);
}

Rational signature_pair(const CharacterTable& table, unsigned i, unsigned j) {
  if (i >= table.num_rows() || j >= table.num_rows()) fail("character index out of range");
  return make_rational((unsigned long)table.dims[i] * table.dims[j], table.group_order);
}

std::vector<Integer> module_decomposition(const CharacterTable& table, const ClassFunction& bullet,
                                          unsigned i, unsigned e, unsigned long p) {
  if (i >= table.num_rows()) fail("character index out of range");
  if (std::gcd(p, (unsigned long)table.group_order) != 1)
    fail("p must be coprime to the group order");
  // chi of (S/m^[q]) tensor V_i
  ClassFunction prod;
  for (unsigned c = 0; c < table.num_classes(); ++c)
    prod.values.push_back(bullet.values[c] * table.rows[i].values[c]);
  std::vector<Integer> out;
  Integer total = 0;
  for (unsigned j = 0; j < table.num_rows(); ++j) {
    ClassFunction twisted = twist_character(table.rows[j], e, p, table.cyclotomy);
    Integer dij = to_nonneg_integer(
        inner_product(twisted, prod, table.class_sizes, table.group_order));
    total += dij * table.dims[j];
    out.push_back(std::move(dij));
  }
  Integer expect = to_nonneg_integer(bullet.values[0]) * table.dims[i];
  if (total != expect) fail("inconsistent input (module dimension count mismatch)");
  return out;
}

SignatureReport convergence_report(const FiniteMatrixGroup& g,
                                   const std::vector<EigenvalueProfile>& profiles,
                                   const CharacterTable& table, unsigned long p,
                                   unsigned e_min, unsigned e_max) {
  if (e_max < e_min) fail("empty e-range");
  ValidationReport validity = validate(g, p);
  if (!validity.ok())
    throw ValidationError("convergence report refused: " + validity.summary());

  SignatureReport report;
  report.e_min = e_min;
  report.e_max = e_max;
  report.e0 = multiplicative_order(p, g.exponent());

  unsigned n_rows = table.num_rows();
  for (unsigned i = 0; i < n_rows; ++i)
    report.signatures.push_back(generalized_f_signature(table, i));
  for (unsigned i = 0; i < n_rows; ++i) {
    std::vector<Rational> row;
    for (unsigned j = 0; j < n_rows; ++j) row.push_back(signature_pair(table, i, j));
    report.pairs.push_back(std::move(row));
  }

  // Per-class data for the error bound: t_c (eigenvalue-1 multiplicity) and
  // an exact rational upper bound for prod over nontrivial eigenvalues of
  // 2/|1 - theta|. Both are independent of q.
  unsigned m = g.exponent();
  std::vector<unsigned> t_c(g.num_classes(), 0);
  std::vector<Rational> factor(g.num_classes(), Rational(1));
  for (unsigned c = 1; c < g.num_classes(); ++c) {
    const EigenvalueProfile& prof = profiles[c];
    t_c[c] = prof.mults[0];
    Rational f(1);
    for (unsigned k = 1; k < prof.m; ++k) {
      if (prof.mults[k] == 0) continue;
      CycloNumber theta = zeta(m, (long)((size_t)k * (m / prof.m)));
      Rational one_factor = two_over_abs_upper(CycloNumber::one(m) - theta);
      for (unsigned rep = 0; rep < prof.mults[k]; ++rep) f *= one_factor;
    }
    factor[c] = f;
  }

  for (unsigned e = e_min; e <= e_max; ++e) {
    Integer q = pow_integer(p, e);
    ClassFunction bullet = bullet_character(g, profiles, q);
    FrobeniusDecomposition dec = multiplicities(table, bullet, e, p);
    Integer qd;
    mpz_pow_ui(qd.get_mpz_t(), q.get_mpz_t(), g.dim);
    for (unsigned i = 0; i < n_rows; ++i) {
      ConvergenceRow row;
      row.e = e;
      row.q = q;
      row.i = i;
      row.ratio = make_rational(dec.mults[i], qd);
      row.gap = abs(row.ratio - report.signatures[i]);
      // B_i(q)/q^d with B_i(q) = (1/|G|) sum_{c != 1} |C_c| dim_i q^{t_c} F_c
      Rational b(0);
      for (unsigned c = 1; c < g.num_classes(); ++c) {
        Integer qt;
        mpz_pow_ui(qt.get_mpz_t(), q.get_mpz_t(), t_c[c]);
        b += Rational((unsigned long)g.class_sizes[c]) * Rational(qt) * factor[c];
      }
      b *= make_rational(table.dims[i], table.group_order);
      row.bound = b / Rational(qd);
      if (row.gap > row.bound) fail("internal: certified bound violated");
      report.rows.push_back(std::move(row));
    }
    report.decompositions.push_back(std::move(dec.mults));
  }
  return report;
}

}  // namespace fsig
