#include "fsig/group.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace fsig {

CycloMatrix CycloMatrix::identity(unsigned dim, unsigned order) {
  CycloMatrix m;
  m.dim = dim;
  m.order = order;
  m.entries.assign((size_t)dim * dim, CycloNumber::zero(order));
  for (unsigned i = 0; i < dim; ++i) m.at(i, i) = CycloNumber::one(order);
  return m;
}

CycloNumber CycloMatrix::trace() const {
  CycloNumber t = CycloNumber::zero(order);
  for (unsigned i = 0; i < dim; ++i) t = t + at(i, i);
  return t;
}

bool CycloMatrix::operator==(const CycloMatrix& o) const {
  return dim == o.dim && order == o.order && entries == o.entries;
}

std::string CycloMatrix::key() const {
  std::ostringstream os;
  for (const CycloNumber& e : entries) {
    for (const Rational& q : e.c) os << q.get_str() << ',';
    os << ';';
  }
  return os.str();
}

CycloMatrix operator*(const CycloMatrix& a, const CycloMatrix& b) {
  if (a.dim != b.dim || a.order != b.order) fail("matrix shape/cyclotomy mismatch");
  CycloMatrix r;
  r.dim = a.dim;
  r.order = a.order;
  r.entries.assign((size_t)a.dim * a.dim, CycloNumber::zero(a.order));
  for (unsigned i = 0; i < a.dim; ++i)
    for (unsigned k = 0; k < a.dim; ++k) {
      if (a.at(i, k).is_zero()) continue;
      for (unsigned j = 0; j < a.dim; ++j) {
        if (b.at(k, j).is_zero()) continue;
        r.at(i, j) = r.at(i, j) + a.at(i, k) * b.at(k, j);
      }
    }
  return r;
}

CycloNumber determinant(const CycloMatrix& m) {
  // Fraction-free would be overkill at these sizes; plain elimination.
  CycloMatrix a = m;
  unsigned n = a.dim;
  CycloNumber det = CycloNumber::one(a.order);
  for (unsigned col = 0; col < n; ++col) {
    unsigned pivot = col;
    while (pivot < n && a.at(pivot, col).is_zero()) ++pivot;
    if (pivot == n) return CycloNumber::zero(a.order);
    if (pivot != col) {
      for (unsigned j = 0; j < n; ++j) std::swap(a.at(pivot, j), a.at(col, j));
      det = -det;
    }
    det = det * a.at(col, col);
    CycloNumber inv_pivot = invert(a.at(col, col));
    for (unsigned r = col + 1; r < n; ++r) {
      if (a.at(r, col).is_zero()) continue;
      CycloNumber f = a.at(r, col) * inv_pivot;
      for (unsigned j = col; j < n; ++j) a.at(r, j) = a.at(r, j) - f * a.at(col, j);
    }
  }
  return det;
}

unsigned FiniteMatrixGroup::exponent() const {
  unsigned e = 1;
  for (unsigned m : element_orders) e = (unsigned)std::lcm(e, m);
  return e;
}

unsigned FiniteMatrixGroup::inverse_class(unsigned c) const {
  unsigned m = element_orders[c];
  return power_map[c][(m + m - 1) % m];  // class of rep^(m-1) = rep^(-1)
}

FiniteMatrixGroup close_group(const std::vector<CycloMatrix>& generators, unsigned max_order) {
  if (generators.empty()) fail("need at least one generator");
  unsigned dim = generators[0].dim;
  unsigned order = generators[0].order;
  for (const CycloMatrix& g : generators) {
    if (g.dim != dim || g.order != order) fail("generators must share dimension and cyclotomy");
    if ((unsigned)g.entries.size() != dim * dim) fail("generator is not square");
    if (determinant(g).is_zero()) fail("generator is not invertible");
  }

  FiniteMatrixGroup grp;
  grp.dim = dim;
  grp.cyclotomy = order;

  std::unordered_map<std::string, unsigned> index;
  CycloMatrix id = CycloMatrix::identity(dim, order);
  grp.elements.push_back(id);
  index.emplace(id.key(), 0);

  // Breadth-first closure under right multiplication by the generators;
  // insertion order is deterministic for a fixed generator list.
  for (size_t head = 0; head < grp.elements.size(); ++head) {
    for (const CycloMatrix& g : generators) {
      CycloMatrix prod = grp.elements[head] * g;
      std::string k = prod.key();
      if (index.find(k) == index.end()) {
        if (grp.elements.size() >= max_order)
          fail("group too large or infinite (closure exceeded max_order)");
        index.emplace(std::move(k), (unsigned)grp.elements.size());
        grp.elements.push_back(std::move(prod));
      }
    }
  }

  unsigned n = grp.order();
  grp.mult_table.assign((size_t)n * n, 0);
  for (unsigned a = 0; a < n; ++a)
    for (unsigned b = 0; b < n; ++b) {
      auto it = index.find((grp.elements[a] * grp.elements[b]).key());
      if (it == index.end()) fail("internal: closure is not closed");
      grp.mult_table[(size_t)a * n + b] = it->second;
    }

  grp.inverse.assign(n, 0);
  for (unsigned a = 0; a < n; ++a) {
    bool found = false;
    for (unsigned b = 0; b < n; ++b)
      if (grp.product(a, b) == 0) {
        grp.inverse[a] = b;
        found = true;
        break;
      }
    if (!found) fail("internal: element has no inverse");
  }

  // Conjugacy classes as orbits, scanned in element order so the identity
  // class is index 0.
  grp.class_of.assign(n, n);
  for (unsigned x = 0; x < n; ++x) {
    if (grp.class_of[x] != n) continue;
    unsigned c = grp.num_classes();
    grp.class_reps.push_back(x);
    unsigned size = 0;
    for (unsigned h = 0; h < n; ++h) {
      unsigned y = grp.product(grp.product(h, x), grp.inverse[h]);
      if (grp.class_of[y] == n) {
        grp.class_of[y] = c;
        ++size;
      }
    }
    grp.class_sizes.push_back(size);
  }

  for (unsigned c = 0; c < grp.num_classes(); ++c) {
    unsigned rep = grp.class_reps[c];
    unsigned ord = 1, t = rep;
    while (t != 0) {
      t = grp.product(t, rep);
      ++ord;
    }
    grp.element_orders.push_back(ord);
    std::vector<unsigned> powers(ord);
    t = 0;
    for (unsigned j = 0; j < ord; ++j) {
      powers[j] = grp.class_of[t];
      t = grp.product(t, rep);
    }
    grp.power_map.push_back(std::move(powers));
  }
  return grp;
}

EigenvalueProfile eigenvalue_profile(const FiniteMatrixGroup& g, unsigned class_index) {
  if (class_index >= g.num_classes()) fail("class index out of range");
  unsigned m = g.element_orders[class_index];
  unsigned big = (unsigned)std::lcm(g.cyclotomy, m);

  // Traces of powers are class functions, so the power map suffices.
  std::vector<CycloNumber> traces(m);
  for (unsigned j = 0; j < m; ++j)
    traces[j] = embed(g.class_trace(g.power_map[class_index][j]), big);

  // mult(k) = (1/m) sum_j zeta_m^(-kj) trace(g^j): Fourier inversion of the
  // trace sequence, no polynomial factorization needed.
  EigenvalueProfile profile;
  profile.class_index = class_index;
  profile.m = m;
  profile.mults.resize(m);
  Rational inv_m = make_rational(1, (long)m);
  unsigned total = 0;
  for (unsigned k = 0; k < m; ++k) {
    CycloNumber acc = CycloNumber::zero(big);
    for (unsigned j = 0; j < m; ++j)
      acc = acc + zeta(big, -(long)((size_t)k * j % m) * (long)(big / m)) * traces[j];
    acc = inv_m * acc;
    std::optional<Rational> r = as_rational(acc);
    if (!r || !is_integer(*r) || *r < 0 || *r > g.dim)
      fail("inconsistent group data (non-integer eigenvalue multiplicity)");
    profile.mults[k] = (unsigned)r->get_num().get_ui();
    total += profile.mults[k];
  }
  if (total != g.dim) fail("inconsistent group data (eigenvalue multiplicities do not sum to dim)");
  return profile;
}

std::vector<EigenvalueProfile> eigenvalue_profiles(const FiniteMatrixGroup& g) {
  std::vector<EigenvalueProfile> out;
  out.reserve(g.num_classes());
  for (unsigned c = 0; c < g.num_classes(); ++c) out.push_back(eigenvalue_profile(g, c));
  return out;
}

bool is_pseudo_reflection(const EigenvalueProfile& profile, unsigned dim) {
  if (profile.m == 1) return false;  // the identity class
  return profile.mults[0] == dim - 1;
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  os << "p=" << p << ": coprimality " << (p_coprime ? "OK" : "FAILED (p divides |G|)")
     << "; pseudo-reflections " << (pseudo_reflection_free ? "none" : "present");
  if (!pseudo_reflection_classes.empty()) {
    os << " (classes";
    for (unsigned c : pseudo_reflection_classes) os << ' ' << c;
    os << ')';
  }
  return os.str();
}

ValidationReport validate(const FiniteMatrixGroup& g, unsigned long p) {
  ValidationReport report;
  report.p = p;
  report.p_coprime = (g.order() % p) != 0;
  for (unsigned c = 0; c < g.num_classes(); ++c)
    if (is_pseudo_reflection(eigenvalue_profile(g, c), g.dim))
      report.pseudo_reflection_classes.push_back(c);
  report.pseudo_reflection_free = report.pseudo_reflection_classes.empty();
  return report;
}

namespace {

CycloMatrix diagonal(unsigned order, const std::vector<CycloNumber>& d) {
  CycloMatrix m;
  m.dim = (unsigned)d.size();
  m.order = order;
  m.entries.assign((size_t)m.dim * m.dim, CycloNumber::zero(order));
  for (unsigned i = 0; i < m.dim; ++i) m.at(i, i) = d[i];
  return m;
}

CycloMatrix from_rows(unsigned order, std::vector<std::vector<CycloNumber>> rows) {
  CycloMatrix m;
  m.dim = (unsigned)rows.size();
  m.order = order;
  for (auto& row : rows)
    for (auto& e : row) m.entries.push_back(std::move(e));
  return m;
}

}  // namespace

BuiltinGroup builtin_family(const std::string& name, unsigned n,
                            const std::vector<long>& weights) {
  BuiltinGroup b;
  b.name = name;
  if (name == "cyclic_weights") {
    if (n < 1 || weights.empty()) fail_input("cyclic_weights needs n >= 1 and a weight vector");
    std::vector<CycloNumber> d;
    for (long w : weights) d.push_back(zeta(n, w));
    b.cyclotomy = n;
    b.dim = (unsigned)weights.size();
    b.generators.push_back(diagonal(n, d));
    unsigned g = 1;
    for (long w : weights)
      g = (unsigned)std::lcm<unsigned long>(g, n / std::gcd((unsigned long)(((w % n) + n) % n), (unsigned long)n));
    b.expected_order = g;
  } else if (name == "binary_dihedral") {
    if (n < 1) fail_input("binary_dihedral needs n >= 1");
    unsigned m = 2 * n;
    b.cyclotomy = m;
    b.dim = 2;
    b.generators.push_back(diagonal(m, {zeta(m, 1), zeta(m, -1)}));
    CycloNumber zero = CycloNumber::zero(m), one = CycloNumber::one(m);
    b.generators.push_back(from_rows(m, {{zero, one}, {-one, zero}}));
    b.expected_order = 4 * n;
  } else if (name == "binary_tetrahedral") {
    unsigned m = 8;
    CycloNumber zero = CycloNumber::zero(m), one = CycloNumber::one(m);
    CycloNumber i = zeta(m, 2);
    Rational half = make_rational(1, 2);
    b.cyclotomy = m;
    b.dim = 2;
    b.generators.push_back(diagonal(m, {i, -i}));
    b.generators.push_back(from_rows(m, {{zero, one}, {-one, zero}}));
    // (-1 + i + j + k)/2 as a 2x2 matrix over Q(i); entries have
    // denominator 2, so the oracle refuses p = 2 (excluded anyway).
    b.generators.push_back(from_rows(
        m, {{half * (-one + i), half * (one + i)}, {half * (-one + i), half * (-one - i)}}));
    b.expected_order = 24;
  } else if (name == "symmetric2_reflection") {
    CycloNumber zero = CycloNumber::zero(1), one = CycloNumber::one(1);
    b.cyclotomy = 1;
    b.dim = 2;
    b.generators.push_back(from_rows(1, {{zero, one}, {one, zero}}));
    b.expected_order = 2;
  } else {
    fail_input("unknown builtin family: " + name);
  }
  return b;
}

}  // namespace fsig
