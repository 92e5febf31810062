#include "fsig/characters.hpp"

#include <algorithm>
#include <numeric>

namespace fsig {

CycloNumber inner_product(const ClassFunction& a, const ClassFunction& b,
                          const std::vector<unsigned>& class_sizes, unsigned group_order) {
  if (a.values.size() != b.values.size() || a.values.size() != class_sizes.size())
    fail("class function length mismatch");
  if (a.values.empty()) fail("empty class function");
  unsigned m = a.values[0].order;
  CycloNumber acc = CycloNumber::zero(m);
  for (size_t c = 0; c < class_sizes.size(); ++c) {
    CycloNumber term = conj(a.values[c]) * b.values[c];
    acc = acc + Rational((unsigned long)class_sizes[c]) * term;
  }
  return make_rational(1, (long)group_order) * acc;
}

ClassFunction defining_character(const FiniteMatrixGroup& g) {
  // Traces rebuilt from eigenvalue profiles so the values live at
  // order exp(G) even when the entry cyclotomy does not divide it.
  unsigned m = g.exponent();
  ClassFunction chi;
  for (unsigned c = 0; c < g.num_classes(); ++c) {
    EigenvalueProfile profile = eigenvalue_profile(g, c);
    CycloNumber v = CycloNumber::zero(m);
    for (unsigned k = 0; k < profile.m; ++k)
      if (profile.mults[k] > 0)
        v = v + Rational((unsigned long)profile.mults[k]) * zeta(m, (long)((size_t)k * (m / profile.m)));
    chi.values.push_back(std::move(v));
  }
  return chi;
}

// ---------------------------------------------------------------------------
// Dixon-Schneider over a prime field F_l, l = 1 (mod exp(G)).

namespace {

using Fl = unsigned long;
using Vec = std::vector<Fl>;
using Mat = std::vector<Vec>;  // row major

struct PrimeField {
  Fl l;
  Fl add(Fl a, Fl b) const { return (a + b) % l; }
  Fl sub(Fl a, Fl b) const { return (a + l - b) % l; }
  Fl mul(Fl a, Fl b) const { return (Fl)(((__uint128_t)a * b) % l); }
  Fl pow(Fl a, Fl e) const { return mod_pow(a, e, l); }
  Fl inv(Fl a) const { return pow(a % l, l - 2); }
};

bool is_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<unsigned long> prime_factors(unsigned long n) {
  std::vector<unsigned long> fs;
  for (unsigned long d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      fs.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) fs.push_back(n);
  return fs;
}

Fl primitive_root(const PrimeField& F) {
  auto factors = prime_factors(F.l - 1);
  for (Fl w = 2; w < F.l; ++w) {
    bool ok = true;
    for (unsigned long t : factors)
      if (F.pow(w, (F.l - 1) / t) == 1) {
        ok = false;
        break;
      }
    if (ok) return w;
  }
  fail("internal: no primitive root found");
}

// Row reduce in place; returns pivot columns. Rows end up in reduced
// echelon form.
std::vector<unsigned> rref(Mat& m, const PrimeField& F) {
  std::vector<unsigned> pivots;
  if (m.empty()) return pivots;
  unsigned rows = (unsigned)m.size(), cols = (unsigned)m[0].size();
  unsigned rank = 0;
  for (unsigned col = 0; col < cols && rank < rows; ++col) {
    unsigned pivot = rank;
    while (pivot < rows && m[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[rank]);
    Fl inv = F.inv(m[rank][col]);
    for (unsigned j = col; j < cols; ++j) m[rank][j] = F.mul(m[rank][j], inv);
    for (unsigned r = 0; r < rows; ++r) {
      if (r == rank || m[r][col] == 0) continue;
      Fl f = m[r][col];
      for (unsigned j = col; j < cols; ++j) m[r][j] = F.sub(m[r][j], F.mul(f, m[rank][j]));
    }
    pivots.push_back(col);
    ++rank;
  }
  return pivots;
}

// Basis of the null space of a square matrix.
std::vector<Vec> kernel(Mat m, const PrimeField& F) {
  unsigned n = (unsigned)m.size();
  std::vector<unsigned> pivots = rref(m, F);
  std::vector<bool> is_pivot(n, false);
  for (unsigned c : pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (unsigned free_col = 0; free_col < n; ++free_col) {
    if (is_pivot[free_col]) continue;
    Vec v(n, 0);
    v[free_col] = 1;
    for (size_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = F.sub(0, m[r][free_col]);
    basis.push_back(std::move(v));
  }
  return basis;
}

Vec mat_vec(const Mat& m, const Vec& v, const PrimeField& F) {
  Vec out(m.size(), 0);
  for (size_t i = 0; i < m.size(); ++i) {
    Fl acc = 0;
    for (size_t j = 0; j < v.size(); ++j) acc = F.add(acc, F.mul(m[i][j], v[j]));
    out[i] = acc;
  }
  return out;
}

// T with B * W = W * T for a full-column-rank W (columns are basis vectors).
Mat restrict_to(const Mat& B, const std::vector<Vec>& W, const PrimeField& F) {
  unsigned r = (unsigned)W[0].size(), k = (unsigned)W.size();
  Mat aug(r, Vec(2 * (size_t)k, 0));
  for (unsigned i = 0; i < r; ++i)
    for (unsigned j = 0; j < k; ++j) aug[i][j] = W[j][i];
  for (unsigned j = 0; j < k; ++j) {
    Vec bw = mat_vec(B, W[j], F);
    for (unsigned i = 0; i < r; ++i) aug[i][k + j] = bw[i];
  }
  std::vector<unsigned> pivots = rref(aug, F);
  if (pivots.size() != k) fail("internal: subspace basis not independent");
  for (unsigned idx = 0; idx < k; ++idx)
    if (pivots[idx] != idx) fail("internal: unexpected pivot structure");
  Mat T(k, Vec(k, 0));
  for (unsigned i = 0; i < k; ++i)
    for (unsigned j = 0; j < k; ++j) T[i][j] = aug[i][k + j];
  return T;
}

// Characteristic polynomial by Faddeev-LeVerrier; p(x) = sum coef[j] x^j,
// monic of degree k. Valid because 1..k are invertible mod l.
Vec char_poly(const Mat& T, const PrimeField& F) {
  unsigned k = (unsigned)T.size();
  Vec coef(k + 1, 0);
  coef[k] = 1;
  Mat M(k, Vec(k, 0));  // starts as zero; M_1 = A*I
  Fl c = 1;
  for (unsigned j = 1; j <= k; ++j) {
    // M <- A * (M + c*I)
    for (unsigned i = 0; i < k; ++i) M[i][i] = F.add(M[i][i], c);
    Mat next(k, Vec(k, 0));
    for (unsigned a = 0; a < k; ++a)
      for (unsigned b = 0; b < k; ++b) {
        Fl acc = 0;
        for (unsigned t = 0; t < k; ++t) acc = F.add(acc, F.mul(T[a][t], M[t][b]));
        next[a][b] = acc;
      }
    M = std::move(next);
    Fl tr = 0;
    for (unsigned i = 0; i < k; ++i) tr = F.add(tr, M[i][i]);
    c = F.mul(F.sub(0, tr), F.inv(j % F.l));
    coef[k - j] = c;
  }
  return coef;
}

Fl eval_poly(const Vec& coef, Fl x, const PrimeField& F) {
  Fl acc = 0;
  for (size_t j = coef.size(); j-- > 0;) acc = F.add(F.mul(acc, x), coef[j]);
  return acc;
}

}  // namespace

CharacterTable character_table_dixon(const FiniteMatrixGroup& g) {
  unsigned r = g.num_classes();
  unsigned n = g.order();
  unsigned M = g.exponent();

  CharacterTable table;
  table.group_order = n;
  table.cyclotomy = M;
  table.class_sizes = g.class_sizes;
  table.class_orders = g.element_orders;
  table.power_map = g.power_map;

  // Prime l = 1 (mod exp G), large enough that all lifted integers
  // (eigenvalue multiplicities <= dim <= sqrt |G|) are unambiguous.
  PrimeField F{0};
  for (unsigned long cand = ((unsigned long)2 * n / M + 1) * M + 1;; cand += M) {
    if (is_prime(cand)) {
      F.l = cand;
      break;
    }
    if (cand > 10'000'000UL) fail("no suitable prime found for the character computation");
  }

  // Class multiplication constants c_ijk = #{(x,y) in C_i x C_j : xy = g_k}.
  std::vector<std::vector<std::vector<unsigned>>> cc(
      r, std::vector<std::vector<unsigned>>(r, std::vector<unsigned>(r, 0)));
  for (unsigned x = 0; x < n; ++x)
    for (unsigned k = 0; k < r; ++k) {
      unsigned y = g.product(g.inverse[x], g.class_reps[k]);
      ++cc[g.class_of[x]][g.class_of[y]][k];
    }

  std::vector<Mat> class_mats(r, Mat(r, Vec(r, 0)));
  for (unsigned i = 0; i < r; ++i)
    for (unsigned j = 0; j < r; ++j)
      for (unsigned k = 0; k < r; ++k) class_mats[i][j][k] = cc[i][j][k] % F.l;

  // Split the common eigenspaces of the class matrices.
  std::vector<std::vector<Vec>> subspaces;
  {
    std::vector<Vec> full;
    for (unsigned i = 0; i < r; ++i) {
      Vec e(r, 0);
      e[i] = 1;
      full.push_back(std::move(e));
    }
    subspaces.push_back(std::move(full));
  }
  for (unsigned i = 1; i < r; ++i) {
    std::vector<std::vector<Vec>> next;
    for (auto& W : subspaces) {
      if (W.size() == 1) {
        next.push_back(std::move(W));
        continue;
      }
      Mat T = restrict_to(class_mats[i], W, F);
      Vec cp = char_poly(T, F);
      size_t found = 0;
      for (Fl lambda = 0; lambda < F.l; ++lambda) {
        if (eval_poly(cp, lambda, F) != 0) continue;
        Mat shifted = T;
        for (size_t d = 0; d < shifted.size(); ++d)
          shifted[d][d] = F.sub(shifted[d][d], lambda);
        std::vector<Vec> K = kernel(std::move(shifted), F);
        if (K.empty()) continue;
        std::vector<Vec> piece;
        for (const Vec& coords : K) {
          Vec v(r, 0);
          for (size_t j = 0; j < W.size(); ++j) {
            if (coords[j] == 0) continue;
            for (unsigned t = 0; t < r; ++t) v[t] = F.add(v[t], F.mul(coords[j], W[j][t]));
          }
          piece.push_back(std::move(v));
        }
        found += piece.size();
        next.push_back(std::move(piece));
      }
      if (found != W.size()) fail("internal: eigenspace splitting lost dimensions");
    }
    subspaces = std::move(next);
    bool all_split = std::all_of(subspaces.begin(), subspaces.end(),
                                 [](const std::vector<Vec>& w) { return w.size() == 1; });
    if (all_split) break;
  }
  if (subspaces.size() != r) fail("internal: wrong number of characters found");

  Fl root = primitive_root(F);
  Fl zl = F.pow(root, (F.l - 1) / M);  // fixed l-adic image of zeta_M

  for (auto& W : subspaces) {
    Vec& w = W[0];
    if (w[0] == 0) fail("internal: central character vanishes at the identity");
    Fl norm = F.inv(w[0]);
    Vec omega(r);
    for (unsigned i = 0; i < r; ++i) omega[i] = F.mul(w[i], norm);

    // d^2 = |G| / sum_i omega_i omega_{i*} / |C_i|
    Fl s = 0;
    for (unsigned i = 0; i < r; ++i) {
      Fl term = F.mul(omega[i], omega[g.inverse_class(i)]);
      s = F.add(s, F.mul(term, F.inv(g.class_sizes[i] % F.l)));
    }
    Fl d2 = F.mul(n % F.l, F.inv(s));
    unsigned dim = 0;
    for (unsigned d = 1; (unsigned long)d * d <= n; ++d)
      if (F.mul(d, d) == d2) {
        dim = d;
        break;
      }
    if (dim == 0) fail("internal: could not recover a character degree");

    // theta(i) = dim * omega_i / |C_i| mod l, then lift by Fourier
    // inversion over the power map of each class.
    ClassFunction row;
    for (unsigned i = 0; i < r; ++i) {
      unsigned mi = g.element_orders[i];
      Fl zi = F.pow(zl, M / mi);
      CycloNumber value = CycloNumber::zero(M);
      unsigned total = 0;
      for (unsigned k = 0; k < mi; ++k) {
        Fl acc = 0;
        for (unsigned j = 0; j < mi; ++j) {
          unsigned cj = g.power_map[i][j];
          Fl theta = F.mul(F.mul(dim % F.l, omega[cj]), F.inv(g.class_sizes[cj] % F.l));
          acc = F.add(acc, F.mul(theta, F.pow(zi, (Fl)((size_t)(mi - k % mi) % mi * j % mi))));
        }
        acc = F.mul(acc, F.inv(mi % F.l));
        if (acc > (Fl)dim) fail("internal: eigenvalue multiplicity lift out of range");
        if (acc > 0) {
          value = value + Rational((unsigned long)acc) * zeta(M, (long)((size_t)k * (M / mi)));
          total += (unsigned)acc;
        }
      }
      if (total != dim) fail("internal: lifted multiplicities do not sum to the degree");
      row.values.push_back(std::move(value));
    }
    table.rows.push_back(std::move(row));
    table.dims.push_back(dim);
  }

  auto violations = table_violations(table);
  if (!violations.empty()) fail("internal: computed character table invalid: " + violations[0]);
  canonical_sort(table);
  return table;
}

// ---------------------------------------------------------------------------

std::vector<std::string> table_violations(const CharacterTable& t) {
  std::vector<std::string> out;
  unsigned r = t.num_classes();
  if (t.rows.empty() || t.dims.size() != t.rows.size()) {
    out.push_back("shape");
    return out;
  }
  for (const auto& row : t.rows)
    if (row.values.size() != r) {
      out.push_back("shape");
      return out;
    }
  if (r == 0 || t.class_orders[0] != 1 || t.class_sizes[0] != 1) out.push_back("identity class");

  for (size_t i = 0; i < t.rows.size(); ++i) {
    std::optional<Rational> v = as_rational(t.rows[i].values[0]);
    if (!v || *v != Rational((unsigned long)t.dims[i]) || t.dims[i] == 0) {
      out.push_back("dimension mismatch");
      break;
    }
  }

  unsigned long sum_sq = 0;
  for (unsigned d : t.dims) sum_sq += (unsigned long)d * d;
  if (sum_sq != t.group_order) out.push_back("sum of squared dims");

  bool has_trivial = false;
  for (const auto& row : t.rows) {
    bool all_one = true;
    for (const auto& v : row.values)
      if (v != CycloNumber::one(v.order)) {
        all_one = false;
        break;
      }
    if (all_one) has_trivial = true;
  }
  if (!has_trivial) out.push_back("trivial character missing");

  for (size_t i = 0; i < t.rows.size() && out.empty(); ++i)
    for (size_t j = i; j < t.rows.size(); ++j) {
      CycloNumber ip = inner_product(t.rows[i], t.rows[j], t.class_sizes, t.group_order);
      CycloNumber expect = i == j ? CycloNumber::one(ip.order) : CycloNumber::zero(ip.order);
      if (ip != expect) {
        out.push_back("orthogonality");
        break;
      }
    }
  return out;
}

namespace {

bool cyclo_less(const CycloNumber& a, const CycloNumber& b) {
  for (size_t i = 0; i < a.c.size(); ++i) {
    int c = cmp(a.c[i], b.c[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

bool row_less(const std::pair<ClassFunction, unsigned>& a,
              const std::pair<ClassFunction, unsigned>& b) {
  if (a.second != b.second) return a.second < b.second;
  for (size_t c = 0; c < a.first.values.size(); ++c) {
    if (a.first.values[c] != b.first.values[c])
      return cyclo_less(a.first.values[c], b.first.values[c]);
  }
  return false;
}

}  // namespace

void canonical_sort(CharacterTable& t) {
  std::vector<std::pair<ClassFunction, unsigned>> rows;
  for (size_t i = 0; i < t.rows.size(); ++i) rows.emplace_back(std::move(t.rows[i]), t.dims[i]);
  auto is_trivial = [](const std::pair<ClassFunction, unsigned>& row) {
    for (const auto& v : row.first.values)
      if (v != CycloNumber::one(v.order)) return false;
    return true;
  };
  std::stable_partition(rows.begin(), rows.end(), is_trivial);
  if (rows.size() > 1) std::sort(rows.begin() + 1, rows.end(), row_less);
  t.rows.clear();
  t.dims.clear();
  t.labels.clear();
  for (size_t i = 0; i < rows.size(); ++i) {
    t.rows.push_back(std::move(rows[i].first));
    t.dims.push_back(rows[i].second);
    t.labels.push_back("V_" + std::to_string(i));
  }
}

ClassFunction twist_character(const ClassFunction& chi, unsigned e, unsigned long p, unsigned m) {
  if (std::gcd(p, (unsigned long)m) != 1) fail("not a Galois exponent");
  unsigned long t = mod_pow(p, e, m);
  ClassFunction out;
  for (const CycloNumber& v : chi.values) out.values.push_back(galois(v, (long)t));
  return out;
}

std::vector<unsigned> twist_permutation(const CharacterTable& t, unsigned e, unsigned long p) {
  std::vector<unsigned> pi(t.num_rows(), t.num_rows());
  for (unsigned i = 0; i < t.num_rows(); ++i) {
    ClassFunction twisted = twist_character(t.rows[i], e, p, t.cyclotomy);
    bool found = false;
    for (unsigned j = 0; j < t.num_rows(); ++j)
      if (twisted.values == t.rows[j].values) {
        pi[i] = j;
        found = true;
        break;
      }
    if (!found) fail("table not Galois-stable");
  }
  return pi;
}

}  // namespace fsig
