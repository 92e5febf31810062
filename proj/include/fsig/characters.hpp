#pragma once

// Irreducible character tables of the enumerated matrix groups, inner
// products, and the Galois twist that realizes the Frobenius on characters.
// Since p never divides |G| here, the ordinary table over Q(zeta_exp(G))
// coincides with the Brauer character table.

#include <vector>

#include "fsig/group.hpp"

namespace fsig {

struct ClassFunction {
  std::vector<CycloNumber> values;  // one per conjugacy class
};

struct CharacterTable {
  // Class data copied from the group so a table is self-contained.
  unsigned group_order = 1;
  unsigned cyclotomy = 1;  // exp(G); all values live in Q(zeta_cyclotomy)
  std::vector<unsigned> class_sizes;
  std::vector<unsigned> class_orders;
  std::vector<std::vector<unsigned>> power_map;

  std::vector<ClassFunction> rows;  // trivial character first
  std::vector<unsigned> dims;       // dims[i] = rows[i] at the identity class
  std::vector<std::string> labels;  // V_0..V_n

  unsigned num_classes() const { return (unsigned)class_sizes.size(); }
  unsigned num_rows() const { return (unsigned)rows.size(); }
};

// <a,b> = (1/|G|) sum_c size_c * conj(a_c) * b_c
CycloNumber inner_product(const ClassFunction& a, const ClassFunction& b,
                          const std::vector<unsigned>& class_sizes, unsigned group_order);

// Trace of each class representative, expressed at order exp(G).
ClassFunction defining_character(const FiniteMatrixGroup& g);

// Dixon-Schneider: class-matrix eigenvectors over F_l (l = 1 mod exp(G)),
// lifted to Q(zeta_exp(G)) through the power maps. Rows come back in
// canonical order (trivial first, then by dim and lexicographic values).
CharacterTable character_table_dixon(const FiniteMatrixGroup& g);

// Validation shared by the Dixon path and file loading; returns the names
// of violated checks (empty means valid).
std::vector<std::string> table_violations(const CharacterTable& t);

// Canonical row order: trivial first, then (dim, lexicographic values).
void canonical_sort(CharacterTable& t);

// Valuewise zeta -> zeta^(p^e); gcd(p, m) = 1 with m the value cyclotomy.
ClassFunction twist_character(const ClassFunction& chi, unsigned e, unsigned long p, unsigned m);

// Permutation pi with twist(rows[i]) == rows[pi[i]]; throws
// "table not Galois-stable" if a twisted row matches nothing.
std::vector<unsigned> twist_permutation(const CharacterTable& t, unsigned e, unsigned long p);

}  // namespace fsig
