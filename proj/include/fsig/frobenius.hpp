#pragma once

// Decomposition multiplicities of the Frobenius pushforward, generalized
// F-signatures, and certified convergence reports.

#include "fsig/characters.hpp"
#include "fsig/group.hpp"

namespace fsig {

// Character of S/m^[q]: values[c] = prod_k geom_sum(zeta^k, q)^mult_k,
// computed from the eigenvalue profiles at order exp(G).
ClassFunction bullet_character(const FiniteMatrixGroup& g,
                               const std::vector<EigenvalueProfile>& profiles,
                               const Integer& q);

struct FrobeniusDecomposition {
  unsigned long p = 0;
  unsigned e = 0;
  Integer q;                    // p^e
  std::vector<Integer> mults;   // c_{0,e} .. c_{n,e}
  ValidationReport validity;    // copied from the group validation
};

// c_{i,e} = <twist(chi_i, e), chi_{S/m^[q]}>; exact nonnegative integers
// with sum_i c_i * dim_i = q^d. Requires gcd(p, |G|) = 1.
FrobeniusDecomposition multiplicities(const CharacterTable& table, const ClassFunction& bullet,
                                      unsigned e, unsigned long p);

// s(R, M_i) = dim V_i / |G|.
Rational generalized_f_signature(const CharacterTable& table, unsigned i);

// s(M_i, M_j) = dim V_i * dim V_j / |G|.
Rational signature_pair(const CharacterTable& table, unsigned i, unsigned j);

// Multiplicities d^i_{j,e} of the pushforward of M_i.
std::vector<Integer> module_decomposition(const CharacterTable& table, const ClassFunction& bullet,
                                          unsigned i, unsigned e, unsigned long p);

struct ConvergenceRow {
  unsigned e = 0;
  Integer q;
  unsigned i = 0;
  Rational ratio;  // c_{i,e} / q^d
  Rational gap;    // |ratio - s(R, M_i)|
  Rational bound;  // certified upper bound for the gap
};

struct SignatureReport {
  std::vector<Rational> signatures;             // s(R, M_i)
  std::vector<std::vector<Rational>> pairs;     // s(M_i, M_j)
  std::vector<ConvergenceRow> rows;
  std::vector<std::vector<Integer>> decompositions;  // per e in range
  unsigned e_min = 0, e_max = 0;
  unsigned e0 = 1;  // multiplicative order of p mod exp(G)
};

// Refuses (ValidationError) unless both validation flags hold: the limit
// statements assume p coprime to |G| and no pseudo-reflections.
SignatureReport convergence_report(const FiniteMatrixGroup& g,
                                   const std::vector<EigenvalueProfile>& profiles,
                                   const CharacterTable& table, unsigned long p,
                                   unsigned e_min, unsigned e_max);

}  // namespace fsig
