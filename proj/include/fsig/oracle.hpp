#pragma once

// Brute-force verification in actual characteristic p: the group action on
// the monomial basis of S/m^[q] over a concrete finite field, eigenvalue
// multiplicities by kernel ranks, and an independent recomputation of the
// decomposition multiplicities. Deliberately shares nothing with the
// formula path except cyclotomic arithmetic and the inner product.

#include <cstdint>

#include "fsig/characters.hpp"
#include "fsig/group.hpp"

namespace fsig {

// F_{p^s} with a fixed element xi of multiplicative order `root_order` =
// lcm(entry cyclotomy, exp G); s is the multiplicative order of p modulo
// root_order, the minimal splitting degree. Elements are encoded as
// base-p digit strings packed into an integer: sum digit_i * p^i.
class FiniteFieldContext {
 public:
  FiniteFieldContext(unsigned long p, unsigned root_order);

  unsigned long p() const { return p_; }
  unsigned s() const { return s_; }
  unsigned long card() const { return card_; }
  unsigned root_order() const { return root_order_; }
  unsigned long xi() const { return xi_; }

  unsigned long add(unsigned long a, unsigned long b) const;
  unsigned long neg(unsigned long a) const;
  unsigned long mul(unsigned long a, unsigned long b) const;
  unsigned long pow(unsigned long a, unsigned long e) const;
  unsigned long inv(unsigned long a) const;

  // Fast byte tables, available when card() <= 256 (all desk-scale runs).
  bool has_tables() const { return !mul_tab_.empty(); }
  const uint8_t* mul_table() const { return mul_tab_.data(); }
  const uint8_t* add_table() const { return add_tab_.data(); }

 private:
  unsigned long p_ = 0;
  unsigned s_ = 1;
  unsigned long card_ = 0;
  unsigned root_order_ = 1;
  unsigned long xi_ = 1;
  std::vector<unsigned long> irred_;  // x^s = -(irred[0] + irred[1] x + ...)
  std::vector<uint8_t> mul_tab_, add_tab_;

  unsigned long mul_slow(unsigned long a, unsigned long b) const;
};

FiniteFieldContext make_context(const FiniteMatrixGroup& g, unsigned long p);

// Entrywise reduction Z[zeta][1/denominators] -> F_{p^s} via
// zeta_cyclotomy -> xi^(root_order/cyclotomy); throws InputError on a
// denominator divisible by p.
std::vector<unsigned long> reduce_matrix(const CycloMatrix& g, const FiniteFieldContext& ctx);

// Action of a reduced matrix on the monomials {x^lambda : lambda_i < q},
// indexed lexicographically; q must be a power of p. Entries are stored
// as bytes when the field fits (card <= 256), as words otherwise.
struct ActionMatrix {
  unsigned long q = 1;
  unsigned dim = 0;  // number of variables
  size_t n = 1;      // q^dim
  std::vector<uint8_t> bytes;
  std::vector<unsigned long> words;

  bool byte_mode() const { return !bytes.empty(); }
  unsigned long at(size_t i, size_t j) const {
    return byte_mode() ? bytes[i * n + j] : words[i * n + j];
  }
};

ActionMatrix frobenius_quotient_action(const std::vector<unsigned long>& gbar, unsigned dim,
                                       const FiniteFieldContext& ctx, const Integer& q);

// Brauer character of the action: sum over eigenvalue kernel ranks,
// lifted as zeta_value_order^(...) at `value_order` (a multiple of m).
CycloNumber brauer_character_of_action(const ActionMatrix& a, unsigned m,
                                       const FiniteFieldContext& ctx, unsigned value_order);

struct OracleRun {
  unsigned long p = 0;
  unsigned e = 0;
  Integer q;
  std::vector<CycloNumber> characters;  // per class, at order exp(G)
  std::vector<Integer> mults;           // via the shared inner-product formula
};

// Full oracle pass; cap limits q^dim (basis monomials).
OracleRun oracle_run(const FiniteMatrixGroup& g, const CharacterTable& table, unsigned long p,
                     unsigned e, size_t cap = 4096);

}  // namespace fsig
