#pragma once

// Finite matrix groups over Q(zeta_n): closure from generators, conjugacy
// classes, power maps, element orders, eigenvalue profiles and the builtin
// families used throughout the test suite and the CLI.

#include <string>
#include <vector>

#include "fsig/cyclotomic.hpp"

namespace fsig {

struct CycloMatrix {
  unsigned dim = 0;
  unsigned order = 1;  // common cyclotomy of all entries
  std::vector<CycloNumber> entries;  // row-major, dim*dim

  static CycloMatrix identity(unsigned dim, unsigned order);
  const CycloNumber& at(unsigned i, unsigned j) const { return entries[i * dim + j]; }
  CycloNumber& at(unsigned i, unsigned j) { return entries[i * dim + j]; }
  CycloNumber trace() const;
  bool operator==(const CycloMatrix& o) const;
  // Canonical textual key for deduplication.
  std::string key() const;
};

CycloMatrix operator*(const CycloMatrix& a, const CycloMatrix& b);
CycloNumber determinant(const CycloMatrix& m);

struct FiniteMatrixGroup {
  unsigned dim = 0;
  unsigned cyclotomy = 1;
  std::vector<CycloMatrix> elements;      // element 0 is the identity
  std::vector<unsigned> inverse;          // element index -> inverse index
  std::vector<unsigned> class_of;         // element index -> class index
  std::vector<unsigned> class_reps;       // class index -> element index
  std::vector<unsigned> class_sizes;
  std::vector<unsigned> element_orders;   // per class
  std::vector<std::vector<unsigned>> power_map;  // [c][j] = class of rep_c^j, 0 <= j < ord

  unsigned order() const { return (unsigned)elements.size(); }
  unsigned num_classes() const { return (unsigned)class_reps.size(); }
  unsigned exponent() const;      // lcm of element orders
  unsigned product(unsigned a, unsigned b) const { return mult_table[a * elements.size() + b]; }
  // Class of the inverses of class c.
  unsigned inverse_class(unsigned c) const;
  CycloNumber class_trace(unsigned c) const { return elements[class_reps[c]].trace(); }

  std::vector<unsigned> mult_table;  // order x order, filled by close_group
};

// Enumerate the closure of the generators; throws if it exceeds max_order
// or a generator is singular.
FiniteMatrixGroup close_group(const std::vector<CycloMatrix>& generators, unsigned max_order);

struct EigenvalueProfile {
  unsigned class_index = 0;
  unsigned m = 1;                  // order of the class
  std::vector<unsigned> mults;     // mults[k] = multiplicity of eigenvalue zeta_m^k
};

EigenvalueProfile eigenvalue_profile(const FiniteMatrixGroup& g, unsigned class_index);
std::vector<EigenvalueProfile> eigenvalue_profiles(const FiniteMatrixGroup& g);

// True iff the class is nontrivial and fixes a hyperplane pointwise.
bool is_pseudo_reflection(const EigenvalueProfile& profile, unsigned dim);

struct ValidationReport {
  unsigned long p = 0;
  bool p_coprime = false;
  bool pseudo_reflection_free = false;
  std::vector<unsigned> pseudo_reflection_classes;
  bool ok() const { return p_coprime && pseudo_reflection_free; }
  std::string summary() const;
};

ValidationReport validate(const FiniteMatrixGroup& g, unsigned long p);

struct BuiltinGroup {
  std::string name;
  std::vector<CycloMatrix> generators;
  unsigned dim = 0;
  unsigned cyclotomy = 1;
  unsigned expected_order = 0;  // used as the closure sanity bound
};

// Families: cyclic_weights(n, weights), binary_dihedral(n),
// binary_tetrahedral(), symmetric2_reflection().
BuiltinGroup builtin_family(const std::string& name, unsigned n,
                            const std::vector<long>& weights);

}  // namespace fsig
