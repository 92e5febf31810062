#pragma once

// File formats: cyclotomic number encoding, group input files, character
// table files, CSV exports and the structured run report. All exact;
// rationals are rendered as "num/den" strings, never as floats, except in
// the clearly marked *_decimal convenience fields.

#include <json.hpp>

#include <string>
#include <vector>

#include "fsig/characters.hpp"
#include "fsig/frobenius.hpp"
#include "fsig/group.hpp"

namespace fsig {

using Json = nlohmann::ordered_json;

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// {"order": n, "terms": [[exponent, "num/den"], ...]}
Json cyclo_to_json(const CycloNumber& a);
CycloNumber cyclo_from_json(const Json& j);

struct GroupFile {
  unsigned cyclotomy = 1;
  unsigned dim = 0;
  unsigned max_order = 0;
  std::vector<CycloMatrix> generators;
};

GroupFile parse_group_file(const std::string& text);

// Character table file, versioned. Loading validates against the group's
// class data and the table invariants; the result is canonically sorted.
Json character_table_to_json(const CharacterTable& t);
CharacterTable load_character_table(const std::string& text, const FiniteMatrixGroup& g);

// CSV: header "e,q,c_0,...,c_n"
std::string decomposition_csv(const std::vector<FrobeniusDecomposition>& rows);
std::vector<std::vector<Integer>> parse_decomposition_csv(const std::string& text);

// CSV: header "e,q,i,ratio_num,ratio_den,gap_num,gap_den,bound"
std::string convergence_csv(const SignatureReport& report);

// Group/validation metadata shared by the structured reports.
Json group_meta_json(const FiniteMatrixGroup& g, const std::string& source,
                     const ValidationReport& validation);

std::string decimal_approx(const Rational& q, int digits = 12);

}  // namespace fsig
