#include "fsig/io.hpp"

#include <fstream>
#include <sstream>

namespace fsig {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail_input("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail_input("cannot open file for writing: " + path);
  out << content;
  if (!out) fail_input("write failed: " + path);
}

Json cyclo_to_json(const CycloNumber& a) {
  Json terms = Json::array();
  for (size_t j = 0; j < a.c.size(); ++j)
    if (a.c[j] != 0) terms.push_back(Json::array({j, rational_str(a.c[j])}));
  return Json{{"order", a.order}, {"terms", std::move(terms)}};
}

CycloNumber cyclo_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("order") || !j.contains("terms"))
    fail_input("cyclotomic number must be {\"order\", \"terms\"}");
  unsigned n = j.at("order").get<unsigned>();
  if (n < 1) fail_input("cyclotomic order must be positive");
  CycloNumber out = CycloNumber::zero(n);
  for (const Json& term : j.at("terms")) {
    if (!term.is_array() || term.size() != 2) fail_input("term must be [exponent, \"num/den\"]");
    long k = term.at(0).get<long>();
    Rational coef = parse_rational(term.at(1).get<std::string>());
    out = out + coef * zeta(n, k);  // reduces to canonical form
  }
  return out;
}

static Json parse_json(const std::string& text, const char* what) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) fail_input(std::string("malformed JSON in ") + what);
  return j;
}

GroupFile parse_group_file(const std::string& text) {
  Json j = parse_json(text, "group file");
  GroupFile out;
  try {
    out.cyclotomy = j.at("cyclotomy").get<unsigned>();
    out.dim = j.at("dim").get<unsigned>();
    out.max_order = j.at("max_order").get<unsigned>();
    for (const Json& mat : j.at("generators")) {
      CycloMatrix m;
      m.dim = out.dim;
      m.order = out.cyclotomy;
      if (mat.size() != out.dim) fail_input("generator row count != dim");
      for (const Json& row : mat) {
        if (row.size() != out.dim) fail_input("generator column count != dim");
        for (const Json& cell : row) {
          CycloNumber v = cyclo_from_json(cell);
          if (out.cyclotomy % v.order != 0)
            fail_input("entry cyclotomy must divide the group cyclotomy");
          m.entries.push_back(embed(v, out.cyclotomy));
        }
      }
      out.generators.push_back(std::move(m));
    }
  } catch (const Json::exception& ex) {
    fail_input(std::string("group file: ") + ex.what());
  }
  if (out.generators.empty()) fail_input("group file has no generators");
  return out;
}

Json character_table_to_json(const CharacterTable& t) {
  Json classes = Json::array();
  for (unsigned c = 0; c < t.num_classes(); ++c)
    classes.push_back(Json{{"size", t.class_sizes[c]}, {"order", t.class_orders[c]}});
  Json rows = Json::array();
  for (unsigned i = 0; i < t.num_rows(); ++i) {
    Json values = Json::array();
    for (const CycloNumber& v : t.rows[i].values) values.push_back(cyclo_to_json(v));
    rows.push_back(Json{{"label", t.labels[i]}, {"values", std::move(values)}});
  }
  return Json{{"version", 1},
              {"classes", std::move(classes)},
              {"power_map", t.power_map},
              {"rows", std::move(rows)}};
}

CharacterTable load_character_table(const std::string& text, const FiniteMatrixGroup& g) {
  Json j = parse_json(text, "character table");
  CharacterTable t;
  t.group_order = g.order();
  t.cyclotomy = g.exponent();
  t.class_sizes = g.class_sizes;
  t.class_orders = g.element_orders;
  t.power_map = g.power_map;
  try {
    if (j.value("version", 0) != 1) fail_input("invalid character table: unsupported version");
    const Json& classes = j.at("classes");
    if (classes.size() != g.num_classes())
      fail_input("invalid character table: class count does not match the group");
    for (unsigned c = 0; c < g.num_classes(); ++c) {
      if (classes[c].at("size").get<unsigned>() != g.class_sizes[c] ||
          classes[c].at("order").get<unsigned>() != g.element_orders[c])
        fail_input("invalid character table: class data does not match the group");
    }
    if (j.contains("power_map")) {
      std::vector<std::vector<unsigned>> pm =
          j.at("power_map").get<std::vector<std::vector<unsigned>>>();
      if (pm != g.power_map) fail_input("invalid character table: power map does not match");
    }
    for (const Json& row : j.at("rows")) {
      ClassFunction cf;
      for (const Json& cell : row.at("values")) {
        CycloNumber v = cyclo_from_json(cell);
        if (t.cyclotomy % v.order != 0)
          fail_input("invalid character table: value cyclotomy must divide exp(G)");
        cf.values.push_back(embed(v, t.cyclotomy));
      }
      if (cf.values.size() != g.num_classes())
        fail_input("invalid character table: row length");
      std::optional<Rational> dim = as_rational(cf.values[0]);
      if (!dim || !is_integer(*dim) || *dim <= 0)
        fail_input("invalid character table: dimension mismatch");
      t.dims.push_back((unsigned)dim->get_num().get_ui());
      t.labels.push_back(row.value("label", ""));
      t.rows.push_back(std::move(cf));
    }
  } catch (const Json::exception& ex) {
    fail_input(std::string("character table: ") + ex.what());
  }
  std::vector<std::string> violations = table_violations(t);
  if (!violations.empty()) fail_input("invalid character table: " + violations[0]);
  canonical_sort(t);
  return t;
}

std::string decomposition_csv(const std::vector<FrobeniusDecomposition>& rows) {
  if (rows.empty()) fail("no decomposition rows");
  std::ostringstream os;
  os << "e,q";
  for (size_t i = 0; i < rows[0].mults.size(); ++i) os << ",c_" << i;
  os << "\n";
  for (const FrobeniusDecomposition& d : rows) {
    os << d.e << ',' << d.q.get_str();
    for (const Integer& c : d.mults) os << ',' << c.get_str();
    os << "\n";
  }
  return os.str();
}

std::vector<std::vector<Integer>> parse_decomposition_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) fail_input("empty CSV");
  std::vector<std::vector<Integer>> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<Integer> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.emplace_back(cell);
    out.push_back(std::move(row));
  }
  return out;
}

std::string convergence_csv(const SignatureReport& report) {
  std::ostringstream os;
  os << "e,q,i,ratio_num,ratio_den,gap_num,gap_den,bound\n";
  for (const ConvergenceRow& row : report.rows) {
    os << row.e << ',' << row.q.get_str() << ',' << row.i << ','
       << row.ratio.get_num().get_str() << ',' << row.ratio.get_den().get_str() << ','
       << row.gap.get_num().get_str() << ',' << row.gap.get_den().get_str() << ','
       << rational_str(row.bound) << "\n";
  }
  return os.str();
}

Json group_meta_json(const FiniteMatrixGroup& g, const std::string& source,
                     const ValidationReport& validation) {
  Json classes = Json::array();
  for (unsigned c = 0; c < g.num_classes(); ++c)
    classes.push_back(Json{{"size", g.class_sizes[c]}, {"order", g.element_orders[c]}});
  return Json{{"source", source},
              {"group_order", g.order()},
              {"dim", g.dim},
              {"cyclotomy", g.cyclotomy},
              {"exponent", g.exponent()},
              {"classes", std::move(classes)},
              {"validation",
               Json{{"p", validation.p},
                    {"p_coprime", validation.p_coprime},
                    {"pseudo_reflection_free", validation.pseudo_reflection_free},
                    {"pseudo_reflection_classes", validation.pseudo_reflection_classes}}}};
}

std::string decimal_approx(const Rational& q, int digits) {
  // Plain long division; marked auxiliary in every report that prints it.
  bool negative = q < 0;
  Integer num = abs(q.get_num());
  Integer den = q.get_den();
  Integer whole = num / den;
  Integer rem = num % den;
  std::ostringstream os;
  if (negative && (whole != 0 || rem != 0)) os << '-';
  os << whole.get_str();
  if (rem != 0) {
    os << '.';
    for (int i = 0; i < digits && rem != 0; ++i) {
      rem *= 10;
      Integer digit = rem / den;
      os << digit.get_str();
      rem %= den;
    }
  }
  return os.str();
}

}  // namespace fsig
