// Command-line front end: group selection, validation, decomposition and
// signature computation, oracle verification, exact report export.
//
// Exit codes: 0 success, 1 validation refusal, 2 input/parse error,
// 3 oracle mismatch.

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "fsig/io.hpp"
#include "fsig/oracle.hpp"

using namespace fsig;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRefused = 1;
constexpr int kExitInput = 2;
constexpr int kExitMismatch = 3;

struct RunConfig {
  std::string family;
  unsigned n = 0;
  std::string weights;
  std::string group_file;
  std::string table_file;
  unsigned long p = 0;
  unsigned e_min = 1;
  unsigned e_max = 1;
  size_t oracle_cap = 4096;
  std::string format = "report";
  std::string out;
  bool as_g_module = false;
};

void add_group_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--family", cfg.family,
                  "builtin family: cyclic_weights | binary_dihedral | binary_tetrahedral | "
                  "symmetric2_reflection");
  cmd->add_option("--n", cfg.n, "family parameter n");
  cmd->add_option("--weights", cfg.weights, "comma-separated weights for cyclic_weights");
  cmd->add_option("--group-file", cfg.group_file, "group input file (JSON)");
  cmd->add_option("--table-file", cfg.table_file, "character table file (JSON)");
  cmd->add_option("--p", cfg.p, "prime p")->required();
}

void add_range_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--e-min", cfg.e_min, "first Frobenius iterate (inclusive)");
  cmd->add_option("--e-max", cfg.e_max, "last Frobenius iterate (inclusive)");
}

void add_output_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--format", cfg.format, "csv | report")
      ->check(CLI::IsMember({"csv", "report"}));
  cmd->add_option("--out", cfg.out, "output path (default: stdout)");
}

bool is_prime_ul(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<long> parse_weights(const std::string& text) {
  std::vector<long> out;
  std::istringstream in(text);
  std::string cell;
  while (std::getline(in, cell, ',')) {
    try {
      out.push_back(std::stol(cell));
    } catch (const std::exception&) {
      fail_input("malformed weight list: " + text);
    }
  }
  return out;
}

struct ResolvedGroup {
  FiniteMatrixGroup group;
  std::string source;
};

ResolvedGroup resolve_group(const RunConfig& cfg) {
  if (!cfg.group_file.empty()) {
    GroupFile gf = parse_group_file(read_file(cfg.group_file));
    return {close_group(gf.generators, gf.max_order), "file:" + cfg.group_file};
  }
  if (cfg.family.empty()) fail_input("need --family or --group-file");
  BuiltinGroup b = builtin_family(cfg.family, cfg.n, parse_weights(cfg.weights));
  std::ostringstream src;
  src << cfg.family;
  if (cfg.family == "cyclic_weights") src << "(" << cfg.n << ",[" << cfg.weights << "])";
  else if (cfg.family == "binary_dihedral") src << "(" << cfg.n << ")";
  else src << "()";
  return {close_group(b.generators, b.expected_order), src.str()};
}

CharacterTable resolve_table(const RunConfig& cfg, const FiniteMatrixGroup& g) {
  if (!cfg.table_file.empty()) return load_character_table(read_file(cfg.table_file), g);
  return character_table_dixon(g);
}

void check_config(const RunConfig& cfg) {
  if (!is_prime_ul(cfg.p)) fail_input("--p must be a prime");
  if (cfg.e_max < cfg.e_min) fail_input("empty e-range (--e-max < --e-min)");
  if (cfg.oracle_cap < 1) fail_input("--oracle-cap must be >= 1");
}

void emit(const RunConfig& cfg, const std::string& content) {
  if (cfg.out.empty())
    std::cout << content;
  else
    write_file(cfg.out, content);
}

int cmd_info(const RunConfig& cfg) {
  ResolvedGroup rg = resolve_group(cfg);
  const FiniteMatrixGroup& g = rg.group;
  ValidationReport v = validate(g, cfg.p);
  std::cout << "group: " << rg.source << "\n"
            << "|G| = " << g.order() << ", dim = " << g.dim << ", cyclotomy = " << g.cyclotomy
            << ", exp(G) = " << g.exponent() << "\n"
            << "classes: " << g.num_classes() << "\n";
  for (unsigned c = 0; c < g.num_classes(); ++c)
    std::cout << "  class " << c << ": size " << g.class_sizes[c] << ", element order "
              << g.element_orders[c] << "\n";
  if (!v.pseudo_reflection_free) {
    std::cout << "warning: pseudo-reflection present:";
    for (unsigned c : v.pseudo_reflection_classes) std::cout << " class " << c;
    std::cout << "\n";
  }
  if (!v.p_coprime) {
    std::cout << "error: p divides |G| (p = " << cfg.p << ", |G| = " << g.order() << ")\n";
    return kExitRefused;
  }
  std::cout << "e_0 = ord_{exp(G)}(" << cfg.p << ") = " << multiplicative_order(cfg.p, g.exponent())
            << "\n"
            << "validation: " << v.summary() << "\n";
  return kExitOk;
}

int cmd_decompose(const RunConfig& cfg) {
  ResolvedGroup rg = resolve_group(cfg);
  const FiniteMatrixGroup& g = rg.group;
  ValidationReport v = validate(g, cfg.p);
  if (!v.p_coprime) {
    std::cerr << "refused: p divides |G| (" << v.summary() << ")\n";
    return kExitRefused;
  }
  if (!v.pseudo_reflection_free && !cfg.as_g_module) {
    std::cerr << "refused: pseudo-reflection present (" << v.summary()
              << "); pass --as-g-module for the G-module multiplicities of S/m^[q]\n";
    return kExitRefused;
  }
  CharacterTable table = resolve_table(cfg, g);
  std::vector<EigenvalueProfile> profiles = eigenvalue_profiles(g);

  std::vector<FrobeniusDecomposition> rows;
  for (unsigned e = cfg.e_min; e <= cfg.e_max; ++e) {
    Integer q;
    mpz_ui_pow_ui(q.get_mpz_t(), cfg.p, e);
    ClassFunction bullet = bullet_character(g, profiles, q);
    FrobeniusDecomposition dec = multiplicities(table, bullet, e, cfg.p);
    dec.validity = v;
    rows.push_back(std::move(dec));
  }
  bool g_module_only = !v.pseudo_reflection_free;
  if (g_module_only)
    std::cout << "note: G-module multiplicities of S/m^[q] (not a pushforward decomposition; "
                 "the group contains pseudo-reflections)\n";

  if (cfg.format == "csv") {
    emit(cfg, decomposition_csv(rows));
  } else {
    Json report = group_meta_json(g, rg.source, v);
    report["p"] = cfg.p;
    report["e0"] = multiplicative_order(cfg.p, g.exponent());
    report["labels"] = table.labels;
    report["dims"] = table.dims;
    report["interpretation"] =
        g_module_only ? "g_module_multiplicities" : "frobenius_pushforward_decomposition";
    Json decs = Json::array();
    for (const FrobeniusDecomposition& d : rows) {
      Json mults = Json::array();
      for (const Integer& c : d.mults) mults.push_back(c.get_str());
      decs.push_back(Json{{"e", d.e}, {"q", d.q.get_str()}, {"c", std::move(mults)}});
    }
    report["decompositions"] = std::move(decs);
    emit(cfg, report.dump(2) + "\n");
  }
  return kExitOk;
}

int cmd_signature(const RunConfig& cfg) {
  ResolvedGroup rg = resolve_group(cfg);
  const FiniteMatrixGroup& g = rg.group;
  ValidationReport v = validate(g, cfg.p);
  CharacterTable table = resolve_table(cfg, g);
  std::vector<EigenvalueProfile> profiles = eigenvalue_profiles(g);
  SignatureReport rep;
  try {
    rep = convergence_report(g, profiles, table, cfg.p, cfg.e_min, cfg.e_max);
  } catch (const ValidationError& ex) {
    std::cerr << "refused: " << ex.what() << "\n";
    return kExitRefused;
  }

  std::cout << "generalized F-signatures (exact, decimal approx in parentheses):\n";
  for (unsigned i = 0; i < rep.signatures.size(); ++i)
    std::cout << "  s(R, " << table.labels[i] << ") = " << rational_str(rep.signatures[i]) << "  ("
              << decimal_approx(rep.signatures[i]) << ")\n";
  std::cout << "e_0 = " << rep.e0 << "\n";

  if (cfg.format == "csv") {
    emit(cfg, convergence_csv(rep));
  } else {
    Json report = group_meta_json(g, rg.source, v);
    report["p"] = cfg.p;
    report["e0"] = rep.e0;
    report["labels"] = table.labels;
    report["dims"] = table.dims;
    Json sig = Json::array(), sig_dec = Json::array();
    for (const Rational& s : rep.signatures) {
      sig.push_back(rational_str(s));
      sig_dec.push_back(decimal_approx(s));
    }
    report["signatures"] = std::move(sig);
    report["signatures_decimal_approx"] = std::move(sig_dec);
    Json pairs = Json::array();
    for (const auto& row : rep.pairs) {
      Json jr = Json::array();
      for (const Rational& s : row) jr.push_back(rational_str(s));
      pairs.push_back(std::move(jr));
    }
    report["pair_signatures"] = std::move(pairs);
    Json conv = Json::array();
    for (const ConvergenceRow& row : rep.rows)
      conv.push_back(Json{{"e", row.e},
                          {"q", row.q.get_str()},
                          {"i", row.i},
                          {"ratio", rational_str(row.ratio)},
                          {"gap", rational_str(row.gap)},
                          {"bound", rational_str(row.bound)}});
    report["convergence"] = std::move(conv);
    emit(cfg, report.dump(2) + "\n");
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg) {
  ResolvedGroup rg = resolve_group(cfg);
  const FiniteMatrixGroup& g = rg.group;
  ValidationReport v = validate(g, cfg.p);
  if (!v.p_coprime) {
    std::cerr << "refused: p divides |G| (" << v.summary() << ")\n";
    return kExitRefused;
  }
  CharacterTable table = resolve_table(cfg, g);
  std::vector<EigenvalueProfile> profiles = eigenvalue_profiles(g);
  unsigned e0 = multiplicative_order(cfg.p, g.exponent());

  std::ostringstream out;
  bool all_equal = true;
  unsigned tested = 0;
  for (unsigned e = cfg.e_min; e <= cfg.e_max; ++e) {
    Integer q;
    mpz_ui_pow_ui(q.get_mpz_t(), cfg.p, e);
    Integer basis;
    mpz_pow_ui(basis.get_mpz_t(), q.get_mpz_t(), g.dim);
    if (basis > (unsigned long)cfg.oracle_cap) {
      out << "e=" << e << ": skipped (q^d exceeds the oracle cap)\n";
      continue;
    }
    ++tested;
    OracleRun oracle = oracle_run(g, table, cfg.p, e, cfg.oracle_cap);
    ClassFunction bullet = bullet_character(g, profiles, q);
    FrobeniusDecomposition dec = multiplicities(table, bullet, e, cfg.p);
    const char* kind = (e % e0 == 0) ? "paper check" : "extension check";
    for (unsigned c = 0; c < g.num_classes(); ++c) {
      bool eq = oracle.characters[c] == bullet.values[c];
      all_equal = all_equal && eq;
      out << "e=" << e << " q=" << q.get_str() << " class=" << c
          << " formula=" << to_string(bullet.values[c])
          << " oracle=" << to_string(oracle.characters[c]) << (eq ? " equal " : " MISMATCH ")
          << kind << "\n";
    }
    bool meq = oracle.mults == dec.mults;
    all_equal = all_equal && meq;
    out << "e=" << e << " q=" << q.get_str() << " multiplicities formula=[";
    for (size_t i = 0; i < dec.mults.size(); ++i)
      out << (i ? "," : "") << dec.mults[i].get_str();
    out << "] oracle=[";
    for (size_t i = 0; i < oracle.mults.size(); ++i)
      out << (i ? "," : "") << oracle.mults[i].get_str();
    out << (meq ? "] equal " : "] MISMATCH ") << kind << "\n";
  }
  if (tested == 0) fail("oracle instance too large for every e in range");
  out << (all_equal ? "verify: all comparisons equal\n" : "verify: MISMATCH detected\n");
  emit(cfg, out.str());
  if (!cfg.out.empty()) std::cout << (all_equal ? "verify: ok\n" : "verify: mismatch\n");
  return all_equal ? kExitOk : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Frobenius pushforward decompositions and generalized F-signatures of "
               "invariant subrings"};
  app.require_subcommand(1);
  RunConfig cfg;

  CLI::App* info = app.add_subcommand("info", "group summary and validation verdict");
  add_group_options(info, cfg);

  CLI::App* decompose = app.add_subcommand("decompose", "multiplicities c_{i,e} for an e-range");
  add_group_options(decompose, cfg);
  add_range_options(decompose, cfg);
  add_output_options(decompose, cfg);
  decompose->add_flag("--as-g-module", cfg.as_g_module,
                      "allow pseudo-reflection groups; results are G-module multiplicities");

  CLI::App* signature = app.add_subcommand("signature", "generalized F-signatures with certified "
                                                        "convergence table");
  add_group_options(signature, cfg);
  add_range_options(signature, cfg);
  add_output_options(signature, cfg);

  CLI::App* verify = app.add_subcommand("verify", "compare the formula path against the "
                                                  "finite-field oracle");
  add_group_options(verify, cfg);
  add_range_options(verify, cfg);
  add_output_options(verify, cfg);
  verify->add_option("--oracle-cap", cfg.oracle_cap, "max number of basis monomials (default 4096)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    check_config(cfg);
    if (info->parsed()) return cmd_info(cfg);
    if (decompose->parsed()) return cmd_decompose(cfg);
    if (signature->parsed()) return cmd_signature(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    fail_input("no subcommand given");
  } catch (const ValidationError& ex) {
    std::cerr << "refused: " << ex.what() << "\n";
    return kExitRefused;
  } catch (const InputError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitInput;
  } catch (const Error& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitInput;
  } catch (const std::exception& ex) {
    std::cerr << "internal error: " << ex.what() << "\n";
    return kExitInput;
  }
}
