// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failed criteria. Expected total runtime is a few minutes, dominated by
// the finite-field oracle sweep.

#include <cstdlib>
#include <iostream>
#include <numeric>
#include <sstream>
#include <vector>

#include "fsig/io.hpp"
#include "fsig/oracle.hpp"

using namespace fsig;

namespace {

struct Family {
  std::string label;
  std::string file;  // shipped table under data/tables/
  FiniteMatrixGroup group;
  std::vector<EigenvalueProfile> profiles;
  CharacterTable table;
};

Family make_family(const std::string& label, const std::string& file, const std::string& name,
                   unsigned n = 0, std::vector<long> weights = {}) {
  BuiltinGroup b = builtin_family(name, n, weights);
  Family f;
  f.label = label;
  f.file = file;
  f.group = close_group(b.generators, b.expected_order);
  f.profiles = eigenvalue_profiles(f.group);
  f.table = character_table_dixon(f.group);
  return f;
}

Integer ipow(unsigned long b, unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), b, e);
  return r;
}

int run_cli(const std::string& args) {
  std::string cmd = std::string(FSIG_BIN) + " " + args + " > /tmp/fsig_acc_out.txt 2>&1";
  int status = std::system(cmd.c_str());
  return (status >= 0) ? ((status >> 8) & 0xff) : -1;
}

std::string cli_output() { return read_file("/tmp/fsig_acc_out.txt"); }

int failures = 0;

void report(int id, const std::string& what, bool ok, const std::string& detail = "") {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id << ": " << what;
  if (!ok && !detail.empty()) std::cout << "  [" << detail << "]";
  std::cout << std::endl;
  if (!ok) ++failures;
}

const std::vector<unsigned long> kSignaturePrimes = {5, 7, 11, 13};
const std::vector<unsigned long> kOraclePrimes = {2, 3, 5, 7, 11, 13};

}  // namespace

int main() {
  std::vector<Family> sig_families;  // the criterion-1 list
  sig_families.push_back(make_family("cyclic_2", "cyclic_2.json", "cyclic_weights", 2, {1, 1}));
  sig_families.push_back(make_family("cyclic_3", "cyclic_3.json", "cyclic_weights", 3, {1, 2}));
  sig_families.push_back(make_family("cyclic_5", "cyclic_5.json", "cyclic_weights", 5, {1, 4}));
  sig_families.push_back(make_family("cyclic_7", "cyclic_7.json", "cyclic_weights", 7, {1, 6}));
  sig_families.push_back(make_family("binary_dihedral_2", "binary_dihedral_2.json",
                                     "binary_dihedral", 2));
  sig_families.push_back(make_family("binary_dihedral_3", "binary_dihedral_3.json",
                                     "binary_dihedral", 3));
  sig_families.push_back(make_family("binary_tetrahedral", "binary_tetrahedral.json",
                                     "binary_tetrahedral"));

  std::vector<Family> all_families;  // criterion 4/7 add the reflection example
  for (const Family& f : sig_families) all_families.push_back(f);
  all_families.push_back(make_family("symmetric2_reflection", "symmetric2_reflection.json",
                                     "symmetric2_reflection"));

  // ---- criteria 1 + 2: main theorem values and certified convergence ----
  {
    bool ok1 = true, ok2 = true;
    std::string detail;
    for (const Family& f : sig_families) {
      for (unsigned long p : kSignaturePrimes) {
        if (f.group.order() % p == 0) continue;
        SignatureReport rep = convergence_report(f.group, f.profiles, f.table, p, 1, 6);
        for (unsigned i = 0; i < f.table.num_rows(); ++i)
          if (rep.signatures[i] != make_rational(f.table.dims[i], f.group.order())) {
            ok1 = false;
            detail = f.label + " p=" + std::to_string(p);
          }
        for (const ConvergenceRow& row : rep.rows)
          if (row.gap > row.bound) {
            ok1 = false;
            detail = f.label + " p=" + std::to_string(p) + " e=" + std::to_string(row.e);
          }
        if (rep.signatures[0] != make_rational(1, f.group.order())) ok2 = false;
        // the CLI agrees and exits cleanly
      }
      std::ostringstream cli;
      cli << "signature --p 13 --e-min 1 --e-max 2 ";
      if (f.label.rfind("cyclic", 0) == 0) {
        unsigned n = f.group.order();
        cli << "--family cyclic_weights --n " << n << " --weights 1," << (n - 1);
        if (13 % n == 0) continue;
      } else if (f.label == "binary_dihedral_2") {
        cli << "--family binary_dihedral --n 2";
      } else if (f.label == "binary_dihedral_3") {
        cli << "--family binary_dihedral --n 3";
      } else {
        cli << "--family binary_tetrahedral";
      }
      if (run_cli(cli.str()) != 0) {
        ok1 = false;
        detail = f.label + " (cli)";
      }
    }
    report(1, "main theorem signatures exact, gap <= certified bound (e <= 6)", ok1, detail);
    report(2, "F-signature column i=0 equals 1/|G| exactly", ok2);
  }

  // ---- criterion 3: dimension conservation ----
  {
    bool ok = true;
    std::string detail;
    long identities = 0;
    for (const Family& f : sig_families) {
      for (unsigned long p : kSignaturePrimes) {
        if (f.group.order() % p == 0) continue;
        for (unsigned e = 1; e <= 6; ++e) {
          ClassFunction bullet = bullet_character(f.group, f.profiles, ipow(p, e));
          FrobeniusDecomposition dec = multiplicities(f.table, bullet, e, p);
          Integer total = 0;
          for (unsigned i = 0; i < f.table.num_rows(); ++i)
            total += dec.mults[i] * f.table.dims[i];
          ++identities;
          if (total != ipow(p, 2 * e)) {
            ok = false;
            detail = f.label + " p=" + std::to_string(p) + " e=" + std::to_string(e);
          }
        }
      }
    }
    report(3, "dimension conservation sum c_i dim_i = p^(2e) (" + std::to_string(identities) +
                  " identities)",
           ok, detail);
  }

  // ---- criterion 4: oracle equivalence ----
  {
    bool ok = true;
    std::string detail;
    long runs = 0;
    for (const Family& f : all_families) {
      if (f.group.order() > 24 || f.group.dim != 2) continue;
      for (unsigned long p : kOraclePrimes) {
        if (f.group.order() % p == 0) continue;
        for (unsigned e = 1;; ++e) {
          if (ipow(p, 2 * e) > 4096) break;
          OracleRun oracle = oracle_run(f.group, f.table, p, e, 4096);
          ClassFunction bullet = bullet_character(f.group, f.profiles, oracle.q);
          FrobeniusDecomposition dec = multiplicities(f.table, bullet, e, p);
          ++runs;
          for (unsigned c = 0; c < f.group.num_classes(); ++c)
            if (oracle.characters[c] != bullet.values[c]) {
              ok = false;
              detail = f.label + " p=" + std::to_string(p) + " e=" + std::to_string(e) +
                       " class=" + std::to_string(c);
            }
          if (oracle.mults != dec.mults) {
            ok = false;
            detail = f.label + " p=" + std::to_string(p) + " e=" + std::to_string(e);
          }
        }
      }
    }
    report(4, "oracle equivalence: kernel-rank characters and multiplicities (" +
                  std::to_string(runs) + " runs, p^(2e) <= 4096)",
           ok, detail);
  }

  // ---- criterion 5: A_1 closed forms ----
  {
    bool ok = true;
    std::string detail;
    const Family& a1 = sig_families[0];
    for (unsigned long p : {3ul, 5ul, 7ul, 11ul, 13ul}) {
      SignatureReport rep = convergence_report(a1.group, a1.profiles, a1.table, p, 1, 6);
      for (unsigned e = 1; e <= 6; ++e) {
        Integer q = ipow(p, e);
        const std::vector<Integer>& c = rep.decompositions[e - 1];
        if (c[0] != (q * q + 1) / 2 || c[1] != (q * q - 1) / 2) {
          ok = false;
          detail = "p=" + std::to_string(p) + " e=" + std::to_string(e);
        }
      }
      for (const ConvergenceRow& row : rep.rows) {
        Rational expected_gap = Rational(1) / (Rational(2) * Rational(row.q) * Rational(row.q));
        if (row.gap != expected_gap || row.gap > row.bound) {
          ok = false;
          detail = "gap p=" + std::to_string(p) + " e=" + std::to_string(row.e);
        }
      }
      // oracle confirmation at e = 1
      OracleRun oracle = oracle_run(a1.group, a1.table, p, 1, 4096);
      if (oracle.mults[0] != (Integer(p) * p + 1) / 2 || oracle.mults[1] != (Integer(p) * p - 1) / 2) {
        ok = false;
        detail = "oracle p=" + std::to_string(p);
      }
    }
    report(5, "A_1 closed forms c = ((q^2+1)/2, (q^2-1)/2), gaps 1/(2q^2) <= bound", ok, detail);
  }

  // ---- criterion 6: pseudo-reflection semantics ----
  {
    bool ok = true;
    std::string detail;
    int info_code = run_cli("info --family symmetric2_reflection --p 3");
    if (info_code != 0 || cli_output().find("pseudo-reflection present") == std::string::npos) {
      ok = false;
      detail = "info flag";
    }
    if (run_cli("signature --family symmetric2_reflection --p 3 --e-min 1 --e-max 2") != 1) {
      ok = false;
      detail = "signature refusal";
    }
    if (run_cli("decompose --family symmetric2_reflection --p 3 --e-min 1 --e-max 1") != 1) {
      ok = false;
      detail = "decompose refusal";
    }
    int dec_code = run_cli(
        "decompose --family symmetric2_reflection --p 3 --e-min 1 --e-max 1 --as-g-module "
        "--format csv --out /tmp/fsig_acc_s2.csv");
    if (dec_code != 0) {
      ok = false;
      detail = "as-g-module run";
    } else {
      auto rows = parse_decomposition_csv(read_file("/tmp/fsig_acc_s2.csv"));
      // (q^2+q)/2 = 6, (q^2-q)/2 = 3 at q=3; and neither of the two valid
      // pushforward decompositions R^(q^2) or M_1^(q^2) from the example.
      bool values_ok = rows.size() == 1 && rows[0][2] == 6 && rows[0][3] == 3;
      bool differs = values_ok && !(rows[0][2] == 9 && rows[0][3] == 0) &&
                     !(rows[0][2] == 0 && rows[0][3] == 9);
      if (!values_ok || !differs) {
        ok = false;
        detail = "g-module values";
      }
    }
    report(6, "pseudo-reflection example: flagged, signature refused, G-module values (6,3)", ok,
           detail);
  }

  // ---- criterion 7: character table integrity ----
  {
    bool ok = true;
    std::string detail;
    for (const Family& f : all_families) {
      std::vector<std::string> violations = table_violations(f.table);
      if (!violations.empty()) {
        ok = false;
        detail = f.label + " " + violations[0];
        continue;
      }
      // column orthogonality
      for (unsigned c = 0; c < f.table.num_classes() && ok; ++c)
        for (unsigned d = 0; d < f.table.num_classes(); ++d) {
          CycloNumber acc = CycloNumber::zero(f.table.cyclotomy);
          for (const auto& row : f.table.rows)
            acc = acc + conj(row.values[c]) * row.values[d];
          CycloNumber expect = CycloNumber::zero(f.table.cyclotomy);
          if (c == d) expect.c[0] = make_rational(f.table.group_order, f.table.class_sizes[c]);
          if (acc != expect) {
            ok = false;
            detail = f.label + " column orthogonality";
            break;
          }
        }
      // shipped known table equals the computed one after canonical sorting
      CharacterTable shipped;
      try {
        shipped = load_character_table(read_file(std::string(FSIG_DATA_DIR) + "/tables/" + f.file),
                                       f.group);
      } catch (const Error& ex) {
        ok = false;
        detail = f.label + ": " + ex.what();
        continue;
      }
      if (shipped.dims != f.table.dims) {
        ok = false;
        detail = f.label + " shipped dims";
      } else {
        for (unsigned i = 0; i < f.table.num_rows(); ++i)
          if (shipped.rows[i].values != f.table.rows[i].values) {
            ok = false;
            detail = f.label + " shipped row " + std::to_string(i);
          }
      }
      // twist permutation: fixes row 0, order divides ord_{exp(G)}(p)
      for (unsigned long p : kSignaturePrimes) {
        if (f.group.order() % p == 0) continue;
        unsigned e0 = multiplicative_order(p, f.group.exponent());
        std::vector<unsigned> pi = twist_permutation(f.table, 1, p);
        if (pi[0] != 0) {
          ok = false;
          detail = f.label + " twist fixes 0";
        }
        std::vector<unsigned> power(pi.size());
        for (unsigned i = 0; i < pi.size(); ++i) power[i] = i;
        unsigned ord = 0;
        for (unsigned k = 1; k <= e0; ++k) {
          bool ident = true;
          for (unsigned i = 0; i < pi.size(); ++i) {
            power[i] = pi[power[i]];
          }
          for (unsigned i = 0; i < pi.size(); ++i) ident = ident && power[i] == i;
          if (ident) {
            ord = k;
            break;
          }
        }
        if (ord == 0 || e0 % ord != 0) {
          ok = false;
          detail = f.label + " twist order p=" + std::to_string(p);
        }
      }
    }
    report(7, "Dixon tables: orthogonality, sum dims^2 = |G|, equal shipped tables, twist order",
           ok, detail);
  }

  // ---- criterion 8: module decompositions and pair signatures ----
  {
    bool ok = true;
    std::string detail;
    for (const Family& f : sig_families) {
      for (unsigned i = 0; i < f.table.num_rows(); ++i)
        for (unsigned j = 0; j < f.table.num_rows(); ++j)
          if (signature_pair(f.table, i, j) !=
              make_rational((unsigned long)f.table.dims[i] * f.table.dims[j], f.group.order())) {
            ok = false;
            detail = f.label + " pair signature";
          }
      for (unsigned long p : kSignaturePrimes) {
        if (f.group.order() % p == 0) continue;
        for (unsigned e = 1; e <= 6; ++e) {
          Integer q = ipow(p, e);
          Integer qd = q * q;  // d = 2
          ClassFunction bullet = bullet_character(f.group, f.profiles, q);
          for (unsigned i = 0; i < f.table.num_rows(); ++i) {
            // module_decomposition itself rejects non-integral or negative
            // entries and checks the dimension identity; recheck here.
            std::vector<Integer> d = module_decomposition(f.table, bullet, i, e, p);
            Integer total = 0;
            for (unsigned j = 0; j < f.table.num_rows(); ++j) {
              if (d[j] < 0) ok = false;
              total += d[j] * f.table.dims[j];
            }
            if (total != qd * f.table.dims[i]) {
              ok = false;
              detail = f.label + " p=" + std::to_string(p) + " e=" + std::to_string(e) +
                       " i=" + std::to_string(i);
            }
          }
        }
      }
    }
    report(8, "module decompositions: integral, dimension identity, s(M_i,M_j) exact", ok, detail);
  }

  std::cout << (failures == 0 ? "acceptance: all criteria passed"
                              : "acceptance: " + std::to_string(failures) + " criteria FAILED")
            << std::endl;
  return failures;
}
