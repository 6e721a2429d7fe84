// Command-line front end: every analysis and construction operation of the
// library, file-based, with deterministic output. Exit codes: 0 success,
// 2 failed verify/mub verdict, 3 proven not equivalent, 4 search budget
// exhausted, 64 usage errors, 65 malformed documents, 74 file IO errors.

#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chm/analysis.hpp"
#include "chm/catalogue.hpp"
#include "chm/construct.hpp"
#include "chm/io.hpp"

namespace {

using namespace chm;

double parse_double(const std::string& s, const std::string& what) {
  size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size())
    throw std::invalid_argument(what + ": not a number: " + s);
  return v;
}

// Radians by default; with --turns the value must be an exact rational "p/q".
PhaseValue parse_phase(const std::string& s, bool turns,
                       const std::string& what) {
  if (turns) return PhaseValue::turns(Rational::parse(s));
  return PhaseValue::radians(parse_double(s, what));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

// Free phases for rows 1..m-1; row 0 is pinned to phase 0.
DiagonalPhase parse_diagonal(const std::string& csv, int m, bool turns) {
  const std::vector<std::string> parts = split(csv, ',');
  if (static_cast<int>(parts.size()) != m - 1)
    throw std::invalid_argument("--phases: expected " + std::to_string(m - 1) +
                                " comma-separated values, got " +
                                std::to_string(parts.size()));
  DiagonalPhase d;
  d.push_back(PhaseValue::turns(Rational(0)));
  for (const auto& p : parts) d.push_back(parse_phase(p, turns, "--phases"));
  return d;
}

double env_or(double fallback) {
  const char* s = std::getenv("CHM_DEFAULT_TOL");
  if (!s || !*s) return fallback;
  return parse_double(s, "CHM_DEFAULT_TOL");
}

std::vector<std::string> entry_param_names(const CatalogueEntry& e) {
  if (e.kind == EntryKind::AffineFamily)
    return catalogue_family(e.id).param_names();
  if (e.kind == EntryKind::NonlinearFamily) return {"e", "f"};
  return {};
}

std::vector<PhaseValue> resolve_params(const CatalogueEntry& e,
                                       const std::vector<std::string>& raw,
                                       bool turns) {
  const std::vector<std::string> names = entry_param_names(e);
  std::vector<PhaseValue> values(names.size(), PhaseValue::turns(Rational(0)));
  std::vector<bool> seen(names.size(), false);
  for (const auto& item : raw) {
    const size_t eq = item.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("--param: expected name=value, got " + item);
    const std::string name = item.substr(0, eq);
    size_t k = 0;
    while (k < names.size() && names[k] != name) ++k;
    if (k == names.size())
      throw std::invalid_argument("--param: " + e.id +
                                  " has no parameter named " + name);
    if (seen[k])
      throw std::invalid_argument("--param: " + name + " given twice");
    seen[k] = true;
    values[k] = parse_phase(item.substr(eq + 1), turns, "--param " + name);
  }
  return values;
}

void emit_matrix(const HadamardMatrix& m, const std::string& out) {
  save_text(out, serialize(m));
}

void print_chain_value(std::complex<double> v) {
  std::printf("%.17g %.17g\n", v.real(), v.imag());
}

std::string block_text(const std::vector<std::vector<int>>& partition) {
  std::string s;
  for (const auto& block : partition) {
    s += "{";
    for (size_t k = 0; k < block.size(); ++k) {
      if (k) s += ",";
      s += std::to_string(block[k]);
    }
    s += "}";
  }
  return s;
}

int cmd_list() {
  std::printf("%-8s %-3s %-7s %-10s %s\n", "id", "n", "params", "kind",
              "notes");
  for (const auto& e : catalogue_list())
    std::printf("%-8s %-3d %-7d %-10s %s\n", e.id.c_str(), e.n, e.param_count,
                entry_kind_name(e.kind), e.notes.c_str());
  return 0;
}

int cmd_info(const std::string& id) {
  const CatalogueEntry& e = catalogue_entry(id);
  std::printf("id: %s\n", e.id.c_str());
  std::printf("n: %d\n", e.n);
  std::printf("kind: %s\n", entry_kind_name(e.kind));
  std::string names;
  for (const auto& s : entry_param_names(e)) {
    if (!names.empty()) names += ", ";
    names += s;
  }
  std::printf("params: %d%s%s%s\n", e.param_count, names.empty() ? "" : " (",
              names.c_str(), names.empty() ? "" : ")");
  if (e.validation_tol < 0)
    std::printf("tolerance: strict\n");
  else
    std::printf("tolerance: %g\n", e.validation_tol);
  std::printf("notes: %s\n", e.notes.c_str());
  return 0;
}

int cmd_patterns(const std::string& file, long max_nodes, int max_partitions) {
  const HadamardMatrix m = load_matrix(file);
  EnumerationLimits limits;
  if (max_nodes > 0) limits.max_nodes = max_nodes;
  if (max_partitions > 0) limits.max_partitions_per_chain = max_partitions;
  const auto spaces = enumerate_patterns(m, limits);
  std::printf("maximal spaces: %zu\n", spaces.size());
  for (size_t s = 0; s < spaces.size(); ++s) {
    const auto& [pattern, space] = spaces[s];
    std::printf("space %zu: dimension %d\n", s + 1, space.dimension);
    const int n = m.n();
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        std::printf("  pair (%d,%d): %s\n", i, j,
                    block_text(pattern.blocks[SubchainPattern::pair_index(
                                   n, i, j)])
                        .c_str());
    for (int k = 0; k < space.dimension; ++k) {
      std::printf("  basis %d:\n", k + 1);
      for (int i = 0; i < n; ++i) {
        std::string line = "   ";
        for (int j = 0; j < n; ++j) {
          line += " ";
          line += space.basis[k].at(i, j).str();
        }
        std::printf("%s\n", line.c_str());
      }
    }
  }
  return 0;
}

int run(int argc, char** argv) {
  CLI::App app{"complex Hadamard matrix toolkit"};
  app.require_subcommand(1);

  bool turns = false;
  app.add_flag("--turns", turns,
               "interpret phase arguments as rational turns, not radians");

  auto* list = app.add_subcommand("list", "print the catalogue index");

  auto* gen = app.add_subcommand("gen", "write a catalogue matrix document");
  std::string gen_id, gen_out = "-";
  std::vector<std::string> gen_params;
  gen->add_option("id", gen_id, "catalogue id")->required();
  gen->add_option("--param", gen_params, "family parameter as name=value");
  gen->add_option("-o,--output", gen_out, "output file ('-' for stdout)");

  auto* verify = app.add_subcommand("verify", "check a matrix document");
  std::string verify_file;
  double verify_tol = env_or(-1.0);
  verify->add_option("file", verify_file, "matrix document ('-' for stdin)")
      ->required();
  verify->add_option("--tol", verify_tol, "Gram deviation tolerance");

  auto* deph = app.add_subcommand("dephase", "normalize first row and column");
  std::string deph_file, deph_out = "-";
  deph->add_option("file", deph_file, "matrix document")->required();
  deph->add_option("-o,--output", deph_out, "output file");

  auto* def = app.add_subcommand("defect", "print the defect of a matrix");
  std::string def_file;
  bool def_kernel = false;
  def->add_option("file", def_file, "matrix document")->required();
  def->add_flag("--kernel", def_kernel, "also print a kernel basis");

  auto* inv = app.add_subcommand("invariants", "print the invariant set");
  std::string inv_file;
  inv->add_option("file", inv_file, "matrix document")->required();

  auto* equiv = app.add_subcommand("equiv", "search for an equivalence");
  std::string equiv_a, equiv_b;
  long equiv_budget = kDefaultSearchBudget;
  // Looser than the library default so that parameters given to only a few
  // decimal places still match the intended witness.
  double equiv_tol = env_or(1e-8);
  equiv->add_option("a", equiv_a, "first matrix document")->required();
  equiv->add_option("b", equiv_b, "second matrix document")->required();
  equiv->add_option("--budget", equiv_budget, "search node budget");
  equiv->add_option("--tol", equiv_tol, "entry comparison tolerance");

  auto* mub = app.add_subcommand("mub", "test a pair for unbiasedness");
  std::string mub_a, mub_b;
  double mub_tol = env_or(-1.0);
  mub->add_option("a", mub_a, "first matrix document")->required();
  mub->add_option("b", mub_b, "second matrix document")->required();
  mub->add_option("--tol", mub_tol, "Gram deviation tolerance");

  auto* tens = app.add_subcommand("tensor", "Kronecker product of two files");
  std::string tens_a, tens_b, tens_out = "-";
  tens->add_option("a", tens_a, "left factor document")->required();
  tens->add_option("b", tens_b, "right factor document")->required();
  tens->add_option("-o,--output", tens_out, "output file");

  auto* dita = app.add_subcommand(
      "dita", "block composition of an outer matrix with inner blocks");
  std::string dita_outer, dita_out = "-";
  std::vector<std::string> dita_inner, dita_phases;
  dita->add_option("outer", dita_outer, "outer matrix document")->required();
  dita->add_option("inner", dita_inner, "inner matrix documents")->required();
  dita->add_option("--phases", dita_phases,
                   "comma-separated phases for one inner block column "
                   "(repeat per block column 2..K; row 0 is fixed)");
  dita->add_option("-o,--output", dita_out, "output file");

  auto* dbl = app.add_subcommand("double", "size-doubling composition");
  std::string dbl_a, dbl_b, dbl_phases, dbl_out = "-";
  dbl->add_option("a", dbl_a, "first matrix document")->required();
  dbl->add_option("b", dbl_b, "second matrix document")->required();
  dbl->add_option("--phases", dbl_phases,
                  "comma-separated phases for rows 1..M-1");
  dbl->add_option("-o,--output", dbl_out, "output file");

  auto* quad = app.add_subcommand("quadruple", "size-quadrupling composition");
  std::string quad_files[4], quad_out = "-";
  std::vector<std::string> quad_phases;
  quad->add_option("a", quad_files[0], "block A document")->required();
  quad->add_option("b", quad_files[1], "block B document")->required();
  quad->add_option("c", quad_files[2], "block C document")->required();
  quad->add_option("d", quad_files[3], "block D document")->required();
  quad->add_option("--phases", quad_phases,
                   "comma-separated phases (repeat up to three times)");
  quad->add_option("-o,--output", quad_out, "output file");

  auto* chn = app.add_subcommand("chains", "print the chain of a row pair");
  std::string chn_file;
  int chn_i = 0, chn_j = 0;
  chn->add_option("file", chn_file, "matrix document")->required();
  chn->add_option("i", chn_i, "first row")->required();
  chn->add_option("j", chn_j, "second row")->required();

  auto* pat = app.add_subcommand("patterns", "enumerate maximal pattern "
                                             "spaces (N <= 6)");
  std::string pat_file;
  long pat_nodes = 0;
  int pat_parts = 0;
  pat->add_option("file", pat_file, "matrix document")->required();
  pat->add_option("--max-nodes", pat_nodes, "search node budget");
  pat->add_option("--max-partitions", pat_parts,
                  "partition cap per row pair");

  auto* info = app.add_subcommand("info", "print one catalogue entry");
  std::string info_id;
  info->add_option("id", info_id, "catalogue id")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 64;
  }

  if (list->parsed()) return cmd_list();

  if (gen->parsed()) {
    const std::string key = gen_id == "F12" ? "F12A" : gen_id;
    const CatalogueEntry& e = catalogue_entry(key);
    emit_matrix(catalogue_get(e.id, resolve_params(e, gen_params, turns)),
                gen_out);
    return 0;
  }

  if (verify->parsed()) {
    const HadamardReport r = is_hadamard(load_matrix(verify_file), verify_tol);
    std::fputs(to_json(r).c_str(), stdout);
    return r.pass ? 0 : 2;
  }

  if (deph->parsed()) {
    emit_matrix(dephase(load_matrix(deph_file)).dephased, deph_out);
    return 0;
  }

  if (def->parsed()) {
    DefectOptions opts;
    opts.want_kernel = def_kernel;
    const DefectReport r = defect(load_matrix(def_file), opts);
    std::printf("%d\n", r.defect);
    if (def_kernel)
      for (const auto& row : r.kernel) {
        std::string line;
        char buf[32];
        for (double v : row) {
          std::snprintf(buf, sizeof buf, "%.17g", v);
          if (!line.empty()) line += " ";
          line += buf;
        }
        std::printf("%s\n", line.c_str());
      }
    return 0;
  }

  if (inv->parsed()) {
    std::fputs(to_json(haagerup_invariants(load_matrix(inv_file))).c_str(),
               stdout);
    return 0;
  }

  if (equiv->parsed()) {
    const EquivalenceResult r = equivalence_search(
        load_matrix(equiv_a), load_matrix(equiv_b), equiv_budget, equiv_tol);
    if (r.status == EquivalenceStatus::Found) {
      std::fputs(to_json(*r.witness).c_str(), stdout);
      return 0;
    }
    if (r.status == EquivalenceStatus::NotFound) {
      std::fprintf(stderr, "not equivalent: the witness space is exhausted\n");
      return 3;
    }
    std::fprintf(stderr, "undecided: search budget exhausted after %ld nodes\n",
                 r.nodes_expanded);
    return 4;
  }

  if (mub->parsed()) {
    const bool u =
        is_unbiased_pair(load_matrix(mub_a), load_matrix(mub_b), mub_tol);
    std::printf("unbiased: %s\n", u ? "true" : "false");
    return u ? 0 : 2;
  }

  if (tens->parsed()) {
    emit_matrix(tensor(load_matrix(tens_a), load_matrix(tens_b)), tens_out);
    return 0;
  }

  if (dita->parsed()) {
    const HadamardMatrix outer = load_matrix(dita_outer);
    std::vector<HadamardMatrix> inner;
    inner.reserve(dita_inner.size());
    for (const auto& f : dita_inner) inner.push_back(load_matrix(f));
    if (inner.empty()) throw std::invalid_argument("dita: no inner blocks");
    const int m = inner[0].n();
    std::vector<DiagonalPhase> es;
    for (size_t k = 1; k < inner.size(); ++k) {
      if (k - 1 < dita_phases.size())
        es.push_back(parse_diagonal(dita_phases[k - 1], m, turns));
      else
        es.push_back(DiagonalPhase(m, PhaseValue::turns(Rational(0))));
    }
    if (dita_phases.size() + 1 > inner.size())
      throw std::invalid_argument("--phases: more diagonals than blocks");
    emit_matrix(dita_compose(outer, inner, es), dita_out);
    return 0;
  }

  if (dbl->parsed()) {
    const HadamardMatrix a = load_matrix(dbl_a);
    const HadamardMatrix b = load_matrix(dbl_b);
    DiagonalPhase e(a.n(), PhaseValue::turns(Rational(0)));
    if (!dbl_phases.empty()) e = parse_diagonal(dbl_phases, a.n(), turns);
    emit_matrix(doubled(a, b, e), dbl_out);
    return 0;
  }

  if (quad->parsed()) {
    if (quad_phases.size() > 3)
      throw std::invalid_argument("--phases: at most three diagonals");
    const HadamardMatrix a = load_matrix(quad_files[0]);
    const HadamardMatrix b = load_matrix(quad_files[1]);
    const HadamardMatrix c = load_matrix(quad_files[2]);
    const HadamardMatrix d = load_matrix(quad_files[3]);
    DiagonalPhase es[3] = {DiagonalPhase(a.n(), PhaseValue::turns(Rational(0))),
                           DiagonalPhase(a.n(), PhaseValue::turns(Rational(0))),
                           DiagonalPhase(a.n(), PhaseValue::turns(Rational(0)))};
    for (size_t k = 0; k < quad_phases.size(); ++k)
      es[k] = parse_diagonal(quad_phases[k], a.n(), turns);
    emit_matrix(quadrupled(a, b, c, d, es[0], es[1], es[2]), quad_out);
    return 0;
  }

  if (chn->parsed()) {
    const HadamardMatrix m = load_matrix(chn_file);
    for (const auto& v : chains(m, chn_i, chn_j)) print_chain_value(v);
    return 0;
  }

  if (pat->parsed()) return cmd_patterns(pat_file, pat_nodes, pat_parts);

  if (info->parsed()) return cmd_info(info_id);

  return 64;  // unreachable with require_subcommand(1)
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 65;
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 74;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 64;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
