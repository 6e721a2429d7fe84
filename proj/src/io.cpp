#include "chm/io.hpp"

#include <complex>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "chm/rational.hpp"

namespace chm {

namespace {

using Json = nlohmann::ordered_json;

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void expect(bool ok, const std::string& msg) {
  if (!ok) throw ParseError(msg);
}

std::string cell_path(const std::string& array, int i, int j) {
  return array + "[" + std::to_string(i) + "][" + std::to_string(j) + "]";
}

Json meta_json(const MatrixMeta& m) {
  Json params = Json::object();
  for (const auto& [k, v] : m.params) params[k] = v;
  Json j = Json::object();
  j["name"] = m.name;
  j["params"] = std::move(params);
  j["notes"] = m.notes;
  return j;
}

MatrixMeta parse_meta(const Json& j) {
  MatrixMeta meta;
  expect(j.is_object(), "meta: must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key == "name") {
      expect(value.is_string(), "meta.name: must be a string");
      meta.name = value.get<std::string>();
    } else if (key == "notes") {
      expect(value.is_string(), "meta.notes: must be a string");
      meta.notes = value.get<std::string>();
    } else if (key == "params") {
      expect(value.is_object(), "meta.params: must be an object");
      for (const auto& [pk, pv] : value.items()) {
        expect(pv.is_number(), "meta.params." + pk + ": must be a number");
        meta.params.emplace_back(pk, pv.get<double>());
      }
    } else {
      throw ParseError("meta." + key + ": unexpected field");
    }
  }
  return meta;
}

// Shared core of the matrix document; family documents embed it under "base".
Json matrix_json(const HadamardMatrix& m) {
  Json j = Json::object();
  j["format_version"] = "1";
  j["n"] = m.n();
  if (m.all_exact()) {
    j["representation"] = "phases_turns";
    Json grid = Json::array();
    for (int i = 0; i < m.n(); ++i) {
      Json row = Json::array();
      for (int c = 0; c < m.n(); ++c)
        row.push_back(m.at(i, c).phase().turns_value().str());
      grid.push_back(std::move(row));
    }
    j["phases_turns"] = std::move(grid);
  } else {
    j["representation"] = "entries";
    Json grid = Json::array();
    for (int i = 0; i < m.n(); ++i) {
      Json row = Json::array();
      for (int c = 0; c < m.n(); ++c) {
        const std::complex<double> v = m.value(i, c);
        Json cell = Json::object();
        cell["re"] = v.real();
        cell["im"] = v.imag();
        row.push_back(std::move(cell));
      }
      grid.push_back(std::move(row));
    }
    j["entries"] = std::move(grid);
  }
  j["meta"] = meta_json(m.meta());
  return j;
}

HadamardMatrix matrix_from_json(const Json& j, double modulus_tol,
                                const std::string& prefix) {
  auto at = [&prefix](const std::string& key) {
    return prefix.empty() ? key : prefix + "." + key;
  };
  expect(j.is_object(), at("document") + ": must be an object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "format_version" && key != "n" && key != "representation" &&
        key != "phases_turns" && key != "entries" && key != "meta")
      throw ParseError(at(key) + ": unexpected field");
  }
  expect(j.contains("format_version") && j.at("format_version").is_string() &&
             j.at("format_version").get<std::string>() == "1",
         at("format_version") + ": expected \"1\"");
  expect(j.contains("n") && j.at("n").is_number_integer(),
         at("n") + ": missing or not an integer");
  const int n = j.at("n").get<int>();
  expect(n >= 1, at("n") + ": must be positive");
  expect(j.contains("representation") && j.at("representation").is_string(),
         at("representation") + ": missing or not a string");
  const std::string rep = j.at("representation").get<std::string>();
  expect(rep == "phases_turns" || rep == "entries",
         at("representation") +
             ": expected \"phases_turns\" or \"entries\"");
  const bool has_turns = j.contains("phases_turns");
  const bool has_entries = j.contains("entries");
  expect(!(has_turns && has_entries),
         at("document") + ": both representations present");
  expect(has_turns || has_entries,
         at("document") + ": no representation payload");
  expect((rep == "phases_turns") == has_turns,
         at("representation") + ": does not match the payload field");

  const Json& grid = j.at(rep);
  expect(grid.is_array() && static_cast<int>(grid.size()) == n,
         at(rep) + ": expected " + std::to_string(n) + " rows");
  std::vector<UnimodularEntry> cells;
  cells.reserve(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    const Json& row = grid[i];
    expect(row.is_array() && static_cast<int>(row.size()) == n,
           at(rep) + "[" + std::to_string(i) + "]: expected " +
               std::to_string(n) + " cells");
    for (int c = 0; c < n; ++c) {
      const Json& cell = row[c];
      const std::string path = at(cell_path(rep, i, c));
      if (rep == "phases_turns") {
        if (cell.is_string()) {
          const std::string s = cell.get<std::string>();
          Rational r;
          try {
            r = Rational::parse(s);
          } catch (const std::exception&) {
            throw ParseError(path + ": not a rational \"p/q\"");
          }
          expect(r.str() == s, path + ": not in lowest \"p/q\" form");
          cells.push_back(UnimodularEntry::from_turns(r));
        } else if (cell.is_number()) {
          cells.push_back(UnimodularEntry::from_phase(
              PhaseValue::radians(cell.get<double>() * kTau)));
        } else {
          throw ParseError(path + ": expected a \"p/q\" string or a number");
        }
      } else {
        expect(cell.is_object(), path + ": expected an {re, im} object");
        for (const auto& [k, v] : cell.items()) {
          (void)v;
          expect(k == "re" || k == "im", path + "." + k + ": unexpected field");
        }
        expect(cell.contains("re") && cell.at("re").is_number(),
               path + ".re: missing or not a number");
        expect(cell.contains("im") && cell.at("im").is_number(),
               path + ".im: missing or not a number");
        const UnimodularEntry e = UnimodularEntry::from_value(
            {cell.at("re").get<double>(), cell.at("im").get<double>()});
        expect(e.modulus_error() <= modulus_tol,
               path + ": modulus deviates from 1 by " +
                   std::to_string(e.modulus_error()));
        cells.push_back(e);
      }
    }
  }

  MatrixMeta meta;
  if (j.contains("meta")) meta = parse_meta(j.at("meta"));
  return HadamardMatrix(n, std::move(cells), std::move(meta));
}

Json parse_document(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed document: ") + e.what());
  }
}

Json rational_grid_json(const RationalMatrix& m) {
  Json grid = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).str());
    grid.push_back(std::move(row));
  }
  return grid;
}

RationalMatrix rational_grid_from_json(const Json& j, int n,
                                       const std::string& path) {
  expect(j.is_array() && static_cast<int>(j.size()) == n,
         path + ": expected " + std::to_string(n) + " rows");
  RationalMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    const Json& row = j[i];
    expect(row.is_array() && static_cast<int>(row.size()) == n,
           path + "[" + std::to_string(i) + "]: expected " +
               std::to_string(n) + " cells");
    for (int c = 0; c < n; ++c) {
      const Json& cell = row[c];
      const std::string p = path + "[" + std::to_string(i) + "][" +
                            std::to_string(c) + "]";
      expect(cell.is_string(), p + ": expected a \"p/q\" string");
      try {
        m.at(i, c) = Rational::parse(cell.get<std::string>());
      } catch (const std::exception&) {
        throw ParseError(p + ": not a rational \"p/q\"");
      }
    }
  }
  return m;
}

Json phases_json(const DiagonalPhase& d) {
  Json a = Json::array();
  for (const auto& p : d) a.push_back(p.radians_value());
  return a;
}

}  // namespace

std::string serialize(const HadamardMatrix& m) { return dump(matrix_json(m)); }

HadamardMatrix parse(const std::string& text, double modulus_tol) {
  return matrix_from_json(parse_document(text), modulus_tol, "");
}

std::string serialize(const AffineFamily& f) {
  Json j = Json::object();
  j["format_version"] = "1";
  j["kind"] = "affine_family";
  j["n"] = f.base().n();
  j["base"] = matrix_json(f.base());
  Json names = Json::array();
  for (const auto& s : f.param_names()) names.push_back(s);
  j["param_names"] = std::move(names);
  Json patterns = Json::array();
  for (const auto& p : f.patterns()) patterns.push_back(rational_grid_json(p));
  j["patterns"] = std::move(patterns);
  return dump(j);
}

AffineFamily parse_family(const std::string& text) {
  const Json j = parse_document(text);
  expect(j.is_object(), "document: must be an object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "format_version" && key != "kind" && key != "n" &&
        key != "base" && key != "param_names" && key != "patterns")
      throw ParseError(key + ": unexpected field");
  }
  expect(j.contains("format_version") && j.at("format_version") == "1",
         "format_version: expected \"1\"");
  expect(j.contains("kind") && j.at("kind") == "affine_family",
         "kind: expected \"affine_family\"");
  expect(j.contains("n") && j.at("n").is_number_integer(),
         "n: missing or not an integer");
  const int n = j.at("n").get<int>();
  expect(j.contains("base"), "base: missing");
  HadamardMatrix base = matrix_from_json(j.at("base"), kUnimodularTol, "base");
  expect(base.n() == n, "base: size does not match n");
  expect(j.contains("param_names") && j.at("param_names").is_array(),
         "param_names: missing or not an array");
  std::vector<std::string> names;
  for (size_t k = 0; k < j.at("param_names").size(); ++k) {
    const Json& s = j.at("param_names")[k];
    expect(s.is_string(),
           "param_names[" + std::to_string(k) + "]: must be a string");
    names.push_back(s.get<std::string>());
  }
  expect(j.contains("patterns") && j.at("patterns").is_array(),
         "patterns: missing or not an array");
  expect(j.at("patterns").size() == names.size(),
         "patterns: count does not match param_names");
  std::vector<RationalMatrix> patterns;
  for (size_t k = 0; k < j.at("patterns").size(); ++k)
    patterns.push_back(rational_grid_from_json(
        j.at("patterns")[k], n, "patterns[" + std::to_string(k) + "]"));
  try {
    return AffineFamily(std::move(base), std::move(patterns), std::move(names));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("patterns: ") + e.what());
  }
}

std::string to_json(const HadamardReport& r) {
  Json j = Json::object();
  j["pass"] = r.pass;
  j["n"] = r.n;
  j["max_gram_deviation"] = r.max_gram_deviation;
  j["max_modulus_deviation"] = r.max_modulus_deviation;
  j["worst_row"] = r.worst_row;
  j["worst_col"] = r.worst_col;
  j["tol"] = r.tol;
  j["modulus_tol"] = r.modulus_tol;
  return dump(j);
}

std::string to_json(const DefectReport& r) {
  Json j = Json::object();
  j["n"] = r.n;
  j["defect"] = r.defect;
  j["rank"] = r.rank;
  j["exact"] = r.exact;
  j["svd_defect"] = r.svd_defect;
  j["exact_defect"] = r.exact_defect;
  if (!r.kernel.empty()) {
    Json rows = Json::array();
    for (const auto& row : r.kernel) rows.push_back(row);
    j["kernel"] = std::move(rows);
  }
  return dump(j);
}

std::string to_json(const InvariantSet& s) {
  Json j = Json::object();
  Json values = Json::array();
  for (const auto& v : s.values) {
    Json cell = Json::object();
    cell["re"] = v.real();
    cell["im"] = v.imag();
    values.push_back(std::move(cell));
  }
  j["values"] = std::move(values);
  Json multiset = Json::array();
  for (const auto& [v, count] : s.multiset) {
    Json cell = Json::object();
    cell["re"] = v.real();
    cell["im"] = v.imag();
    cell["count"] = count;
    multiset.push_back(std::move(cell));
  }
  j["multiset"] = std::move(multiset);
  j["cluster_tol"] = s.cluster_tol;
  return dump(j);
}

std::string to_json(const EquivalenceWitness& w) {
  Json j = Json::object();
  j["d1"] = phases_json(w.d1);
  j["p1"] = w.p1.image();
  j["p2"] = w.p2.image();
  j["d2"] = phases_json(w.d2);
  return dump(j);
}

EquivalenceWitness witness_from_json(const std::string& text) {
  const Json j = parse_document(text);
  expect(j.is_object(), "witness: must be an object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "d1" && key != "p1" && key != "p2" && key != "d2")
      throw ParseError(key + ": unexpected field");
  }
  auto phases = [&j](const char* key) {
    expect(j.contains(key) && j.at(key).is_array(),
           std::string(key) + ": missing or not an array");
    DiagonalPhase d;
    for (size_t i = 0; i < j.at(key).size(); ++i) {
      const Json& v = j.at(key)[i];
      expect(v.is_number(), std::string(key) + "[" + std::to_string(i) +
                                "]: must be a number");
      d.push_back(PhaseValue::radians(v.get<double>()));
    }
    return d;
  };
  auto perm = [&j](const char* key) {
    expect(j.contains(key) && j.at(key).is_array(),
           std::string(key) + ": missing or not an array");
    std::vector<int> image;
    for (size_t i = 0; i < j.at(key).size(); ++i) {
      const Json& v = j.at(key)[i];
      expect(v.is_number_integer(), std::string(key) + "[" +
                                        std::to_string(i) +
                                        "]: must be an integer");
      image.push_back(v.get<int>());
    }
    try {
      return PermutationVector(std::move(image));
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string(key) + ": " + e.what());
    }
  };
  EquivalenceWitness w{phases("d1"), perm("p1"), perm("p2"), phases("d2")};
  expect(w.d1.size() == static_cast<size_t>(w.p1.n()) &&
             w.d2.size() == static_cast<size_t>(w.p2.n()) &&
             w.p1.n() == w.p2.n(),
         "witness: component sizes disagree");
  return w;
}

HadamardMatrix load_matrix(const std::string& path, double modulus_tol) {
  return parse(read_text(path), modulus_tol);
}

std::string read_text(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    if (std::cin.bad()) throw IoError("cannot read standard input");
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read file: " + path);
  return ss.str();
}

void save_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    if (std::cout.bad()) throw IoError("cannot write standard output");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open file for writing: " + path);
  out << text;
  out.flush();
  if (!out) throw IoError("cannot write file: " + path);
}

}  // namespace chm
