#pragma once

#include <stdexcept>
#include <string>

#include "chm/analysis.hpp"
#include "chm/matrix.hpp"

namespace chm {

// File-system failures; the CLI maps this to exit code 74.
struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or invariant-violating document content; the CLI maps this to
// exit code 65. Messages carry the offending field path.
struct ParseError : IoError {
  explicit ParseError(const std::string& what) : IoError(what) {}
};

// Document schema (format_version "1", UTF-8, 0-based indices):
//   {
//     "format_version": "1",
//     "n": <int>,
//     "representation": "phases_turns" | "entries",
//     "phases_turns": n x n of "p/q" strings (exact turns),
//     "entries":      n x n of {"re": <float>, "im": <float>},
//     "meta": {"name": str, "params": {name: float}, "notes": str}  (optional)
//   }
// Exactly one representation is present. serialize() picks "phases_turns"
// iff every phase is exactly known; raw float entries round-trip bit for
// bit through "entries". Output is deterministic: fixed key order, 2-space
// indent, shortest round-trip float formatting, trailing newline.
std::string serialize(const HadamardMatrix& m);

// Validates the schema and re-checks unimodularity (modulus_tol). Errors
// carry the offending field path, e.g. "entries[2][3].re".
HadamardMatrix parse(const std::string& text,
                     double modulus_tol = kUnimodularTol);

// Affine family document: base matrix plus rational pattern grids.
std::string serialize(const AffineFamily& f);
AffineFamily parse_family(const std::string& text);

// Report/witness payloads used by the CLI (same determinism rules).
std::string to_json(const HadamardReport& r);
std::string to_json(const DefectReport& r);
std::string to_json(const InvariantSet& s);
std::string to_json(const EquivalenceWitness& w);
EquivalenceWitness witness_from_json(const std::string& text);

// File helpers; path "-" means stdin/stdout.
HadamardMatrix load_matrix(const std::string& path,
                           double modulus_tol = kUnimodularTol);
void save_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

}  // namespace chm
