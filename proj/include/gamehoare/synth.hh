#pragma once

#include <string>
#include <vector>

#include "gamehoare/decide.hh"

namespace gamehoare {

/// Where an emitted conditional came from.
struct Provenance {
  std::string angelic_node;  // the resolved `f <> g`
  std::string continuation;  // what runs after it, or empty
  std::string guard;         // test selecting the left branch
  std::size_t left_atoms = 0;
  std::size_t right_atoms = 0;
};

struct SynthesizedProgram {
  Scheme program;
  std::vector<Provenance> provenance;
};

/// Turns the angel's positional strategy into an angel-free program. The
/// decision must be valid and in strong mode.
SynthesizedProgram synthesize(const Decision& d);

struct VerifyReport {
  bool ok = false;
  bool angel_free = false;
  bool meets_spec = false;
  /// Only computed when the atom space is small enough for the oracle.
  std::optional<bool> implements_original;
  std::string detail;
};

/// Checks an angel-free `t` against the query over the strong free model.
VerifyReport verify_synthesized(const Problem& problem, const Query& query, const Scheme& t,
                                std::size_t oracle_max_atoms = kOracleMaxAtoms);

std::string provenance_to_json(const SynthesizedProgram& s);

}  // namespace gamehoare
