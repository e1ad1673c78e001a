#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gamehoare/arena.hh"
#include "gamehoare/boolean.hh"
#include "gamehoare/freemodel.hh"
#include "gamehoare/syntax.hh"

namespace gamehoare {

struct DecideOptions {
  /// Overrides the mode written in the query.
  std::optional<Mode> mode_override;
  std::size_t max_tests = kDefaultMaxTests;
  std::size_t max_vertices = kDefaultMaxVertices;
  /// Attach a synthesized program to valid strong verdicts.
  bool synthesize = true;
  /// Keep readable vertex labels in the built game (for dumping).
  bool with_labels = false;
};

/// Everything computed on the way to a verdict; kept for synthesis and dumps.
struct Decision {
  Mode mode = Mode::Strong;
  FreeInterpretation interp;
  Scheme program;  // normalized
  StateSet pre, post;
  OperationalGame og;
  SolveResult solve;

  bool valid() const;
};

Decision prepare_decision(const Problem& problem, const Query& query, const DecideOptions& options = {});

struct Counterexample {
  std::string start_atom;
  /// Vertex labels of a play that ends at an error vertex.
  std::vector<std::string> play;
  /// Demon moves (vertex label to successor label) on the part of the game
  /// reachable from the start under this strategy, capped in size.
  std::vector<std::pair<std::string, std::string>> demon_strategy;
};

struct DecisionStats {
  std::size_t atoms = 0;
  std::size_t terms = 0;
  std::size_t vertices = 0;
  std::uint32_t rounds = 0;
};

struct Verdict {
  /// 1-based position of the query in its file.
  std::size_t query = 0;
  Mode mode = Mode::Strong;
  bool valid = false;
  std::optional<Scheme> program;
  std::optional<Counterexample> counterexample;
  DecisionStats stats;
};

Verdict decide_query(const Problem& problem, std::size_t query_index, const DecideOptions& options = {});
Verdict decide_query(const Problem& problem, const Query& query, const DecideOptions& options = {});

/// Extracts a counterexample from an invalid decision.
Counterexample counterexample(const Decision& d, std::size_t max_strategy_entries = 200);

constexpr std::size_t kOracleMaxAtoms = 12;

/// The same question answered through the game-function semantics of the
/// free model. Limited to small atom spaces.
bool decide_denotational(const Problem& problem, const Query& query, std::optional<Mode> mode = std::nullopt,
                         std::size_t max_atoms = kOracleMaxAtoms);

/// Replaces the hypotheses of every (atom, action) pair by one axiom whose
/// postcondition conjoins all applicable postconditions. Deciding the result
/// in the weak theory matches deciding the original in the strong one.
Problem conjoin_hypotheses(const Problem& problem);

std::string verdict_to_json(const Verdict& v);

/// Human-readable label of a vertex of an operational game.
std::string vertex_label(const OperationalGame& og, const AtomSpace& space, std::size_t v);

}  // namespace gamehoare
