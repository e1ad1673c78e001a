#pragma once

#include <map>
#include <string>
#include <vector>

#include "gamehoare/arena.hh"
#include "gamehoare/boolean.hh"
#include "gamehoare/denotation.hh"
#include "gamehoare/syntax.hh"

namespace gamehoare {

/// The free interpretation of a problem's hypotheses over its Phi-consistent atoms.
struct FreeInterpretation {
  AtomSpace space;
  Mode mode = Mode::Strong;
  /// options.at(action)[atom] is the antichain of minimal option sets.
  std::map<std::string, std::vector<std::vector<StateSet>>> options;

  const std::vector<StateSet>& at(const std::string& action, std::size_t atom) const {
    return options.at(action)[atom];
  }
};

/// Intersection of the postconditions of the axioms for `a` whose precondition
/// holds at atom `alpha`; the full space when none applies.
StateSet free_action_strong(const std::vector<SimpleAssertion>& psi, const std::string& a, std::size_t alpha,
                            const AtomSpace& space);

/// The postconditions of applicable axioms together with the full space, minimized.
std::vector<StateSet> options_weak(const std::vector<SimpleAssertion>& psi, const std::string& a,
                                   std::size_t alpha, const AtomSpace& space);

FreeInterpretation build_free_interpretation(const Problem& problem, Mode mode,
                                             std::size_t max_tests = kDefaultMaxTests);

/// The same interpretation as an explicit model over atoms, for the denotational oracle.
Model free_model(const FreeInterpretation& interp);

constexpr std::size_t kDefaultMaxVertices = 5'000'000;

/// The operational safety game for a normalized program.
struct OperationalGame {
  SafetyGame game;
  TermTable terms;
  std::size_t atoms = 0;
  /// Entry vertices (alpha, f), one per atom of the precondition, in atom order.
  std::vector<std::size_t> entries;
  /// Option vertices are numbered after the atoms x terms block.
  std::vector<std::pair<StateSet, std::size_t>> option_vertices;

  std::size_t state_vertex(std::size_t atom, std::size_t term) const { return atom * terms.size() + term; }
  bool is_state_vertex(std::size_t v) const { return v < atoms * terms.size(); }
  std::size_t atom_of(std::size_t v) const { return v / terms.size(); }
  std::size_t term_of(std::size_t v) const { return v % terms.size(); }
};

/// Builds the game for program `f` (any scheme; it is normalized here) with
/// error vertices (alpha, skip) for alpha outside `post`.
OperationalGame build_game(const FreeInterpretation& interp, const Scheme& f, const StateSet& pre,
                           const StateSet& post, std::size_t max_vertices = kDefaultMaxVertices,
                           bool with_labels = false);

/// The same game over an explicit model; its states play the role of atoms.
OperationalGame build_model_game(const Model& model, const Scheme& f, const StateSet& pre, const StateSet& post,
                                 std::size_t max_vertices = kDefaultMaxVertices, bool with_labels = false);

}  // namespace gamehoare
