#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "gamehoare/state_set.hh"
#include "gamehoare/syntax.hh"

namespace gamehoare {

/// A relation S -> P(S), stored as one successor set per state.
struct NondetFunction {
  std::vector<StateSet> succ;

  std::size_t states() const { return succ.size(); }
  const StateSet& operator()(std::size_t u) const { return succ[u]; }
  friend bool operator==(const NondetFunction& a, const NondetFunction& b) { return a.succ == b.succ; }
};

/// Keeps only the inclusion-minimal sets, deduplicated and in canonical order.
std::vector<StateSet> minimize(std::vector<StateSet> sets);

/// An upward-closed, per-state nonempty relation S x P(S), represented by its
/// minimal elements. Construction canonicalizes, so equality is structural.
class GameFunction {
 public:
  GameFunction() = default;
  GameFunction(std::size_t states, std::vector<std::vector<StateSet>> options);

  std::size_t states() const { return options_.size(); }
  const std::vector<StateSet>& at(std::size_t u) const { return options_[u]; }
  const std::vector<std::vector<StateSet>>& options() const { return options_; }

  /// (u, y) is in the upward closure.
  bool contains(std::size_t u, const StateSet& y) const;
  /// Exactly one minimal option at every state.
  bool is_non_angelic() const;

  friend bool operator==(const GameFunction& a, const GameFunction& b) { return a.options_ == b.options_; }
  friend bool operator!=(const GameFunction& a, const GameFunction& b) { return !(a == b); }

 private:
  std::vector<std::vector<StateSet>> options_;
};

/// Inclusion of upward closures: every minimal set of `a` dominates one of `b`.
bool gf_leq(const GameFunction& a, const GameFunction& b);

GameFunction gf_identity(std::size_t n);
GameFunction gf_zero(std::size_t n);
GameFunction lift(const NondetFunction& k);
GameFunction gf_compose(const GameFunction& phi, const GameFunction& psi);
GameFunction gf_ang(const GameFunction& phi, const GameFunction& psi);
GameFunction gf_dem(const GameFunction& phi, const GameFunction& psi);
GameFunction gf_cond(const StateSet& p, const GameFunction& phi, const GameFunction& psi);

struct WhileTrace {
  /// W_0, W_1, ... up to and including the fixpoint.
  std::vector<GameFunction> stages;
};

/// Greatest fixpoint by the decreasing iteration from W_0 = P[0, 1].
GameFunction gf_while(const StateSet& p, const GameFunction& phi, WhileTrace* trace = nullptr);

NondetFunction nd_identity(std::size_t n);
NondetFunction nd_empty(std::size_t n);
/// Kleisli composition: first `k`, then `l`.
NondetFunction nd_compose(const NondetFunction& k, const NondetFunction& l);
NondetFunction nd_choice(const NondetFunction& k, const NondetFunction& l);
NondetFunction nd_cond(const StateSet& p, const NondetFunction& k, const NondetFunction& l);
/// Least fixpoint by the increasing iteration from V_0 = P[0, 1].
NondetFunction nd_while(const StateSet& p, const NondetFunction& k);

/// Some minimal option of `phi(u)` is contained in `k(u)`, for every u.
bool implements_check(const NondetFunction& k, const GameFunction& phi);

/// A finite interpretation: state labels, a set per atomic test and a game
/// function per atomic action.
struct Model {
  std::vector<std::string> state_labels;
  std::map<std::string, StateSet> tests;
  std::map<std::string, GameFunction> actions;

  std::size_t size() const { return state_labels.size(); }
  StateSet denote(const Test& p) const;
  /// The underlying relation of a non-angelic action; throws if it is angelic.
  NondetFunction relation(const std::string& action) const;
};

GameFunction eval_game(const Model& model, const Scheme& f);

/// Relational meaning of an angel-free scheme over the non-angelic actions of `model`.
NondetFunction eval_relational(const Model& model, const Scheme& f);

/// JSON model files. State references may be labels or indices.
Model model_from_json(std::string_view text);
std::string model_to_json(const Model& model);

/// Renders one antichain as `{{0,1},{2}}` using state labels.
std::string format_options(const std::vector<StateSet>& options, const std::vector<std::string>& labels);

}  // namespace gamehoare
