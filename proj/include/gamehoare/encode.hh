#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gamehoare/arena.hh"
#include "gamehoare/syntax.hh"

namespace gamehoare {

/// Test name asserting that the token sits on vertex `v` of an encoded game.
std::string game_vertex_test(const SafetyGame& g, std::size_t v);
/// Action name moving the token to vertex `v`.
std::string game_vertex_action(const SafetyGame& g, std::size_t v);

/// Encodes a safety game as a problem whose strong query {p_u} f_G {false}
/// is valid iff the angel wins from u. One query per start vertex, in the
/// given order; all vertices when `starts` is empty.
Problem encode_safety_game(const SafetyGame& g, const std::vector<std::size_t>& starts = {});

/// An alternating Turing machine with a fixed space bound.
struct ATMSpec {
  struct Move {
    std::string from;
    std::string read;
    std::string to;
    std::string write;
    int dir = 0;  // -1, 0 or +1
  };
  std::vector<std::string> and_states;
  std::vector<std::string> or_states;
  std::vector<std::string> alphabet;  // includes the blank
  std::string blank = "_";
  std::string start;
  std::vector<Move> delta;
  std::size_t space = 1;
  /// Input symbols; each character is one symbol name.
  std::string input;

  bool is_and_state(const std::string& q) const;
  std::vector<std::string> states() const;
};

ATMSpec atm_from_json(std::string_view text);

/// Checks declarations, the space bound against the input, and move directions.
void validate_atm(const ATMSpec& m);

/// The Hoare implication {start} program {accept} for `m`.
Problem gen_atm_instance(const ATMSpec& m);

/// Direct AND-OR evaluation over configurations. Throws if a computation
/// leaves the tape, revisits a configuration on one path, or exceeds
/// `step_bound` steps.
bool atm_accepts(const ATMSpec& m, std::size_t step_bound = 10'000);

}  // namespace gamehoare
