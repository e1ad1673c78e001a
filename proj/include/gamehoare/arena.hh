#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gamehoare/state_set.hh"

namespace gamehoare {

enum class Owner : std::uint8_t { Angel, Demon, Neither };

const char* owner_name(Owner o);

/// Explicit safety game graph. The angel wins a play iff it never visits an
/// error vertex.
struct SafetyGame {
  std::vector<std::string> labels;
  std::vector<Owner> owner;
  std::vector<std::vector<std::size_t>> succ;
  StateSet error;
  /// Vertex ids as written in a game file; empty means ids are the indices.
  std::vector<std::int64_t> ids;

  std::int64_t external_id(std::size_t v) const { return ids.empty() ? static_cast<std::int64_t>(v) : ids[v]; }
  std::size_t size() const { return owner.size(); }
  std::size_t add_vertex(std::string label, Owner o, bool is_error);
  void add_edge(std::size_t from, std::size_t to) { succ[from].push_back(to); }
};

/// Checks the structural conditions: no sinks, and Neither vertices have
/// exactly one successor. Returns a diagnostic on failure.
std::optional<std::string> validate_game(const SafetyGame& g);

constexpr std::size_t kNoMove = std::numeric_limits<std::size_t>::max();
constexpr std::uint32_t kNoRank = std::numeric_limits<std::uint32_t>::max();

struct SolveResult {
  StateSet angel_win;
  StateSet demon_win;
  /// Per vertex; kNoMove where undefined (not an angel vertex in angel_win).
  std::vector<std::size_t> angel_strategy;
  /// Per vertex; kNoMove where undefined (not a demon vertex in demon_win).
  std::vector<std::size_t> demon_strategy;
  /// Least k with the vertex in the k-th attractor stage; kNoRank in angel_win.
  std::vector<std::uint32_t> rank;
  /// Number of attractor stages until closure.
  std::uint32_t rounds = 0;
};

/// Linear-time attractor computation with positional strategies for both players.
SolveResult solve_game(const SafetyGame& g);

/// A play from `start` (which must be in demon_win) where the demon follows
/// its strategy and the angel always takes its lowest-id successor. Ends at
/// the first error vertex.
std::vector<std::size_t> demon_play(const SafetyGame& g, const SolveResult& r, std::size_t start);

SafetyGame game_from_json(std::string_view text);
std::string game_to_json(const SafetyGame& g);
/// Winning regions, strategies and ranks, keyed by vertex id.
std::string solve_result_to_json(const SafetyGame& g, const SolveResult& r);

}  // namespace gamehoare
