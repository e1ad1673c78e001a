#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gamehoare/syntax.hh"

namespace gamehoare {

/// `t : {pre} program {post}`; the witness may be left for the checker to fill in.
struct Judgment {
  std::optional<Scheme> witness;
  Test pre;
  Scheme program;
  Test post;
};

struct ProofNode {
  /// One of: hyp skip dvrg seq cond loop ang1 ang2 dem weak join a-join0
  /// a-meet a-meet0 join-prime join-dprime.
  std::string rule;
  Judgment conclusion;
  std::vector<ProofNode> premises;
  /// Optional rule data, checked when present: seq midpoint, loop invariant,
  /// join-dprime case split.
  std::optional<Test> mid, invariant, split;
};

struct ProofCheck {
  bool ok = false;
  /// Where the first failure was found, e.g. `root/0:loop/0:weak`.
  std::string path;
  std::string message;
  /// The root witness, when the proof is accepted.
  std::optional<Scheme> witness;
};

const std::vector<std::string>& proof_rules();

/// Tests and programs inside the file are parsed against `ctx`.
ProofNode proof_from_json(std::string_view text, const Problem& ctx);
std::string proof_to_json(const ProofNode& root);

/// Validates every node bottom-up. When `expected` is given, the root must
/// conclude exactly that triple.
ProofCheck check_proof(const Problem& problem, const ProofNode& root,
                       const std::optional<Query>& expected = std::nullopt);

}  // namespace gamehoare
