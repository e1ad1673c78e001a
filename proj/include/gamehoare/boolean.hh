#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "gamehoare/state_set.hh"
#include "gamehoare/syntax.hh"

namespace gamehoare {

/// Raised when a configured size limit (atomic tests, game vertices) is exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A total truth assignment; bit i is the value of the i-th declared test.
using Atom = std::uint64_t;

/// The Phi-consistent atoms in increasing assignment order.
class AtomSpace {
 public:
  AtomSpace() = default;
  AtomSpace(std::vector<std::string> names, std::vector<Atom> atoms);

  std::size_t size() const { return atoms_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  Atom operator[](std::size_t i) const { return atoms_[i]; }

  std::optional<std::size_t> index_of(Atom a) const;
  std::optional<std::size_t> test_index(const std::string& name) const;

  /// Literal rendering in declaration order, e.g. `even !odd`.
  std::string label(std::size_t i) const;
  std::vector<std::string> labels() const;

  StateSet all() const { return full_set(size()); }
  StateSet none() const { return empty_set(size()); }

 private:
  std::vector<std::string> names_;
  std::vector<Atom> atoms_;
  std::unordered_map<Atom, std::size_t> index_;
  std::unordered_map<std::string, std::size_t> test_index_;
};

constexpr std::size_t kDefaultMaxTests = 20;

/// Enumerates all 2^k assignments and keeps those satisfying every test of `phi`.
AtomSpace consistent_atoms(const std::vector<Test>& phi, const std::vector<std::string>& names,
                           std::size_t max_tests = kDefaultMaxTests);

/// Truth value of `p` under a total assignment. Throws on unknown names.
bool eval_test(const Test& p, Atom a, const AtomSpace& space);

/// The atoms of `space` satisfying `p`.
StateSet denote_test(const Test& p, const AtomSpace& space);

/// Phi |- p, i.e. `p` holds at every consistent atom.
bool entails(const AtomSpace& space, const Test& p);

/// A test whose denotation over `space` is exactly `target`. Built as a
/// disjunction of cubes, each grown greedily from a minterm by dropping
/// literals while it still covers only target atoms (inconsistent atoms are
/// free). Deterministic.
Test describe_atoms(const AtomSpace& space, const StateSet& target);

/// Conjunction of all literals of one atom.
Test atom_test(const AtomSpace& space, std::size_t i);

}  // namespace gamehoare
