#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace gamehoare {

/// A subset of a finite state space, one bit per state index.
using StateSet = boost::dynamic_bitset<std::uint64_t>;

inline StateSet empty_set(std::size_t n) { return StateSet(n); }

inline StateSet full_set(std::size_t n) {
  StateSet s(n);
  s.set();
  return s;
}

inline StateSet singleton(std::size_t n, std::size_t u) {
  StateSet s(n);
  s.set(u);
  return s;
}

inline StateSet make_set(std::size_t n, const std::vector<std::size_t>& members) {
  StateSet s(n);
  for (auto u : members) s.set(u);
  return s;
}

/// Calls `fn(u)` for every member in increasing order.
template <typename Fn>
void for_each_member(const StateSet& s, Fn&& fn) {
  for (auto u = s.find_first(); u != StateSet::npos; u = s.find_next(u)) fn(u);
}

inline std::vector<std::size_t> members(const StateSet& s) {
  std::vector<std::size_t> out;
  out.reserve(s.count());
  for_each_member(s, [&](std::size_t u) { out.push_back(u); });
  return out;
}

/// Total order used for canonical antichains: by cardinality, then by members.
inline bool canonical_less(const StateSet& a, const StateSet& b) {
  auto ca = a.count(), cb = b.count();
  if (ca != cb) return ca < cb;
  for (auto i = a.find_first(), j = b.find_first();; i = a.find_next(i), j = b.find_next(j)) {
    if (i == StateSet::npos || j == StateSet::npos) return false;
    if (i != j) return i < j;
  }
}

/// `{0,2}` style rendering with state indices.
std::string format_set(const StateSet& s);

/// `{a,b}` style rendering with the given state labels.
std::string format_set(const StateSet& s, const std::vector<std::string>& labels);

struct StateSetHash {
  std::size_t operator()(const StateSet& s) const { return boost::hash_value(s); }
};

}  // namespace gamehoare
