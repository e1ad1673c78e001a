// Random instance generators and brute-force oracles shared by the unit
// tests and the acceptance runner. The oracles deliberately avoid the
// library's own algorithms: they enumerate sets and plays directly.
#pragma once

#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gamehoare/arena.hh"
#include "gamehoare/denotation.hh"
#include "gamehoare/encode.hh"
#include "gamehoare/syntax.hh"

namespace testkit {

using namespace gamehoare;
using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }
inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

inline Test random_test(Rng& rng, const std::vector<std::string>& names, int depth) {
  if (depth <= 0 || coin(rng, 0.35)) {
    switch (pick(rng, 10)) {
      case 0: return Test::truth();
      case 1: return Test::falsity();
      default: return Test::atomic(names[pick(rng, names.size())]);
    }
  }
  switch (pick(rng, 3)) {
    case 0: return Test::negate(random_test(rng, names, depth - 1));
    case 1: return Test::conj(random_test(rng, names, depth - 1), random_test(rng, names, depth - 1));
    default: return Test::disj(random_test(rng, names, depth - 1), random_test(rng, names, depth - 1));
  }
}

struct SchemeShape {
  bool angel = true;
  bool diverge = true;
  int test_depth = 1;
};

// A scheme with exactly `size` nodes.
inline Scheme random_scheme(Rng& rng, std::size_t size, const std::vector<std::string>& actions,
                            const std::vector<std::string>& tests, SchemeShape shape = {}) {
  if (size <= 1) {
    std::size_t r = pick(rng, 10);
    if (r == 0) return Scheme::skip();
    if (r == 1 && shape.diverge) return Scheme::diverge();
    return Scheme::action(actions[pick(rng, actions.size())]);
  }
  std::size_t kinds = shape.angel ? 5 : 4;
  std::size_t k = pick(rng, kinds);
  if (k == 0) return Scheme::loop(random_test(rng, tests, shape.test_depth), random_scheme(rng, size - 1, actions, tests, shape));
  if (size < 3) return Scheme::loop(random_test(rng, tests, shape.test_depth), random_scheme(rng, 1, actions, tests, shape));
  std::size_t left = 1 + pick(rng, size - 2);
  Scheme f = random_scheme(rng, left, actions, tests, shape);
  Scheme g = random_scheme(rng, size - 1 - left, actions, tests, shape);
  switch (k) {
    case 1: return Scheme::seq(f, g);
    case 2: return Scheme::cond(random_test(rng, tests, shape.test_depth), f, g);
    case 3: return Scheme::dem(f, g);
    default: return Scheme::ang(f, g);
  }
}

inline StateSet random_set(Rng& rng, std::size_t n, double density = 0.5) {
  StateSet s = empty_set(n);
  for (std::size_t i = 0; i < n; ++i)
    if (coin(rng, density)) s.set(i);
  return s;
}

inline NondetFunction random_nondet(Rng& rng, std::size_t n) {
  NondetFunction k;
  for (std::size_t u = 0; u < n; ++u) k.succ.push_back(random_set(rng, n, 0.4));
  return k;
}

inline GameFunction random_game_function(Rng& rng, std::size_t n) {
  std::vector<std::vector<StateSet>> options(n);
  for (auto& opts : options) {
    std::size_t count = 1 + pick(rng, 3);
    for (std::size_t i = 0; i < count; ++i) opts.push_back(random_set(rng, n, 0.45));
  }
  return GameFunction(n, std::move(options));
}

inline Model random_model(Rng& rng, std::size_t n, const std::vector<std::string>& tests,
                          const std::vector<std::string>& actions, bool angelic) {
  Model m;
  for (std::size_t u = 0; u < n; ++u) m.state_labels.push_back(std::to_string(u));
  for (const auto& t : tests) m.tests[t] = random_set(rng, n);
  for (const auto& a : actions) m.actions.emplace(a, angelic ? random_game_function(rng, n) : lift(random_nondet(rng, n)));
  return m;
}

// Upward-closure membership: some minimal option fits inside y.
inline bool up_member(const GameFunction& phi, std::size_t u, const StateSet& y) {
  for (const auto& m : phi.at(u))
    if (m.is_subset_of(y)) return true;
  return false;
}

inline std::vector<StateSet> all_subsets(std::size_t n) {
  std::vector<StateSet> out;
  for (std::size_t bits = 0; bits < (std::size_t{1} << n); ++bits) {
    StateSet s = empty_set(n);
    for (std::size_t i = 0; i < n; ++i)
      if (bits >> i & 1) s.set(i);
    out.push_back(s);
  }
  return out;
}

// (u,Z) in phi ; psi by direct comprehension over every intermediate Y.
inline bool brute_compose_member(const GameFunction& phi, const GameFunction& psi, std::size_t u, const StateSet& z) {
  for (const auto& y : all_subsets(phi.states())) {
    if (!up_member(phi, u, y)) continue;
    bool all = true;
    for (std::size_t v = 0; v < y.size() && all; ++v)
      if (y.test(v) && !up_member(psi, v, z)) all = false;
    if (all) return true;
  }
  return false;
}

inline bool same_up_closure(const GameFunction& a, const GameFunction& b) {
  if (a.states() != b.states()) return false;
  for (std::size_t u = 0; u < a.states(); ++u)
    for (const auto& y : all_subsets(a.states()))
      if (up_member(a, u, y) != up_member(b, u, y)) return false;
  return true;
}

// A random safety game. Neither-vertices get exactly one successor.
inline SafetyGame random_safety_game(Rng& rng, std::size_t n, double error_rate = 0.2) {
  SafetyGame g;
  for (std::size_t v = 0; v < n; ++v) {
    Owner o = static_cast<Owner>(pick(rng, 3));
    g.add_vertex("v" + std::to_string(v), o, coin(rng, error_rate));
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t k = g.owner[v] == Owner::Neither ? 1 : 1 + pick(rng, 3);
    std::set<std::size_t> targets;
    while (targets.size() < std::min(k, n)) targets.insert(pick(rng, n));
    for (auto t : targets) g.add_edge(v, t);
  }
  return g;
}

// Bounded-play evaluation: the angel wins from v iff it can avoid error
// vertices for |V| more steps, which suffices for safety on finite graphs.
inline std::vector<bool> brute_angel_wins(const SafetyGame& g) {
  const std::size_t n = g.size();
  std::vector<bool> safe(n);
  for (std::size_t v = 0; v < n; ++v) safe[v] = !g.error.test(v);
  for (std::size_t step = 0; step < n; ++step) {
    std::vector<bool> next(n);
    for (std::size_t v = 0; v < n; ++v) {
      if (g.error.test(v)) continue;
      bool any = false, all = true;
      for (auto s : g.succ[v]) {
        any = any || safe[s];
        all = all && safe[s];
      }
      next[v] = g.owner[v] == Owner::Demon ? all : g.owner[v] == Owner::Angel ? any : all;
    }
    safe = std::move(next);
  }
  return safe;
}

// Direct evaluation of an alternating machine over configurations, written
// independently of the library's evaluator.
inline bool brute_atm_accepts(const ATMSpec& m) {
  struct Config {
    std::string q;
    std::size_t head;
    std::vector<std::string> tape;
    bool operator<(const Config& o) const { return std::tie(q, head, tape) < std::tie(o.q, o.head, o.tape); }
  };
  std::function<bool(const Config&, std::set<Config>&)> eval = [&](const Config& c, std::set<Config>& path) -> bool {
    if (!path.insert(c).second) throw std::runtime_error("machine loops");
    std::vector<bool> results;
    for (const auto& t : m.delta) {
      if (t.from != c.q || t.read != c.tape[c.head]) continue;
      long h = static_cast<long>(c.head) + t.dir;
      if (h < 0 || h >= static_cast<long>(m.space)) throw std::runtime_error("machine leaves the tape");
      Config d = c;
      d.q = t.to;
      d.tape[c.head] = t.write;
      d.head = static_cast<std::size_t>(h);
      results.push_back(eval(d, path));
    }
    path.erase(c);
    bool is_and = m.is_and_state(c.q);
    if (results.empty()) return is_and;
    if (is_and) return std::all_of(results.begin(), results.end(), [](bool b) { return b; });
    return std::any_of(results.begin(), results.end(), [](bool b) { return b; });
  };
  Config start{m.start, 0, std::vector<std::string>(m.space, m.blank)};
  for (std::size_t i = 0; i < m.input.size(); ++i) start.tape[i] = std::string(1, m.input[i]);
  std::set<Config> path;
  return eval(start, path);
}

// Handcrafted machines with at most three states and three cells.
inline std::vector<std::pair<std::string, ATMSpec>> handcrafted_machines() {
  std::vector<std::pair<std::string, ATMSpec>> out;
  {
    ATMSpec m;
    m.and_states = {"q0"};
    m.alphabet = {"_"};
    m.start = "q0";
    m.space = 1;
    out.emplace_back("halting and-state", m);
  }
  {
    ATMSpec m;
    m.or_states = {"q0", "rej"};
    m.and_states = {"acc"};
    m.alphabet = {"_"};
    m.start = "q0";
    m.space = 1;
    m.delta = {{"q0", "_", "acc", "_", 0}, {"q0", "_", "rej", "_", 0}};
    out.emplace_back("or-branch into accept and reject", m);
  }
  {
    ATMSpec m;
    m.and_states = {"q0", "acc"};
    m.or_states = {"rej"};
    m.alphabet = {"_"};
    m.start = "q0";
    m.space = 1;
    m.delta = {{"q0", "_", "acc", "_", 0}, {"q0", "_", "rej", "_", 0}};
    out.emplace_back("and-branch with a rejecting child", m);
  }
  {
    ATMSpec m;
    m.or_states = {"q0"};
    m.and_states = {"acc"};
    m.alphabet = {"_", "a", "b"};
    m.start = "q0";
    m.space = 3;
    m.input = "ab";
    m.delta = {{"q0", "a", "q0", "a", 1}, {"q0", "b", "acc", "b", 0}};
    out.emplace_back("scan right to b", m);
  }
  {
    ATMSpec m;
    m.or_states = {"q0"};
    m.and_states = {"acc"};
    m.alphabet = {"_", "a", "b"};
    m.start = "q0";
    m.space = 3;
    m.input = "aa";
    m.delta = {{"q0", "a", "q0", "a", 1}, {"q0", "b", "acc", "b", 0}};
    out.emplace_back("scan right without b", m);
  }
  {
    ATMSpec m;
    m.and_states = {"q0", "acc"};
    m.or_states = {"q1"};
    m.alphabet = {"_", "a", "b"};
    m.start = "q0";
    m.space = 2;
    m.input = "a";
    m.delta = {{"q0", "a", "q1", "b", 1}, {"q0", "a", "q1", "b", 0}, {"q1", "_", "acc", "_", 0}, {"q1", "a", "acc", "a", 0}};
    out.emplace_back("and-split, one branch reads its own write", m);
  }
  {
    ATMSpec m;
    m.and_states = {"q0", "acc"};
    m.or_states = {"q1"};
    m.alphabet = {"_", "a", "b"};
    m.start = "q0";
    m.space = 2;
    m.input = "a";
    m.delta = {{"q0", "a", "q1", "b", 1}, {"q0", "a", "q1", "a", 0}, {"q1", "_", "acc", "_", 0}, {"q1", "a", "acc", "a", 0}};
    out.emplace_back("and-split, both branches accept", m);
  }
  return out;
}

// A random problem over at most three tests for the oracle comparisons.
struct RandomProblem {
  Problem problem;
  Query query;
};

inline RandomProblem random_problem(Rng& rng, std::size_t scheme_size) {
  static const std::vector<std::string> all_tests = {"p", "q", "r"};
  static const std::vector<std::string> all_actions = {"a", "b"};
  RandomProblem rp;
  Problem& p = rp.problem;
  p.tests.assign(all_tests.begin(), all_tests.begin() + 1 + pick(rng, 3));
  p.actions.assign(all_actions.begin(), all_actions.begin() + 1 + pick(rng, 2));
  if (coin(rng, 0.3)) p.phi.push_back(random_test(rng, p.tests, 2));
  std::size_t axioms = pick(rng, 5);
  for (std::size_t i = 0; i < axioms; ++i)
    p.psi.push_back({random_test(rng, p.tests, 1), p.actions[pick(rng, p.actions.size())], random_test(rng, p.tests, 2)});
  rp.query.mode = coin(rng) ? Mode::Strong : Mode::Weak;
  rp.query.pre = random_test(rng, p.tests, 1);
  rp.query.post = random_test(rng, p.tests, 2);
  rp.query.program = random_scheme(rng, scheme_size, p.actions, p.tests);
  p.queries.push_back(rp.query);
  return rp;
}

}  // namespace testkit
