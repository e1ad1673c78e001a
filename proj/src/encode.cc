#include "gamehoare/encode.hh"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace gamehoare {

namespace {

Test any_of(const std::vector<Test>& ts) {
  if (ts.empty()) return Test::falsity();
  Test out = ts[0];
  for (std::size_t i = 1; i < ts.size(); ++i) out = Test::disj(out, ts[i]);
  return out;
}

Test all_of(const std::vector<Test>& ts) {
  if (ts.empty()) return Test::truth();
  Test out = ts[0];
  for (std::size_t i = 1; i < ts.size(); ++i) out = Test::conj(out, ts[i]);
  return out;
}

// n-ary choices nest to the right: f1 op (f2 op (... op fn)).
Scheme right_nested(const std::vector<Scheme>& fs, bool angelic) {
  Scheme out = fs.back();
  for (std::size_t i = fs.size() - 1; i-- > 0;) out = angelic ? Scheme::ang(fs[i], out) : Scheme::dem(fs[i], out);
  return out;
}

void exactly_one(Problem& p, const std::vector<std::string>& names) {
  std::vector<Test> atoms;
  for (const auto& n : names) atoms.push_back(Test::atomic(n));
  p.phi.push_back(any_of(atoms));
  for (std::size_t i = 0; i < atoms.size(); ++i)
    for (std::size_t j = i + 1; j < atoms.size(); ++j) p.phi.push_back(Test::negate(Test::conj(atoms[i], atoms[j])));
}

}  // namespace

std::string game_vertex_test(const SafetyGame& g, std::size_t v) { return "p_" + std::to_string(g.external_id(v)); }
std::string game_vertex_action(const SafetyGame& g, std::size_t v) { return "goto_" + std::to_string(g.external_id(v)); }

Problem encode_safety_game(const SafetyGame& g, const std::vector<std::size_t>& starts) {
  if (auto err = validate_game(g)) throw std::invalid_argument("encode: " + *err);
  Problem p;
  for (std::size_t v = 0; v < g.size(); ++v) {
    p.tests.push_back(game_vertex_test(g, v));
    p.actions.push_back(game_vertex_action(g, v));
  }
  exactly_one(p, p.tests);
  for (std::size_t v = 0; v < g.size(); ++v)
    p.psi.push_back({Test::truth(), p.actions[v], Test::atomic(p.tests[v])});

  std::vector<std::size_t> live;
  for (std::size_t v = 0; v < g.size(); ++v)
    if (!g.error.test(v)) live.push_back(v);

  auto take = [&](std::size_t u) {
    std::vector<Scheme> moves;
    for (auto w : g.succ[u]) moves.push_back(Scheme::action(p.actions[w]));
    if (g.owner[u] == Owner::Neither) return moves.front();
    return right_nested(moves, g.owner[u] == Owner::Angel);
  };

  // if p_u then take(u) else if ... else if p_w then take(w) else skip
  Scheme body = Scheme::skip();
  for (std::size_t i = live.size(); i-- > 0;)
    body = Scheme::cond(Test::atomic(p.tests[live[i]]), take(live[i]), body);
  std::vector<Test> guard;
  for (auto v : live) guard.push_back(Test::atomic(p.tests[v]));
  Scheme f = Scheme::loop(any_of(guard), body);
  p.programs.emplace_back("game", f);

  std::vector<std::size_t> from = starts;
  if (from.empty())
    for (std::size_t v = 0; v < g.size(); ++v) from.push_back(v);
  for (auto u : from) {
    if (u >= g.size()) throw std::out_of_range("encode: no vertex " + std::to_string(u));
    p.queries.push_back({Mode::Strong, Test::atomic(p.tests[u]), f, Test::falsity(), std::string("game")});
  }
  return p;
}

// ---------------------------------------------------------------------------
// Alternating Turing machines

bool ATMSpec::is_and_state(const std::string& q) const {
  return std::find(and_states.begin(), and_states.end(), q) != and_states.end();
}

std::vector<std::string> ATMSpec::states() const {
  std::vector<std::string> out = and_states;
  out.insert(out.end(), or_states.begin(), or_states.end());
  return out;
}

ATMSpec atm_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("machine: ") + e.what());
  }
  ATMSpec m;
  m.and_states = j.value("and_states", std::vector<std::string>{});
  m.or_states = j.value("or_states", std::vector<std::string>{});
  m.alphabet = j.at("alphabet").get<std::vector<std::string>>();
  m.blank = j.value("blank", std::string("_"));
  m.start = j.at("start").get<std::string>();
  m.space = j.at("space").get<std::size_t>();
  m.input = j.value("input", std::string());
  for (const auto& t : j.value("delta", nlohmann::json::array())) {
    if (!t.is_array() || t.size() != 5) throw std::invalid_argument("machine: transitions are [q, a, q2, b, d]");
    m.delta.push_back({t[0].get<std::string>(), t[1].get<std::string>(), t[2].get<std::string>(),
                       t[3].get<std::string>(), t[4].get<int>()});
  }
  validate_atm(m);
  return m;
}

void validate_atm(const ATMSpec& m) {
  auto states = m.states();
  std::set<std::string> qs(states.begin(), states.end());
  std::set<std::string> gamma(m.alphabet.begin(), m.alphabet.end());
  if (qs.size() != states.size()) throw std::invalid_argument("machine: a state is listed twice");
  if (!qs.count(m.start)) throw std::invalid_argument("machine: unknown start state '" + m.start + "'");
  if (!gamma.count(m.blank)) throw std::invalid_argument("machine: the blank must be in the alphabet");
  if (m.space == 0 || m.input.size() > m.space)
    throw std::invalid_argument("machine: space bound must be positive and cover the input");
  for (char c : m.input)
    if (!gamma.count(std::string(1, c)))
      throw std::invalid_argument(std::string("machine: input symbol '") + c + "' not in the alphabet");
  for (const auto& t : m.delta) {
    if (!qs.count(t.from) || !qs.count(t.to)) throw std::invalid_argument("machine: transition uses an unknown state");
    if (!gamma.count(t.read) || !gamma.count(t.write))
      throw std::invalid_argument("machine: transition uses an unknown symbol");
    if (t.dir < -1 || t.dir > 1) throw std::invalid_argument("machine: moves must be -1, 0 or 1");
  }
}

namespace {

std::string sym_test(const std::string& a, std::size_t i) { return "P_" + a + "_" + std::to_string(i); }
std::string cursor_test(std::size_t i) { return "C_" + std::to_string(i); }
std::string state_test(const std::string& q) { return "S_" + q; }
std::string write_action(const std::string& a) { return "write_" + a; }
std::string move_action(int d) { return d < 0 ? "move_-1" : d > 0 ? "move_+1" : "move_0"; }
std::string switch_action(const std::string& q) { return "switch_" + q; }

}  // namespace

Problem gen_atm_instance(const ATMSpec& m) {
  validate_atm(m);
  Problem p;
  const std::size_t n = m.space;
  const auto states = m.states();
  auto at = [](const std::string& s) { return Test::atomic(s); };

  for (std::size_t i = 1; i <= n; ++i)
    for (const auto& a : m.alphabet) p.tests.push_back(sym_test(a, i));
  for (std::size_t i = 1; i <= n; ++i) p.tests.push_back(cursor_test(i));
  for (const auto& q : states) p.tests.push_back(state_test(q));
  for (const auto& a : m.alphabet) p.actions.push_back(write_action(a));
  for (int d : {-1, 0, 1}) p.actions.push_back(move_action(d));
  for (const auto& q : states) p.actions.push_back(switch_action(q));

  for (std::size_t i = 1; i <= n; ++i) {
    std::vector<std::string> cell;
    for (const auto& a : m.alphabet) cell.push_back(sym_test(a, i));
    exactly_one(p, cell);
  }
  {
    std::vector<std::string> cursor;
    for (std::size_t i = 1; i <= n; ++i) cursor.push_back(cursor_test(i));
    exactly_one(p, cursor);
    std::vector<std::string> st;
    for (const auto& q : states) st.push_back(state_test(q));
    exactly_one(p, st);
  }

  for (const auto& a : m.alphabet) {
    const std::string w = write_action(a);
    for (std::size_t i = 1; i <= n; ++i) {
      p.psi.push_back({at(cursor_test(i)), w, at(sym_test(a, i))});
      p.psi.push_back({at(cursor_test(i)), w, at(cursor_test(i))});
      for (std::size_t j = 1; j <= n; ++j) {
        if (j == i) continue;
        for (const auto& b : m.alphabet)
          p.psi.push_back({Test::conj(at(cursor_test(i)), at(sym_test(b, j))), w, at(sym_test(b, j))});
      }
    }
    for (const auto& q : states) p.psi.push_back({at(state_test(q)), w, at(state_test(q))});
  }
  for (int d : {-1, 0, 1}) {
    const std::string mv = move_action(d);
    // Moves off the tape get no cursor axiom.
    for (std::size_t i = 1; i <= n; ++i) {
      long target = static_cast<long>(i) + d;
      if (target >= 1 && target <= static_cast<long>(n))
        p.psi.push_back({at(cursor_test(i)), mv, at(cursor_test(static_cast<std::size_t>(target)))});
    }
    for (std::size_t j = 1; j <= n; ++j)
      for (const auto& a : m.alphabet) p.psi.push_back({at(sym_test(a, j)), mv, at(sym_test(a, j))});
    for (const auto& q : states) p.psi.push_back({at(state_test(q)), mv, at(state_test(q))});
  }
  for (const auto& q : states) {
    const std::string sw = switch_action(q);
    p.psi.push_back({Test::truth(), sw, at(state_test(q))});
    for (std::size_t i = 1; i <= n; ++i) p.psi.push_back({at(cursor_test(i)), sw, at(cursor_test(i))});
    for (std::size_t i = 1; i <= n; ++i)
      for (const auto& a : m.alphabet) p.psi.push_back({at(sym_test(a, i)), sw, at(sym_test(a, i))});
  }

  auto scanned = [&](const std::string& a) {
    std::vector<Test> ts;
    for (std::size_t i = 1; i <= n; ++i) ts.push_back(Test::conj(at(cursor_test(i)), at(sym_test(a, i))));
    return any_of(ts);
  };

  // Group transitions by (state, symbol), keeping first-appearance order.
  std::vector<std::pair<std::string, std::string>> live;
  std::map<std::pair<std::string, std::string>, std::vector<ATMSpec::Move>> by_pair;
  for (const auto& t : m.delta) {
    auto key = std::make_pair(t.from, t.read);
    if (!by_pair.count(key)) live.push_back(key);
    by_pair[key].push_back(t);
  }
  std::vector<Test> dead;
  for (const auto& q : states)
    for (const auto& a : m.alphabet)
      if (!by_pair.count({q, a})) dead.push_back(Test::conj(at(state_test(q)), scanned(a)));
  Test halt = any_of(dead);

  Scheme body = Scheme::skip();
  for (std::size_t k = live.size(); k-- > 0;) {
    const auto& [q, a] = live[k];
    std::vector<Scheme> branches;
    for (const auto& t : by_pair[live[k]])
      branches.push_back(Scheme::seq(Scheme::action(write_action(t.write)),
                                     Scheme::seq(Scheme::action(move_action(t.dir)),
                                                 Scheme::action(switch_action(t.to)))));
    Scheme take = branches.size() == 1 ? branches[0] : right_nested(branches, !m.is_and_state(q));
    body = Scheme::cond(Test::conj(at(state_test(q)), scanned(a)), take, body);
  }
  Scheme program = Scheme::loop(Test::negate(halt), body);
  p.programs.emplace_back("program", program);

  std::vector<Test> start{at(state_test(m.start)), at(cursor_test(1))};
  for (std::size_t i = 1; i <= n; ++i) {
    std::string sym = i <= m.input.size() ? std::string(1, m.input[i - 1]) : m.blank;
    start.push_back(at(sym_test(sym, i)));
  }
  std::vector<Test> and_states;
  for (const auto& q : m.and_states) and_states.push_back(at(state_test(q)));
  Test accept = Test::conj(halt, any_of(and_states));
  p.queries.push_back({Mode::Strong, all_of(start), program, accept, std::string("program")});
  return p;
}

bool atm_accepts(const ATMSpec& m, std::size_t step_bound) {
  validate_atm(m);
  std::map<std::pair<std::string, std::string>, std::vector<ATMSpec::Move>> by_pair;
  for (const auto& t : m.delta) by_pair[{t.from, t.read}].push_back(t);

  struct Config {
    std::string q;
    std::vector<std::string> tape;
    std::size_t head;
    bool operator<(const Config& o) const { return std::tie(q, tape, head) < std::tie(o.q, o.tape, o.head); }
  };
  std::set<Config> on_path;
  std::map<Config, bool> memo;

  std::function<bool(const Config&, std::size_t)> eval = [&](const Config& c, std::size_t depth) -> bool {
    if (auto it = memo.find(c); it != memo.end()) return it->second;
    if (depth > step_bound) throw std::runtime_error("machine: computation exceeds the step bound");
    auto it = by_pair.find({c.q, c.tape[c.head]});
    if (it == by_pair.end()) return memo[c] = m.is_and_state(c.q);
    if (!on_path.insert(c).second) throw std::runtime_error("machine: a computation path does not halt");
    const bool conj = m.is_and_state(c.q);
    bool result = conj;
    for (const auto& t : it->second) {
      long h = static_cast<long>(c.head) + t.dir;
      if (h < 0 || h >= static_cast<long>(m.space)) throw std::runtime_error("machine: a move leaves the tape");
      Config next{t.to, c.tape, static_cast<std::size_t>(h)};
      next.tape[c.head] = t.write;
      bool r = eval(next, depth + 1);
      // Evaluate every branch so that non-halting paths are always detected.
      result = conj ? (result && r) : (result || r);
    }
    on_path.erase(c);
    return memo[c] = result;
  };

  Config start{m.start, std::vector<std::string>(m.space, m.blank), 0};
  for (std::size_t i = 0; i < m.input.size(); ++i) start.tape[i] = std::string(1, m.input[i]);
  return eval(start, 0);
}

}  // namespace gamehoare
