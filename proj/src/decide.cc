#include "gamehoare/decide.hh"

#include <deque>
#include <map>

#include <json.hpp>

#include "gamehoare/denotation.hh"
#include "gamehoare/synth.hh"

namespace gamehoare {

using nlohmann::json;

bool Decision::valid() const {
  for (auto v : og.entries)
    if (!solve.angel_win.test(v)) return false;
  return true;
}

Decision prepare_decision(const Problem& problem, const Query& query, const DecideOptions& options) {
  Decision d;
  d.mode = options.mode_override.value_or(query.mode);
  d.interp = build_free_interpretation(problem, d.mode, options.max_tests);
  d.program = normalize(query.program);
  d.pre = denote_test(query.pre, d.interp.space);
  d.post = denote_test(query.post, d.interp.space);
  d.og = build_game(d.interp, d.program, d.pre, d.post, options.max_vertices, options.with_labels);
  d.solve = solve_game(d.og.game);
  return d;
}

std::string vertex_label(const OperationalGame& og, const AtomSpace& space, std::size_t v) {
  if (!og.game.labels[v].empty()) return og.game.labels[v];
  if (og.is_state_vertex(v))
    return "(" + space.label(og.atom_of(v)) + ", " + pretty_scheme(og.terms[og.term_of(v)]) + ")";
  const auto& [x, cont] = og.option_vertices[v - og.atoms * og.terms.size()];
  return "(" + format_set(x, space.labels()) + ", " + pretty_scheme(og.terms[cont]) + ")";
}

Counterexample counterexample(const Decision& d, std::size_t max_strategy_entries) {
  const auto& g = d.og.game;
  const auto& space = d.interp.space;
  std::size_t start = kNoMove;
  for (auto v : d.og.entries) {
    if (!d.solve.angel_win.test(v)) {
      start = v;
      break;
    }
  }
  if (start == kNoMove) throw std::invalid_argument("counterexample: the query is valid");

  Counterexample cx;
  cx.start_atom = space.label(d.og.atom_of(start));
  for (auto v : demon_play(g, d.solve, start)) cx.play.push_back(vertex_label(d.og, space, v));

  // Demon moves on the region reachable from the start when the demon plays
  // its strategy and the angel is unconstrained.
  std::vector<char> seen(g.size(), 0);
  std::deque<std::size_t> queue{start};
  seen[start] = 1;
  while (!queue.empty() && cx.demon_strategy.size() < max_strategy_entries) {
    std::size_t v = queue.front();
    queue.pop_front();
    if (g.error.test(v)) continue;
    std::vector<std::size_t> next;
    if (g.owner[v] == Owner::Demon) {
      next = {d.solve.demon_strategy[v]};
      cx.demon_strategy.emplace_back(vertex_label(d.og, space, v), vertex_label(d.og, space, next[0]));
    } else {
      next = g.succ[v];
    }
    for (auto w : next) {
      if (!seen[w]) {
        seen[w] = 1;
        queue.push_back(w);
      }
    }
  }
  return cx;
}

Verdict decide_query(const Problem& problem, const Query& query, const DecideOptions& options) {
  Decision d = prepare_decision(problem, query, options);
  Verdict v;
  v.mode = d.mode;
  v.valid = d.valid();
  v.stats = {d.interp.space.size(), d.og.terms.size(), d.og.game.size(), d.solve.rounds};
  if (v.valid) {
    if (options.synthesize && d.mode == Mode::Strong) v.program = synthesize(d).program;
  } else {
    v.counterexample = counterexample(d);
  }
  return v;
}

Verdict decide_query(const Problem& problem, std::size_t query_index, const DecideOptions& options) {
  if (query_index >= problem.queries.size()) throw std::out_of_range("no query " + std::to_string(query_index + 1));
  Verdict v = decide_query(problem, problem.queries[query_index], options);
  v.query = query_index + 1;
  return v;
}

bool decide_denotational(const Problem& problem, const Query& query, std::optional<Mode> mode,
                         std::size_t max_atoms) {
  FreeInterpretation interp = build_free_interpretation(problem, mode.value_or(query.mode));
  if (interp.space.size() > max_atoms)
    throw ResourceError("denotational check limited to " + std::to_string(max_atoms) + " atoms, problem has " +
                        std::to_string(interp.space.size()));
  Model m = free_model(interp);
  GameFunction g = eval_game(m, query.program);
  StateSet pre = denote_test(query.pre, interp.space);
  StateSet post = denote_test(query.post, interp.space);
  for (auto a = pre.find_first(); a != StateSet::npos; a = pre.find_next(a))
    if (!g.contains(a, post)) return false;
  return true;
}

Problem conjoin_hypotheses(const Problem& problem) {
  Problem out = problem;
  out.psi.clear();
  AtomSpace space = consistent_atoms(problem.phi, problem.tests);
  for (std::size_t alpha = 0; alpha < space.size(); ++alpha) {
    for (const auto& a : problem.actions) {
      std::optional<Test> post;
      for (const auto& h : problem.psi) {
        if (h.action != a || !eval_test(h.pre, space[alpha], space)) continue;
        post = post ? Test::conj(*post, h.post) : h.post;
      }
      if (post) out.psi.push_back({atom_test(space, alpha), a, *post});
    }
  }
  return out;
}

std::string verdict_to_json(const Verdict& v) {
  json j;
  j["query"] = v.query;
  j["mode"] = mode_name(v.mode);
  j["valid"] = v.valid;
  json w = json::object();
  if (v.program) w["program"] = pretty_scheme(*v.program);
  if (v.counterexample) {
    const auto& c = *v.counterexample;
    w["start_atom"] = c.start_atom;
    w["play"] = c.play;
    json strat = json::array();
    for (const auto& [from, to] : c.demon_strategy) strat.push_back({{"at", from}, {"move", to}});
    w["demon_strategy"] = strat;
  }
  j["witness"] = w;
  j["stats"] = {{"atoms", v.stats.atoms},
                {"terms", v.stats.terms},
                {"vertices", v.stats.vertices},
                {"rounds", v.stats.rounds}};
  return j.dump();
}

}  // namespace gamehoare
