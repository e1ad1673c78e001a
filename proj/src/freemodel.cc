#include "gamehoare/freemodel.hh"

#include <unordered_map>

#include <boost/container_hash/hash.hpp>

namespace gamehoare {

namespace {

struct DenotedAxiom {
  const SimpleAssertion* axiom;
  StateSet pre, post;
};

std::vector<DenotedAxiom> denote_axioms(const std::vector<SimpleAssertion>& psi, const std::string& a,
                                        const AtomSpace& space) {
  std::vector<DenotedAxiom> out;
  for (const auto& h : psi)
    if (h.action == a) out.push_back({&h, denote_test(h.pre, space), denote_test(h.post, space)});
  return out;
}

StateSet strong_from(const std::vector<DenotedAxiom>& axioms, std::size_t alpha, const AtomSpace& space) {
  StateSet s = space.all();
  for (const auto& d : axioms)
    if (d.pre.test(alpha)) s &= d.post;
  return s;
}

std::vector<StateSet> weak_from(const std::vector<DenotedAxiom>& axioms, std::size_t alpha,
                                const AtomSpace& space) {
  std::vector<StateSet> opts{space.all()};
  for (const auto& d : axioms)
    if (d.pre.test(alpha)) opts.push_back(d.post);
  return minimize(std::move(opts));
}

}  // namespace

StateSet free_action_strong(const std::vector<SimpleAssertion>& psi, const std::string& a, std::size_t alpha,
                            const AtomSpace& space) {
  return strong_from(denote_axioms(psi, a, space), alpha, space);
}

std::vector<StateSet> options_weak(const std::vector<SimpleAssertion>& psi, const std::string& a,
                                   std::size_t alpha, const AtomSpace& space) {
  return weak_from(denote_axioms(psi, a, space), alpha, space);
}

FreeInterpretation build_free_interpretation(const Problem& problem, Mode mode, std::size_t max_tests) {
  FreeInterpretation interp;
  interp.space = consistent_atoms(problem.phi, problem.tests, max_tests);
  interp.mode = mode;
  const auto& space = interp.space;
  for (const auto& a : problem.actions) {
    auto axioms = denote_axioms(problem.psi, a, space);
    auto& per_atom = interp.options[a];
    per_atom.reserve(space.size());
    for (std::size_t alpha = 0; alpha < space.size(); ++alpha) {
      if (mode == Mode::Strong)
        per_atom.push_back({strong_from(axioms, alpha, space)});
      else
        per_atom.push_back(weak_from(axioms, alpha, space));
    }
  }
  return interp;
}

Model free_model(const FreeInterpretation& interp) {
  Model m;
  const auto& space = interp.space;
  m.state_labels = space.labels();
  for (const auto& name : space.names()) m.tests[name] = denote_test(Test::atomic(name), space);
  for (const auto& [a, per_atom] : interp.options) m.actions.emplace(a, GameFunction(space.size(), per_atom));
  return m;
}

namespace {

// Shared construction. `Source` supplies the state count, labels, test
// denotations and per-state action options.
template <class Source>
OperationalGame build(const Source& src, const Scheme& f, const StateSet& pre, const StateSet& post,
                      std::size_t max_vertices, bool with_labels) {
  OperationalGame og;
  og.terms = reachable_terms(normalize(f));
  og.atoms = src.size();
  const std::size_t nterms = og.terms.size();
  const std::size_t nstates = og.atoms * nterms;
  if (nstates > max_vertices)
    throw ResourceError("game too large: " + std::to_string(og.atoms) + " atoms x " + std::to_string(nterms) +
                        " terms exceeds the vertex limit " + std::to_string(max_vertices));

  std::vector<std::string> atom_labels, term_labels;
  if (with_labels) {
    atom_labels = src.labels();
    for (const auto& t : og.terms.terms()) term_labels.push_back(pretty_scheme(t));
  }

  // Cache of test denotations keyed by the guard, since guards repeat across atoms.
  std::unordered_map<Test, StateSet, TestHash> guards;
  auto guard = [&](const Test& p) -> const StateSet& {
    auto it = guards.find(p);
    if (it == guards.end()) it = guards.emplace(p, src.denote(p)).first;
    return it->second;
  };

  // Per-term shape, shared by every atom.
  struct Shape {
    Scheme::Kind kind;
    std::vector<std::size_t> next;  // term ids of successors
    const StateSet* test = nullptr;
    std::string action;
    bool terminal = false;
  };
  std::vector<Shape> shapes(nterms);
  for (std::size_t t = 0; t < nterms; ++t) {
    const ContTerm& term = og.terms[t];
    const Scheme& e = head(term);
    Shape& s = shapes[t];
    s.kind = e.kind();
    for (const auto& succ : reach_successors(term)) s.next.push_back(*og.terms.find(succ));
    if (e.kind() == Scheme::Kind::Cond || e.kind() == Scheme::Kind::While) s.test = &guard(e.test());
    if (e.kind() == Scheme::Kind::Action) {
      s.action = e.name();
      if (!src.has_action(s.action)) throw std::invalid_argument("undeclared action '" + s.action + "'");
    }
    s.terminal = e.kind() == Scheme::Kind::Skip && !tail(term);
  }

  SafetyGame& g = og.game;
  g.labels.reserve(nstates);
  g.owner.reserve(nstates);
  g.succ.reserve(nstates);
  for (std::size_t alpha = 0; alpha < og.atoms; ++alpha) {
    for (std::size_t t = 0; t < nterms; ++t) {
      const Shape& s = shapes[t];
      Owner o = Owner::Neither;
      if (s.kind == Scheme::Kind::Ang || s.kind == Scheme::Kind::Action) o = Owner::Angel;
      if (s.kind == Scheme::Kind::Dem) o = Owner::Demon;
      std::string label;
      if (with_labels) label = "(" + atom_labels[alpha] + ", " + term_labels[t] + ")";
      g.add_vertex(std::move(label), o, s.terminal && !post.test(alpha));
    }
  }

  std::unordered_map<std::pair<StateSet, std::size_t>, std::size_t,
                     boost::hash<std::pair<StateSet, std::size_t>>>
      option_index;
  auto option_vertex = [&](const StateSet& x, std::size_t cont) {
    auto key = std::make_pair(x, cont);
    auto it = option_index.find(key);
    if (it != option_index.end()) return it->second;
    if (g.size() + 1 > max_vertices)
      throw ResourceError("game too large: option vertices exceed the vertex limit " +
                          std::to_string(max_vertices));
    std::string label;
    if (with_labels) label = "(" + format_set(x, atom_labels) + ", " + term_labels[cont] + ")";
    std::size_t v = g.add_vertex(std::move(label), x.none() ? Owner::Neither : Owner::Demon, false);
    if (x.none()) {
      // Nothing for the demon to choose from: the angel wins vacuously.
      g.add_edge(v, v);
    } else {
      for_each_member(x, [&](std::size_t beta) { g.add_edge(v, og.state_vertex(beta, cont)); });
    }
    og.option_vertices.emplace_back(x, cont);
    option_index.emplace(std::move(key), v);
    return v;
  };

  for (std::size_t alpha = 0; alpha < og.atoms; ++alpha) {
    for (std::size_t t = 0; t < nterms; ++t) {
      const Shape& s = shapes[t];
      const std::size_t v = og.state_vertex(alpha, t);
      switch (s.kind) {
        case Scheme::Kind::Skip:
          g.add_edge(v, s.terminal ? v : og.state_vertex(alpha, s.next[0]));
          break;
        case Scheme::Kind::Action:
          for (const auto& x : src.options(s.action, alpha)) g.add_edge(v, option_vertex(x, s.next[0]));
          break;
        case Scheme::Kind::Cond:
          g.add_edge(v, og.state_vertex(alpha, s.next[s.test->test(alpha) ? 0 : 1]));
          break;
        case Scheme::Kind::While:
          g.add_edge(v, og.state_vertex(alpha, s.next[s.test->test(alpha) ? 0 : 1]));
          break;
        case Scheme::Kind::Ang:
        case Scheme::Kind::Dem:
          g.add_edge(v, og.state_vertex(alpha, s.next[0]));
          g.add_edge(v, og.state_vertex(alpha, s.next[1]));
          break;
        default:
          throw std::logic_error("build_game: term not in normal form");
      }
    }
  }

  for_each_member(pre, [&](std::size_t alpha) { og.entries.push_back(og.state_vertex(alpha, 0)); });
  return og;
}

struct FreeSource {
  const FreeInterpretation& interp;
  std::size_t size() const { return interp.space.size(); }
  std::vector<std::string> labels() const { return interp.space.labels(); }
  StateSet denote(const Test& p) const { return denote_test(p, interp.space); }
  bool has_action(const std::string& a) const { return interp.options.count(a) > 0; }
  const std::vector<StateSet>& options(const std::string& a, std::size_t u) const { return interp.at(a, u); }
};

struct ModelSource {
  const Model& model;
  std::size_t size() const { return model.size(); }
  std::vector<std::string> labels() const { return model.state_labels; }
  StateSet denote(const Test& p) const { return model.denote(p); }
  bool has_action(const std::string& a) const { return model.actions.count(a) > 0; }
  const std::vector<StateSet>& options(const std::string& a, std::size_t u) const {
    return model.actions.at(a).at(u);
  }
};

}  // namespace

OperationalGame build_game(const FreeInterpretation& interp, const Scheme& f, const StateSet& pre,
                           const StateSet& post, std::size_t max_vertices, bool with_labels) {
  return build(FreeSource{interp}, f, pre, post, max_vertices, with_labels);
}

OperationalGame build_model_game(const Model& model, const Scheme& f, const StateSet& pre, const StateSet& post,
                                 std::size_t max_vertices, bool with_labels) {
  return build(ModelSource{model}, f, pre, post, max_vertices, with_labels);
}

}  // namespace gamehoare
