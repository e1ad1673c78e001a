#include "gamehoare/synth.hh"

#include <json.hpp>

#include "gamehoare/denotation.hh"

namespace gamehoare {

namespace {

ContTerm then(const ContTerm& t, const std::optional<ContTerm>& k) { return k ? concat(t, *k) : t; }

class Synthesizer {
 public:
  explicit Synthesizer(const Decision& d) : d_(d) {}

  Scheme run(const Scheme& f, const std::optional<ContTerm>& k) {
    using K = Scheme::Kind;
    switch (f.kind()) {
      case K::Skip:
      case K::Action:
      case K::Diverge:
        return f;
      case K::Seq:
        return Scheme::seq(run(f.first(), then(f.second(), k)), run(f.second(), k));
      case K::Cond:
        return Scheme::cond(f.test(), run(f.first(), k), run(f.second(), k));
      case K::While:
        return Scheme::loop(f.test(), run(f.first(), then(f, k)));
      case K::Dem:
        return Scheme::dem(run(f.first(), k), run(f.second(), k));
      case K::Ang:
        return resolve(f, k);
    }
    throw std::logic_error("synthesize: bad scheme kind");
  }

  std::vector<Provenance> provenance;

 private:
  Scheme resolve(const Scheme& f, const std::optional<ContTerm>& k) {
    const auto& space = d_.interp.space;
    const auto& og = d_.og;
    // Atoms at which the strategy takes the left branch. Losing and
    // unreachable positions default to the left.
    StateSet left = space.all();
    ContTerm here = then(f, k);
    if (auto tid = og.terms.find(here)) {
      auto next = reach_successors(here);
      std::size_t left_term = *og.terms.find(next[0]);
      for (std::size_t alpha = 0; alpha < space.size(); ++alpha) {
        std::size_t v = og.state_vertex(alpha, *tid);
        std::size_t move = d_.solve.angel_strategy[v];
        if (move != kNoMove && move != og.state_vertex(alpha, left_term)) left.reset(alpha);
      }
    }
    Test guard = describe_atoms(space, left);
    provenance.push_back({pretty_scheme(f), k ? pretty_scheme(*k) : std::string(), pretty_test(guard),
                          left.count(), space.size() - left.count()});
    if (guard.kind() == Test::Kind::True) return run(f.first(), k);
    if (guard.kind() == Test::Kind::False) return run(f.second(), k);
    return Scheme::cond(guard, run(f.first(), k), run(f.second(), k));
  }

  const Decision& d_;
};

}  // namespace

SynthesizedProgram synthesize(const Decision& d) {
  if (d.mode != Mode::Strong) throw std::invalid_argument("synthesize: only strong-mode queries have angel-free witnesses");
  if (!d.valid()) throw std::invalid_argument("synthesize: the query is not valid");
  Synthesizer s(d);
  SynthesizedProgram out;
  out.program = s.run(d.program, std::nullopt);
  out.provenance = std::move(s.provenance);
  return out;
}

VerifyReport verify_synthesized(const Problem& problem, const Query& query, const Scheme& t,
                                std::size_t oracle_max_atoms) {
  VerifyReport r;
  r.angel_free = is_angel_free(t);
  if (!r.angel_free) {
    r.detail = "program contains angelic choice";
    return r;
  }
  FreeInterpretation interp = build_free_interpretation(problem, Mode::Strong);
  const auto& space = interp.space;
  Model m = free_model(interp);
  NondetFunction rel = eval_relational(m, t);
  StateSet pre = denote_test(query.pre, space);
  StateSet post = denote_test(query.post, space);
  r.meets_spec = true;
  for (auto a = pre.find_first(); a != StateSet::npos; a = pre.find_next(a)) {
    if (!rel(a).is_subset_of(post)) {
      r.meets_spec = false;
      StateSet bad = rel(a) & ~post;
      r.detail = "from " + space.label(a) + " the program can end in " + space.label(bad.find_first()) +
                 ", outside the postcondition";
      break;
    }
  }
  if (space.size() <= oracle_max_atoms) r.implements_original = implements_check(rel, eval_game(m, query.program));
  r.ok = r.meets_spec && r.implements_original.value_or(true);
  if (r.meets_spec && !r.ok) r.detail = "program does not implement the original scheme";
  return r;
}

std::string provenance_to_json(const SynthesizedProgram& s) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& p : s.provenance)
    arr.push_back({{"angelic", p.angelic_node},
                   {"continuation", p.continuation},
                   {"guard", p.guard},
                   {"left_atoms", p.left_atoms},
                   {"right_atoms", p.right_atoms}});
  return nlohmann::json{{"program", pretty_scheme(s.program)}, {"resolutions", arr}}.dump(2);
}

}  // namespace gamehoare
