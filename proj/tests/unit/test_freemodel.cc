#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "gamehoare/decide.hh"
#include "gamehoare/freemodel.hh"
#include "support/testkit.hh"

using namespace gamehoare;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Problem increment_loop() { return parse_problem(slurp(GAMEHOARE_SAMPLES "/increment_loop.gh")); }

// The (state, continuation) pairs reachable from `from`. An action step
// (u, a;k) -> ({v}, skip;k) -> (v, skip;k) -> (v, k) is collapsed to a single
// move, as in the hand-drawn picture.
std::set<std::pair<std::size_t, std::string>> reachable_pairs(const OperationalGame& og, std::vector<std::size_t> from) {
  std::set<std::size_t> seen(from.begin(), from.end());
  std::set<std::pair<std::size_t, std::string>> out;
  while (!from.empty()) {
    std::size_t v = from.back();
    from.pop_back();
    if (og.is_state_vertex(v)) out.emplace(og.atom_of(v), pretty_scheme(og.terms[og.term_of(v)]));
    std::vector<std::size_t> next = og.game.succ[v];
    if (og.is_state_vertex(v) && head(og.terms[og.term_of(v)]).kind() == Scheme::Kind::Action) {
      next.clear();
      for (auto option : og.game.succ[v])
        for (auto landing : og.game.succ[option]) next.push_back(og.game.succ[landing].front());
    }
    for (auto s : next)
      if (seen.insert(s).second) from.push_back(s);
  }
  return out;
}

}  // namespace

TEST_CASE("strong actions intersect applicable postconditions") {
  Problem p = increment_loop();
  AtomSpace s = consistent_atoms(p.phi, p.tests);
  CHECK(free_action_strong(p.psi, "inc", 0, s) == singleton(3, 1));
  CHECK(free_action_strong(p.psi, "inc", 1, s) == s.all());

  Problem sep = parse_problem(slurp(GAMEHOARE_SAMPLES "/separation.gh"));
  AtomSpace t = consistent_atoms(sep.phi, sep.tests);
  auto qr = denote_test(Test::conj(Test::atomic("q"), Test::atomic("r")), t);
  for (std::size_t a = 0; a < t.size(); ++a)
    if (eval_test(Test::atomic("p"), t[a], t)) CHECK(free_action_strong(sep.psi, "a", a, t) == qr);
}

TEST_CASE("weak options") {
  Problem sep = parse_problem(slurp(GAMEHOARE_SAMPLES "/separation.gh"));
  AtomSpace t = consistent_atoms(sep.phi, sep.tests);
  auto q = denote_test(Test::atomic("q"), t), r = denote_test(Test::atomic("r"), t);
  for (std::size_t a = 0; a < t.size(); ++a) {
    auto opts = options_weak(sep.psi, "a", a, t);
    if (eval_test(Test::atomic("p"), t[a], t))
      CHECK(std::set<StateSet>(opts.begin(), opts.end()) == std::set<StateSet>{q, r});
    else
      CHECK(opts == std::vector<StateSet>{t.all()});
  }
  Problem p = increment_loop();
  AtomSpace s = consistent_atoms(p.phi, p.tests);
  CHECK(options_weak(p.psi, "inc", 0, s) == std::vector<StateSet>{singleton(3, 1)});
}

TEST_CASE("the built game for the increment loop") {
  Problem p = increment_loop();
  Query q = p.queries[0];
  FreeInterpretation interp = build_free_interpretation(p, Mode::Strong);
  OperationalGame og = build_game(interp, q.program, denote_test(q.pre, interp.space), denote_test(q.post, interp.space));
  CHECK_FALSE(validate_game(og.game).has_value());
  CHECK(og.entries == std::vector<std::size_t>{og.state_vertex(0, 0)});
  CHECK(og.game.size() <= interp.space.size() * 2 * q.program.size() + og.option_vertices.size());

  // (x=0, inc; h) offers exactly the option {x=1}.
  auto inc_h = og.terms.find(normalize(parse_scheme("inc; h", p)));
  REQUIRE(inc_h.has_value());
  const auto& succ = og.game.succ[og.state_vertex(0, *inc_h)];
  REQUIRE(succ.size() == 1);
  CHECK(og.option_vertices[succ[0] - og.atoms * og.terms.size()].first == singleton(3, 1));
}

TEST_CASE("the explicit mod-3 model reproduces the reduced picture") {
  Model m = model_from_json(slurp(GAMEHOARE_SAMPLES "/mod3_model.json"));
  Problem c;
  c.tests = {"x=0"};
  c.actions = {"inc"};
  Scheme h = parse_scheme("while x=0 do { (skip <> inc); (skip [] inc) }", c);
  OperationalGame og = build_model_game(m, h, full_set(3), make_set(3, {0, 1}));
  SolveResult r = solve_game(og.game);

  const std::string H = pretty_scheme(h), F = "(skip <> inc)", G = "(skip [] inc)";
  auto name = [&](const std::string& t) {
    if (t == "h") return H;
    if (t == "f;g;h") return F + "; " + G + "; " + H;
    if (t == "id;g;h") return "skip; " + G + "; " + H;
    if (t == "inc;g;h") return "inc; " + G + "; " + H;
    if (t == "g;h") return G + "; " + H;
    if (t == "id;h") return "skip; " + H;
    if (t == "inc;h") return "inc; " + H;
    return std::string("skip");
  };
  std::set<std::pair<std::size_t, std::string>> drawn = {
      {0, name("h")},     {0, name("f;g;h")}, {0, name("id;g;h")}, {0, name("inc;g;h")}, {0, name("g;h")},
      {1, name("g;h")},   {0, name("id;h")},  {0, name("inc;h")},  {1, name("id;h")},    {1, name("inc;h")},
      {1, name("h")},     {2, name("h")},     {1, name("id")},     {2, name("id")}};
  auto got = reachable_pairs(og, {og.state_vertex(0, 0), og.state_vertex(1, 0), og.state_vertex(2, 0)});
  CHECK(got == drawn);

  std::set<std::pair<std::size_t, std::string>> demon;
  for (std::size_t v = 0; v < og.atoms * og.terms.size(); ++v)
    if (r.demon_win.test(v) && got.count({og.atom_of(v), pretty_scheme(og.terms[og.term_of(v)])}))
      demon.emplace(og.atom_of(v), pretty_scheme(og.terms[og.term_of(v)]));
  CHECK(demon == std::set<std::pair<std::size_t, std::string>>{
                     {2, name("id")}, {2, name("h")}, {1, name("inc;h")}, {1, name("g;h")}, {0, name("inc;g;h")}});
}

TEST_CASE("contradictory hypotheses make every query over the action valid") {
  Problem p = parse_problem(R"(
    tests p;
    actions a;
    axiom hoare { true } a { p };
    axiom hoare { true } a { !p };
    query strong { true } a { false };
    query strong { p } a; a { false };
  )");
  CHECK(decide_query(p, 0).valid);
  CHECK(decide_query(p, 1).valid);
  CHECK(decide_denotational(p, p.queries[0]));
}

TEST_CASE("built games validate and weak options are never empty") {
  testkit::Rng rng(12);
  for (int i = 0; i < 200; ++i) {
    auto rp = testkit::random_problem(rng, 1 + testkit::pick(rng, 8));
    for (Mode mode : {Mode::Strong, Mode::Weak}) {
      FreeInterpretation interp = build_free_interpretation(rp.problem, mode);
      if (interp.space.size() == 0) continue;
      OperationalGame og = build_game(interp, rp.query.program, interp.space.all(), interp.space.none());
      CHECK_FALSE(validate_game(og.game).has_value());
      if (mode == Mode::Weak)
        for (const auto& [a, per_atom] : interp.options)
          for (const auto& opts : per_atom) CHECK_FALSE(opts.empty());
      else
        for (const auto& [a, per_atom] : interp.options)
          for (const auto& opts : per_atom) CHECK(opts.size() == 1);
    }
  }
}

TEST_CASE("vertex limit") {
  Problem p = increment_loop();
  FreeInterpretation interp = build_free_interpretation(p, Mode::Strong);
  CHECK_THROWS_AS(build_game(interp, p.queries[0].program, interp.space.all(), interp.space.all(), 5), ResourceError);
}
