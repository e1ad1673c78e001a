#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "gamehoare/syntax.hh"
#include "support/testkit.hh"

using namespace gamehoare;

namespace {

Problem ctx(std::vector<std::string> tests, std::vector<std::string> actions) {
  Problem p;
  p.tests = std::move(tests);
  p.actions = std::move(actions);
  return p;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::set<std::string> printed(const TermTable& t) {
  std::set<std::string> out;
  for (const auto& term : t.terms()) out.insert(pretty_scheme(term));
  return out;
}

}  // namespace

TEST_CASE("temperature file parses with the expected declarations") {
  Problem p = parse_problem(slurp(GAMEHOARE_SAMPLES "/temperature.gh"));
  CHECK(p.tests.size() == 6);
  CHECK(p.actions.size() == 5);
  CHECK(p.phi.size() == 7);
  CHECK(p.psi.size() == 27);
  REQUIRE(p.queries.size() == 1);
  CHECK(p.queries[0].program_name == std::optional<std::string>("system"));
}

TEST_CASE("empty declarations") {
  Problem p = parse_problem("tests; actions; query strong {true} skip {true};");
  CHECK(p.tests.empty());
  CHECK(p.phi.empty());
  CHECK(p.psi.empty());
  REQUIRE(p.queries.size() == 1);
  CHECK(p.queries[0].program == Scheme::skip());
}

TEST_CASE("mixed choice needs parentheses") {
  auto c = ctx({}, {"f", "g", "h"});
  CHECK_THROWS_WITH_AS(parse_scheme("f <> g [] h", c), doctest::Contains("ambiguous mixed choice"), ParseError);
  CHECK(parse_scheme("(f <> g) [] h", c) == Scheme::dem(Scheme::ang(Scheme::action("f"), Scheme::action("g")), Scheme::action("h")));
  CHECK(parse_scheme("f <> g <> h", c) ==
        Scheme::ang(Scheme::ang(Scheme::action("f"), Scheme::action("g")), Scheme::action("h")));
}

TEST_CASE("sequencing binds tighter than choice") {
  auto c = ctx({}, {"a", "b", "d"});
  CHECK(parse_scheme("a; b <> d", c) == Scheme::ang(Scheme::seq(Scheme::action("a"), Scheme::action("b")), Scheme::action("d")));
}

TEST_CASE("implication is sugar") {
  auto c = ctx({"p", "q"}, {});
  CHECK(parse_test("p -> q", c) == Test::disj(Test::negate(Test::atomic("p")), Test::atomic("q")));
  CHECK(parse_test("p | q & p", c) == Test::disj(Test::atomic("p"), Test::conj(Test::atomic("q"), Test::atomic("p"))));
}

TEST_CASE("undeclared identifiers are reported with a position") {
  CHECK_THROWS_WITH_AS(parse_problem("tests p;\nactions a;\nquery strong {p} b {p};"), doctest::Contains("3:"), ParseError);
  CHECK_THROWS_AS(parse_problem("tests p;\nactions a;\nquery strong {z} a {p};"), ParseError);
}

TEST_CASE("names with operator characters read unquoted") {
  auto c = ctx({"t=67", "m=heat"}, {"t:=t+1", "m:=heat"});
  CHECK(parse_scheme("if t=67 then { m:=heat } else { t:=t+1 }", c) ==
        Scheme::cond(Test::atomic("t=67"), Scheme::action("m:=heat"), Scheme::action("t:=t+1")));
  CHECK(parse_scheme("\"t:=t+1\"", c) == Scheme::action("t:=t+1"));
}

TEST_CASE("pretty printing") {
  auto c = ctx({"t=67", "t=69"}, {"inc", "m:=heat", "m:=cool", "m:=off"});
  CHECK(pretty_scheme(Scheme::skip()) == "skip");
  CHECK(pretty_scheme(Scheme::ang(Scheme::skip(), Scheme::action("inc"))) == "skip <> inc");
  Scheme controller = parse_scheme("if t=67 then { m:=heat } else if t=69 then { m:=cool } else { m:=off }", c);
  CHECK(pretty_scheme(controller) ==
        "if (t=67) then { m:=heat } else { if (t=69) then { m:=cool } else { m:=off } }");
}

TEST_CASE("parse after pretty is the identity on random schemes") {
  testkit::Rng rng(11);
  std::vector<std::string> actions = {"a", "t:=t+1", "while", "x-", "with space"};
  std::vector<std::string> tests = {"p", "x=0", "if", "q-"};
  auto c = ctx(tests, actions);
  for (int i = 0; i < 1000; ++i) {
    Scheme f = testkit::random_scheme(rng, 1 + testkit::pick(rng, 20), actions, tests, {true, true, 3});
    std::string text = pretty_scheme(f);
    INFO(text);
    REQUIRE(parse_scheme(text, c) == f);
  }
}

TEST_CASE("problem files round trip") {
  for (const char* name : {"temperature.gh", "increment_loop.gh", "separation.gh"}) {
    Problem p = parse_problem(slurp(std::string(GAMEHOARE_SAMPLES "/") + name));
    Problem q = parse_problem(pretty_problem(p));
    CHECK(pretty_problem(q) == pretty_problem(p));
    REQUIRE(q.queries.size() == p.queries.size());
    for (std::size_t i = 0; i < p.queries.size(); ++i) CHECK(q.queries[i].program == p.queries[i].program);
  }
}

TEST_CASE("normalization") {
  auto a = Scheme::action("a"), b = Scheme::action("b"), d = Scheme::action("d");
  CHECK(normalize(Scheme::seq(Scheme::seq(a, b), d)) == Scheme::seq(a, Scheme::seq(b, d)));
  CHECK(normalize(Scheme::diverge()) == Scheme::loop(Test::truth(), Scheme::skip()));
  CHECK(is_normal(Scheme::seq(a, Scheme::seq(b, d))));
  CHECK_FALSE(is_normal(Scheme::seq(Scheme::seq(a, b), d)));
}

TEST_CASE("reach successors") {
  auto c = ctx({"p"}, {"a", "h"});
  CHECK(reach_successors(Scheme::skip()).empty());
  auto ah = parse_scheme("a; h", c);
  REQUIRE(reach_successors(ah).size() == 1);
  CHECK(reach_successors(ah)[0] == parse_scheme("skip; h", c));
  auto w = parse_scheme("while p do { a }", c);
  auto succ = reach_successors(w);
  REQUIRE(succ.size() == 2);
  CHECK(succ[0] == Scheme::seq(Scheme::action("a"), w));
  CHECK(succ[1] == Scheme::skip());
}

TEST_CASE("closure of small schemes") {
  auto c = ctx({"x=0"}, {"a", "inc"});
  CHECK(printed(closure(Scheme::action("a"))) == std::set<std::string>{"a", "skip"});
  CHECK(printed(closure(Scheme::skip())) == std::set<std::string>{"skip"});
  CHECK_THROWS_AS(closure(Scheme::diverge()), ClosureError);

  Scheme h = parse_scheme("while x=0 do { (skip <> inc); (skip [] inc) }", c);
  TermTable cl = closure(h);
  CHECK(cl.size() <= 2 * h.size());
  // Every continuation drawn in the reduced operational picture of h.
  std::string hs = pretty_scheme(h);
  std::string f = "(skip <> inc)", g = "(skip [] inc)";
  std::set<std::string> expected = {
      hs,
      f + "; " + g + "; " + hs,
      "skip; " + g + "; " + hs,
      "inc; " + g + "; " + hs,
      g + "; " + hs,
      "skip; " + hs,
      "inc; " + hs,
      "skip",
  };
  auto got = printed(cl);
  for (const auto& e : expected) CHECK_MESSAGE(got.count(e), e);
  CHECK(got == printed(reachable_terms(h)));
}

TEST_CASE("closure bound and reachability agree on random schemes") {
  testkit::Rng rng(7);
  std::vector<std::string> actions = {"a", "b"}, tests = {"p", "q"};
  for (int i = 0; i < 1000; ++i) {
    Scheme f = testkit::random_scheme(rng, 1 + testkit::pick(rng, 30), actions, tests, {true, false, 1});
    TermTable cl = closure(f);
    INFO(pretty_scheme(f));
    CHECK(cl.size() <= 2 * f.size());
    CHECK(cl.find(normalize(f)).has_value());
    CHECK(printed(cl) == printed(reachable_terms(f)));
  }
}
