#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "gamehoare/arena.hh"
#include "support/testkit.hh"

using namespace gamehoare;

namespace {

SafetyGame increment_game() {
  std::ifstream in(GAMEHOARE_SAMPLES "/increment_game.json");
  std::ostringstream ss;
  ss << in.rdbuf();
  return game_from_json(ss.str());
}

std::set<std::string> labels_of(const SafetyGame& g, const StateSet& s) {
  std::set<std::string> out;
  for_each_member(s, [&](std::size_t v) { out.insert(g.labels[v]); });
  return out;
}

}  // namespace

TEST_CASE("the reduced increment game") {
  SafetyGame g = increment_game();
  CHECK(g.size() == 14);
  CHECK_FALSE(validate_game(g).has_value());
  SolveResult r = solve_game(g);
  CHECK(labels_of(g, r.demon_win) ==
        std::set<std::string>{"(2,id)", "(2,h)", "(1,inc;h)", "(1,g;h)", "(0,inc;g;h)"});
  CHECK((r.angel_win | r.demon_win).all());
  CHECK_FALSE(r.angel_win.intersects(r.demon_win));
  CHECK(r.rank[13] == 0);
  // The only angel vertex resolves skip <> inc towards skip.
  CHECK(r.angel_strategy[1] == 2);
}

TEST_CASE("validation") {
  SafetyGame sink;
  sink.add_vertex("v", Owner::Angel, false);
  auto err = validate_game(sink);
  REQUIRE(err.has_value());
  CHECK(err->find("sink") != std::string::npos);

  SafetyGame two;
  two.add_vertex("a", Owner::Neither, false);
  two.add_vertex("b", Owner::Neither, false);
  two.add_edge(0, 0);
  two.add_edge(0, 1);
  two.add_edge(1, 1);
  CHECK(validate_game(two).has_value());
}

TEST_CASE("no error vertices means no demon region") {
  testkit::Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    SafetyGame g = testkit::random_safety_game(rng, 1 + testkit::pick(rng, 20), 0.0);
    CHECK(solve_game(g).demon_win.none());
  }
}

TEST_CASE("solver agrees with bounded play and its strategies are sound") {
  testkit::Rng rng(2);
  for (int i = 0; i < 300; ++i) {
    std::size_t n = 1 + testkit::pick(rng, 50);
    SafetyGame g = testkit::random_safety_game(rng, n);
    REQUIRE_FALSE(validate_game(g).has_value());
    SolveResult r = solve_game(g);
    auto brute = testkit::brute_angel_wins(g);
    for (std::size_t v = 0; v < n; ++v) {
      REQUIRE(r.angel_win.test(v) == brute[v]);
      REQUIRE(r.angel_win.test(v) != r.demon_win.test(v));
      if (r.angel_win.test(v) && g.owner[v] == Owner::Angel) {
        REQUIRE(r.angel_strategy[v] != kNoMove);
        CHECK(r.angel_win.test(r.angel_strategy[v]));
        // lowest winning successor
        std::size_t best = kNoMove;
        for (auto s : g.succ[v])
          if (r.angel_win.test(s)) best = std::min(best, s);
        CHECK(r.angel_strategy[v] == best);
      }
      if (r.demon_win.test(v)) {
        if (g.error.test(v)) CHECK(r.rank[v] == 0);
        if (!g.error.test(v)) {
          // every move that the owner of v may make lowers the rank for the demon
          if (g.owner[v] == Owner::Demon) {
            REQUIRE(r.demon_strategy[v] != kNoMove);
            CHECK(r.rank[r.demon_strategy[v]] < r.rank[v]);
          } else {
            for (auto s : g.succ[v]) CHECK(r.rank[s] < r.rank[v]);
          }
        }
        auto play = demon_play(g, r, v);
        REQUIRE_FALSE(play.empty());
        CHECK(g.error.test(play.back()));
        CHECK(play.size() <= r.rank[v] + 1);
      }
    }
  }
}

TEST_CASE("enlarging the error set never shrinks the demon region") {
  testkit::Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    SafetyGame g = testkit::random_safety_game(rng, 1 + testkit::pick(rng, 30));
    SolveResult before = solve_game(g);
    g.error.set(testkit::pick(rng, g.size()));
    SolveResult after = solve_game(g);
    CHECK(before.demon_win.is_subset_of(after.demon_win));
  }
}

TEST_CASE("angel strategy keeps plays safe") {
  testkit::Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    SafetyGame g = testkit::random_safety_game(rng, 1 + testkit::pick(rng, 20));
    SolveResult r = solve_game(g);
    for_each_member(r.angel_win, [&](std::size_t start) {
      // Explore every demon choice for |V|+1 steps.
      std::set<std::size_t> frontier = {start};
      for (std::size_t step = 0; step <= g.size(); ++step) {
        std::set<std::size_t> next;
        for (auto v : frontier) {
          REQUIRE_FALSE(g.error.test(v));
          if (g.owner[v] == Owner::Angel)
            next.insert(r.angel_strategy[v]);
          else
            next.insert(g.succ[v].begin(), g.succ[v].end());
        }
        frontier = std::move(next);
      }
    });
  }
}

TEST_CASE("game files round trip") {
  SafetyGame g = increment_game();
  SafetyGame again = game_from_json(game_to_json(g));
  CHECK(again.labels == g.labels);
  CHECK(again.owner == g.owner);
  CHECK(again.succ == g.succ);
  CHECK(again.error == g.error);
  auto j = nlohmann::json::parse(solve_result_to_json(g, solve_game(g)));
  CHECK(j.dump().find("demon") != std::string::npos);
  CHECK_THROWS(game_from_json(R"({"vertices":[{"id":0,"owner":"angel","succ":[7]}]})"));
}
