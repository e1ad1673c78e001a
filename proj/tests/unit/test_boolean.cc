#include <doctest.h>

#include "gamehoare/boolean.hh"
#include "gamehoare/syntax.hh"
#include "support/testkit.hh"

using namespace gamehoare;

namespace {

std::vector<Test> exactly_one(const std::vector<std::string>& names) {
  std::vector<Test> phi;
  Test any = Test::falsity();
  for (const auto& n : names) any = any.kind() == Test::Kind::False ? Test::atomic(n) : Test::disj(any, Test::atomic(n));
  phi.push_back(any);
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = i + 1; j < names.size(); ++j)
      phi.push_back(Test::negate(Test::conj(Test::atomic(names[i]), Test::atomic(names[j]))));
  return phi;
}

}  // namespace

TEST_CASE("consistent atoms under exactly-one axioms") {
  std::vector<std::string> names = {"x=0", "x=1", "x=2"};
  AtomSpace s = consistent_atoms(exactly_one(names), names);
  CHECK(s.size() == 3);
  CHECK(s.label(0) == "x=0 !x=1 !x=2");
  CHECK(denote_test(Test::atomic("x=1"), s) == make_set(3, {1}));
  CHECK(entails(s, Test::disj(Test::atomic("x=0"), Test::disj(Test::atomic("x=1"), Test::atomic("x=2")))));
  CHECK_FALSE(entails(s, Test::atomic("x=0")));
}

TEST_CASE("no axioms gives every assignment") {
  AtomSpace s = consistent_atoms({}, {"p", "q", "r"});
  CHECK(s.size() == 8);
  AtomSpace none = consistent_atoms({}, {});
  CHECK(none.size() == 1);
  CHECK(none.label(0) == "true");
}

TEST_CASE("too many tests is a resource error") {
  std::vector<std::string> names;
  for (int i = 0; i < 25; ++i) names.push_back("t" + std::to_string(i));
  CHECK_THROWS_AS(consistent_atoms({}, names), ResourceError);
  CHECK_NOTHROW(consistent_atoms({Test::atomic("t0")}, std::vector<std::string>(names.begin(), names.begin() + 10), 10));
}

TEST_CASE("describe_atoms denotes exactly its target") {
  testkit::Rng rng(3);
  std::vector<std::string> names = {"p", "q", "r", "s"};
  for (int i = 0; i < 300; ++i) {
    std::vector<Test> phi;
    if (testkit::coin(rng)) phi.push_back(testkit::random_test(rng, names, 2));
    AtomSpace s = consistent_atoms(phi, names);
    if (s.size() == 0) continue;
    StateSet target = testkit::random_set(rng, s.size());
    Test t = describe_atoms(s, target);
    CHECK(denote_test(t, s) == target);
  }
}

TEST_CASE("atom tests pick out one atom") {
  AtomSpace s = consistent_atoms({}, {"p", "q"});
  for (std::size_t i = 0; i < s.size(); ++i) CHECK(denote_test(atom_test(s, i), s) == singleton(s.size(), i));
}

TEST_CASE("evaluation agrees with denotation") {
  testkit::Rng rng(5);
  std::vector<std::string> names = {"p", "q", "r"};
  AtomSpace s = consistent_atoms({}, names);
  for (int i = 0; i < 200; ++i) {
    Test t = testkit::random_test(rng, names, 4);
    StateSet d = denote_test(t, s);
    for (std::size_t a = 0; a < s.size(); ++a) CHECK(d.test(a) == eval_test(t, s[a], s));
  }
}
