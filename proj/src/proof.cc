#include "gamehoare/proof.hh"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

#include "gamehoare/boolean.hh"

namespace gamehoare {

using nlohmann::json;

const std::vector<std::string>& proof_rules() {
  static const std::vector<std::string> rules = {"hyp",  "skip", "dvrg",   "seq",    "cond",     "loop",
                                                 "ang1", "ang2", "dem",    "weak",   "join",     "a-join0",
                                                 "a-meet", "a-meet0", "join-prime", "join-dprime"};
  return rules;
}

namespace {

ProofNode node_from_json(const json& j, const Problem& ctx) {
  ProofNode n;
  n.rule = j.at("rule").get<std::string>();
  const auto& c = j.at("conclusion");
  n.conclusion.pre = parse_test(c.at("pre").get<std::string>(), ctx);
  n.conclusion.program = parse_scheme(c.at("prog").get<std::string>(), ctx);
  n.conclusion.post = parse_test(c.at("post").get<std::string>(), ctx);
  if (c.contains("witness") && !c.at("witness").is_null())
    n.conclusion.witness = parse_scheme(c.at("witness").get<std::string>(), ctx);
  if (j.contains("mid")) n.mid = parse_test(j.at("mid").get<std::string>(), ctx);
  if (j.contains("invariant")) n.invariant = parse_test(j.at("invariant").get<std::string>(), ctx);
  if (j.contains("split")) n.split = parse_test(j.at("split").get<std::string>(), ctx);
  for (const auto& p : j.value("premises", json::array())) n.premises.push_back(node_from_json(p, ctx));
  return n;
}

json node_to_json(const ProofNode& n) {
  json c{{"pre", pretty_test(n.conclusion.pre)},
         {"prog", pretty_scheme(n.conclusion.program)},
         {"post", pretty_test(n.conclusion.post)}};
  if (n.conclusion.witness) c["witness"] = pretty_scheme(*n.conclusion.witness);
  json j{{"rule", n.rule}, {"conclusion", c}};
  if (n.mid) j["mid"] = pretty_test(*n.mid);
  if (n.invariant) j["invariant"] = pretty_test(*n.invariant);
  if (n.split) j["split"] = pretty_test(*n.split);
  json ps = json::array();
  for (const auto& p : n.premises) ps.push_back(node_to_json(p));
  j["premises"] = ps;
  return j;
}

struct Reject {
  std::string path;
  std::string message;
};

class Checker {
 public:
  Checker(const Problem& problem) : problem_(problem), space_(consistent_atoms(problem.phi, problem.tests)) {}

  // Returns the witness of `n`, or throws Reject.
  Scheme check(const ProofNode& n, const std::string& path) {
    std::vector<Scheme> ws;
    for (std::size_t i = 0; i < n.premises.size(); ++i)
      ws.push_back(check(n.premises[i], path + "/" + std::to_string(i) + ":" + n.premises[i].rule));
    path_ = &path;
    Scheme w = rule(n, ws);
    if (n.conclusion.witness && *n.conclusion.witness != w)
      fail("witness " + pretty_scheme(*n.conclusion.witness) + " does not match the rule, expected " +
           pretty_scheme(w));
    return w;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw Reject{*path_, msg}; }

  void arity(const ProofNode& n, std::size_t k) const {
    if (n.premises.size() != k)
      fail("rule " + n.rule + " takes " + std::to_string(k) + " premise(s), found " +
           std::to_string(n.premises.size()));
  }

  void same(const Test& a, const Test& b, const std::string& what) const {
    if (a != b) fail(what + ": expected " + pretty_test(b) + ", found " + pretty_test(a));
  }

  void same(const Scheme& a, const Scheme& b, const std::string& what) const {
    if (a != b) fail(what + ": expected " + pretty_scheme(b) + ", found " + pretty_scheme(a));
  }

  void kind(const Scheme& f, Scheme::Kind k, const char* what) const {
    if (f.kind() != k) fail("rule needs " + std::string(what) + " program, found " + pretty_scheme(f));
  }

  void entailed(const Test& p, const Test& q) const {
    if (!entails(space_, Test::implies(p, q)))
      fail("side condition fails: " + pretty_test(p) + " does not entail " + pretty_test(q));
  }

  Scheme rule(const ProofNode& n, const std::vector<Scheme>& ws) {
    const auto& c = n.conclusion;
    const auto& r = n.rule;
    auto prem = [&](std::size_t i) -> const Judgment& { return n.premises[i].conclusion; };

    if (r == "hyp") {
      arity(n, 0);
      kind(c.program, Scheme::Kind::Action, "an atomic");
      bool found = std::any_of(problem_.psi.begin(), problem_.psi.end(), [&](const SimpleAssertion& h) {
        return h.action == c.program.name() && h.pre == c.pre && h.post == c.post;
      });
      if (!found) fail("{" + pretty_test(c.pre) + "} " + c.program.name() + " {" + pretty_test(c.post) + "} is not a hypothesis");
      return c.program;
    }
    if (r == "skip") {
      arity(n, 0);
      kind(c.program, Scheme::Kind::Skip, "a skip");
      same(c.post, c.pre, "postcondition");
      return c.program;
    }
    if (r == "dvrg") {
      arity(n, 0);
      kind(c.program, Scheme::Kind::Diverge, "a diverge");
      return c.program;
    }
    if (r == "seq") {
      arity(n, 2);
      kind(c.program, Scheme::Kind::Seq, "a sequential");
      same(prem(0).program, c.program.first(), "first premise program");
      same(prem(1).program, c.program.second(), "second premise program");
      same(prem(0).pre, c.pre, "first premise precondition");
      same(prem(1).pre, prem(0).post, "midpoint");
      if (n.mid) same(prem(0).post, *n.mid, "stated midpoint");
      same(prem(1).post, c.post, "second premise postcondition");
      return Scheme::seq(ws[0], ws[1]);
    }
    if (r == "cond") {
      arity(n, 2);
      kind(c.program, Scheme::Kind::Cond, "a conditional");
      const Test& b = c.program.test();
      same(prem(0).program, c.program.first(), "then premise program");
      same(prem(1).program, c.program.second(), "else premise program");
      same(prem(0).pre, Test::conj(c.pre, b), "then premise precondition");
      same(prem(1).pre, Test::conj(c.pre, Test::negate(b)), "else premise precondition");
      same(prem(0).post, c.post, "then premise postcondition");
      same(prem(1).post, c.post, "else premise postcondition");
      return Scheme::cond(b, ws[0], ws[1]);
    }
    if (r == "loop") {
      arity(n, 1);
      kind(c.program, Scheme::Kind::While, "a while");
      const Test& b = c.program.test();
      if (n.invariant) same(c.pre, *n.invariant, "stated invariant");
      same(prem(0).program, c.program.first(), "body premise program");
      same(prem(0).pre, Test::conj(c.pre, b), "body premise precondition");
      same(prem(0).post, c.pre, "body premise postcondition");
      same(c.post, Test::conj(c.pre, Test::negate(b)), "postcondition");
      return Scheme::loop(b, ws[0]);
    }
    if (r == "ang1" || r == "ang2") {
      arity(n, 1);
      kind(c.program, Scheme::Kind::Ang, "an angelic choice");
      same(prem(0).program, r == "ang1" ? c.program.first() : c.program.second(), "premise program");
      same(prem(0).pre, c.pre, "premise precondition");
      same(prem(0).post, c.post, "premise postcondition");
      return ws[0];
    }
    if (r == "dem") {
      arity(n, 2);
      kind(c.program, Scheme::Kind::Dem, "a demonic choice");
      same(prem(0).program, c.program.first(), "left premise program");
      same(prem(1).program, c.program.second(), "right premise program");
      for (std::size_t i = 0; i < 2; ++i) {
        same(prem(i).pre, c.pre, "premise precondition");
        same(prem(i).post, c.post, "premise postcondition");
      }
      return Scheme::dem(ws[0], ws[1]);
    }
    if (r == "weak") {
      arity(n, 1);
      same(prem(0).program, c.program, "premise program");
      entailed(c.pre, prem(0).pre);
      entailed(prem(0).post, c.post);
      return ws[0];
    }
    if (r == "join" || r == "join-prime") {
      arity(n, 2);
      for (std::size_t i = 0; i < 2; ++i) {
        same(prem(i).program, c.program, "premise program");
        same(prem(i).post, c.post, "premise postcondition");
      }
      same(c.pre, Test::disj(prem(0).pre, prem(1).pre), "precondition");
      if (r == "join") return Scheme::cond(prem(0).pre, ws[0], ws[1]);
      if (ws[0] != ws[1]) fail("join-prime needs both premises to share one witness");
      return ws[0];
    }
    if (r == "join-dprime") {
      arity(n, 2);
      const Test& p0 = prem(0).pre;
      if (p0.kind() != Test::Kind::And) fail("join-dprime premise precondition must have the form p & r");
      Test split = n.split.value_or(p0.rhs());
      for (std::size_t i = 0; i < 2; ++i) {
        same(prem(i).program, c.program, "premise program");
        same(prem(i).post, c.post, "premise postcondition");
      }
      same(prem(0).pre, Test::conj(c.pre, split), "first premise precondition");
      same(prem(1).pre, Test::conj(c.pre, Test::negate(split)), "second premise precondition");
      return Scheme::cond(split, ws[0], ws[1]);
    }
    if (r == "a-join0") {
      arity(n, 0);
      kind(c.program, Scheme::Kind::Action, "an atomic");
      same(c.pre, Test::falsity(), "precondition");
      return c.program;
    }
    if (r == "a-meet") {
      arity(n, 2);
      kind(c.program, Scheme::Kind::Action, "an atomic");
      for (std::size_t i = 0; i < 2; ++i) {
        same(prem(i).program, c.program, "premise program");
        same(prem(i).pre, c.pre, "premise precondition");
      }
      same(c.post, Test::conj(prem(0).post, prem(1).post), "postcondition");
      return c.program;
    }
    if (r == "a-meet0") {
      arity(n, 0);
      kind(c.program, Scheme::Kind::Action, "an atomic");
      same(c.post, Test::truth(), "postcondition");
      return c.program;
    }
    fail("unknown rule '" + r + "'");
  }

  const Problem& problem_;
  AtomSpace space_;
  const std::string* path_ = nullptr;
};

}  // namespace

ProofNode proof_from_json(std::string_view text, const Problem& ctx) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("proof: ") + e.what());
  }
  return node_from_json(j, ctx);
}

std::string proof_to_json(const ProofNode& root) { return node_to_json(root).dump(2); }

ProofCheck check_proof(const Problem& problem, const ProofNode& root, const std::optional<Query>& expected) {
  ProofCheck out;
  const std::string root_path = "root:" + root.rule;
  try {
    Checker checker(problem);
    if (expected) {
      const auto& c = root.conclusion;
      if (c.pre != expected->pre || c.program != expected->program || c.post != expected->post)
        throw Reject{root_path, "the proof concludes {" + pretty_test(c.pre) + "} " + pretty_scheme(c.program) +
                                    " {" + pretty_test(c.post) + "}, not the query"};
    }
    out.witness = checker.check(root, root_path);
    out.ok = true;
  } catch (const Reject& r) {
    out.path = r.path;
    out.message = r.message;
  }
  return out;
}

}  // namespace gamehoare
