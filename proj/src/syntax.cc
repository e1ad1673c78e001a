#include "gamehoare/syntax.hh"

#include <algorithm>
#include <functional>

#include <boost/container_hash/hash.hpp>

namespace gamehoare {

// ---------------------------------------------------------------------------
// Test

Test Test::make(Kind k, std::string name, std::optional<Test> l, std::optional<Test> r) {
  auto n = std::make_shared<Node>();
  std::size_t h = static_cast<std::size_t>(k) * 0x9e3779b97f4a7c15ULL;
  boost::hash_combine(h, name);
  if (l) boost::hash_combine(h, l->hash());
  if (r) boost::hash_combine(h, r->hash());
  n->kind = k;
  n->name = std::move(name);
  n->lhs = std::move(l);
  n->rhs = std::move(r);
  n->hash = h;
  return Test(std::move(n));
}

Test Test::truth() { return make(Kind::True, {}, std::nullopt, std::nullopt); }
Test Test::falsity() { return make(Kind::False, {}, std::nullopt, std::nullopt); }
Test Test::atomic(std::string name) { return make(Kind::Atomic, std::move(name), std::nullopt, std::nullopt); }
Test Test::negate(Test t) { return make(Kind::Not, {}, std::move(t), std::nullopt); }
Test Test::conj(Test a, Test b) { return make(Kind::And, {}, std::move(a), std::move(b)); }
Test Test::disj(Test a, Test b) { return make(Kind::Or, {}, std::move(a), std::move(b)); }
Test Test::implies(Test a, Test b) { return disj(negate(std::move(a)), std::move(b)); }

bool operator==(const Test& a, const Test& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Test::Kind::True:
    case Test::Kind::False:
      return true;
    case Test::Kind::Atomic:
      return a.name() == b.name();
    case Test::Kind::Not:
      return a.lhs() == b.lhs();
    case Test::Kind::And:
    case Test::Kind::Or:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
  return false;
}

std::vector<std::string> atomic_names(const Test& p) {
  std::vector<std::string> out;
  std::function<void(const Test&)> walk = [&](const Test& t) {
    switch (t.kind()) {
      case Test::Kind::Atomic:
        if (std::find(out.begin(), out.end(), t.name()) == out.end()) out.push_back(t.name());
        break;
      case Test::Kind::Not:
        walk(t.lhs());
        break;
      case Test::Kind::And:
      case Test::Kind::Or:
        walk(t.lhs());
        walk(t.rhs());
        break;
      default:
        break;
    }
  };
  walk(p);
  return out;
}

// ---------------------------------------------------------------------------
// Scheme

Scheme Scheme::make(Kind k, std::string name, std::optional<Test> p, std::optional<Scheme> f,
                    std::optional<Scheme> g) {
  auto n = std::make_shared<Node>();
  std::size_t h = (static_cast<std::size_t>(k) + 17) * 0x9e3779b97f4a7c15ULL;
  std::size_t size = 1;
  boost::hash_combine(h, name);
  if (p) boost::hash_combine(h, p->hash());
  if (f) {
    boost::hash_combine(h, f->hash());
    size += f->size();
  }
  if (g) {
    boost::hash_combine(h, g->hash());
    size += g->size();
  }
  n->kind = k;
  n->name = std::move(name);
  n->test = std::move(p);
  n->first = std::move(f);
  n->second = std::move(g);
  n->size = size;
  n->hash = h;
  return Scheme(std::move(n));
}

Scheme Scheme::skip() { return make(Kind::Skip, {}, std::nullopt, std::nullopt, std::nullopt); }
Scheme Scheme::diverge() { return make(Kind::Diverge, {}, std::nullopt, std::nullopt, std::nullopt); }
Scheme Scheme::action(std::string name) {
  return make(Kind::Action, std::move(name), std::nullopt, std::nullopt, std::nullopt);
}
Scheme Scheme::seq(Scheme f, Scheme g) { return make(Kind::Seq, {}, std::nullopt, std::move(f), std::move(g)); }
Scheme Scheme::cond(Test p, Scheme f, Scheme g) {
  return make(Kind::Cond, {}, std::move(p), std::move(f), std::move(g));
}
Scheme Scheme::loop(Test p, Scheme body) {
  return make(Kind::While, {}, std::move(p), std::move(body), std::nullopt);
}
Scheme Scheme::ang(Scheme f, Scheme g) { return make(Kind::Ang, {}, std::nullopt, std::move(f), std::move(g)); }
Scheme Scheme::dem(Scheme f, Scheme g) { return make(Kind::Dem, {}, std::nullopt, std::move(f), std::move(g)); }

bool operator==(const Scheme& a, const Scheme& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind() || a.size() != b.size()) return false;
  switch (a.kind()) {
    case Scheme::Kind::Skip:
    case Scheme::Kind::Diverge:
      return true;
    case Scheme::Kind::Action:
      return a.name() == b.name();
    case Scheme::Kind::Seq:
    case Scheme::Kind::Ang:
    case Scheme::Kind::Dem:
      return a.first() == b.first() && a.second() == b.second();
    case Scheme::Kind::Cond:
      return a.test() == b.test() && a.first() == b.first() && a.second() == b.second();
    case Scheme::Kind::While:
      return a.test() == b.test() && a.first() == b.first();
  }
  return false;
}

bool contains_kind(const Scheme& f, Scheme::Kind k) {
  if (f.kind() == k) return true;
  switch (f.kind()) {
    case Scheme::Kind::Seq:
    case Scheme::Kind::Cond:
    case Scheme::Kind::Ang:
    case Scheme::Kind::Dem:
      return contains_kind(f.first(), k) || contains_kind(f.second(), k);
    case Scheme::Kind::While:
      return contains_kind(f.first(), k);
    default:
      return false;
  }
}

bool is_angel_free(const Scheme& f) { return !contains_kind(f, Scheme::Kind::Ang); }

// ---------------------------------------------------------------------------
// Problem

const char* mode_name(Mode m) { return m == Mode::Strong ? "strong" : "weak"; }

bool Problem::has_test(const std::string& name) const {
  return std::find(tests.begin(), tests.end(), name) != tests.end();
}

bool Problem::has_action(const std::string& name) const {
  return std::find(actions.begin(), actions.end(), name) != actions.end();
}

const Scheme* Problem::find_program(const std::string& name) const {
  for (const auto& [n, s] : programs)
    if (n == name) return &s;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Continuation terms

const Scheme& head(const ContTerm& t) { return t.kind() == Scheme::Kind::Seq ? t.first() : t; }

std::optional<ContTerm> tail(const ContTerm& t) {
  if (t.kind() == Scheme::Kind::Seq) return t.second();
  return std::nullopt;
}

ContTerm concat(const ContTerm& t, const ContTerm& g) {
  if (t.kind() == Scheme::Kind::Seq) return Scheme::seq(t.first(), concat(t.second(), g));
  return Scheme::seq(t, g);
}

namespace {

ContTerm append(const ContTerm& t, const std::optional<ContTerm>& rest) {
  return rest ? concat(t, *rest) : t;
}

bool is_normal_factor(const Scheme& e) {
  switch (e.kind()) {
    case Scheme::Kind::Skip:
    case Scheme::Kind::Action:
      return true;
    case Scheme::Kind::Diverge:
    case Scheme::Kind::Seq:
      return false;
    case Scheme::Kind::While:
      return is_normal(e.first());
    default:
      return is_normal(e.first()) && is_normal(e.second());
  }
}

}  // namespace

bool is_normal(const Scheme& f) {
  if (f.kind() == Scheme::Kind::Seq) return is_normal_factor(f.first()) && is_normal(f.second());
  return is_normal_factor(f);
}

ContTerm normalize(const Scheme& f) {
  switch (f.kind()) {
    case Scheme::Kind::Skip:
    case Scheme::Kind::Action:
      return f;
    case Scheme::Kind::Diverge:
      return Scheme::loop(Test::truth(), Scheme::skip());
    case Scheme::Kind::Seq:
      return concat(normalize(f.first()), normalize(f.second()));
    case Scheme::Kind::Cond:
      return Scheme::cond(f.test(), normalize(f.first()), normalize(f.second()));
    case Scheme::Kind::While:
      return Scheme::loop(f.test(), normalize(f.first()));
    case Scheme::Kind::Ang:
      return Scheme::ang(normalize(f.first()), normalize(f.second()));
    case Scheme::Kind::Dem:
      return Scheme::dem(normalize(f.first()), normalize(f.second()));
  }
  return f;
}

std::vector<ContTerm> reach_successors(const ContTerm& t) {
  const Scheme& e = head(t);
  auto rest = tail(t);
  switch (e.kind()) {
    case Scheme::Kind::Action:
      return {append(Scheme::skip(), rest)};
    case Scheme::Kind::Skip:
      if (rest) return {*rest};
      return {};
    case Scheme::Kind::Cond:
    case Scheme::Kind::Ang:
    case Scheme::Kind::Dem:
      return {append(e.first(), rest), append(e.second(), rest)};
    case Scheme::Kind::While:
      return {concat(e.first(), t), append(Scheme::skip(), rest)};
    case Scheme::Kind::Diverge:
    case Scheme::Kind::Seq:
      break;
  }
  throw ClosureError("reach_successors: term is not in normal form: " + pretty_scheme(t));
}

std::size_t TermTable::intern(const ContTerm& t) {
  auto [it, inserted] = index_.emplace(t, terms_.size());
  if (inserted) terms_.push_back(t);
  return it->second;
}

std::optional<std::size_t> TermTable::find(const ContTerm& t) const {
  auto it = index_.find(t);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

namespace {

void check_no_diverge(const Scheme& f) {
  if (contains_kind(f, Scheme::Kind::Diverge))
    throw ClosureError(
        "closure: 'diverge' is not allowed here; rewrite it as 'while true do { skip }' "
        "(normalize does this)");
}

void closure_into(const ContTerm& t, std::vector<ContTerm>& out) {
  if (t.kind() == Scheme::Kind::Seq) {
    std::vector<ContTerm> left;
    closure_into(t.first(), left);
    for (const auto& l : left) out.push_back(concat(l, t.second()));
    closure_into(t.second(), out);
    return;
  }
  switch (t.kind()) {
    case Scheme::Kind::Action:
      out.push_back(t);
      out.push_back(Scheme::skip());
      return;
    case Scheme::Kind::Skip:
      out.push_back(t);
      return;
    case Scheme::Kind::While: {
      out.push_back(t);
      out.push_back(Scheme::skip());
      std::vector<ContTerm> body;
      closure_into(t.first(), body);
      for (const auto& b : body) out.push_back(concat(b, t));
      return;
    }
    case Scheme::Kind::Cond:
    case Scheme::Kind::Ang:
    case Scheme::Kind::Dem:
      out.push_back(t);
      closure_into(t.first(), out);
      closure_into(t.second(), out);
      return;
    default:
      throw ClosureError("closure: term is not in normal form: " + pretty_scheme(t));
  }
}

}  // namespace

TermTable closure(const Scheme& f) {
  check_no_diverge(f);
  std::vector<ContTerm> all;
  auto root = normalize(f);
  closure_into(root, all);
  TermTable table;
  table.intern(root);
  for (const auto& t : all) table.intern(t);
  return table;
}

TermTable reachable_terms(const Scheme& f) {
  check_no_diverge(f);
  TermTable table;
  table.intern(normalize(f));
  for (std::size_t i = 0; i < table.size(); ++i) {
    auto succ = reach_successors(table[i]);
    for (const auto& s : succ) table.intern(s);
  }
  return table;
}

}  // namespace gamehoare
