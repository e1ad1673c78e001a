#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace gamehoare {

/// Boolean test over named atomic tests. Immutable, cheap to copy.
class Test {
 public:
  enum class Kind { True, False, Atomic, Not, And, Or };

  /// The constant `true`.
  Test() : Test(truth()) {}

  static Test truth();
  static Test falsity();
  static Test atomic(std::string name);
  static Test negate(Test t);
  static Test conj(Test a, Test b);
  static Test disj(Test a, Test b);
  /// `a -> b`, sugar for `!a | b`.
  static Test implies(Test a, Test b);

  Kind kind() const;
  const std::string& name() const;
  const Test& lhs() const;
  const Test& rhs() const;
  std::size_t hash() const;

  friend bool operator==(const Test& a, const Test& b);
  friend bool operator!=(const Test& a, const Test& b) { return !(a == b); }

 private:
  struct Node;
  explicit Test(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Test make(Kind k, std::string name, std::optional<Test> l, std::optional<Test> r);
  std::shared_ptr<const Node> node_;
};

struct Test::Node {
  Kind kind;
  std::string name;
  std::optional<Test> lhs, rhs;
  std::size_t hash = 0;
};

inline Test::Kind Test::kind() const { return node_->kind; }
inline const std::string& Test::name() const { return node_->name; }
inline const Test& Test::lhs() const { return *node_->lhs; }
inline const Test& Test::rhs() const { return *node_->rhs; }
inline std::size_t Test::hash() const { return node_->hash; }

/// While game scheme AST. Structural equality; hashes are cached per node.
class Scheme {
 public:
  enum class Kind { Skip, Diverge, Action, Seq, Cond, While, Ang, Dem };

  /// `skip`.
  Scheme() : Scheme(skip()) {}

  static Scheme skip();
  static Scheme diverge();
  static Scheme action(std::string name);
  static Scheme seq(Scheme f, Scheme g);
  static Scheme cond(Test p, Scheme f, Scheme g);
  static Scheme loop(Test p, Scheme body);
  static Scheme ang(Scheme f, Scheme g);
  static Scheme dem(Scheme f, Scheme g);

  Kind kind() const;
  const std::string& name() const;
  const Test& test() const;
  /// First child: Seq left, Cond then-branch, While body, choice left.
  const Scheme& first() const;
  /// Second child: Seq right, Cond else-branch, choice right.
  const Scheme& second() const;
  bool is_choice() const { return kind() == Kind::Ang || kind() == Kind::Dem; }

  /// Node count.
  std::size_t size() const;
  std::size_t hash() const;

  friend bool operator==(const Scheme& a, const Scheme& b);
  friend bool operator!=(const Scheme& a, const Scheme& b) { return !(a == b); }

 private:
  struct Node;
  explicit Scheme(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Scheme make(Kind k, std::string name, std::optional<Test> p, std::optional<Scheme> f,
                     std::optional<Scheme> g);
  std::shared_ptr<const Node> node_;
};

struct Scheme::Node {
  Kind kind;
  std::string name;
  std::optional<Test> test;
  std::optional<Scheme> first, second;
  std::size_t size = 1;
  std::size_t hash = 0;
};

inline Scheme::Kind Scheme::kind() const { return node_->kind; }
inline const std::string& Scheme::name() const { return node_->name; }
inline const Test& Scheme::test() const { return *node_->test; }
inline const Scheme& Scheme::first() const { return *node_->first; }
inline const Scheme& Scheme::second() const { return *node_->second; }
inline std::size_t Scheme::size() const { return node_->size; }
inline std::size_t Scheme::hash() const { return node_->hash; }

struct TestHash {
  std::size_t operator()(const Test& t) const { return t.hash(); }
};
struct SchemeHash {
  std::size_t operator()(const Scheme& s) const { return s.hash(); }
};

bool contains_kind(const Scheme& f, Scheme::Kind k);
bool is_angel_free(const Scheme& f);

/// Atomic test names mentioned in `p`, first-occurrence order.
std::vector<std::string> atomic_names(const Test& p);

// ---------------------------------------------------------------------------
// Problems

enum class Mode { Strong, Weak };

const char* mode_name(Mode m);

/// Simple Hoare assertion `{pre} action {post}` used as a hypothesis.
struct SimpleAssertion {
  Test pre;
  std::string action;
  Test post;
};

struct Query {
  Mode mode = Mode::Strong;
  Test pre;
  Scheme program;
  Test post;
  /// Program identifier when the query referenced a named program.
  std::optional<std::string> program_name;
};

struct Problem {
  std::vector<std::string> tests;
  std::vector<std::string> actions;
  std::vector<Test> phi;
  std::vector<SimpleAssertion> psi;
  std::vector<std::pair<std::string, Scheme>> programs;
  std::vector<Query> queries;

  bool has_test(const std::string& name) const;
  bool has_action(const std::string& name) const;
  const Scheme* find_program(const std::string& name) const;
};

// ---------------------------------------------------------------------------
// Concrete syntax

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

/// Parses and validates a problem file.
Problem parse_problem(std::string_view text);

/// Parses a standalone test or scheme against the declarations of `ctx`.
Test parse_test(std::string_view text, const Problem& ctx);
Scheme parse_scheme(std::string_view text, const Problem& ctx);

/// Quotes identifiers that are not plain `[A-Za-z_][A-Za-z0-9_]*` words or that are keywords.
std::string format_identifier(const std::string& name);

std::string pretty_test(const Test& p);
std::string pretty_scheme(const Scheme& f);
std::string pretty_problem(const Problem& p);

// ---------------------------------------------------------------------------
// Continuation terms, closure and one-step reachability

/// A continuation term: a Scheme in normal form, i.e. a nonempty right-nested
/// list of factors `e1; (e2; (...; en))` with no Diverge and no Seq factor.
using ContTerm = Scheme;

class ClosureError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Rewrites `diverge` to `while true do { skip }` and right-associates every
/// sequential composition, recursively.
ContTerm normalize(const Scheme& f);

/// True iff `f` is already in continuation normal form.
bool is_normal(const Scheme& f);

/// List concatenation `t @ g` of normal terms.
ContTerm concat(const ContTerm& t, const ContTerm& g);

/// First factor of a normal term and the optional rest.
const Scheme& head(const ContTerm& t);
std::optional<ContTerm> tail(const ContTerm& t);

/// One-step reachability successors, in the order fixed by the transition table.
std::vector<ContTerm> reach_successors(const ContTerm& t);

/// Dense numbering of a finite set of terms.
class TermTable {
 public:
  std::size_t intern(const ContTerm& t);
  std::optional<std::size_t> find(const ContTerm& t) const;
  const ContTerm& operator[](std::size_t id) const { return terms_[id]; }
  std::size_t size() const { return terms_.size(); }
  const std::vector<ContTerm>& terms() const { return terms_; }

 private:
  std::vector<ContTerm> terms_;
  std::unordered_map<ContTerm, std::size_t, SchemeHash> index_;
};

/// The closure map by structural recursion. Rejects Diverge.
TermTable closure(const Scheme& f);

/// The set of terms reachable from `normalize(f)` under reach_successors.
TermTable reachable_terms(const Scheme& f);

}  // namespace gamehoare
