#include "gamehoare/syntax.hh"

namespace gamehoare {

namespace {

// Binding strength of tests: | is 0, & is 1, everything else is tight.
int test_level(const Test& p) {
  switch (p.kind()) {
    case Test::Kind::Or:
      return 0;
    case Test::Kind::And:
      return 1;
    default:
      return 2;
  }
}

void print_test(const Test& p, std::string& out);

void print_test_at(const Test& p, int min_level, std::string& out) {
  if (test_level(p) < min_level) {
    out += "(";
    print_test(p, out);
    out += ")";
  } else {
    print_test(p, out);
  }
}

void print_test(const Test& p, std::string& out) {
  switch (p.kind()) {
    case Test::Kind::True:
      out += "true";
      return;
    case Test::Kind::False:
      out += "false";
      return;
    case Test::Kind::Atomic:
      out += format_identifier(p.name());
      return;
    case Test::Kind::Not:
      out += "!";
      print_test_at(p.lhs(), 2, out);
      return;
    case Test::Kind::And:
      // Left associative, so a right operand of the same strength needs parentheses.
      print_test_at(p.lhs(), 1, out);
      out += " & ";
      print_test_at(p.rhs(), 2, out);
      return;
    case Test::Kind::Or:
      print_test_at(p.lhs(), 0, out);
      out += " | ";
      print_test_at(p.rhs(), 1, out);
      return;
  }
}

void print_scheme(const Scheme& f, std::string& out);

void print_parenthesized(const Scheme& f, bool parens, std::string& out) {
  if (parens) out += "(";
  print_scheme(f, out);
  if (parens) out += ")";
}

void print_scheme(const Scheme& f, std::string& out) {
  using K = Scheme::Kind;
  switch (f.kind()) {
    case K::Skip:
      out += "skip";
      return;
    case K::Diverge:
      out += "diverge";
      return;
    case K::Action:
      out += format_identifier(f.name());
      return;
    case K::Seq:
      print_parenthesized(f.first(), f.first().kind() == K::Seq || f.first().is_choice(), out);
      out += "; ";
      print_parenthesized(f.second(), f.second().is_choice(), out);
      return;
    case K::Cond:
      out += "if (";
      out += pretty_test(f.test());
      out += ") then { ";
      print_scheme(f.first(), out);
      out += " } else { ";
      print_scheme(f.second(), out);
      out += " }";
      return;
    case K::While:
      out += "while (";
      out += pretty_test(f.test());
      out += ") do { ";
      print_scheme(f.first(), out);
      out += " }";
      return;
    case K::Ang:
    case K::Dem: {
      bool left_parens = f.first().is_choice() && f.first().kind() != f.kind();
      print_parenthesized(f.first(), left_parens, out);
      out += f.kind() == K::Ang ? " <> " : " [] ";
      print_parenthesized(f.second(), f.second().is_choice(), out);
      return;
    }
  }
}

}  // namespace

std::string pretty_test(const Test& p) {
  std::string out;
  print_test(p, out);
  return out;
}

std::string pretty_scheme(const Scheme& f) {
  std::string out;
  print_scheme(f, out);
  return out;
}

std::string pretty_problem(const Problem& p) {
  std::string out = "tests";
  for (const auto& t : p.tests) out += " " + format_identifier(t);
  out += ";\nactions";
  for (const auto& a : p.actions) out += " " + format_identifier(a);
  out += ";\n";
  for (const auto& t : p.phi) out += "axiom test " + pretty_test(t) + ";\n";
  for (const auto& h : p.psi)
    out += "axiom hoare { " + pretty_test(h.pre) + " } " + format_identifier(h.action) + " { " +
           pretty_test(h.post) + " };\n";
  for (const auto& [name, body] : p.programs)
    out += "program " + format_identifier(name) + " = " + pretty_scheme(body) + ";\n";
  for (const auto& q : p.queries) {
    out += std::string("query ") + mode_name(q.mode) + " { " + pretty_test(q.pre) + " } ";
    out += q.program_name ? format_identifier(*q.program_name) : pretty_scheme(q.program);
    out += " { " + pretty_test(q.post) + " };\n";
  }
  return out;
}

}  // namespace gamehoare
