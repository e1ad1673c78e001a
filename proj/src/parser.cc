// Recursive-descent parser for problem files.
//
// Identifiers are either plain words or double-quoted strings. Plain words
// may also carry `=`, `:`, `+`, `-` and `.` after the first character so that
// names like t=67 or m:=heat read naturally; a `-` immediately followed by `>`
// ends the word, leaving `->` to the test grammar.

#include <cctype>
#include <set>
#include <unordered_map>

#include "gamehoare/syntax.hh"

namespace gamehoare {

namespace {

const std::set<std::string, std::less<>>& keywords() {
  static const std::set<std::string, std::less<>> k = {
      "tests", "actions", "axiom", "test",  "hoare", "program", "query", "strong", "weak",
      "true",  "false",   "skip",  "diverge", "if", "then",    "else",  "while",  "do"};
  return k;
}

bool word_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }

bool word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '=' || c == ':' || c == '+' ||
         c == '-' || c == '.';
}

enum class Tok { Word, Quoted, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t line = 1, column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.line = line_;
      t.column = col_;
      if (pos_ >= src_.size()) {
        out.push_back(t);
        return out;
      }
      char c = src_[pos_];
      if (c == '"') {
        t.kind = Tok::Quoted;
        t.text = quoted();
      } else if (word_start(c)) {
        t.kind = Tok::Word;
        while (pos_ < src_.size() && word_char(src_[pos_])) {
          if (src_[pos_] == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') break;
          t.text += advance();
        }
      } else {
        t.kind = Tok::Punct;
        static const char* two[] = {"<>", "[]", "->"};
        bool matched = false;
        for (const char* p : two) {
          if (src_.substr(pos_, 2) == p) {
            t.text = p;
            advance();
            advance();
            matched = true;
            break;
          }
        }
        if (!matched) {
          if (std::string_view("{}();=!&|,").find(c) == std::string_view::npos)
            throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
          t.text = std::string(1, advance());
        }
      }
      out.push_back(std::move(t));
    }
  }

 private:
  char advance() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  std::string quoted() {
    std::size_t line = line_, col = col_;
    advance();
    std::string s;
    for (;;) {
      if (pos_ >= src_.size() || src_[pos_] == '\n') throw ParseError("unterminated string", line, col);
      char c = advance();
      if (c == '"') break;
      if (c == '\\') {
        if (pos_ >= src_.size()) throw ParseError("unterminated string", line, col);
        c = advance();
      }
      s += c;
    }
    if (s.empty()) throw ParseError("empty identifier", line, col);
    return s;
  }

  std::string_view src_;
  std::size_t pos_ = 0, line_ = 1, col_ = 1;
};

class Parser {
 public:
  Parser(std::string_view text, Problem& ctx) : toks_(Lexer(text).run()), ctx_(ctx) {}

  void problem() {
    while (!at_end()) declaration();
  }

  Test whole_test() {
    Test t = test();
    expect_end();
    return t;
  }

  Scheme whole_scheme() {
    Scheme s = scheme();
    expect_end();
    return s;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool at_end() const { return peek().kind == Tok::End; }

  bool is_kw(std::string_view kw) const { return peek().kind == Tok::Word && peek().text == kw; }
  bool is_punct(std::string_view p) const { return peek().kind == Tok::Punct && peek().text == p; }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().line, peek().column); }
  [[noreturn]] void fail_at(const Token& t, const std::string& msg) const {
    throw ParseError(msg, t.line, t.column);
  }

  std::string describe(const Token& t) const {
    switch (t.kind) {
      case Tok::End:
        return "end of input";
      case Tok::Quoted:
        return "\"" + t.text + "\"";
      default:
        return "'" + t.text + "'";
    }
  }

  void expect_kw(std::string_view kw) {
    if (!is_kw(kw)) fail("expected '" + std::string(kw) + "', found " + describe(peek()));
    ++pos_;
  }

  void expect_punct(std::string_view p) {
    if (!is_punct(p)) fail("expected '" + std::string(p) + "', found " + describe(peek()));
    ++pos_;
  }

  void expect_end() {
    if (!at_end()) fail("unexpected " + describe(peek()));
  }

  bool is_identifier() const {
    if (peek().kind == Tok::Quoted) return true;
    return peek().kind == Tok::Word && !keywords().count(peek().text);
  }

  std::string identifier(const char* what) {
    if (!is_identifier()) fail(std::string("expected ") + what + ", found " + describe(peek()));
    return toks_[pos_++].text;
  }

  // ---- declarations

  void declaration() {
    const Token& t = peek();
    if (is_kw("tests")) {
      ++pos_;
      while (!is_punct(";")) declare(ctx_.tests, "test", identifier("test name"));
      ++pos_;
    } else if (is_kw("actions")) {
      ++pos_;
      while (!is_punct(";")) declare(ctx_.actions, "action", identifier("action name"));
      ++pos_;
    } else if (is_kw("axiom")) {
      ++pos_;
      if (is_kw("test")) {
        ++pos_;
        ctx_.phi.push_back(test());
      } else if (is_kw("hoare")) {
        ++pos_;
        expect_punct("{");
        Test pre = test();
        expect_punct("}");
        const Token& at = peek();
        std::string a = identifier("action name");
        if (!ctx_.has_action(a)) fail_at(at, "undeclared action '" + a + "'");
        expect_punct("{");
        Test post = test();
        expect_punct("}");
        ctx_.psi.push_back({std::move(pre), std::move(a), std::move(post)});
      } else {
        fail("expected 'test' or 'hoare' after 'axiom'");
      }
      expect_punct(";");
    } else if (is_kw("program")) {
      ++pos_;
      const Token& nt = peek();
      std::string name = identifier("program name");
      if (ctx_.find_program(name) || ctx_.has_action(name) || ctx_.has_test(name))
        fail_at(nt, "duplicate name '" + name + "'");
      expect_punct("=");
      Scheme body = scheme();
      expect_punct(";");
      ctx_.programs.emplace_back(std::move(name), std::move(body));
    } else if (is_kw("query")) {
      ++pos_;
      Query q;
      if (is_kw("strong")) {
        q.mode = Mode::Strong;
      } else if (is_kw("weak")) {
        q.mode = Mode::Weak;
      } else {
        fail("expected 'strong' or 'weak'");
      }
      ++pos_;
      expect_punct("{");
      q.pre = test();
      expect_punct("}");
      if (is_identifier() && ctx_.find_program(peek().text) && toks_[pos_ + 1].kind == Tok::Punct &&
          toks_[pos_ + 1].text == "{")
        q.program_name = peek().text;
      q.program = scheme();
      expect_punct("{");
      q.post = test();
      expect_punct("}");
      expect_punct(";");
      ctx_.queries.push_back(std::move(q));
    } else {
      fail_at(t, "expected a declaration, found " + describe(t));
    }
  }

  void declare(std::vector<std::string>& into, const char* what, std::string name) {
    const Token& t = toks_[pos_ - 1];
    if (ctx_.has_test(name) || ctx_.has_action(name) || ctx_.find_program(name))
      fail_at(t, std::string("duplicate ") + what + " '" + name + "'");
    into.push_back(std::move(name));
  }

  // ---- tests:  ! > & > | > ->   (-> is right associative)

  Test test() {
    Test lhs = test_or();
    if (is_punct("->")) {
      ++pos_;
      return Test::implies(std::move(lhs), test());
    }
    return lhs;
  }

  Test test_or() {
    Test t = test_and();
    while (is_punct("|")) {
      ++pos_;
      t = Test::disj(std::move(t), test_and());
    }
    return t;
  }

  Test test_and() {
    Test t = test_not();
    while (is_punct("&")) {
      ++pos_;
      t = Test::conj(std::move(t), test_not());
    }
    return t;
  }

  Test test_not() {
    if (is_punct("!")) {
      ++pos_;
      return Test::negate(test_not());
    }
    if (is_kw("true")) {
      ++pos_;
      return Test::truth();
    }
    if (is_kw("false")) {
      ++pos_;
      return Test::falsity();
    }
    if (is_punct("(")) {
      ++pos_;
      Test t = test();
      expect_punct(")");
      return t;
    }
    const Token& at = peek();
    std::string name = identifier("a test");
    if (!ctx_.has_test(name)) fail_at(at, "undeclared test '" + name + "'");
    return Test::atomic(std::move(name));
  }

  // ---- schemes:  atom > ; > (<> | [])

  Scheme scheme() {
    Scheme s = sequence();
    std::string op;
    while (is_punct("<>") || is_punct("[]")) {
      if (!op.empty() && op != peek().text) fail("ambiguous mixed choice; add parentheses");
      op = peek().text;
      ++pos_;
      Scheme rhs = sequence();
      s = op == "<>" ? Scheme::ang(std::move(s), std::move(rhs)) : Scheme::dem(std::move(s), std::move(rhs));
    }
    return s;
  }

  Scheme sequence() {
    Scheme first = factor();
    if (is_punct(";") && starts_factor(pos_ + 1)) {
      ++pos_;
      return Scheme::seq(std::move(first), sequence());
    }
    return first;
  }

  // A `;` also terminates declarations, so only treat it as sequencing when a
  // scheme factor follows.
  bool starts_factor(std::size_t i) const {
    const Token& t = toks_[i];
    if (t.kind == Tok::Quoted) return true;
    if (t.kind == Tok::Punct) return t.text == "(" || t.text == "{";
    if (t.kind != Tok::Word) return false;
    if (t.text == "skip" || t.text == "diverge" || t.text == "if" || t.text == "while") return true;
    return !keywords().count(t.text);
  }

  Scheme block() {
    expect_punct("{");
    Scheme s = scheme();
    expect_punct("}");
    return s;
  }

  Scheme factor() {
    if (is_kw("skip")) {
      ++pos_;
      return Scheme::skip();
    }
    if (is_kw("diverge")) {
      ++pos_;
      return Scheme::diverge();
    }
    if (is_punct("(")) {
      ++pos_;
      Scheme s = scheme();
      expect_punct(")");
      return s;
    }
    if (is_punct("{")) return block();
    if (is_kw("if")) {
      ++pos_;
      Test p = test();
      expect_kw("then");
      Scheme f = block();
      expect_kw("else");
      Scheme g = is_kw("if") ? factor() : block();
      return Scheme::cond(std::move(p), std::move(f), std::move(g));
    }
    if (is_kw("while")) {
      ++pos_;
      Test p = test();
      expect_kw("do");
      return Scheme::loop(std::move(p), block());
    }
    const Token& at = peek();
    std::string name = identifier("a program");
    if (ctx_.has_action(name)) return Scheme::action(std::move(name));
    if (const Scheme* s = ctx_.find_program(name)) return *s;
    fail_at(at, "undeclared action or program '" + name + "'");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Problem& ctx_;
};

}  // namespace

Problem parse_problem(std::string_view text) {
  Problem p;
  Parser(text, p).problem();
  return p;
}

Test parse_test(std::string_view text, const Problem& ctx) {
  Problem copy = ctx;
  return Parser(text, copy).whole_test();
}

Scheme parse_scheme(std::string_view text, const Problem& ctx) {
  Problem copy = ctx;
  return Parser(text, copy).whole_scheme();
}

std::string format_identifier(const std::string& name) {
  bool plain = !name.empty() && word_start(name[0]) && !keywords().count(name);
  for (std::size_t i = 0; plain && i < name.size(); ++i) {
    if (!word_char(name[i])) plain = false;
    if (name[i] == '-' && i + 1 < name.size() && name[i + 1] == '>') plain = false;
  }
  // A trailing '-' would glue onto a following '>'; quote to be safe.
  if (plain && name.back() == '-') plain = false;
  if (plain) return name;
  std::string out = "\"";
  for (char c : name) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace gamehoare
