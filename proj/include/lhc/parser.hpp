#pragma once

// Recursive-descent parser for .lhc text.
//
//   program  := (def | main)*          exactly one main
//   def      := 'def' ident '=' expr ';'
//   main     := 'main' '=' expr ';'
//   expr     := lambda | let | app
//   lambda   := '\' ident ':' type '.' expr
//   let      := 'let' '@'ident ':' type '=' expr 'in' expr
//   app      := prefix+ [lambda | let]
//   prefix   := '!' operand | '![' trail ']' operand | atom
//   operand  := lambda | let | prefix
//   atom     := ident | '@'ident | '(' expr ')' | 'inspect' branches
//   type     := btype ['->' type]
//   btype    := ident | '(' type ')' | '[' expr ']' btype
//
// A main (or expression) that contains no `![q]` is a code; otherwise it is a
// term, and a plain `!M` inside it abbreviates `![refl(code M)] M`.

#include <cctype>
#include <optional>
#include <set>
#include <string_view>

#include "lhc/errors.hpp"
#include "lhc/term_subst.hpp"

namespace lhc {

struct SourceFile {
  std::vector<std::pair<std::string, Code>> defs;
  std::variant<Code, Term> main;  // definitions already inlined
  std::string text;
  int main_line = 1;  // position of the `main` keyword
  int main_col = 1;

  bool is_term() const { return std::holds_alternative<Term>(main); }
};

namespace detail {

enum class Tok { ident, avar, sym, end };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

inline std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&] {
    if (s[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  };
  auto ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
      continue;
    }
    if (c == '-' && i + 1 < s.size() && s[i + 1] == '-') {
      while (i < s.size() && s[i] != '\n') advance();
      continue;
    }
    int l = line, k = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t b = i;
      while (i < s.size() && ident_char(s[i])) advance();
      out.push_back({Tok::ident, std::string(s.substr(b, i - b)), l, k});
      continue;
    }
    if (c == '@') {
      advance();
      std::size_t b = i;
      if (i >= s.size() || !(std::isalpha(static_cast<unsigned char>(s[i])) || s[i] == '_'))
        throw ParseError(l, k, "expected identifier after '@'");
      while (i < s.size() && ident_char(s[i])) advance();
      out.push_back({Tok::avar, std::string(s.substr(b, i - b)), l, k});
      continue;
    }
    if ((c == '-' || c == '=') && i + 1 < s.size() && s[i + 1] == '>') {
      advance();
      advance();
      out.push_back({Tok::sym, c == '-' ? "->" : "=>", l, k});
      continue;
    }
    if (std::string_view("\\:.()[]{}!=;,").find(c) != std::string_view::npos) {
      advance();
      out.push_back({Tok::sym, std::string(1, c), l, k});
      continue;
    }
    throw ParseError(l, k, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::end, "", line, col});
  return out;
}

inline const std::set<std::string, std::less<>>& keywords() {
  static const std::set<std::string, std::less<>> k{"let",  "in",   "inspect", "def",  "main", "refl", "trans",
                                                    "ba",   "bb",   "ti",      "tlam", "tapp", "tlet", "trpl"};
  return k;
}

// The parser builds terms throughout; codes are recovered with code_of,
// which is exact when no trail was written.
class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  bool saw_trail() const { return saw_trail_; }

  bool at_end() const { return peek().kind == Tok::end; }

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }

  bool is_sym(std::string_view s, std::size_t k = 0) const {
    return peek(k).kind == Tok::sym && peek(k).text == s;
  }
  bool is_kw(std::string_view s) const { return peek().kind == Tok::ident && peek().text == s; }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string near = t.kind == Tok::end ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.line, t.col, msg + " near " + near);
  }

  void expect_sym(std::string_view s) {
    if (!is_sym(s)) fail("expected '" + std::string(s) + "'");
    ++pos_;
  }
  void expect_kw(std::string_view s) {
    if (!is_kw(s)) fail("expected '" + std::string(s) + "'");
    ++pos_;
  }

  std::string ident() {
    if (peek().kind != Tok::ident || keywords().count(peek().text) || peek().text == "_") fail("expected identifier");
    return toks_[pos_++].text;
  }

  std::string avar() {
    if (peek().kind != Tok::avar) fail("expected audited variable");
    return toks_[pos_++].text;
  }

  // Types -------------------------------------------------------------------

  Type type() {
    Type dom = btype();
    if (is_sym("->")) {
      ++pos_;
      return ty::arrow(dom, type());
    }
    return dom;
  }

  Type btype() {
    if (is_sym("(")) {
      ++pos_;
      Type t = type();
      expect_sym(")");
      return t;
    }
    if (is_sym("[")) {
      ++pos_;
      Code c = as_code(expr());
      expect_sym("]");
      return ty::audited(c, btype());
    }
    return ty::atom(ident());
  }

  // Expressions -------------------------------------------------------------

  Term expr() {
    if (is_sym("\\")) return lambda();
    if (is_kw("let")) return let();
    Term f = prefix();
    while (starts_operand()) {
      if (is_sym("\\") || is_kw("let")) return term::app(f, expr());
      f = term::app(f, prefix());
    }
    return f;
  }

  Trail trail() {
    const Token& t = peek();
    if (t.kind != Tok::ident) fail("expected trail");
    std::string kw = t.text;
    ++pos_;
    expect_sym("(");
    Trail out;
    if (kw == "refl") {
      out = trail::refl(code());
    } else if (kw == "trans") {
      Trail a = trail();
      expect_sym(",");
      out = trail::trans(a, trail());
    } else if (kw == "ba") {
      std::string a = ident();
      expect_sym(":");
      Type ann = type();
      expect_sym(".");
      Code body = code();
      expect_sym(",");
      out = trail::ba(a, ann, body, code());
    } else if (kw == "bb") {
      Code bound = code();
      expect_sym(",");
      std::string u = avar();
      expect_sym(":");
      Type ann = type();
      expect_sym(".");
      out = trail::bb(bound, u, ann, code());
    } else if (kw == "ti") {
      Trail h = trail();
      expect_sym(",");
      out = trail::ti(h, branches<Code>([&] { return code(); }));
    } else if (kw == "tlam") {
      std::string a = ident();
      expect_sym(":");
      Type ann = type();
      expect_sym(".");
      out = trail::lam(a, ann, trail());
    } else if (kw == "tapp") {
      Trail l = trail();
      expect_sym(",");
      out = trail::app(l, trail());
    } else if (kw == "tlet") {
      Trail l = trail();
      expect_sym(",");
      std::string u = avar();
      expect_sym(":");
      Type ann = type();
      expect_sym(".");
      out = trail::let(l, u, ann, trail());
    } else if (kw == "trpl") {
      out = trail::trpl(branches<Trail>([&] { return trail(); }));
    } else {
      --pos_;
      fail("unknown trail constructor");
    }
    expect_sym(")");
    return out;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  bool saw_trail_ = false;

  static Code as_code(const Term& t) { return code_of(t); }

  Code code() { return as_code(expr()); }

  bool starts_operand() const {
    const Token& t = peek();
    if (t.kind == Tok::avar) return true;
    if (t.kind == Tok::ident) return t.text == "inspect" || (!keywords().count(t.text) && t.text != "_");
    return t.kind == Tok::sym && (t.text == "(" || t.text == "!" || t.text == "\\");
  }

  Term lambda() {
    expect_sym("\\");
    std::string a = ident();
    expect_sym(":");
    Type ann = type();
    expect_sym(".");
    return term::lam(a, ann, expr());
  }

  Term let() {
    expect_kw("let");
    std::string u = avar();
    expect_sym(":");
    Type ann = type();
    expect_sym("=");
    Term bound = expr();
    expect_kw("in");
    return term::let(u, ann, bound, expr());
  }

  Term operand() {
    if (is_sym("\\")) return lambda();
    if (is_kw("let")) return let();
    return prefix();
  }

  Term prefix() {
    if (is_sym("!")) {
      ++pos_;
      if (is_sym("[")) {
        ++pos_;
        saw_trail_ = true;
        Trail q = trail();
        expect_sym("]");
        return term::bang(q, operand());
      }
      Term body = operand();
      return term::bang(trail::refl(code_of(body)), body);
    }
    return atom();
  }

  Term atom() {
    const Token& t = peek();
    if (t.kind == Tok::avar) {
      ++pos_;
      return term::avar(t.text);
    }
    if (is_sym("(")) {
      ++pos_;
      Term e = expr();
      expect_sym(")");
      return e;
    }
    if (is_kw("inspect")) {
      ++pos_;
      return term::inspect(branches<Term>([&] { return expr(); }));
    }
    return term::var(ident());
  }

  Label label() {
    const Token& t = peek();
    if (t.kind == Tok::ident) {
      if (auto l = label_from_name(t.text)) {
        ++pos_;
        return *l;
      }
    }
    fail("expected branch label");
  }

  template <class X, class F>
  BranchMap<X> branches(F&& item) {
    expect_sym("{");
    BranchMap<X> m;
    if (is_sym("}")) {
      ++pos_;
      return m;
    }
    for (;;) {
      const Token at = peek();
      Label l = label();
      expect_sym("=>");
      X x = item();
      if (!m.emplace(l, x).second) throw ParseError(at.line, at.col, "duplicate branch label '" + at.text + "'");
      if (is_sym(";")) {
        ++pos_;
        if (is_sym("}")) break;
        continue;
      }
      break;
    }
    expect_sym("}");
    return m;
  }
};

inline void expect_end(Parser& p) {
  if (!p.at_end()) p.fail("unexpected trailing input");
}

}  // namespace detail

inline Type parse_type(std::string_view text) {
  detail::Parser p(text);
  Type t = p.type();
  detail::expect_end(p);
  return t;
}

inline Term parse_term(std::string_view text) {
  detail::Parser p(text);
  Term t = p.expr();
  detail::expect_end(p);
  return t;
}

inline Code parse_code(std::string_view text) {
  detail::Parser p(text);
  Term t = p.expr();
  detail::expect_end(p);
  if (p.saw_trail()) throw ParseError(1, 1, "codes cannot contain trails");
  return code_of(t);
}

inline Trail parse_trail(std::string_view text) {
  detail::Parser p(text);
  Trail q = p.trail();
  detail::expect_end(p);
  return q;
}

namespace detail {

using Definitions = std::vector<std::pair<std::string, Code>>;

inline SourceFile parse_file(std::string_view text, const Definitions& imports, bool need_main) {
  detail::Parser p(text);
  SourceFile out;
  out.text = std::string(text);
  out.defs = imports;
  std::optional<Term> main;
  bool main_has_trail = false;
  std::set<std::string, std::less<>> defined;
  for (const auto& d : imports) defined.insert(d.first);
  // Free names of each definition, checked against later definitions.
  std::vector<std::pair<detail::Token, std::string>> pending;
  while (!p.at_end()) {
    detail::Token start = p.peek();
    if (p.is_kw("def")) {
      p.expect_kw("def");
      detail::Token name_tok = p.peek();
      std::string name = p.ident();
      p.expect_sym("=");
      bool before = p.saw_trail();
      Term body = p.expr();
      p.expect_sym(";");
      if (p.saw_trail() != before)
        throw ParseError(name_tok.line, name_tok.col, "definition '" + name + "' contains a trail");
      if (defined.count(name)) throw UndefinedName(name_tok.line, name_tok.col, "duplicate definition '" + name + "'");
      for (const auto& [tok, used] : pending)
        if (used == name) throw UndefinedName(tok.line, tok.col, "'" + used + "' is used before its definition");
      Code c = code_of(body);
      for (const auto& used : free_vars(c).simple) {
        if (used == name) throw UndefinedName(name_tok.line, name_tok.col, "definition '" + name + "' refers to itself");
        pending.emplace_back(name_tok, used);
      }
      for (const auto& [prev, def] : out.defs) c = expand_simple(c, prev, def);
      out.defs.emplace_back(name, c);
      defined.insert(name);
    } else if (p.is_kw("main")) {
      if (main) throw ParseError(start.line, start.col, "duplicate main");
      out.main_line = start.line;
      out.main_col = start.col;
      p.expect_kw("main");
      p.expect_sym("=");
      bool before = p.saw_trail();
      main = p.expr();
      main_has_trail = p.saw_trail() != before;
      p.expect_sym(";");
    } else {
      p.fail("expected 'def' or 'main'");
    }
  }
  if (!main) {
    if (need_main) throw ParseError(p.peek().line, p.peek().col, "missing main");
    out.main = code::var("main");
    return out;
  }
  Term m = *main;
  for (const auto& [name, def] : out.defs) m = expand_simple(m, name, def);
  if (main_has_trail) {
    out.main = m;
  } else {
    out.main = code_of(m);
  }
  return out;
}

}  // namespace detail

/// Parses a program and inlines its definitions into main. `imports` are
/// definitions from a prelude, visible to the whole file.
inline SourceFile parse_program(std::string_view text, const std::vector<std::pair<std::string, Code>>& imports = {}) {
  return detail::parse_file(text, imports, true);
}

/// Parses a file of definitions only (a prelude); a main is ignored.
inline std::vector<std::pair<std::string, Code>> parse_definitions(
    std::string_view text, const std::vector<std::pair<std::string, Code>>& imports = {}) {
  return detail::parse_file(text, imports, false).defs;
}

}  // namespace lhc
