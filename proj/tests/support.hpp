#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>

#include "lhc/lhc.hpp"

#ifndef LHC_PROGRAMS_DIR
#define LHC_PROGRAMS_DIR "programs"
#endif

namespace lhc::test {

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline std::string program_path(const std::string& name) { return std::string(LHC_PROGRAMS_DIR) + "/" + name; }

inline const std::vector<std::pair<std::string, Code>>& prelude() {
  static const auto defs = parse_definitions(slurp(program_path("prelude.lhc")));
  return defs;
}

inline SourceFile load_program(const std::string& name) { return parse_program(slurp(program_path(name)), prelude()); }

// Wraps any main as a bang-rooted term the way the CLI does.
inline Term rooted_main(const SourceFile& f) {
  if (f.is_term()) {
    const Term& m = std::get<Term>(f.main);
    return as<Bang<TermTag>>(m) ? m : term::bang(trail::refl(code_of(m)), m);
  }
  const Code& c = std::get<Code>(f.main);
  return as<Bang<CodeTag>>(c) ? code_as_term(c) : term::bang(trail::refl(c), code_as_term(c));
}

// Code of `text` with the prelude in scope.
inline Code pc(const std::string& text) {
  auto f = parse_program("main = " + text + ";", prelude());
  if (f.is_term()) return code_of(std::get<Term>(f.main));
  return std::get<Code>(f.main);
}

inline Type church_type() {
  Type p = ty::atom("P");
  return ty::arrow(ty::arrow(p, p), ty::arrow(p, p));
}

// \s:P -> P. \z:P. s (s ... z), built directly rather than parsed.
inline Code church(std::size_t n) {
  Type p = ty::atom("P");
  Code body = code::var("z");
  for (std::size_t i = 0; i < n; ++i) body = code::app(code::var("s"), body);
  return code::lam("s", ty::arrow(p, p), code::lam("z", p, body));
}

// Reads a normal Church numeral back; nullopt for anything else.
inline std::optional<std::size_t> church_value(const Code& c) {
  auto* l1 = as<Lam<CodeTag>>(c);
  if (!l1) return std::nullopt;
  auto* l2 = as<Lam<CodeTag>>(l1->body);
  if (!l2 || l2->var == l1->var) return std::nullopt;
  std::size_t n = 0;
  Code at = l2->body;
  while (auto* a = as<App<CodeTag>>(at)) {
    auto* f = as<Var<CodeTag>>(a->fun);
    if (!f || f->name != l1->var) return std::nullopt;
    at = a->arg;
    ++n;
  }
  auto* z = as<Var<CodeTag>>(at);
  if (!z || z->name != l2->var) return std::nullopt;
  return n;
}

// Step-counting branch map over Church numerals: contractions count one,
// binary congruences add, tlam passes its count through, refl and the empty
// trail list count zero.
inline BranchMap<Code> theta_plus() {
  Code plus = pc("plus");
  Code one = church(1);
  Code zero = church(0);
  Code id = code::lam("k", church_type(), code::var("k"));
  return {{Label::refl, zero},      {Label::trans, plus},  {Label::ba, one},  {Label::bb, one},
          {Label::ti, one},         {Label::lam, id},      {Label::app, plus}, {Label::let, plus},
          {Label::trpl_nil, zero},  {Label::trpl_cons, plus}, {Label::default_, zero}};
}

// Full normal form of a code by leftmost-outermost reduction.
inline Code normal_code(const Code& c, std::size_t fuel = 100000) {
  auto r = normalize(term::bang(trail::refl(c), code_as_term(c)), Strategy::leftmost_outermost, fuel);
  return code_of(as<Bang<TermTag>>(r.term)->body);
}

inline const Trail& root_trail(const Term& m) { return as<Bang<TermTag>>(m)->trail; }
inline const Term& root_body(const Term& m) { return as<Bang<TermTag>>(m)->body; }

// Bang-rooted corpus: every enumerated closed code up to `max` whose type is
// audited, as the term ![refl(s)] s.
inline std::vector<Term> bang_corpus(std::size_t max) {
  std::vector<Term> out;
  for (const auto& c : enumerate_closed(max))
    if (as<Bang<CodeTag>>(c.code)) out.push_back(code_as_term(c.code));
  return out;
}

}  // namespace lhc::test
