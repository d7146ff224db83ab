#pragma once

// Substitution on terms: simple-variable substitution, and the history-aware
// audited substitution that yields both a term (M ⋉ δ) and a trail (M × δ)
// witnessing how the code of M rewrites into the code of the result.

#include <cassert>
#include <utility>

#include "lhc/trail_ops.hpp"

namespace lhc {

namespace detail {

// Simple substitution on terms. With enter_bangs the substitution also
// rewrites bang bodies and their trails (definition inlining); otherwise
// bangs are opaque.
class TermSimpleSubstituter {
 public:
  TermSimpleSubstituter(std::string var, Term repl, Code repl_code, bool enter_bangs)
      : var_(std::move(var)),
        repl_(std::move(repl)),
        code_sub_(VarKind::simple, var_, repl_code, enter_bangs),
        enter_bangs_(enter_bangs) {
    avoid_ = free_vars(repl_);
    avoid_.merge(free_vars(repl_code));
  }

  Term operator()(const Term& e) const {
    return std::visit(
        overloaded{[&](const Var<TermTag>& v) { return v.name == var_ ? repl_ : e; },
                   [&](const AVar<TermTag>&) { return e; },
                   [&](const Lam<TermTag>& l) {
                     auto annot = code_sub_(l.annot);
                     if (l.var == var_ || !free_vars(l.body).contains(VarKind::simple, var_))
                       return term::lam(l.var, annot, l.body);
                     std::string name = l.var;
                     Term body = l.body;
                     if (avoid_.contains(VarKind::simple, name)) {
                       auto avoid = all_names(body).simple;
                       avoid.insert(avoid_.simple.begin(), avoid_.simple.end());
                       avoid.insert(var_);
                       name = fresh(avoid, l.var);
                       body = rename(body, VarKind::simple, l.var, name);
                     }
                     return term::lam(name, annot, (*this)(body));
                   },
                   [&](const App<TermTag>& a) { return term::app((*this)(a.fun), (*this)(a.arg)); },
                   [&](const Bang<TermTag>& b) {
                     if (!enter_bangs_) return e;
                     return term::bang(code_sub_(b.trail), (*this)(b.body));
                   },
                   [&](const Let<TermTag>& l) {
                     auto bound = (*this)(l.bound);
                     std::string name = l.var;
                     Term body = l.body;
                     if (avoid_.contains(VarKind::audited, name) && free_vars(body).contains(VarKind::simple, var_)) {
                       auto avoid = all_names(body).audited;
                       avoid.insert(avoid_.audited.begin(), avoid_.audited.end());
                       name = fresh(avoid, l.var);
                       body = rename(body, VarKind::audited, l.var, name);
                     }
                     return term::let(name, code_sub_(l.annot), bound, (*this)(body));
                   },
                   [&](const Inspect<TermTag>& i) {
                     BranchMap<Term> m;
                     for (const auto& [k, b] : i.branches) m.emplace(k, (*this)(b));
                     return term::inspect(std::move(m));
                   }},
        e->node);
  }

 private:
  std::string var_;
  Term repl_;
  CodeSubstituter<CodeTag> code_sub_;
  bool enter_bangs_;
  VarSet avoid_;
};

}  // namespace detail

/// M{a := N}; bangs are opaque.
inline Term subst_term_simple(const Term& m, const std::string& a, const Term& n) {
  return detail::TermSimpleSubstituter(a, n, code_of(n), false)(m);
}

/// Inlines a closed definition for a free simple variable everywhere in a
/// term, including inside bangs and trails.
inline Term expand_simple(const Term& m, const std::string& a, const Code& def) {
  return detail::TermSimpleSubstituter(a, code_as_term(def), def, true)(m);
}

// ---------------------------------------------------------------------------
// Audited substitution on terms

/// δ = {u := (N, q, t)}: u is replaced by the term N, which was reached from
/// the code t along the trail q.
struct AuditedTermSubst {
  std::string var;
  Term term;
  Trail history;
  Code origin;
};

/// The coherence the reduction rules guarantee: t = src(q), tgt(q) = code(N).
inline bool coherent(const AuditedTermSubst& d) {
  return alpha_eq(d.origin, src(d.history)) && alpha_eq(tgt(d.history), code_of(d.term));
}

struct AuditedResult {
  Term term;    // M ⋉ δ
  Trail trail;  // M × δ
};

namespace detail {

class AuditedTermSubstituter {
 public:
  explicit AuditedTermSubstituter(const AuditedTermSubst& d) : d_(d) {
    avoid_ = free_vars(d.term);
    avoid_.merge(free_vars(d.history));
    avoid_.merge(free_vars(d.origin));
    avoid_.audited.insert(d.var);
  }

  AuditedResult operator()(const Term& m) const {
    return std::visit(
        overloaded{
            [&](const Var<TermTag>& v) -> AuditedResult { return {m, trail::refl(code::var(v.name))}; },
            [&](const AVar<TermTag>& v) -> AuditedResult {
              if (v.name == d_.var) return {d_.term, d_.history};
              return {m, trail::refl(code::avar(v.name))};
            },
            [&](const Lam<TermTag>& l) -> AuditedResult {
              auto [name, body] = freshen(VarKind::simple, l.var, l.body);
              auto annot = origin_subst(l.annot);
              auto r = (*this)(body);
              return {term::lam(name, annot, r.term), trail::lam(name, annot, r.trail)};
            },
            [&](const App<TermTag>& a) -> AuditedResult {
              auto f = (*this)(a.fun);
              auto x = (*this)(a.arg);
              return {term::app(f.term, x.term), trail::app(f.trail, x.trail)};
            },
            [&](const Bang<TermTag>& b) -> AuditedResult {
              auto r = (*this)(b.body);
              return {term::bang(trail::trans(origin_subst(b.trail), r.trail), r.term),
                      trail::refl(code::bang(origin_subst(src(b.trail))))};
            },
            [&](const Let<TermTag>& l) -> AuditedResult {
              auto bound = (*this)(l.bound);
              auto [name, body] = freshen(VarKind::audited, l.var, l.body);
              auto annot = origin_subst(l.annot);
              auto r = (*this)(body);
              return {term::let(name, annot, bound.term, r.term), trail::let(bound.trail, name, annot, r.trail)};
            },
            [&](const Inspect<TermTag>& i) -> AuditedResult {
              BranchMap<Term> terms;
              BranchMap<Trail> trails;
              for (const auto& [k, b] : i.branches) {
                auto r = (*this)(b);
                terms.emplace(k, r.term);
                trails.emplace(k, r.trail);
              }
              return {term::inspect(std::move(terms)), trail::trpl(std::move(trails))};
            }},
        m->node);
  }

 private:
  const AuditedTermSubst& d_;
  VarSet avoid_;

  template <class X>
  X origin_subst(const X& x) const {
    return subst_audited(x, d_.var, d_.origin);
  }

  // Enforces the side conditions a # N,q,t and v # u,N,q,t.
  std::pair<std::string, Term> freshen(VarKind k, const std::string& name, const Term& body) const {
    if (!avoid_.contains(k, name)) return {name, body};
    auto avoid = all_names(body).of(k);
    avoid.insert(avoid_.of(k).begin(), avoid_.of(k).end());
    std::string n = fresh(avoid, name);
    return {n, rename(body, k, name, n)};
  }
};

}  // namespace detail

/// Returns (M ⋉ δ, M × δ).
inline AuditedResult subst_term_audited(const Term& m, const AuditedTermSubst& d) {
#ifndef NDEBUG
  assert(coherent(d) && "audited substitution requires t = src(q) and tgt(q) = code(N)");
#endif
  return detail::AuditedTermSubstituter(d)(m);
}

}  // namespace lhc
