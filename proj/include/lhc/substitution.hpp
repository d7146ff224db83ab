#pragma once

// Capture-avoiding substitution of simple and audited variables on codes,
// types and trails (and on the simplified calculus, which shares the code
// machinery). Binders are freshened on demand.
//
// Simple substitution does not enter bangs: a bang's body is typed under an
// empty simple context, so it cannot mention the variable. Audited
// substitution does enter bangs.

#include <string>

#include "lhc/binding.hpp"

namespace lhc {

namespace detail {

template <class C>
class CodeSubstituter {
 public:
  CodeSubstituter(VarKind kind, std::string var, Expr<C> repl, bool enter_bangs)
      : kind_(kind), var_(std::move(var)), repl_(std::move(repl)), enter_bangs_(enter_bangs) {
    avoid_ = free_vars(repl_);
  }

  Type operator()(const Type& t) const {
    if constexpr (std::is_same_v<C, CodeTag>) {
      return std::visit(overloaded{[&](const TypeAtom&) { return t; },
                                   [&](const TypeArrow& a) { return ty::arrow((*this)(a.dom), (*this)(a.cod)); },
                                   [&](const TypeAudited& a) { return ty::audited((*this)(a.code), (*this)(a.body)); }},
                        t->node);
    } else {
      return t;
    }
  }
  HsType operator()(const HsType& t) const { return t; }

  Expr<C> operator()(const Expr<C>& e) const {
    using M = Make<C>;
    return std::visit(
        overloaded{[&](const Var<C>& v) { return kind_ == VarKind::simple && v.name == var_ ? repl_ : e; },
                   [&](const AVar<C>& v) { return kind_ == VarKind::audited && v.name == var_ ? repl_ : e; },
                   [&](const Lam<C>& l) {
                     auto [name, body] = binder(VarKind::simple, l.var, l.body);
                     return M::lam(std::move(name), (*this)(l.annot), std::move(body));
                   },
                   [&](const App<C>& a) { return M::app((*this)(a.fun), (*this)(a.arg)); },
                   [&](const Bang<C>& b) {
                     if (kind_ == VarKind::simple && !enter_bangs_) return e;
                     return M::bang((*this)(b.body));
                   },
                   [&](const Let<C>& l) {
                     auto bound = (*this)(l.bound);
                     auto [name, body] = binder(VarKind::audited, l.var, l.body);
                     return M::let(std::move(name), (*this)(l.annot), std::move(bound), std::move(body));
                   },
                   [&](const Inspect<C>& i) { return M::inspect(map(i.branches)); }},
        e->node);
  }

  TrailOf<C> operator()(const TrailOf<C>& q) const {
    using T = MakeTrail<C>;
    return std::visit(overloaded{[&](const Refl<C>& r) { return T::refl((*this)(r.subject)); },
                                 [&](const Trans<C>& t) { return T::trans((*this)(t.first), (*this)(t.second)); },
                                 [&](const Ba<C>& b) {
                                   auto [name, body] = binder(VarKind::simple, b.var, b.body);
                                   return T::ba(std::move(name), (*this)(b.annot), std::move(body), (*this)(b.arg));
                                 },
                                 [&](const Bb<C>& b) {
                                   auto [name, body] = binder(VarKind::audited, b.var, b.body);
                                   return T::bb((*this)(b.bound), std::move(name), (*this)(b.annot), std::move(body));
                                 },
                                 [&](const Ti<C>& t) { return T::ti((*this)(t.history), map(t.branches)); },
                                 [&](const TLam<C>& l) {
                                   auto [name, inner] = binder(VarKind::simple, l.var, l.inner);
                                   return T::lam(std::move(name), (*this)(l.annot), std::move(inner));
                                 },
                                 [&](const TApp<C>& a) { return T::app((*this)(a.left), (*this)(a.right)); },
                                 [&](const TLet<C>& l) {
                                   auto left = (*this)(l.left);
                                   auto [name, right] = binder(VarKind::audited, l.var, l.right);
                                   return T::let(std::move(left), std::move(name), (*this)(l.annot), std::move(right));
                                 },
                                 [&](const Trpl<C>& t) { return T::trpl(map(t.branches)); }},
                      q->node);
  }

 private:
  VarKind kind_;
  std::string var_;
  Expr<C> repl_;
  bool enter_bangs_;
  VarSet avoid_;

  template <class X>
  BranchMap<X> map(const BranchMap<X>& m) const {
    BranchMap<X> out;
    for (const auto& [k, b] : m) out.emplace(k, (*this)(b));
    return out;
  }

  // Substitutes under a binder, renaming it when it would capture a free
  // variable of the replacement.
  template <class X>
  std::pair<std::string, X> binder(VarKind bk, const std::string& name, const X& scope) const {
    if (bk == kind_ && name == var_) return {name, scope};
    if (!free_vars(scope).contains(kind_, var_)) return {name, scope};
    if (!avoid_.contains(bk, name)) return {name, (*this)(scope)};
    auto avoid = all_names(scope).of(bk);
    avoid.insert(avoid_.of(bk).begin(), avoid_.of(bk).end());
    if (bk == kind_) avoid.insert(var_);
    std::string fresh_name = fresh(avoid, name);
    return {fresh_name, (*this)(rename(scope, bk, name, fresh_name))};
  }
};

}  // namespace detail

// Codes ----------------------------------------------------------------------

/// r{a := t}; bangs are opaque.
template <class X>
X subst_simple(const X& r, const std::string& a, const Code& t) {
  return detail::CodeSubstituter<CodeTag>(VarKind::simple, a, t, false)(r);
}

/// r{u := t}; enters bangs.
template <class X>
X subst_audited(const X& r, const std::string& u, const Code& t) {
  return detail::CodeSubstituter<CodeTag>(VarKind::audited, u, t, true)(r);
}

/// Replaces a free simple variable everywhere, including under bangs.
/// Used to inline definitions, not by the calculus itself.
template <class X>
X expand_simple(const X& r, const std::string& a, const Code& t) {
  return detail::CodeSubstituter<CodeTag>(VarKind::simple, a, t, true)(r);
}

// Simplified calculus ---------------------------------------------------------

template <class X>
X hs_subst_simple(const X& r, const std::string& a, const HsTerm& t) {
  return detail::CodeSubstituter<HsTag>(VarKind::simple, a, t, false)(r);
}

template <class X>
X hs_subst_audited(const X& r, const std::string& u, const HsTerm& t) {
  return detail::CodeSubstituter<HsTag>(VarKind::audited, u, t, true)(r);
}

}  // namespace lhc
