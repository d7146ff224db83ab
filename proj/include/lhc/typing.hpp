#pragma once

// Type synthesis for codes, terms and trails. All three judgments run in
// inference mode; types are compared up to alpha-equivalence.

#include "lhc/errors.hpp"
#include "lhc/pretty.hpp"
#include "lhc/trail_ops.hpp"

namespace lhc {

/// Types of inspection branches, given the result type B of the inspection.
inline Type ttable(Label l, const Type& b) {
  switch (l) {
    case Label::lam: return ty::arrow(b, b);
    case Label::trans:
    case Label::app:
    case Label::let:
    case Label::trpl_cons: return ty::arrow(b, ty::arrow(b, b));
    default: return b;
  }
}

inline HsType ttable(Label l, const HsType& b) {
  switch (l) {
    case Label::lam: return hty::arrow(b, b);
    case Label::trans:
    case Label::app:
    case Label::let:
    case Label::trpl_cons: return hty::arrow(b, hty::arrow(b, b));
    default: return b;
  }
}

struct TermTypeResult {
  Type type;
  Code code;
};

struct TrailTypeResult {
  Code source;
  Code target;
  Type type;
};

namespace detail {

class Checker {
  // Simple variables hidden by enclosing bangs, for diagnostics only.
  std::vector<std::vector<Binding<Type>>> hidden_;

  template <class F>
  auto boxed(const Contexts& cx, F&& f) {
    hidden_.push_back(cx.simple);
    struct Pop {
      std::vector<std::vector<Binding<Type>>>& h;
      ~Pop() { h.pop_back(); }
    } pop{hidden_};
    return f(cx.boxed());
  }

 public:
  Type code(const Contexts& cx, const Code& s) {
    return std::visit(
        overloaded{[&](const Var<CodeTag>& v) { return lookup_simple(cx, v.name); },
                   [&](const AVar<CodeTag>& v) { return lookup_audited(cx, v.name); },
                   [&](const Lam<CodeTag>& l) {
                     return ty::arrow(l.annot, code(cx.with_simple(l.var, l.annot), l.body));
                   },
                   [&](const App<CodeTag>& a) {
                     Type f = code(cx, a.fun);
                     auto* arr = as<TypeArrow>(f);
                     if (!arr) throw TypeError(TypeErrorKind::nonfunction, pretty(s), "a function", pretty(f));
                     same(arr->dom, code(cx, a.arg), s);
                     return arr->cod;
                   },
                   [&](const Bang<CodeTag>& b) { return ty::audited(b.body, boxed(cx, [&](const Contexts& in) {
                                                           return code(in, b.body);
                                                         })); },
                   [&](const Let<CodeTag>& l) {
                     auto [r, a] = audited(code(cx, l.bound), l.bound);
                     same(l.annot, a, s);
                     Type c = code(cx.with_audited(l.var, l.annot), l.body);
                     return subst_audited(c, l.var, r);
                   },
                   [&](const Inspect<CodeTag>& i) {
                     return branch_type(cx, i.branches, s, [&](const Contexts& in, Label, const Code& b) { return code(in, b); });
                   }},
        s->node);
  }

  TermTypeResult term(const Contexts& cx, const Term& m) {
    return std::visit(
        overloaded{[&](const Var<TermTag>& v) -> TermTypeResult {
                     return {lookup_simple(cx, v.name), code::var(v.name)};
                   },
                   [&](const AVar<TermTag>& v) -> TermTypeResult {
                     return {lookup_audited(cx, v.name), code::avar(v.name)};
                   },
                   [&](const Lam<TermTag>& l) -> TermTypeResult {
                     auto body = term(cx.with_simple(l.var, l.annot), l.body);
                     return {ty::arrow(l.annot, body.type), code::lam(l.var, l.annot, body.code)};
                   },
                   [&](const App<TermTag>& a) -> TermTypeResult {
                     auto f = term(cx, a.fun);
                     auto* arr = as<TypeArrow>(f.type);
                     if (!arr) throw TypeError(TypeErrorKind::nonfunction, pretty(m), "a function", pretty(f.type));
                     auto x = term(cx, a.arg);
                     same(arr->dom, x.type, m);
                     return {arr->cod, code::app(f.code, x.code)};
                   },
                   [&](const Bang<TermTag>& b) -> TermTypeResult {
                     return boxed(cx, [&](const Contexts& in) -> TermTypeResult {
                       auto body = term(in, b.body);
                       auto q = trail(in, b.trail);
                       if (!alpha_eq(q.target, body.code))
                         throw TypeError(TypeErrorKind::trail_endpoint_mismatch, pretty(m), pretty(body.code),
                                         pretty(q.target));
                       same(body.type, q.type, m);
                       return {ty::audited(q.source, body.type), code::bang(q.source)};
                     });
                   },
                   [&](const Let<TermTag>& l) -> TermTypeResult {
                     auto bound = term(cx, l.bound);
                     auto [r, a] = audited(bound.type, bound.code);
                     same(l.annot, a, m);
                     auto body = term(cx.with_audited(l.var, l.annot), l.body);
                     return {subst_audited(body.type, l.var, r), code::let(l.var, l.annot, bound.code, body.code)};
                   },
                   [&](const Inspect<TermTag>& i) -> TermTypeResult {
                     BranchMap<Code> codes;
                     Type b = branch_type(cx, i.branches, m, [&](const Contexts& in, Label l, const Term& x) {
                       auto r = term(in, x);
                       codes.emplace(l, r.code);
                       return r.type;
                     });
                     return {b, code::inspect(std::move(codes))};
                   }},
        m->node);
  }

  TrailTypeResult trail(const Contexts& cx, const Trail& q) {
    return std::visit(
        overloaded{
            [&](const Refl<CodeTag>& r) -> TrailTypeResult { return {r.subject, r.subject, code(cx, r.subject)}; },
            [&](const Trans<CodeTag>& t) -> TrailTypeResult {
              auto a = trail(cx, t.first);
              auto b = trail(cx, t.second);
              if (!alpha_eq(a.target, b.source))
                throw TypeError(TypeErrorKind::trail_endpoint_mismatch, pretty(q), pretty(a.target), pretty(b.source));
              same(a.type, b.type, q);
              return {a.source, b.target, a.type};
            },
            [&](const Ba<CodeTag>& b) -> TrailTypeResult {
              Type body = code(cx.with_simple(b.var, b.annot), b.body);
              same(b.annot, code(cx, b.arg), q);
              return {code::app(code::lam(b.var, b.annot, b.body), b.arg), subst_simple(b.body, b.var, b.arg), body};
            },
            [&](const Bb<CodeTag>& b) -> TrailTypeResult {
              Type a = boxed(cx, [&](const Contexts& in) { return code(in, b.bound); });
              same(b.annot, a, q);
              Type c = code(cx.with_audited(b.var, b.annot), b.body);
              return {code::let(b.var, b.annot, code::bang(b.bound), b.body), subst_audited(b.body, b.var, b.bound),
                      subst_audited(c, b.var, b.bound)};
            },
            [&](const Ti<CodeTag>& t) -> TrailTypeResult {
              boxed(cx, [&](const Contexts& in) { return trail(in, t.history); });
              Code s = code::inspect(t.branches);
              Type b = branch_type(cx, t.branches, q, [&](const Contexts& in, Label, const Code& x) { return code(in, x); });
              return {s, fold_code(t.history, t.branches), b};
            },
            [&](const TLam<CodeTag>& l) -> TrailTypeResult {
              auto r = trail(cx.with_simple(l.var, l.annot), l.inner);
              return {code::lam(l.var, l.annot, r.source), code::lam(l.var, l.annot, r.target),
                      ty::arrow(l.annot, r.type)};
            },
            [&](const TApp<CodeTag>& a) -> TrailTypeResult {
              auto f = trail(cx, a.left);
              auto* arr = as<TypeArrow>(f.type);
              if (!arr) throw TypeError(TypeErrorKind::nonfunction, pretty(q), "a function", pretty(f.type));
              auto x = trail(cx, a.right);
              same(arr->dom, x.type, q);
              return {code::app(f.source, x.source), code::app(f.target, x.target), arr->cod};
            },
            [&](const TLet<CodeTag>& l) -> TrailTypeResult {
              auto left = trail(cx, l.left);
              auto [r, a] = audited(left.type, left.source);
              same(l.annot, a, q);
              auto right = trail(cx.with_audited(l.var, l.annot), l.right);
              return {code::let(l.var, l.annot, left.source, right.source),
                      code::let(l.var, l.annot, left.target, right.target), subst_audited(right.type, l.var, r)};
            },
            [&](const Trpl<CodeTag>& t) -> TrailTypeResult {
              BranchMap<Code> srcs, tgts;
              Type b = branch_type(cx, t.branches, q, [&](const Contexts& in, Label l, const Trail& x) {
                auto r = trail(in, x);
                srcs.emplace(l, r.source);
                tgts.emplace(l, r.target);
                return r.type;
              });
              return {code::inspect(std::move(srcs)), code::inspect(std::move(tgts)), b};
            }},
        q->node);
  }

 private:
  Type lookup_simple(const Contexts& cx, const std::string& a) const {
    if (auto t = cx.find_simple(a)) return *t;
    for (const auto& g : hidden_)
      for (const auto& b : g)
        if (b.name == a) throw TypeError(TypeErrorKind::nonempty_gamma_under_bang, a);
    throw TypeError(TypeErrorKind::unbound, a);
  }

  static Type lookup_audited(const Contexts& cx, const std::string& u) {
    if (auto t = cx.find_audited(u)) return *t;
    throw TypeError(TypeErrorKind::unbound, "@" + u);
  }

  template <class X>
  static void same(const Type& expected, const Type& actual, const X& where) {
    if (!alpha_eq(expected, actual))
      throw TypeError(TypeErrorKind::mismatch, pretty(where), pretty(expected), pretty(actual));
  }

  // Splits [r]A into (r, A).
  template <class X>
  static std::pair<Code, Type> audited(const Type& t, const X& where) {
    auto* a = as<TypeAudited>(t);
    if (!a) throw TypeError(TypeErrorKind::nonaudited, pretty(where), "an audited type", pretty(t));
    return {a->code, a->body};
  }

  // Every branch is checked under an empty simple context. The default
  // branch fixes B; the others must have type ttable(label, B).
  template <class X, class Where, class F>
  Type branch_type(const Contexts& cx, const BranchMap<X>& m, const Where& where, F&& infer) {
    auto d = m.find(Label::default_);
    if (d == m.end()) throw TypeError(TypeErrorKind::missing_default, pretty(where));
    return boxed(cx, [&](const Contexts& in) {
      Type b = infer(in, Label::default_, d->second);
      for (const auto& [k, x] : m) {
        if (k == Label::default_) continue;
        Type t = infer(in, k, x);
        Type want = ttable(k, b);
        if (!alpha_eq(want, t))
          throw TypeError(TypeErrorKind::branch_domain_mismatch, std::string(label_name(k)) + " branch of " + pretty(where),
                          pretty(want), pretty(t));
      }
      return b;
    });
  }
};

}  // namespace detail

inline Type infer_code(const Contexts& cx, const Code& s) { return detail::Checker().code(cx, s); }
inline TermTypeResult infer_term(const Contexts& cx, const Term& m) { return detail::Checker().term(cx, m); }
inline TrailTypeResult infer_trail(const Contexts& cx, const Trail& q) { return detail::Checker().trail(cx, q); }

inline Type infer_code(const Code& s) { return infer_code(Contexts{}, s); }
inline TermTypeResult infer_term(const Term& m) { return infer_term(Contexts{}, m); }
inline TrailTypeResult infer_trail(const Trail& q) { return infer_trail(Contexts{}, q); }

}  // namespace lhc
