#pragma once

// The trail algebra: endpoints of trails, the inspection fold, the code of
// a term, and evaluation/trail contexts.

#include <vector>

#include "lhc/errors.hpp"
#include "lhc/substitution.hpp"

namespace lhc {

namespace detail {

template <class C>
Expr<C> subst_simple_of(const Expr<C>& r, const std::string& a, const Expr<C>& t) {
  if constexpr (std::is_same_v<C, HsTag>) {
    return hs_subst_simple(r, a, t);
  } else {
    return subst_simple(r, a, t);
  }
}

template <class C>
Expr<C> subst_audited_of(const Expr<C>& r, const std::string& u, const Expr<C>& t) {
  if constexpr (std::is_same_v<C, HsTag>) {
    return hs_subst_audited(r, u, t);
  } else {
    return subst_audited(r, u, t);
  }
}

}  // namespace detail

/// Label of a trail's head constructor as seen by inspection.
template <class C>
Label head_label(const TrailOf<C>& q) {
  return std::visit(overloaded{[](const Refl<C>&) { return Label::refl; },
                               [](const Trans<C>&) { return Label::trans; },
                               [](const Ba<C>&) { return Label::ba; }, [](const Bb<C>&) { return Label::bb; },
                               [](const Ti<C>&) { return Label::ti; }, [](const TLam<C>&) { return Label::lam; },
                               [](const TApp<C>&) { return Label::app; }, [](const TLet<C>&) { return Label::let; },
                               [](const Trpl<C>& t) { return t.branches.empty() ? Label::trpl_nil : Label::trpl_cons; }},
                    q->node);
}

// ---------------------------------------------------------------------------
// Inspection fold

namespace detail {

template <class C, class Tag>
Expr<Tag> fold_rec(const TrailOf<C>& q, const BranchMap<Expr<Tag>>& theta);

template <class C, class Tag>
Expr<Tag> fold_trpl(typename BranchMap<TrailOf<C>>::const_iterator it,
                    typename BranchMap<TrailOf<C>>::const_iterator end, const BranchMap<Expr<Tag>>& theta) {
  using M = Make<Tag>;
  if (it == end) {
    auto f = theta.find(Label::trpl_nil);
    return f == theta.end() ? theta.at(Label::default_) : f->second;
  }
  auto f = theta.find(Label::trpl_cons);
  if (f == theta.end()) return theta.at(Label::default_);
  auto head = fold_rec<C, Tag>(it->second, theta);
  return M::app(M::app(f->second, head), fold_trpl<C, Tag>(std::next(it), end, theta));
}

template <class C, class Tag>
Expr<Tag> fold_rec(const TrailOf<C>& q, const BranchMap<Expr<Tag>>& theta) {
  using M = Make<Tag>;
  if (auto* t = as<Trpl<C>>(q)) return fold_trpl<C, Tag>(t->branches.begin(), t->branches.end(), theta);
  auto f = theta.find(head_label(q));
  if (f == theta.end()) return theta.at(Label::default_);
  const Expr<Tag>& branch = f->second;
  return std::visit(overloaded{[&](const Trans<C>& t) {
                                 return M::app(M::app(branch, fold_rec<C, Tag>(t.first, theta)),
                                               fold_rec<C, Tag>(t.second, theta));
                               },
                               [&](const TApp<C>& t) {
                                 return M::app(M::app(branch, fold_rec<C, Tag>(t.left, theta)),
                                               fold_rec<C, Tag>(t.right, theta));
                               },
                               [&](const TLet<C>& t) {
                                 return M::app(M::app(branch, fold_rec<C, Tag>(t.left, theta)),
                                               fold_rec<C, Tag>(t.right, theta));
                               },
                               [&](const TLam<C>& t) { return M::app(branch, fold_rec<C, Tag>(t.inner, theta)); },
                               [&](const auto&) { return branch; }},
                    q->node);
}

}  // namespace detail

/// Structural recursion over q driven by the branch map. A constructor
/// whose label is absent from the map yields the default branch without
/// looking at its subtrails.
template <class C, class Tag>
Expr<Tag> fold(const TrailOf<C>& q, const BranchMap<Expr<Tag>>& theta) {
  if (!theta.count(Label::default_)) throw MissingDefault();
  return detail::fold_rec<C, Tag>(q, theta);
}

inline Code fold_code(const Trail& q, const BranchMap<Code>& theta) { return fold<CodeTag, CodeTag>(q, theta); }
inline Term fold_term(const Trail& q, const BranchMap<Term>& theta) { return fold<CodeTag, TermTag>(q, theta); }

// ---------------------------------------------------------------------------
// Source and target

template <class C>
Expr<C> src(const TrailOf<C>& q) {
  using M = Make<C>;
  return std::visit(overloaded{[](const Refl<C>& r) { return r.subject; },
                               [](const Trans<C>& t) { return src(t.first); },
                               [](const Ba<C>& b) { return M::app(M::lam(b.var, b.annot, b.body), b.arg); },
                               [](const Bb<C>& b) { return M::let(b.var, b.annot, M::bang(b.bound), b.body); },
                               [](const Ti<C>& t) { return M::inspect(t.branches); },
                               [](const TLam<C>& l) { return M::lam(l.var, l.annot, src(l.inner)); },
                               [](const TApp<C>& a) { return M::app(src(a.left), src(a.right)); },
                               [](const TLet<C>& l) { return M::let(l.var, l.annot, src(l.left), src(l.right)); },
                               [](const Trpl<C>& t) {
                                 BranchMap<Expr<C>> m;
                                 for (const auto& [k, b] : t.branches) m.emplace(k, src(b));
                                 return M::inspect(std::move(m));
                               }},
                    q->node);
}

template <class C>
Expr<C> tgt(const TrailOf<C>& q) {
  using M = Make<C>;
  return std::visit(overloaded{[](const Refl<C>& r) { return r.subject; },
                               [](const Trans<C>& t) { return tgt(t.second); },
                               [](const Ba<C>& b) { return detail::subst_simple_of<C>(b.body, b.var, b.arg); },
                               [](const Bb<C>& b) { return detail::subst_audited_of<C>(b.body, b.var, b.bound); },
                               [](const Ti<C>& t) { return fold<C, C>(t.history, t.branches); },
                               [](const TLam<C>& l) { return M::lam(l.var, l.annot, tgt(l.inner)); },
                               [](const TApp<C>& a) { return M::app(tgt(a.left), tgt(a.right)); },
                               [](const TLet<C>& l) { return M::let(l.var, l.annot, tgt(l.left), tgt(l.right)); },
                               [](const Trpl<C>& t) {
                                 BranchMap<Expr<C>> m;
                                 for (const auto& [k, b] : t.branches) m.emplace(k, tgt(b));
                                 return M::inspect(std::move(m));
                               }},
                    q->node);
}

// ---------------------------------------------------------------------------
// Codes of terms

/// Forgets the history of a term: every bang ![q]N becomes !src(q).
inline Code code_of(const Term& m) {
  return std::visit(overloaded{[](const Var<TermTag>& v) { return code::var(v.name); },
                               [](const AVar<TermTag>& v) { return code::avar(v.name); },
                               [](const Lam<TermTag>& l) { return code::lam(l.var, l.annot, code_of(l.body)); },
                               [](const App<TermTag>& a) { return code::app(code_of(a.fun), code_of(a.arg)); },
                               [](const Bang<TermTag>& b) { return code::bang(src(b.trail)); },
                               [](const Let<TermTag>& l) {
                                 return code::let(l.var, l.annot, code_of(l.bound), code_of(l.body));
                               },
                               [](const Inspect<TermTag>& i) {
                                 BranchMap<Code> m;
                                 for (const auto& [k, b] : i.branches) m.emplace(k, code_of(b));
                                 return code::inspect(std::move(m));
                               }},
                    m->node);
}

inline BranchMap<Code> code_of(const BranchMap<Term>& m) {
  BranchMap<Code> out;
  for (const auto& [k, b] : m) out.emplace(k, code_of(b));
  return out;
}

/// A code viewed as a term in which no computation has happened yet:
/// every bang !s becomes ![refl(s)] s.
inline Term code_as_term(const Code& s) {
  return std::visit(overloaded{[](const Var<CodeTag>& v) { return term::var(v.name); },
                               [](const AVar<CodeTag>& v) { return term::avar(v.name); },
                               [](const Lam<CodeTag>& l) { return term::lam(l.var, l.annot, code_as_term(l.body)); },
                               [](const App<CodeTag>& a) { return term::app(code_as_term(a.fun), code_as_term(a.arg)); },
                               [](const Bang<CodeTag>& b) { return term::bang(trail::refl(b.body), code_as_term(b.body)); },
                               [](const Let<CodeTag>& l) {
                                 return term::let(l.var, l.annot, code_as_term(l.bound), code_as_term(l.body));
                               },
                               [](const Inspect<CodeTag>& i) {
                                 BranchMap<Term> m;
                                 for (const auto& [k, b] : i.branches) m.emplace(k, code_as_term(b));
                                 return term::inspect(std::move(m));
                               }},
                    s->node);
}

// ---------------------------------------------------------------------------
// Evaluation contexts

namespace frame {
struct AppFun {  // (■ M)
  Term arg;
};
struct AppArg {  // (M ■)
  Term fun;
};
struct Lambda {
  std::string var;
  Type annot;
};
struct Boxed {  // ![q] ■
  Trail trail;
};
struct LetBound {
  std::string var;
  Type annot;
  Term body;
};
struct LetBody {
  std::string var;
  Type annot;
  Term bound;
};
struct Branch {
  Label label;
  BranchMap<Term> branches;  // the other branches; `label` is the hole
};
}  // namespace frame

using Frame = std::variant<frame::AppFun, frame::AppArg, frame::Lambda, frame::Boxed, frame::LetBound, frame::LetBody,
                           frame::Branch>;

/// A term with one hole, stored as its layers from the outside in.
struct EvalContext {
  std::vector<Frame> frames;

  bool box_free() const {
    for (const auto& f : frames)
      if (std::holds_alternative<frame::Boxed>(f)) return false;
    return true;
  }
};

/// Fills the hole. Plugging is not capture-avoiding.
inline Term plug_term(const EvalContext& ctx, Term m) {
  for (auto it = ctx.frames.rbegin(); it != ctx.frames.rend(); ++it) {
    m = std::visit(overloaded{[&](const frame::AppFun& f) { return term::app(m, f.arg); },
                              [&](const frame::AppArg& f) { return term::app(f.fun, m); },
                              [&](const frame::Lambda& f) { return term::lam(f.var, f.annot, m); },
                              [&](const frame::Boxed& f) { return term::bang(f.trail, m); },
                              [&](const frame::LetBound& f) { return term::let(f.var, f.annot, m, f.body); },
                              [&](const frame::LetBody& f) { return term::let(f.var, f.annot, f.bound, m); },
                              [&](const frame::Branch& f) {
                                auto b = f.branches;
                                b.insert_or_assign(f.label, m);
                                return term::inspect(std::move(b));
                              }},
                   *it);
  }
  return m;
}

namespace tframe {
struct TransFirst {  // trans(■, q)
  Trail second;
};
struct TransSecond {  // trans(q, ■)
  Trail first;
};
struct AppLeft {
  Trail right;
};
struct AppRight {
  Trail left;
};
struct Lambda {
  std::string var;
  Type annot;
};
struct LetLeft {
  std::string var;
  Type annot;
  Trail right;
};
struct LetRight {
  Trail left;
  std::string var;
  Type annot;
};
struct Branch {
  Label label;
  BranchMap<Trail> branches;
};
}  // namespace tframe

using TrailFrame = std::variant<tframe::TransFirst, tframe::TransSecond, tframe::AppLeft, tframe::AppRight,
                                tframe::Lambda, tframe::LetLeft, tframe::LetRight, tframe::Branch>;

struct TrailContext {
  std::vector<TrailFrame> frames;
};

inline Trail plug_trail(const TrailContext& ctx, Trail q) {
  for (auto it = ctx.frames.rbegin(); it != ctx.frames.rend(); ++it) {
    q = std::visit(overloaded{[&](const tframe::TransFirst& f) { return trail::trans(q, f.second); },
                              [&](const tframe::TransSecond& f) { return trail::trans(f.first, q); },
                              [&](const tframe::AppLeft& f) { return trail::app(q, f.right); },
                              [&](const tframe::AppRight& f) { return trail::app(f.left, q); },
                              [&](const tframe::Lambda& f) { return trail::lam(f.var, f.annot, q); },
                              [&](const tframe::LetLeft& f) { return trail::let(q, f.var, f.annot, f.right); },
                              [&](const tframe::LetRight& f) { return trail::let(f.left, f.var, f.annot, q); },
                              [&](const tframe::Branch& f) {
                                auto b = f.branches;
                                b.insert_or_assign(f.label, q);
                                return trail::trpl(std::move(b));
                              }},
                   *it);
  }
  return q;
}

/// The reflexive trail skeleton of a box-free context: congruences with
/// refl(code) for every sibling and a hole where the context has one.
inline TrailContext canonical_trail_context(const EvalContext& ctx) {
  TrailContext out;
  out.frames.reserve(ctx.frames.size());
  for (const auto& f : ctx.frames) {
    out.frames.push_back(std::visit(
        overloaded{[](const frame::AppFun& f) -> TrailFrame { return tframe::AppLeft{trail::refl(code_of(f.arg))}; },
                   [](const frame::AppArg& f) -> TrailFrame { return tframe::AppRight{trail::refl(code_of(f.fun))}; },
                   [](const frame::Lambda& f) -> TrailFrame { return tframe::Lambda{f.var, f.annot}; },
                   [](const frame::Boxed&) -> TrailFrame { throw NotBoxFree(); },
                   [](const frame::LetBound& f) -> TrailFrame {
                     return tframe::LetLeft{f.var, f.annot, trail::refl(code_of(f.body))};
                   },
                   [](const frame::LetBody& f) -> TrailFrame {
                     return tframe::LetRight{trail::refl(code_of(f.bound)), f.var, f.annot};
                   },
                   [](const frame::Branch& f) -> TrailFrame {
                     BranchMap<Trail> m;
                     for (const auto& [k, b] : f.branches)
                       if (k != f.label) m.emplace(k, trail::refl(code_of(b)));
                     return tframe::Branch{f.label, std::move(m)};
                   }},
        f));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Trail measures

/// Number of contraction steps (ba, bb, ti) a trail records, counting the
/// way the inspection fold sees it: a ti's inner history is not entered.
template <class C>
std::size_t contraction_count(const TrailOf<C>& q) {
  return std::visit(overloaded{[](const Refl<C>&) -> std::size_t { return 0; },
                               [](const Trans<C>& t) { return contraction_count(t.first) + contraction_count(t.second); },
                               [](const Ba<C>&) -> std::size_t { return 1; },
                               [](const Bb<C>&) -> std::size_t { return 1; },
                               [](const Ti<C>&) -> std::size_t { return 1; },
                               [](const TLam<C>& l) { return contraction_count(l.inner); },
                               [](const TApp<C>& a) { return contraction_count(a.left) + contraction_count(a.right); },
                               [](const TLet<C>& l) { return contraction_count(l.left) + contraction_count(l.right); },
                               [](const Trpl<C>& t) {
                                 std::size_t n = 0;
                                 for (const auto& [_, b] : t.branches) n += contraction_count(b);
                                 return n;
                               }},
                    q->node);
}

/// Number of trail constructors in q, not counting embedded codes.
template <class C>
std::size_t trail_size(const TrailOf<C>& q) {
  return std::visit(overloaded{[](const Trans<C>& t) { return 1 + trail_size(t.first) + trail_size(t.second); },
                               [](const Ti<C>& t) { return 1 + trail_size(t.history); },
                               [](const TLam<C>& l) { return 1 + trail_size(l.inner); },
                               [](const TApp<C>& a) { return 1 + trail_size(a.left) + trail_size(a.right); },
                               [](const TLet<C>& l) { return 1 + trail_size(l.left) + trail_size(l.right); },
                               [](const Trpl<C>& t) {
                                 std::size_t n = 1;
                                 for (const auto& [_, b] : t.branches) n += trail_size(b);
                                 return n;
                               },
                               [](const auto&) -> std::size_t { return 1; }},
                    q->node);
}

}  // namespace lhc
