#pragma once

// The simplified calculus: trail-free terms over types P, A -> B and []A.
// Inspection does not read the enclosing bang's history; it reduces with
// whatever trail an oracle supplies.

#include <map>
#include <mutex>
#include <set>

#include "lhc/errors.hpp"
#include "lhc/pretty.hpp"
#include "lhc/reduction.hpp"
#include "lhc/typing.hpp"

namespace lhc {

// ---------------------------------------------------------------------------
// Erasure

inline HsType erase_type(const Type& t) {
  return std::visit(overloaded{[](const TypeAtom& a) { return hty::atom(a.name); },
                               [](const TypeArrow& a) { return hty::arrow(erase_type(a.dom), erase_type(a.cod)); },
                               [](const TypeAudited& a) { return hty::box(erase_type(a.body)); }},
                    t->node);
}

namespace detail {

template <class Tag>
HsTerm erase_expr(const Expr<Tag>& e) {
  auto map = [](const BranchMap<Expr<Tag>>& m) {
    BranchMap<HsTerm> out;
    for (const auto& [k, b] : m) out.emplace(k, erase_expr(b));
    return out;
  };
  return std::visit(overloaded{[](const Var<Tag>& v) { return hs::var(v.name); },
                               [](const AVar<Tag>& v) { return hs::avar(v.name); },
                               [](const Lam<Tag>& l) { return hs::lam(l.var, erase_type(l.annot), erase_expr(l.body)); },
                               [](const App<Tag>& a) { return hs::app(erase_expr(a.fun), erase_expr(a.arg)); },
                               [](const Bang<Tag>& b) { return hs::bang(erase_expr(b.body)); },
                               [](const Let<Tag>& l) {
                                 return hs::let(l.var, erase_type(l.annot), erase_expr(l.bound), erase_expr(l.body));
                               },
                               [&](const Inspect<Tag>& i) { return hs::inspect(map(i.branches)); }},
                    e->node);
}

}  // namespace detail

inline HsTerm erase_term(const Term& m) { return detail::erase_expr(m); }
inline HsTerm erase_code(const Code& s) { return detail::erase_expr(s); }

inline HsTrail erase_trail(const Trail& q) {
  using T = hs_trail;
  auto code = [](const Code& s) { return erase_code(s); };
  return std::visit(
      overloaded{[&](const Refl<CodeTag>& r) { return T::refl(code(r.subject)); },
                 [&](const Trans<CodeTag>& t) { return T::trans(erase_trail(t.first), erase_trail(t.second)); },
                 [&](const Ba<CodeTag>& b) { return T::ba(b.var, erase_type(b.annot), code(b.body), code(b.arg)); },
                 [&](const Bb<CodeTag>& b) { return T::bb(code(b.bound), b.var, erase_type(b.annot), code(b.body)); },
                 [&](const Ti<CodeTag>& t) {
                   BranchMap<HsTerm> m;
                   for (const auto& [k, b] : t.branches) m.emplace(k, code(b));
                   return T::ti(erase_trail(t.history), std::move(m));
                 },
                 [&](const TLam<CodeTag>& l) { return T::lam(l.var, erase_type(l.annot), erase_trail(l.inner)); },
                 [&](const TApp<CodeTag>& a) { return T::app(erase_trail(a.left), erase_trail(a.right)); },
                 [&](const TLet<CodeTag>& l) {
                   return T::let(erase_trail(l.left), l.var, erase_type(l.annot), erase_trail(l.right));
                 },
                 [&](const Trpl<CodeTag>& t) {
                   BranchMap<HsTrail> m;
                   for (const auto& [k, b] : t.branches) m.emplace(k, erase_trail(b));
                   return T::trpl(std::move(m));
                 }},
      q->node);
}

inline HsContexts erase_contexts(const Contexts& cx) {
  HsContexts out;
  for (const auto& b : cx.audited) out.audited.push_back({b.name, erase_type(b.type)});
  for (const auto& b : cx.simple) out.simple.push_back({b.name, erase_type(b.type)});
  return out;
}

// ---------------------------------------------------------------------------
// Typing

namespace detail {

inline HsType hs_check(const HsContexts& cx, const HsTerm& s) {
  auto same = [&](const HsType& want, const HsType& got) {
    if (!alpha_eq(want, got)) throw TypeError(TypeErrorKind::mismatch, pretty(s), pretty(want), pretty(got));
  };
  return std::visit(
      overloaded{[&](const Var<HsTag>& v) {
                   if (auto t = cx.find_simple(v.name)) return *t;
                   throw TypeError(TypeErrorKind::unbound, v.name);
                 },
                 [&](const AVar<HsTag>& v) {
                   if (auto t = cx.find_audited(v.name)) return *t;
                   throw TypeError(TypeErrorKind::unbound, "@" + v.name);
                 },
                 [&](const Lam<HsTag>& l) { return hty::arrow(l.annot, hs_check(cx.with_simple(l.var, l.annot), l.body)); },
                 [&](const App<HsTag>& a) {
                   HsType f = hs_check(cx, a.fun);
                   auto* arr = as<HsTypeArrow>(f);
                   if (!arr) throw TypeError(TypeErrorKind::nonfunction, pretty(s), "a function", pretty(f));
                   same(arr->dom, hs_check(cx, a.arg));
                   return arr->cod;
                 },
                 [&](const Bang<HsTag>& b) { return hty::box(hs_check(cx.boxed(), b.body)); },
                 [&](const Let<HsTag>& l) {
                   HsType t = hs_check(cx, l.bound);
                   auto* box = as<HsTypeBox>(t);
                   if (!box) throw TypeError(TypeErrorKind::nonaudited, pretty(s), "a box type", pretty(t));
                   same(l.annot, box->body);
                   return hs_check(cx.with_audited(l.var, l.annot), l.body);
                 },
                 [&](const Inspect<HsTag>& i) {
                   auto d = i.branches.find(Label::default_);
                   if (d == i.branches.end()) throw TypeError(TypeErrorKind::missing_default, pretty(s));
                   HsContexts in = cx.boxed();
                   HsType b = hs_check(in, d->second);
                   for (const auto& [k, x] : i.branches) {
                     HsType want = ttable(k, b);
                     HsType got = hs_check(in, x);
                     if (!alpha_eq(want, got))
                       throw TypeError(TypeErrorKind::branch_domain_mismatch,
                                       std::string(label_name(k)) + " branch of " + pretty(s), pretty(want), pretty(got));
                   }
                   return b;
                 }},
      s->node);
}

}  // namespace detail

inline HsType hs_infer(const HsContexts& cx, const HsTerm& s) { return detail::hs_check(cx, s); }
inline HsType hs_infer(const HsTerm& s) { return hs_infer(HsContexts{}, s); }

// ---------------------------------------------------------------------------
// Trail oracle

/// Supplies the trails an inspection may receive: either one injected trail,
/// or every trail shape up to a node bound. Since a fold only reads a
/// trail's constructor skeleton, enumeration keeps one trail per distinct
/// fold result.
class TrailOracle {
 public:
  static TrailOracle injected(HsTrail q) {
    TrailOracle o;
    o.injected_ = std::move(q);
    return o;
  }

  static TrailOracle bounded(std::size_t bound) {
    TrailOracle o;
    o.bound_ = bound;
    return o;
  }

  std::size_t bound() const { return bound_; }

  /// Trails for an inspection over `theta`, in a deterministic order.
  std::vector<HsTrail> trails(const BranchMap<HsTerm>& theta) const {
    if (injected_) return {*injected_};
    std::string k = canonical_key(hs::inspect(theta));
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto it = cache_->entries.find(k);
    if (it == cache_->entries.end()) it = cache_->entries.emplace(k, enumerate(theta)).first;
    return it->second;
  }

 private:
  // Memoizes enumeration per branch map; shared between copies.
  struct Cache {
    std::mutex mutex;
    std::map<std::string, std::vector<HsTrail>> entries;
  };

  std::optional<HsTrail> injected_;
  std::size_t bound_ = 7;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();

  using Reps = std::map<std::string, HsTrail>;  // fold result key -> trail
  using ListReps = std::map<std::string, std::vector<HsTrail>>;

  std::vector<HsTrail> enumerate(const BranchMap<HsTerm>& theta) const {
    if (!theta.count(Label::default_)) return {};
    HsTerm d = hs::var("d");
    HsType p = hty::atom("P");
    using T = hs_trail;
    auto key = [&](const HsTrail& q) { return canonical_key(fold<HsTag, HsTag>(q, theta)); };
    auto key_list = [&](const std::vector<HsTrail>& qs) { return key(T::trpl(as_map(qs))); };

    std::vector<Reps> by_size(bound_ + 1);
    std::vector<ListReps> lists(bound_ + 1);  // trpl nodes, by total size
    std::set<std::string> seen;
    std::vector<HsTrail> out;
    auto add = [&](std::size_t n, const HsTrail& q) {
      std::string k = key(q);
      by_size[n].emplace(k, q);
      if (seen.insert(k).second) out.push_back(q);
    };
    for (std::size_t n = 1; n <= bound_; ++n) {
      if (n == 1) {
        add(1, T::refl(d));
        add(1, T::ba("x", p, d, d));
        add(1, T::bb(d, "w", p, d));
        lists[1].emplace(key_list({}), std::vector<HsTrail>{});
      }
      if (n >= 2) {
        for (const auto& [k, q] : by_size[n - 1]) {
          add(n, T::lam("x", p, q));
          add(n, T::ti(q, {}));
        }
      }
      for (std::size_t i = 1; i + 1 < n; ++i) {
        for (const auto& [k1, a] : by_size[i])
          for (const auto& [k2, b] : by_size[n - 1 - i]) {
            add(n, T::trans(a, b));
            add(n, T::app(a, b));
            add(n, T::let(a, "w", p, b));
          }
      }
      // trpl(q :: rest) has size |q| + |trpl(rest)|.
      for (std::size_t i = 1; i < n; ++i)
        for (const auto& [k1, a] : by_size[i])
          for (const auto& [k2, rest] : lists[n - i]) {
            if (rest.size() + 1 >= kAllLabels.size()) continue;
            std::vector<HsTrail> qs{a};
            qs.insert(qs.end(), rest.begin(), rest.end());
            lists[n].emplace(key_list(qs), qs);
          }
      for (const auto& [k, qs] : lists[n]) add(n, T::trpl(as_map(qs)));
    }
    return out;
  }

  static BranchMap<HsTrail> as_map(const std::vector<HsTrail>& qs) {
    BranchMap<HsTrail> m;
    for (std::size_t i = 0; i < qs.size(); ++i) m.emplace(kAllLabels[i], qs[i]);
    return m;
  }
};

// ---------------------------------------------------------------------------
// Reduction

namespace detail {

template <class F>
void hs_for_each_child(const HsTerm& s, F&& f) {
  std::visit(overloaded{[](const Var<HsTag>&) {}, [](const AVar<HsTag>&) {},
                        [&](const Lam<HsTag>& l) {
                          f(l.body, [l](HsTerm x) { return hs::lam(l.var, l.annot, std::move(x)); });
                        },
                        [&](const App<HsTag>& a) {
                          f(a.fun, [a](HsTerm x) { return hs::app(std::move(x), a.arg); });
                          f(a.arg, [a](HsTerm x) { return hs::app(a.fun, std::move(x)); });
                        },
                        [&](const Bang<HsTag>& b) { f(b.body, [](HsTerm x) { return hs::bang(std::move(x)); }); },
                        [&](const Let<HsTag>& l) {
                          f(l.bound, [l](HsTerm x) { return hs::let(l.var, l.annot, std::move(x), l.body); });
                          f(l.body, [l](HsTerm x) { return hs::let(l.var, l.annot, l.bound, std::move(x)); });
                        },
                        [&](const Inspect<HsTag>& i) {
                          for (const auto& [k, b] : i.branches) {
                            Label label = k;
                            f(b, [i, label](HsTerm x) {
                              auto m = i.branches;
                              m.insert_or_assign(label, std::move(x));
                              return hs::inspect(std::move(m));
                            });
                          }
                        }},
             s->node);
}

inline void hs_contracta(const HsTerm& s, const TrailOracle& oracle, std::vector<HsTerm>& out) {
  if (auto* a = as<App<HsTag>>(s)) {
    if (auto* l = as<Lam<HsTag>>(a->fun)) out.push_back(hs_subst_simple(l->body, l->var, a->arg));
  } else if (auto* l = as<Let<HsTag>>(s)) {
    if (auto* b = as<Bang<HsTag>>(l->bound)) out.push_back(hs_subst_audited(l->body, l->var, b->body));
  } else if (auto* i = as<Inspect<HsTag>>(s)) {
    if (i->branches.count(Label::default_))
      for (const auto& q : oracle.trails(i->branches)) out.push_back(fold<HsTag, HsTag>(q, i->branches));
  }
}

inline void hs_successors(const HsTerm& s, const TrailOracle& oracle, std::vector<HsTerm>& out) {
  hs_contracta(s, oracle, out);
  hs_for_each_child(s, [&](const HsTerm& c, auto&& rebuild) {
    std::vector<HsTerm> sub;
    hs_successors(c, oracle, sub);
    for (auto& x : sub) out.push_back(rebuild(std::move(x)));
  });
}

}  // namespace detail

/// Every one-step reduct of s, closing the three rules under all contexts
/// (including under bangs and lambdas, and inside branches).
inline std::vector<HsTerm> hs_step(const HsTerm& s, const TrailOracle& oracle) {
  std::vector<HsTerm> out;
  detail::hs_successors(s, oracle, out);
  return out;
}

inline bool hs_is_normal(const HsTerm& s) {
  return hs_step(s, TrailOracle::injected(hs_trail::refl(hs::var("d")))).empty();
}

/// Whether |M| reduces in one step to |M'|, feeding a TI step the erased
/// history it inspected.
inline bool check_erasure_simulation(const Term& m, const Term& next, const StepInfo& info) {
  auto oracle = TrailOracle::injected(erase_trail(info.history));
  HsTerm target = erase_term(next);
  for (const auto& s : hs_step(erase_term(m), oracle))
    if (alpha_eq(s, target)) return true;
  return false;
}

}  // namespace lhc
