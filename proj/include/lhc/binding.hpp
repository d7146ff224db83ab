#pragma once

// Binding structure: free variables, fresh names, renaming and
// alpha-equivalence for every syntax class.

#include <string>
#include <string_view>

#include "lhc/syntax.hpp"

namespace lhc {

enum class VarKind { simple, audited };

struct VarSet {
  std::set<std::string> simple;
  std::set<std::string> audited;

  std::set<std::string>& of(VarKind k) { return k == VarKind::simple ? simple : audited; }
  const std::set<std::string>& of(VarKind k) const { return k == VarKind::simple ? simple : audited; }
  bool contains(VarKind k, const std::string& n) const { return of(k).count(n) != 0; }
  void merge(const VarSet& o) {
    simple.insert(o.simple.begin(), o.simple.end());
    audited.insert(o.audited.begin(), o.audited.end());
  }
  bool operator==(const VarSet&) const = default;
};

namespace detail {

// Walks syntax keeping a multiset of bound names; `all` switches from free
// variables to every name that occurs (binders included).
class VarCollector {
 public:
  explicit VarCollector(bool all) : all_(all) {}

  VarSet result;

  void visit(const Type& t) {
    std::visit(overloaded{[](const TypeAtom&) {},
                          [&](const TypeArrow& a) {
                            visit(a.dom);
                            visit(a.cod);
                          },
                          [&](const TypeAudited& a) {
                            visit(a.code);
                            visit(a.body);
                          }},
               t->node);
  }
  void visit(const HsType&) {}

  template <class Tag>
  void visit(const Expr<Tag>& e) {
    std::visit(overloaded{[&](const Var<Tag>& v) { use(VarKind::simple, v.name); },
                          [&](const AVar<Tag>& v) { use(VarKind::audited, v.name); },
                          [&](const Lam<Tag>& l) {
                            visit(l.annot);
                            scoped(VarKind::simple, l.var, [&] { visit(l.body); });
                          },
                          [&](const App<Tag>& a) {
                            visit(a.fun);
                            visit(a.arg);
                          },
                          [&](const Bang<Tag>& b) {
                            if constexpr (Tag::has_trail) visit(b.trail);
                            visit(b.body);
                          },
                          [&](const Let<Tag>& l) {
                            visit(l.annot);
                            visit(l.bound);
                            scoped(VarKind::audited, l.var, [&] { visit(l.body); });
                          },
                          [&](const Inspect<Tag>& i) {
                            for (const auto& [_, b] : i.branches) visit(b);
                          }},
               e->node);
  }

  template <class C>
  void visit(const TrailOf<C>& q) {
    std::visit(overloaded{[&](const Refl<C>& r) { visit(r.subject); },
                          [&](const Trans<C>& t) {
                            visit(t.first);
                            visit(t.second);
                          },
                          [&](const Ba<C>& b) {
                            visit(b.annot);
                            scoped(VarKind::simple, b.var, [&] { visit(b.body); });
                            visit(b.arg);
                          },
                          [&](const Bb<C>& b) {
                            visit(b.bound);
                            visit(b.annot);
                            scoped(VarKind::audited, b.var, [&] { visit(b.body); });
                          },
                          [&](const Ti<C>& t) {
                            visit(t.history);
                            for (const auto& [_, b] : t.branches) visit(b);
                          },
                          [&](const TLam<C>& l) {
                            visit(l.annot);
                            scoped(VarKind::simple, l.var, [&] { visit(l.inner); });
                          },
                          [&](const TApp<C>& a) {
                            visit(a.left);
                            visit(a.right);
                          },
                          [&](const TLet<C>& l) {
                            visit(l.left);
                            visit(l.annot);
                            scoped(VarKind::audited, l.var, [&] { visit(l.right); });
                          },
                          [&](const Trpl<C>& t) {
                            for (const auto& [_, b] : t.branches) visit(b);
                          }},
               q->node);
  }

 private:
  bool all_;
  std::multiset<std::string> bound_simple_, bound_audited_;

  std::multiset<std::string>& bound(VarKind k) { return k == VarKind::simple ? bound_simple_ : bound_audited_; }

  void use(VarKind k, const std::string& n) {
    if (all_ || bound(k).count(n) == 0) result.of(k).insert(n);
  }

  template <class F>
  void scoped(VarKind k, const std::string& n, F&& f) {
    if (all_) result.of(k).insert(n);
    auto it = bound(k).insert(n);
    f();
    bound(k).erase(it);
  }
};

}  // namespace detail

template <class X>
VarSet free_vars(const X& x) {
  detail::VarCollector c(false);
  c.visit(x);
  return std::move(c.result);
}

/// Every variable name occurring in x, bound or free.
template <class X>
VarSet all_names(const X& x) {
  detail::VarCollector c(true);
  c.visit(x);
  return std::move(c.result);
}

/// Deterministic fresh name: the hint itself when unused, otherwise the
/// hint's stem with the smallest numeric suffix not in `avoid`.
inline std::string fresh(const std::set<std::string>& avoid, std::string_view hint) {
  std::string h(hint);
  if (!h.empty() && avoid.count(h) == 0) return h;
  std::string stem = h;
  while (!stem.empty() && stem.back() >= '0' && stem.back() <= '9') stem.pop_back();
  if (stem.empty()) stem = "v";
  for (unsigned i = 1;; ++i) {
    std::string cand = stem + std::to_string(i);
    if (avoid.count(cand) == 0) return cand;
  }
}

// ---------------------------------------------------------------------------
// Renaming of free occurrences. `to` must not occur anywhere in x.

namespace detail {

struct Renamer {
  VarKind kind;
  std::string from, to;

  bool stops(VarKind k, const std::string& binder) const { return k == kind && binder == from; }

  Type operator()(const Type& t) const {
    return std::visit(overloaded{[&](const TypeAtom&) { return t; },
                                 [&](const TypeArrow& a) { return ty::arrow((*this)(a.dom), (*this)(a.cod)); },
                                 [&](const TypeAudited& a) { return ty::audited((*this)(a.code), (*this)(a.body)); }},
                      t->node);
  }
  HsType operator()(const HsType& t) const { return t; }

  template <class Tag>
  Expr<Tag> operator()(const Expr<Tag>& e) const {
    using M = Make<Tag>;
    return std::visit(
        overloaded{[&](const Var<Tag>& v) { return kind == VarKind::simple && v.name == from ? M::var(to) : e; },
                   [&](const AVar<Tag>& v) { return kind == VarKind::audited && v.name == from ? M::avar(to) : e; },
                   [&](const Lam<Tag>& l) {
                     return M::lam(l.var, (*this)(l.annot), stops(VarKind::simple, l.var) ? l.body : (*this)(l.body));
                   },
                   [&](const App<Tag>& a) { return M::app((*this)(a.fun), (*this)(a.arg)); },
                   [&](const Bang<Tag>& b) {
                     if constexpr (Tag::has_trail) {
                       return M::bang((*this)(b.trail), (*this)(b.body));
                     } else {
                       return M::bang((*this)(b.body));
                     }
                   },
                   [&](const Let<Tag>& l) {
                     return M::let(l.var, (*this)(l.annot), (*this)(l.bound),
                                   stops(VarKind::audited, l.var) ? l.body : (*this)(l.body));
                   },
                   [&](const Inspect<Tag>& i) {
                     BranchMap<Expr<Tag>> out;
                     for (const auto& [k, b] : i.branches) out.emplace(k, (*this)(b));
                     return M::inspect(std::move(out));
                   }},
        e->node);
  }

  template <class C>
  TrailOf<C> operator()(const TrailOf<C>& q) const {
    using T = MakeTrail<C>;
    return std::visit(
        overloaded{[&](const Refl<C>& r) { return T::refl((*this)(r.subject)); },
                   [&](const Trans<C>& t) { return T::trans((*this)(t.first), (*this)(t.second)); },
                   [&](const Ba<C>& b) {
                     return T::ba(b.var, (*this)(b.annot), stops(VarKind::simple, b.var) ? b.body : (*this)(b.body),
                                  (*this)(b.arg));
                   },
                   [&](const Bb<C>& b) {
                     return T::bb((*this)(b.bound), b.var, (*this)(b.annot),
                                  stops(VarKind::audited, b.var) ? b.body : (*this)(b.body));
                   },
                   [&](const Ti<C>& t) {
                     BranchMap<Expr<C>> out;
                     for (const auto& [k, b] : t.branches) out.emplace(k, (*this)(b));
                     return T::ti((*this)(t.history), std::move(out));
                   },
                   [&](const TLam<C>& l) {
                     return T::lam(l.var, (*this)(l.annot), stops(VarKind::simple, l.var) ? l.inner : (*this)(l.inner));
                   },
                   [&](const TApp<C>& a) { return T::app((*this)(a.left), (*this)(a.right)); },
                   [&](const TLet<C>& l) {
                     return T::let((*this)(l.left), l.var, (*this)(l.annot),
                                   stops(VarKind::audited, l.var) ? l.right : (*this)(l.right));
                   },
                   [&](const Trpl<C>& t) {
                     BranchMap<TrailOf<C>> out;
                     for (const auto& [k, b] : t.branches) out.emplace(k, (*this)(b));
                     return T::trpl(std::move(out));
                   }},
        q->node);
  }
};

}  // namespace detail

template <class X>
X rename(const X& x, VarKind kind, const std::string& from, const std::string& to) {
  if (from == to) return x;
  return detail::Renamer{kind, from, to}(x);
}

// ---------------------------------------------------------------------------
// Alpha-equivalence

namespace detail {

class AlphaEq {
 public:
  bool eq(const Type& x, const Type& y) {
    if (x == y && closed_scope()) return true;
    return std::visit(
        overloaded{[&](const TypeAtom& a, const TypeAtom& b) { return a.name == b.name; },
                   [&](const TypeArrow& a, const TypeArrow& b) { return eq(a.dom, b.dom) && eq(a.cod, b.cod); },
                   [&](const TypeAudited& a, const TypeAudited& b) { return eq(a.code, b.code) && eq(a.body, b.body); },
                   [](const auto&, const auto&) { return false; }},
        x->node, y->node);
  }

  bool eq(const HsType& x, const HsType& y) {
    return std::visit(overloaded{[&](const HsTypeAtom& a, const HsTypeAtom& b) { return a.name == b.name; },
                                 [&](const HsTypeArrow& a, const HsTypeArrow& b) {
                                   return eq(a.dom, b.dom) && eq(a.cod, b.cod);
                                 },
                                 [&](const HsTypeBox& a, const HsTypeBox& b) { return eq(a.body, b.body); },
                                 [](const auto&, const auto&) { return false; }},
                      x->node, y->node);
  }

  template <class Tag>
  bool eq(const Expr<Tag>& x, const Expr<Tag>& y) {
    if (x == y && closed_scope()) return true;
    return std::visit(
        overloaded{[&](const Var<Tag>& a, const Var<Tag>& b) { return var_eq(simple_, a.name, b.name); },
                   [&](const AVar<Tag>& a, const AVar<Tag>& b) { return var_eq(audited_, a.name, b.name); },
                   [&](const Lam<Tag>& a, const Lam<Tag>& b) {
                     return eq(a.annot, b.annot) && under(simple_, a.var, b.var, [&] { return eq(a.body, b.body); });
                   },
                   [&](const App<Tag>& a, const App<Tag>& b) { return eq(a.fun, b.fun) && eq(a.arg, b.arg); },
                   [&](const Bang<Tag>& a, const Bang<Tag>& b) {
                     if constexpr (Tag::has_trail) {
                       if (!eq(a.trail, b.trail)) return false;
                     }
                     return eq(a.body, b.body);
                   },
                   [&](const Let<Tag>& a, const Let<Tag>& b) {
                     return eq(a.annot, b.annot) && eq(a.bound, b.bound) &&
                            under(audited_, a.var, b.var, [&] { return eq(a.body, b.body); });
                   },
                   [&](const Inspect<Tag>& a, const Inspect<Tag>& b) { return maps_eq(a.branches, b.branches); },
                   [](const auto&, const auto&) { return false; }},
        x->node, y->node);
  }

  template <class C>
  bool eq(const TrailOf<C>& x, const TrailOf<C>& y) {
    if (x == y && closed_scope()) return true;
    return std::visit(
        overloaded{
            [&](const Refl<C>& a, const Refl<C>& b) { return eq(a.subject, b.subject); },
            [&](const Trans<C>& a, const Trans<C>& b) { return eq(a.first, b.first) && eq(a.second, b.second); },
            [&](const Ba<C>& a, const Ba<C>& b) {
              return eq(a.annot, b.annot) && eq(a.arg, b.arg) &&
                     under(simple_, a.var, b.var, [&] { return eq(a.body, b.body); });
            },
            [&](const Bb<C>& a, const Bb<C>& b) {
              return eq(a.bound, b.bound) && eq(a.annot, b.annot) &&
                     under(audited_, a.var, b.var, [&] { return eq(a.body, b.body); });
            },
            [&](const Ti<C>& a, const Ti<C>& b) { return eq(a.history, b.history) && maps_eq(a.branches, b.branches); },
            [&](const TLam<C>& a, const TLam<C>& b) {
              return eq(a.annot, b.annot) && under(simple_, a.var, b.var, [&] { return eq(a.inner, b.inner); });
            },
            [&](const TApp<C>& a, const TApp<C>& b) { return eq(a.left, b.left) && eq(a.right, b.right); },
            [&](const TLet<C>& a, const TLet<C>& b) {
              return eq(a.left, b.left) && eq(a.annot, b.annot) &&
                     under(audited_, a.var, b.var, [&] { return eq(a.right, b.right); });
            },
            [&](const Trpl<C>& a, const Trpl<C>& b) { return maps_eq(a.branches, b.branches); },
            [](const auto&, const auto&) { return false; }},
        x->node, y->node);
  }

 private:
  using Scope = std::vector<std::pair<std::string, std::string>>;
  Scope simple_, audited_;

  // Pointer equality implies alpha-equality only when no binder renaming
  // is pending, i.e. every enclosing binder pair used the same name.
  bool closed_scope() const {
    for (const auto& [a, b] : simple_)
      if (a != b) return false;
    for (const auto& [a, b] : audited_)
      if (a != b) return false;
    return true;
  }

  static bool var_eq(const Scope& s, const std::string& x, const std::string& y) {
    for (auto it = s.rbegin(); it != s.rend(); ++it) {
      bool lx = it->first == x, ry = it->second == y;
      if (lx || ry) return lx && ry;
    }
    return x == y;
  }

  template <class F>
  bool under(Scope& s, const std::string& a, const std::string& b, F&& f) {
    s.emplace_back(a, b);
    bool r = f();
    s.pop_back();
    return r;
  }

  template <class T>
  bool maps_eq(const BranchMap<T>& a, const BranchMap<T>& b) {
    if (a.size() != b.size()) return false;
    for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib) {
      if (ia->first != ib->first || !eq(ia->second, ib->second)) return false;
    }
    return true;
  }
};

}  // namespace detail

template <class X>
bool alpha_eq(const X& x, const X& y) {
  return detail::AlphaEq{}.eq(x, y);
}

}  // namespace lhc
