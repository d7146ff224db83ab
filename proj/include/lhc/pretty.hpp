#pragma once

// Printing in the concrete syntax accepted by the parser.
//
//   types   P   A -> B   [s]A          (simplified calculus: []A for boxes)
//   codes   x   @u   \x:A. s   s t   !s   let @u:A = s in t
//           inspect { refl => s; _ => t }
//   terms   as codes, with bangs written ![q] M
//   trails  refl(s) trans(q, q) ba(x:A. s, t) bb(s, @u:A. t) ti(q, {...})
//           tlam(x:A. q) tapp(q, q) tlet(q, @u:A. q) trpl({...})
//
// Canonical mode prints bound variables by binding depth (%n), so two
// values print identically iff they are alpha-equivalent.

#include <sstream>
#include <string>

#include "lhc/syntax.hpp"

namespace lhc {

namespace detail {

class Printer {
 public:
  explicit Printer(bool canonical, bool elide_trails = false) : canonical_(canonical), elide_(elide_trails) {}

  std::string str() const { return out_.str(); }

  void type(const Type& t, int prec = 0) {
    std::visit(overloaded{[&](const TypeAtom& a) { out_ << a.name; },
                          [&](const TypeArrow& a) {
                            if (prec > 0) out_ << '(';
                            type(a.dom, 1);
                            out_ << " -> ";
                            type(a.cod, 0);
                            if (prec > 0) out_ << ')';
                          },
                          [&](const TypeAudited& a) {
                            out_ << '[';
                            expr(a.code, 0);
                            out_ << ']';
                            type(a.body, 1);
                          }},
               t->node);
  }

  void type(const HsType& t, int prec = 0) {
    std::visit(overloaded{[&](const HsTypeAtom& a) { out_ << a.name; },
                          [&](const HsTypeArrow& a) {
                            if (prec > 0) out_ << '(';
                            type(a.dom, 1);
                            out_ << " -> ";
                            type(a.cod, 0);
                            if (prec > 0) out_ << ')';
                          },
                          [&](const HsTypeBox& a) {
                            out_ << "[]";
                            type(a.body, 1);
                          }},
               t->node);
  }

  // Levels: 0 anywhere, 1 function position, 2 argument position.
  template <class Tag>
  void expr(const Expr<Tag>& e, int level) {
    std::visit(overloaded{[&](const Var<Tag>& v) { out_ << lookup(simple_, v.name); },
                          [&](const AVar<Tag>& v) { out_ << '@' << lookup(audited_, v.name); },
                          [&](const Lam<Tag>& l) {
                            open(level > 0);
                            out_ << '\\';
                            binder(simple_, l.var, [&] {
                              out_ << ':';
                              type(l.annot);
                              out_ << ". ";
                            }, [&] { expr(l.body, 0); });
                            close(level > 0);
                          },
                          [&](const App<Tag>& a) {
                            open(level > 1);
                            expr(a.fun, 1);
                            out_ << ' ';
                            expr(a.arg, 2);
                            close(level > 1);
                          },
                          [&](const Bang<Tag>& b) {
                            bool wide = open_ended(e);
                            open(wide && level > 0);
                            out_ << '!';
                            if constexpr (Tag::has_trail) {
                              if (elide_) {
                                out_ << "[..] ";
                                expr(b.body, wide ? 0 : 2);
                                close(wide && level > 0);
                                return;
                              }
                              out_ << '[';
                              trail(b.trail);
                              out_ << "] ";
                            }
                            expr(b.body, wide ? 0 : 2);
                            close(wide && level > 0);
                          },
                          [&](const Let<Tag>& l) {
                            open(level > 0);
                            out_ << "let @";
                            // The bound term is outside the binder's scope.
                            std::string name = bind_name(audited_, l.var);
                            out_ << name << ':';
                            type(l.annot);
                            out_ << " = ";
                            expr(l.bound, 0);
                            out_ << " in ";
                            audited_.emplace_back(l.var, name);
                            expr(l.body, 0);
                            audited_.pop_back();
                            close(level > 0);
                          },
                          [&](const Inspect<Tag>& i) {
                            out_ << "inspect ";
                            branches(i.branches);
                          }},
               e->node);
  }

  template <class C>
  void trail(const TrailOf<C>& q) {
    std::visit(overloaded{[&](const Refl<C>& r) {
                            out_ << "refl(";
                            expr(r.subject, 0);
                            out_ << ')';
                          },
                          [&](const Trans<C>& t) { pair("trans", t.first, t.second); },
                          [&](const Ba<C>& b) {
                            out_ << "ba(";
                            binder(simple_, b.var, [&] {
                              out_ << ':';
                              type(b.annot);
                              out_ << ". ";
                            }, [&] { expr(b.body, 0); });
                            out_ << ", ";
                            expr(b.arg, 0);
                            out_ << ')';
                          },
                          [&](const Bb<C>& b) {
                            out_ << "bb(";
                            expr(b.bound, 0);
                            out_ << ", @";
                            binder(audited_, b.var, [&] {
                              out_ << ':';
                              type(b.annot);
                              out_ << ". ";
                            }, [&] { expr(b.body, 0); });
                            out_ << ')';
                          },
                          [&](const Ti<C>& t) {
                            out_ << "ti(";
                            trail(t.history);
                            out_ << ", ";
                            branches(t.branches);
                            out_ << ')';
                          },
                          [&](const TLam<C>& l) {
                            out_ << "tlam(";
                            binder(simple_, l.var, [&] {
                              out_ << ':';
                              type(l.annot);
                              out_ << ". ";
                            }, [&] { trail(l.inner); });
                            out_ << ')';
                          },
                          [&](const TApp<C>& a) { pair("tapp", a.left, a.right); },
                          [&](const TLet<C>& l) {
                            out_ << "tlet(";
                            trail(l.left);
                            out_ << ", @";
                            binder(audited_, l.var, [&] {
                              out_ << ':';
                              type(l.annot);
                              out_ << ". ";
                            }, [&] { trail(l.right); });
                            out_ << ')';
                          },
                          [&](const Trpl<C>& t) {
                            out_ << "trpl(";
                            branches(t.branches);
                            out_ << ')';
                          }},
               q->node);
  }

 private:
  using Scope = std::vector<std::pair<std::string, std::string>>;
  bool canonical_;
  bool elide_;
  std::ostringstream out_;
  Scope simple_, audited_;

  template <class Tag>
  static bool open_ended(const Expr<Tag>& e) {
    if (as<Lam<Tag>>(e) || as<Let<Tag>>(e)) return true;
    if (auto* b = as<Bang<Tag>>(e)) return open_ended(b->body);
    return false;
  }

  void open(bool p) {
    if (p) out_ << '(';
  }
  void close(bool p) {
    if (p) out_ << ')';
  }

  static std::string lookup(const Scope& s, const std::string& n) {
    for (auto it = s.rbegin(); it != s.rend(); ++it)
      if (it->first == n) return it->second;
    return n;
  }

  std::string bind_name(const Scope& s, const std::string& n) const {
    return canonical_ ? "%" + std::to_string(s.size()) : n;
  }

  // Prints `head` (annotation) outside the binder's scope, then `body` in it.
  template <class H, class B>
  void binder(Scope& s, const std::string& n, H&& head, B&& body) {
    std::string name = bind_name(s, n);
    out_ << name;
    head();
    s.emplace_back(n, name);
    body();
    s.pop_back();
  }

  template <class Q>
  void pair(const char* kw, const Q& a, const Q& b) {
    out_ << kw << '(';
    trail(a);
    out_ << ", ";
    trail(b);
    out_ << ')';
  }

  template <class X>
  void branches(const BranchMap<X>& m) {
    out_ << '{';
    bool first = true;
    for (const auto& [k, b] : m) {
      out_ << (first ? " " : "; ") << label_name(k) << " => ";
      print_any(b);
      first = false;
    }
    out_ << (m.empty() ? "}" : " }");
  }

  template <class Tag>
  void print_any(const Expr<Tag>& e) {
    expr(e, 0);
  }
  template <class C>
  void print_any(const TrailOf<C>& q) {
    trail(q);
  }
};

template <class X>
std::string print(const X& x, bool canonical) {
  Printer p(canonical);
  if constexpr (std::is_same_v<X, Type> || std::is_same_v<X, HsType>) {
    p.type(x);
  } else if constexpr (std::is_same_v<X, Trail> || std::is_same_v<X, HsTrail>) {
    p.trail(x);
  } else {
    p.expr(x, 0);
  }
  return p.str();
}

}  // namespace detail

template <class X>
std::string pretty(const X& x) {
  return detail::print(x, false);
}

/// Prints a term with every trail shown as `..`.
inline std::string pretty_elided(const Term& m) {
  detail::Printer p(false, true);
  p.expr(m, 0);
  return p.str();
}

/// Alpha-invariant rendering used as an identity key.
template <class X>
std::string canonical_key(const X& x) {
  return detail::print(x, true);
}

}  // namespace lhc
