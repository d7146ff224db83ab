#pragma once

// Abstract syntax of the history-aware calculus and of its trail-free
// simplification.
//
// Codes, terms and simplified terms share one node template, Expr<Tag>.
// The tag fixes the type annotation carried by binders and whether a bang
// records a trail. Trails are parameterised by the tag of the codes they
// relate. All nodes are immutable and shared.

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace lhc {

template <class... F>
struct overloaded : F... {
  using F::operator()...;
};
template <class... F>
overloaded(F...) -> overloaded<F...>;

// ---------------------------------------------------------------------------
// Inspection branch labels

enum class Label : std::uint8_t {
  refl,
  trans,
  ba,
  bb,
  ti,
  lam,
  app,
  let,
  trpl_nil,
  trpl_cons,
  default_,
};

inline constexpr std::array<Label, 11> kAllLabels{
    Label::refl, Label::trans, Label::ba,       Label::bb,        Label::ti,      Label::lam,
    Label::app,  Label::let,   Label::trpl_nil, Label::trpl_cons, Label::default_};

inline std::string_view label_name(Label l) {
  switch (l) {
    case Label::refl: return "refl";
    case Label::trans: return "trans";
    case Label::ba: return "ba";
    case Label::bb: return "bb";
    case Label::ti: return "ti";
    case Label::lam: return "lam";
    case Label::app: return "app";
    case Label::let: return "let";
    case Label::trpl_nil: return "trpl0";
    case Label::trpl_cons: return "trpl1";
    case Label::default_: return "_";
  }
  return "?";
}

inline std::optional<Label> label_from_name(std::string_view s) {
  for (Label l : kAllLabels) {
    if (label_name(l) == s) return l;
  }
  return std::nullopt;
}

/// Finite map from labels to payloads. std::map iterates in enumeration
/// order, which fixes printing and folding order.
template <class T>
using BranchMap = std::map<Label, T>;

// ---------------------------------------------------------------------------
// Node declarations

struct TypeNode;
struct HsTypeNode;
using Type = std::shared_ptr<const TypeNode>;
using HsType = std::shared_ptr<const HsTypeNode>;

struct CodeTag {
  using Annot = Type;
  static constexpr bool has_trail = false;
};
struct TermTag {
  using Annot = Type;
  static constexpr bool has_trail = true;
};
struct HsTag {
  using Annot = HsType;
  static constexpr bool has_trail = false;
};

template <class Tag>
struct ExprNode;
template <class Tag>
using Expr = std::shared_ptr<const ExprNode<Tag>>;

using Code = Expr<CodeTag>;
using Term = Expr<TermTag>;
using HsTerm = Expr<HsTag>;

template <class C>
struct TrailNode;
template <class C>
using TrailOf = std::shared_ptr<const TrailNode<C>>;

using Trail = TrailOf<CodeTag>;
using HsTrail = TrailOf<HsTag>;

// Types ----------------------------------------------------------------------

struct TypeAtom {
  std::string name;
};
struct TypeArrow {
  Type dom, cod;
};
struct TypeAudited {
  Code code;
  Type body;
};
struct TypeNode {
  std::variant<TypeAtom, TypeArrow, TypeAudited> node;
};

struct HsTypeAtom {
  std::string name;
};
struct HsTypeArrow {
  HsType dom, cod;
};
struct HsTypeBox {
  HsType body;
};
struct HsTypeNode {
  std::variant<HsTypeAtom, HsTypeArrow, HsTypeBox> node;
};

// Codes / terms --------------------------------------------------------------

template <class Tag>
struct Var {
  std::string name;
};
template <class Tag>
struct AVar {
  std::string name;
};
template <class Tag>
struct Lam {
  std::string var;
  typename Tag::Annot annot;
  Expr<Tag> body;
};
template <class Tag>
struct App {
  Expr<Tag> fun, arg;
};
template <class Tag, bool = Tag::has_trail>
struct Bang {
  Expr<Tag> body;
};
template <class Tag>
struct Bang<Tag, true> {
  Trail trail;
  Expr<Tag> body;
};
template <class Tag>
struct Let {
  std::string var;
  typename Tag::Annot annot;
  Expr<Tag> bound, body;
};
template <class Tag>
struct Inspect {
  BranchMap<Expr<Tag>> branches;
};

template <class Tag>
struct ExprNode {
  std::variant<Var<Tag>, AVar<Tag>, Lam<Tag>, App<Tag>, Bang<Tag>, Let<Tag>, Inspect<Tag>> node;
};

// Trails ---------------------------------------------------------------------

template <class C>
struct Refl {
  Expr<C> subject;
};
template <class C>
struct Trans {
  TrailOf<C> first, second;
};
template <class C>
struct Ba {
  std::string var;
  typename C::Annot annot;
  Expr<C> body, arg;
};
template <class C>
struct Bb {
  Expr<C> bound;
  std::string var;
  typename C::Annot annot;
  Expr<C> body;
};
template <class C>
struct Ti {
  TrailOf<C> history;
  BranchMap<Expr<C>> branches;
};
template <class C>
struct TLam {
  std::string var;
  typename C::Annot annot;
  TrailOf<C> inner;
};
template <class C>
struct TApp {
  TrailOf<C> left, right;
};
template <class C>
struct TLet {
  TrailOf<C> left;
  std::string var;
  typename C::Annot annot;
  TrailOf<C> right;
};
template <class C>
struct Trpl {
  BranchMap<TrailOf<C>> branches;
};

template <class C>
struct TrailNode {
  std::variant<Refl<C>, Trans<C>, Ba<C>, Bb<C>, Ti<C>, TLam<C>, TApp<C>, TLet<C>, Trpl<C>> node;
};

/// Typed view of a node alternative; nullptr when the node is another variant.
template <class Alt, class N>
const Alt* as(const std::shared_ptr<const N>& p) {
  return std::get_if<Alt>(&p->node);
}

// ---------------------------------------------------------------------------
// Builders

struct ty {
  static Type atom(std::string name) {
    return std::make_shared<const TypeNode>(TypeNode{TypeAtom{std::move(name)}});
  }
  static Type arrow(Type dom, Type cod) {
    return std::make_shared<const TypeNode>(TypeNode{TypeArrow{std::move(dom), std::move(cod)}});
  }
  static Type audited(Code code, Type body) {
    return std::make_shared<const TypeNode>(TypeNode{TypeAudited{std::move(code), std::move(body)}});
  }
};

struct hty {
  static HsType atom(std::string name) {
    return std::make_shared<const HsTypeNode>(HsTypeNode{HsTypeAtom{std::move(name)}});
  }
  static HsType arrow(HsType dom, HsType cod) {
    return std::make_shared<const HsTypeNode>(HsTypeNode{HsTypeArrow{std::move(dom), std::move(cod)}});
  }
  static HsType box(HsType body) {
    return std::make_shared<const HsTypeNode>(HsTypeNode{HsTypeBox{std::move(body)}});
  }
};

template <class Tag>
struct Make {
  using E = Expr<Tag>;
  using A = typename Tag::Annot;

  template <class Alt>
  static E node(Alt alt) {
    return std::make_shared<const ExprNode<Tag>>(ExprNode<Tag>{std::move(alt)});
  }
  static E var(std::string name) { return node(Var<Tag>{std::move(name)}); }
  static E avar(std::string name) { return node(AVar<Tag>{std::move(name)}); }
  static E lam(std::string v, A annot, E body) {
    return node(Lam<Tag>{std::move(v), std::move(annot), std::move(body)});
  }
  static E app(E fun, E arg) { return node(App<Tag>{std::move(fun), std::move(arg)}); }
  template <class... Rest>
  static E apps(E fun, E arg, Rest... rest) {
    E out = app(std::move(fun), std::move(arg));
    ((out = app(out, std::move(rest))), ...);
    return out;
  }
  static E bang(E body)
    requires(!Tag::has_trail)
  {
    return node(Bang<Tag>{std::move(body)});
  }
  static E bang(Trail q, E body)
    requires(Tag::has_trail)
  {
    return node(Bang<Tag>{std::move(q), std::move(body)});
  }
  static E let(std::string v, A annot, E bound, E body) {
    return node(Let<Tag>{std::move(v), std::move(annot), std::move(bound), std::move(body)});
  }
  static E inspect(BranchMap<E> branches) { return node(Inspect<Tag>{std::move(branches)}); }
};

using code = Make<CodeTag>;
using term = Make<TermTag>;
using hs = Make<HsTag>;

template <class C>
struct MakeTrail {
  using Q = TrailOf<C>;
  using E = Expr<C>;
  using A = typename C::Annot;

  template <class Alt>
  static Q node(Alt alt) {
    return std::make_shared<const TrailNode<C>>(TrailNode<C>{std::move(alt)});
  }
  static Q refl(E s) { return node(Refl<C>{std::move(s)}); }
  static Q trans(Q a, Q b) { return node(Trans<C>{std::move(a), std::move(b)}); }
  static Q ba(std::string v, A annot, E body, E arg) {
    return node(Ba<C>{std::move(v), std::move(annot), std::move(body), std::move(arg)});
  }
  static Q bb(E bound, std::string v, A annot, E body) {
    return node(Bb<C>{std::move(bound), std::move(v), std::move(annot), std::move(body)});
  }
  static Q ti(Q history, BranchMap<E> branches) { return node(Ti<C>{std::move(history), std::move(branches)}); }
  static Q lam(std::string v, A annot, Q inner) {
    return node(TLam<C>{std::move(v), std::move(annot), std::move(inner)});
  }
  static Q app(Q a, Q b) { return node(TApp<C>{std::move(a), std::move(b)}); }
  static Q let(Q left, std::string v, A annot, Q right) {
    return node(TLet<C>{std::move(left), std::move(v), std::move(annot), std::move(right)});
  }
  static Q trpl(BranchMap<Q> branches) { return node(Trpl<C>{std::move(branches)}); }
};

using trail = MakeTrail<CodeTag>;
using hs_trail = MakeTrail<HsTag>;

// ---------------------------------------------------------------------------
// Contexts

template <class T>
struct Binding {
  std::string name;
  T type;
};

/// Typing contexts: audited declarations (Delta) and simple ones (Gamma).
/// Lookup is rightmost-first.
template <class T>
struct ContextsOf {
  std::vector<Binding<T>> audited;
  std::vector<Binding<T>> simple;

  static const T* find(const std::vector<Binding<T>>& ctx, std::string_view name) {
    for (auto it = ctx.rbegin(); it != ctx.rend(); ++it) {
      if (it->name == name) return &it->type;
    }
    return nullptr;
  }
  const T* find_simple(std::string_view n) const { return find(simple, n); }
  const T* find_audited(std::string_view n) const { return find(audited, n); }

  ContextsOf with_simple(std::string n, T t) const {
    ContextsOf c = *this;
    c.simple.push_back({std::move(n), std::move(t)});
    return c;
  }
  ContextsOf with_audited(std::string n, T t) const {
    ContextsOf c = *this;
    c.audited.push_back({std::move(n), std::move(t)});
    return c;
  }
  /// Same audited context, empty simple context.
  ContextsOf boxed() const { return ContextsOf{audited, {}}; }
};

using Contexts = ContextsOf<Type>;
using HsContexts = ContextsOf<HsType>;

}  // namespace lhc
