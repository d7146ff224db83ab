#pragma once

// Exhaustive, type-directed enumeration of well-typed codes and trails by
// size, for the property suites and `lhc enumerate`.
//
// Size counts syntax nodes of codes and trails (types are free). Binders are
// named canonically (x<k> for the k-th simple variable in scope, u<k> for
// audited ones), so each alpha-class is produced once. The fragment is fixed
// by GenConfig: lambda and let annotations range over `annotations`, and
// inspections use the branch-label sets in `label_sets`.

#include <algorithm>
#include <map>
#include <random>
#include <unordered_map>

#include "lhc/pretty.hpp"
#include "lhc/typing.hpp"

namespace lhc {

template <class Tag>
std::size_t code_size(const Expr<Tag>& e);

template <class C>
std::size_t trail_total_size(const TrailOf<C>& q);

namespace detail {

template <class X>
std::size_t map_size(const BranchMap<X>& m) {
  std::size_t n = 0;
  for (const auto& [k, b] : m) {
    if constexpr (std::is_same_v<X, Trail> || std::is_same_v<X, HsTrail>) {
      n += trail_total_size(b);
    } else {
      n += code_size(b);
    }
  }
  return n;
}

}  // namespace detail

/// Node count of a code or term; trails on term bangs are not counted.
template <class Tag>
std::size_t code_size(const Expr<Tag>& e) {
  return std::visit(overloaded{[](const Var<Tag>&) -> std::size_t { return 1; },
                               [](const AVar<Tag>&) -> std::size_t { return 1; },
                               [](const Lam<Tag>& l) { return 1 + code_size(l.body); },
                               [](const App<Tag>& a) { return 1 + code_size(a.fun) + code_size(a.arg); },
                               [](const Bang<Tag>& b) { return 1 + code_size(b.body); },
                               [](const Let<Tag>& l) { return 1 + code_size(l.bound) + code_size(l.body); },
                               [](const Inspect<Tag>& i) { return 1 + detail::map_size(i.branches); }},
                    e->node);
}

/// Node count of a trail including its embedded codes.
template <class C>
std::size_t trail_total_size(const TrailOf<C>& q) {
  return std::visit(overloaded{[](const Refl<C>& r) { return 1 + code_size(r.subject); },
                               [](const Trans<C>& t) { return 1 + trail_total_size(t.first) + trail_total_size(t.second); },
                               [](const Ba<C>& b) { return 1 + code_size(b.body) + code_size(b.arg); },
                               [](const Bb<C>& b) { return 1 + code_size(b.bound) + code_size(b.body); },
                               [](const Ti<C>& t) { return 1 + trail_total_size(t.history) + detail::map_size(t.branches); },
                               [](const TLam<C>& l) { return 1 + trail_total_size(l.inner); },
                               [](const TApp<C>& a) { return 1 + trail_total_size(a.left) + trail_total_size(a.right); },
                               [](const TLet<C>& l) { return 1 + trail_total_size(l.left) + trail_total_size(l.right); },
                               [](const Trpl<C>& t) { return 1 + detail::map_size(t.branches); }},
                    q->node);
}

struct GenConfig {
  std::vector<Type> annotations{ty::atom("P"), ty::arrow(ty::atom("P"), ty::atom("P"))};
  std::vector<std::vector<Label>> label_sets{{Label::default_},
                                             {Label::refl, Label::default_},
                                             {Label::ba, Label::default_},
                                             {Label::lam, Label::default_},
                                             {Label::trans, Label::default_}};
};

struct TypedCode {
  Code code;
  Type type;
};

struct TypedTrail {
  Trail trail;
  TrailTypeResult judgment;
};

namespace detail {

inline std::string context_key(const Contexts& cx) {
  std::string k;
  // Names matter: generated codes mention the context's own variables.
  for (const auto& b : cx.audited) k += b.name + ":" + canonical_key(b.type) + ";";
  k += "|";
  for (const auto& b : cx.simple) k += b.name + ":" + canonical_key(b.type) + ";";
  return k;
}

inline std::string simple_name(const Contexts& cx) { return "x" + std::to_string(cx.simple.size()); }
inline std::string audited_name(const Contexts& cx) { return "u" + std::to_string(cx.audited.size()); }

}  // namespace detail

/// Memoized enumeration of well-typed codes of an exact size under given
/// contexts. Not thread-safe; use one generator per thread.
class CodeGenerator {
 public:
  explicit CodeGenerator(GenConfig cfg = {}) : cfg_(std::move(cfg)) {}

  const GenConfig& config() const { return cfg_; }

  const std::vector<TypedCode>& codes(const Contexts& cx, std::size_t n) {
    auto key = std::make_pair(detail::context_key(cx), n);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<TypedCode> out = build(cx, n);
    return memo_.emplace(std::move(key), std::move(out)).first->second;
  }

  std::vector<TypedCode> codes_up_to(const Contexts& cx, std::size_t max) {
    std::vector<TypedCode> out;
    for (std::size_t n = 1; n <= max; ++n) {
      const auto& c = codes(cx, n);
      out.insert(out.end(), c.begin(), c.end());
    }
    return out;
  }

  /// Branch maps over one of the configured label sets with total size n,
  /// typed under `boxed` (simple context already emptied). Yields the map
  /// and its result type.
  template <class F>
  void branch_maps(const Contexts& boxed, std::size_t n, F&& yield) {
    for (const auto& labels : cfg_.label_sets) {
      if (labels.size() == 1) {
        for (const auto& d : codes(boxed, n)) yield(BranchMap<Code>{{labels[0], d.code}}, d.type);
        continue;
      }
      // Exactly one non-default label besides the default.
      Label other = labels[0] == Label::default_ ? labels[1] : labels[0];
      for (std::size_t i = 1; i < n; ++i) {
        const auto& ds = codes(boxed, i);
        const auto& os = codes(boxed, n - i);
        for (const auto& d : ds) {
          Type want = ttable(other, d.type);
          for (const auto& o : os)
            if (alpha_eq(o.type, want)) yield(BranchMap<Code>{{other, o.code}, {Label::default_, d.code}}, d.type);
        }
      }
    }
  }

 private:
  GenConfig cfg_;
  std::map<std::pair<std::string, std::size_t>, std::vector<TypedCode>> memo_;

  std::vector<TypedCode> build(const Contexts& cx, std::size_t n) {
    std::vector<TypedCode> out;
    if (n == 0) return out;
    if (n == 1) {
      for (const auto& b : cx.simple)
        if (cx.find_simple(b.name) == &b.type) out.push_back({code::var(b.name), b.type});
      for (const auto& b : cx.audited)
        if (cx.find_audited(b.name) == &b.type) out.push_back({code::avar(b.name), b.type});
      return out;
    }
    // Lambdas.
    for (const auto& a : cfg_.annotations) {
      std::string x = detail::simple_name(cx);
      for (const auto& body : codes(cx.with_simple(x, a), n - 1))
        out.push_back({code::lam(x, a, body.code), ty::arrow(a, body.type)});
    }
    // Applications.
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const auto& fs = codes(cx, i);
      const auto& xs = codes(cx, n - 1 - i);
      for (const auto& f : fs) {
        auto* arr = as<TypeArrow>(f.type);
        if (!arr) continue;
        for (const auto& x : xs)
          if (alpha_eq(arr->dom, x.type)) out.push_back({code::app(f.code, x.code), arr->cod});
      }
    }
    // Bangs.
    for (const auto& body : codes(cx.boxed(), n - 1))
      out.push_back({code::bang(body.code), ty::audited(body.code, body.type)});
    // Lets.
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const auto& bs = codes(cx, i);
      for (const auto& b : bs) {
        auto* au = as<TypeAudited>(b.type);
        if (!au) continue;
        for (const auto& a : cfg_.annotations) {
          if (!alpha_eq(a, au->body)) continue;
          std::string u = detail::audited_name(cx);
          for (const auto& body : codes(cx.with_audited(u, a), n - 1 - i))
            out.push_back({code::let(u, a, b.code, body.code), subst_audited(body.type, u, au->code)});
        }
      }
    }
    // Inspections.
    branch_maps(cx.boxed(), n - 1, [&](BranchMap<Code> m, const Type& b) {
      out.push_back({code::inspect(std::move(m)), b});
    });
    return out;
  }
};

/// Memoized enumeration of well-typed trails of an exact total size,
/// following the trail typing rules. Not thread-safe.
class TrailGenerator {
 public:
  explicit TrailGenerator(CodeGenerator& codes) : codes_(codes) {}

  const std::vector<TypedTrail>& trails(const Contexts& cx, std::size_t n) {
    auto key = std::make_pair(detail::context_key(cx), n);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<TypedTrail> out = build(cx, n);
    return memo_.emplace(std::move(key), std::move(out)).first->second;
  }

 private:
  CodeGenerator& codes_;
  std::map<std::pair<std::string, std::size_t>, std::vector<TypedTrail>> memo_;
  // Trails of a given context and size indexed by canonical source.
  std::map<std::pair<std::string, std::size_t>, std::unordered_multimap<std::string, std::size_t>> by_source_;

  const std::unordered_multimap<std::string, std::size_t>& index(const Contexts& cx, std::size_t n) {
    auto key = std::make_pair(detail::context_key(cx), n);
    if (auto it = by_source_.find(key); it != by_source_.end()) return it->second;
    std::unordered_multimap<std::string, std::size_t> idx;
    const auto& ts = trails(cx, n);
    for (std::size_t i = 0; i < ts.size(); ++i) idx.emplace(canonical_key(ts[i].judgment.source), i);
    return by_source_.emplace(std::move(key), std::move(idx)).first->second;
  }

  std::vector<TypedTrail> build(const Contexts& cx, std::size_t n) {
    std::vector<TypedTrail> out;
    if (n < 2) return out;
    const auto& annots = codes_.config().annotations;
    // refl(s)
    for (const auto& s : codes_.codes(cx, n - 1)) out.push_back({trail::refl(s.code), {s.code, s.code, s.type}});
    // trans(q1, q2)
    for (std::size_t i = 2; i + 2 < n; ++i) {
      const auto& firsts = trails(cx, i);
      const auto& seconds = trails(cx, n - 1 - i);
      const auto& idx = index(cx, n - 1 - i);
      for (const auto& a : firsts) {
        auto range = idx.equal_range(canonical_key(a.judgment.target));
        for (auto it = range.first; it != range.second; ++it) {
          const auto& b = seconds[it->second];
          if (!alpha_eq(a.judgment.type, b.judgment.type)) continue;
          out.push_back({trail::trans(a.trail, b.trail), {a.judgment.source, b.judgment.target, a.judgment.type}});
        }
      }
    }
    // ba(x:A. s, t)
    for (const auto& a : annots) {
      std::string x = detail::simple_name(cx);
      for (std::size_t i = 1; i + 1 < n; ++i) {
        for (const auto& s : codes_.codes(cx.with_simple(x, a), i))
          for (const auto& t : codes_.codes(cx, n - 1 - i))
            if (alpha_eq(t.type, a))
              out.push_back({trail::ba(x, a, s.code, t.code),
                             {code::app(code::lam(x, a, s.code), t.code), subst_simple(s.code, x, t.code), s.type}});
      }
    }
    // bb(s, u:A. t)
    for (const auto& a : annots) {
      std::string u = detail::audited_name(cx);
      for (std::size_t i = 1; i + 1 < n; ++i) {
        for (const auto& s : codes_.codes(cx.boxed(), i)) {
          if (!alpha_eq(s.type, a)) continue;
          for (const auto& t : codes_.codes(cx.with_audited(u, a), n - 1 - i))
            out.push_back({trail::bb(s.code, u, a, t.code),
                           {code::let(u, a, code::bang(s.code), t.code), subst_audited(t.code, u, s.code),
                            subst_audited(t.type, u, s.code)}});
        }
      }
    }
    // ti(q, θ)
    for (std::size_t i = 2; i + 1 < n; ++i) {
      for (const auto& h : trails(cx.boxed(), i)) {
        codes_.branch_maps(cx.boxed(), n - 1 - i, [&](BranchMap<Code> m, const Type& b) {
          Code target = fold_code(h.trail, m);
          Code source = code::inspect(m);
          out.push_back({trail::ti(h.trail, std::move(m)), {source, target, b}});
        });
      }
    }
    // tlam(x:A. q)
    for (const auto& a : annots) {
      std::string x = detail::simple_name(cx);
      for (const auto& q : trails(cx.with_simple(x, a), n - 1))
        out.push_back({trail::lam(x, a, q.trail),
                       {code::lam(x, a, q.judgment.source), code::lam(x, a, q.judgment.target),
                        ty::arrow(a, q.judgment.type)}});
    }
    // tapp(q1, q2)
    for (std::size_t i = 2; i + 2 < n; ++i) {
      const auto& fs = trails(cx, i);
      const auto& xs = trails(cx, n - 1 - i);
      for (const auto& f : fs) {
        auto* arr = as<TypeArrow>(f.judgment.type);
        if (!arr) continue;
        for (const auto& x : xs)
          if (alpha_eq(arr->dom, x.judgment.type))
            out.push_back({trail::app(f.trail, x.trail),
                           {code::app(f.judgment.source, x.judgment.source),
                            code::app(f.judgment.target, x.judgment.target), arr->cod}});
      }
    }
    // tlet(q1, u:A. q2)
    for (std::size_t i = 2; i + 2 < n; ++i) {
      for (const auto& l : trails(cx, i)) {
        auto* au = as<TypeAudited>(l.judgment.type);
        if (!au) continue;
        for (const auto& a : annots) {
          if (!alpha_eq(a, au->body)) continue;
          std::string u = detail::audited_name(cx);
          for (const auto& r : trails(cx.with_audited(u, a), n - 1 - i))
            out.push_back({trail::let(l.trail, u, a, r.trail),
                           {code::let(u, a, l.judgment.source, r.judgment.source),
                            code::let(u, a, l.judgment.target, r.judgment.target),
                            subst_audited(r.judgment.type, u, au->code)}});
        }
      }
    }
    // trpl(ζ) over the configured label sets.
    for (const auto& labels : codes_.config().label_sets) {
      Contexts in = cx.boxed();
      if (labels.size() == 1) {
        for (const auto& d : trails(in, n - 1))
          out.push_back({trail::trpl({{labels[0], d.trail}}),
                         {code::inspect({{labels[0], d.judgment.source}}),
                          code::inspect({{labels[0], d.judgment.target}}), d.judgment.type}});
        continue;
      }
      Label other = labels[0] == Label::default_ ? labels[1] : labels[0];
      for (std::size_t i = 2; i + 2 < n; ++i) {
        for (const auto& d : trails(in, i)) {
          Type want = ttable(other, d.judgment.type);
          for (const auto& o : trails(in, n - 1 - i)) {
            if (!alpha_eq(o.judgment.type, want)) continue;
            BranchMap<Trail> z{{other, o.trail}, {Label::default_, d.trail}};
            BranchMap<Code> s{{other, o.judgment.source}, {Label::default_, d.judgment.source}};
            BranchMap<Code> t{{other, o.judgment.target}, {Label::default_, d.judgment.target}};
            out.push_back({trail::trpl(std::move(z)), {code::inspect(std::move(s)), code::inspect(std::move(t)),
                                                       d.judgment.type}});
          }
        }
      }
    }
    return out;
  }
};

/// Every well-typed closed code of size 1..max_size in the generator's
/// fragment, each alpha-class once. Seed 0 keeps generation order (by size,
/// then construction); other seeds shuffle it deterministically.
inline std::vector<TypedCode> enumerate_closed(std::size_t max_size, std::uint64_t seed = 0, GenConfig cfg = {}) {
  CodeGenerator gen(std::move(cfg));
  auto out = gen.codes_up_to(Contexts{}, max_size);
  if (seed != 0) {
    std::mt19937_64 rng(seed);
    std::shuffle(out.begin(), out.end(), rng);
  }
  return out;
}

}  // namespace lhc
