#pragma once

// Small-step reduction of bang-rooted terms. Every contraction is recorded
// in the trail of the nearest enclosing bang, at the congruence position
// given by the canonical trail context of the surrounding box-free context.
//
// Positions are paths from the root: bang 0 = body; app 0 = function,
// 1 = argument; lambda 0 = body; let 0 = bound, 1 = body; inspect k = k-th
// branch in label order.

#include <optional>

#include "lhc/errors.hpp"
#include "lhc/term_subst.hpp"

namespace lhc {

using Path = std::vector<int>;

enum class Rule { beta, beta_box, ti };

inline const char* rule_name(Rule r) {
  switch (r) {
    case Rule::beta: return "beta";
    case Rule::beta_box: return "beta_box";
    case Rule::ti: return "ti";
  }
  return "?";
}

struct StepInfo {
  Rule rule;
  Path path;          // position of the contracted redex
  std::size_t depth;  // bangs entered below the root; 0 for root-level steps
  Trail delta;        // Q_F[step trail], appended to the nearest enclosing bang
  Trail history;      // that bang's trail before the step
};

enum class Strategy { cbv, leftmost_outermost, all };

/// Outermost redex shape of a decomposition; `nested` marks a bang in the
/// context that itself admits a step.
enum class RedexKind { beta, beta_box, ti, nested };

struct Decomposition {
  EvalContext context;  // box-free, relative to the root bang
  Term redex;
  RedexKind kind;
  Path path;
};

class FuelExhausted : public Error {
 public:
  FuelExhausted(Term partial, std::vector<StepInfo> steps)
      : Error("fuel exhausted after " + std::to_string(steps.size()) + " steps"),
        partial_(std::move(partial)),
        steps_(std::move(steps)) {}
  const Term& partial() const { return partial_; }
  const std::vector<StepInfo>& steps() const { return steps_; }

 private:
  Term partial_;
  std::vector<StepInfo> steps_;
};

namespace detail {

inline std::optional<RedexKind> redex_kind(const Term& m) {
  if (auto* a = as<App<TermTag>>(m); a && as<Lam<TermTag>>(a->fun)) return RedexKind::beta;
  if (auto* l = as<Let<TermTag>>(m); l && as<Bang<TermTag>>(l->bound)) return RedexKind::beta_box;
  if (as<Inspect<TermTag>>(m)) return RedexKind::ti;
  return std::nullopt;
}

// Immediate subterms with their path component and the frame that leads to
// them. Bangs are handled by the callers.
template <class F>
void for_each_child(const Term& m, F&& f) {
  std::visit(overloaded{[](const Var<TermTag>&) {}, [](const AVar<TermTag>&) {},
                        [&](const Lam<TermTag>& l) { f(0, l.body, Frame{frame::Lambda{l.var, l.annot}}); },
                        [&](const App<TermTag>& a) {
                          f(0, a.fun, Frame{frame::AppFun{a.arg}});
                          f(1, a.arg, Frame{frame::AppArg{a.fun}});
                        },
                        [&](const Bang<TermTag>& b) { f(0, b.body, Frame{frame::Boxed{b.trail}}); },
                        [&](const Let<TermTag>& l) {
                          f(0, l.bound, Frame{frame::LetBound{l.var, l.annot, l.body}});
                          f(1, l.body, Frame{frame::LetBody{l.var, l.annot, l.bound}});
                        },
                        [&](const Inspect<TermTag>& i) {
                          int k = 0;
                          for (const auto& [label, b] : i.branches) {
                            auto rest = i.branches;
                            rest.erase(label);
                            f(k++, b, Frame{frame::Branch{label, std::move(rest)}});
                          }
                        }},
             m->node);
}

inline void collect_paths(const Term& m, Path& at, std::vector<Path>& out) {
  if (redex_kind(m)) out.push_back(at);
  for_each_child(m, [&](int k, const Term& c, const Frame&) {
    at.push_back(k);
    collect_paths(c, at, out);
    at.pop_back();
  });
}

struct Contracted {
  Term term;
  Trail step;  // trail of the contraction alone, before Q_F is applied
  Rule rule;
};

inline Contracted contract(const Term& redex, const Trail& history) {
  if (auto* a = as<App<TermTag>>(redex)) {
    auto* l = as<Lam<TermTag>>(a->fun);
    return {subst_term_simple(l->body, l->var, a->arg),
            trail::ba(l->var, l->annot, code_of(l->body), code_of(a->arg)), Rule::beta};
  }
  if (auto* l = as<Let<TermTag>>(redex)) {
    auto* b = as<Bang<TermTag>>(l->bound);
    Code origin = src(b->trail);
    auto r = subst_term_audited(l->body, AuditedTermSubst{l->var, b->body, b->trail, origin});
    return {r.term, trail::trans(trail::bb(origin, l->var, l->annot, code_of(l->body)), r.trail), Rule::beta_box};
  }
  auto* i = as<Inspect<TermTag>>(redex);
  return {fold_term(history, i->branches), trail::ti(history, code_of(i->branches)), Rule::ti};
}

// Rebuilds `m` with the redex at path[pos..] contracted. `ctx` accumulates
// frames since the nearest enclosing bang, whose trail is `history`.
inline std::pair<Term, StepInfo> step_in(const Term& m, const Path& path, std::size_t pos, const Trail& history,
                                         EvalContext& ctx, int depth) {
  if (pos == path.size()) {
    if (!redex_kind(m)) throw Error("no redex at the given path");
    auto c = contract(m, history);
    Trail delta = plug_trail(canonical_trail_context(ctx), c.step);
    return {c.term, StepInfo{c.rule, path, static_cast<std::size_t>(depth), delta, history}};
  }
  int k = path[pos];
  if (auto* b = as<Bang<TermTag>>(m)) {
    if (k != 0) throw Error("invalid redex path");
    EvalContext inner;
    auto [body, info] = step_in(b->body, path, pos + 1, b->trail, inner, depth + 1);
    Trail trail = info.depth == static_cast<std::size_t>(depth + 1) ? trail::trans(b->trail, info.delta) : b->trail;
    return {term::bang(trail, body), std::move(info)};
  }
  std::optional<std::pair<Term, StepInfo>> result;
  for_each_child(m, [&](int j, const Term& c, const Frame& f) {
    if (j != k || result) return;
    ctx.frames.push_back(f);
    auto [sub, info] = step_in(c, path, pos + 1, history, ctx, depth);
    ctx.frames.pop_back();
    EvalContext one{{f}};
    result.emplace(plug_term(one, sub), std::move(info));
  });
  if (!result) throw Error("invalid redex path");
  return std::move(*result);
}

inline bool is_value(const Term& m) {
  if (as<Var<TermTag>>(m) || as<AVar<TermTag>>(m) || as<Lam<TermTag>>(m)) return true;
  if (auto* b = as<Bang<TermTag>>(m)) return is_value(b->body);
  return false;
}

// Call-by-value: the unique redex reached by evaluating functions, then
// arguments, then let-bound terms to values. Inspections fire as soon as
// they are reached; lambdas are not entered.
inline std::optional<Path> cbv_redex(const Term& m, Path& at) {
  auto descend = [&](int k, const Term& c) {
    at.push_back(k);
    auto r = cbv_redex(c, at);
    at.pop_back();
    return r;
  };
  if (auto* a = as<App<TermTag>>(m)) {
    if (!is_value(a->fun)) return descend(0, a->fun);
    if (!is_value(a->arg)) return descend(1, a->arg);
    if (as<Lam<TermTag>>(a->fun)) return at;
    return std::nullopt;
  }
  if (auto* b = as<Bang<TermTag>>(m)) {
    if (is_value(b->body)) return std::nullopt;
    return descend(0, b->body);
  }
  if (auto* l = as<Let<TermTag>>(m)) {
    if (!is_value(l->bound)) return descend(0, l->bound);
    if (as<Bang<TermTag>>(l->bound)) return at;
    return std::nullopt;
  }
  if (as<Inspect<TermTag>>(m)) return at;
  return std::nullopt;
}

inline const Bang<TermTag>& root_bang(const Term& m) {
  auto* b = as<Bang<TermTag>>(m);
  if (!b) throw NotBangRooted();
  return *b;
}

}  // namespace detail

/// Positions of every redex reachable through box-free contexts, entering
/// nested bangs; outermost first, then left to right.
inline std::vector<Path> redex_paths(const Term& m) {
  detail::root_bang(m);
  std::vector<Path> out;
  Path at;
  detail::collect_paths(m, at, out);
  return out;
}

/// Decompositions body = F[r] of the root bang's body.
inline std::vector<Decomposition> decompose(const Term& m) {
  const auto& root = detail::root_bang(m);
  std::vector<Decomposition> out;
  EvalContext ctx;
  Path at{0};
  auto walk = [&](auto&& self, const Term& t) -> void {
    if (auto k = detail::redex_kind(t)) out.push_back({ctx, t, *k, at});
    if (as<Bang<TermTag>>(t)) {
      if (!redex_paths(t).empty()) out.push_back({ctx, t, RedexKind::nested, at});
      return;
    }
    detail::for_each_child(t, [&](int k, const Term& c, const Frame& f) {
      ctx.frames.push_back(f);
      at.push_back(k);
      self(self, c);
      at.pop_back();
      ctx.frames.pop_back();
    });
  };
  walk(walk, root.body);
  return out;
}

/// Contracts the redex at `path`.
inline std::pair<Term, StepInfo> step_at(const Term& m, const Path& path) {
  detail::root_bang(m);
  EvalContext ctx;
  return detail::step_in(m, path, 0, trail::refl(code::var("_")), ctx, -1);
}

inline std::vector<std::pair<Term, StepInfo>> step_all(const Term& m) {
  std::vector<std::pair<Term, StepInfo>> out;
  for (const auto& p : redex_paths(m)) out.push_back(step_at(m, p));
  return out;
}

inline std::optional<Path> choose_redex(const Term& m, Strategy s) {
  if (s == Strategy::cbv) {
    detail::root_bang(m);
    Path at;
    return detail::cbv_redex(m, at);
  }
  auto paths = redex_paths(m);
  if (paths.empty()) return std::nullopt;
  return paths.front();
}

inline std::optional<std::pair<Term, StepInfo>> step(const Term& m, Strategy s) {
  auto p = choose_redex(m, s);
  if (!p) return std::nullopt;
  return step_at(m, *p);
}

/// No redex anywhere, including under binders, in branches and in nested
/// bangs.
inline bool is_normal(const Term& m) { return redex_paths(m).empty(); }

/// A code is normal when it has no redex at any position.
inline bool is_normal_code(const Code& s) { return is_normal(term::bang(trail::refl(s), code_as_term(s))); }

struct NormalizeResult {
  Term term;
  std::vector<StepInfo> steps;
};

inline NormalizeResult normalize(const Term& m, Strategy s, std::size_t fuel = 10000) {
  NormalizeResult r{m, {}};
  for (;;) {
    auto next = step(r.term, s);
    if (!next) return r;
    if (r.steps.size() == fuel) throw FuelExhausted(r.term, std::move(r.steps));
    r.term = std::move(next->first);
    r.steps.push_back(std::move(next->second));
  }
}

}  // namespace lhc
