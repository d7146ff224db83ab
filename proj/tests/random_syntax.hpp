#pragma once

// Random, not necessarily well-typed, syntax for round-trip and
// equivalence properties. Names come from small pools so that capture and
// shadowing actually happen.

#include <random>

#include "lhc/lhc.hpp"

namespace lhc::test {

class RandomSyntax {
 public:
  explicit RandomSyntax(std::uint64_t seed) : rng_(seed) {}

  Type type(int depth) {
    int k = pick(depth <= 0 ? 2 : 4);
    if (k == 0) return ty::atom("P");
    if (k == 1) return ty::atom("Q");
    if (k == 2) return ty::arrow(type(depth - 1), type(depth - 1));
    return ty::audited(code(depth - 1), type(depth - 1));
  }

  Code code(int depth) { return expr<CodeTag>(depth); }
  Term term(int depth) { return expr<TermTag>(depth); }

  Trail trail(int depth) {
    int k = pick(depth <= 0 ? 1 : 9);
    switch (k) {
      case 0: return trail::refl(code(depth - 1));
      case 1: return trail::trans(trail(depth - 1), trail(depth - 1));
      case 2: return trail::ba(simple(), type(0), code(depth - 1), code(depth - 1));
      case 3: return trail::bb(code(depth - 1), audited(), type(0), code(depth - 1));
      case 4: return trail::ti(trail(depth - 1), branches<CodeTag>(depth - 1));
      case 5: return trail::lam(simple(), type(0), trail(depth - 1));
      case 6: return trail::app(trail(depth - 1), trail(depth - 1));
      case 7: return trail::let(trail(depth - 1), audited(), type(0), trail(depth - 1));
      default: {
        BranchMap<Trail> m;
        for (Label l : kAllLabels)
          if (pick(4) == 0) m.emplace(l, trail(depth - 1));
        return trail::trpl(std::move(m));
      }
    }
  }

 private:
  std::mt19937_64 rng_;

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  std::string simple() { return std::string(1, "abxyf"[pick(5)]); }
  std::string audited() { return std::string(1, "uvw"[pick(3)]); }

  template <class Tag>
  BranchMap<Expr<Tag>> branches(int depth) {
    BranchMap<Expr<Tag>> m;
    for (Label l : kAllLabels)
      if (pick(3) == 0) m.emplace(l, expr<Tag>(depth));
    if (pick(4) != 0) m.emplace(Label::default_, expr<Tag>(depth));
    return m;
  }

  template <class Tag>
  Expr<Tag> expr(int depth) {
    using M = Make<Tag>;
    int k = pick(depth <= 0 ? 2 : 7);
    switch (k) {
      case 0: return M::var(simple());
      case 1: return M::avar(audited());
      case 2: return M::lam(simple(), type(depth - 2), expr<Tag>(depth - 1));
      case 3: return M::app(expr<Tag>(depth - 1), expr<Tag>(depth - 1));
      case 4:
        if constexpr (Tag::has_trail)
          return M::bang(trail(depth - 1), expr<Tag>(depth - 1));
        else
          return M::bang(expr<Tag>(depth - 1));
      case 5: return M::let(audited(), type(depth - 2), expr<Tag>(depth - 1), expr<Tag>(depth - 1));
      default: return M::inspect(branches<Tag>(depth - 1));
    }
  }
};

}  // namespace lhc::test
