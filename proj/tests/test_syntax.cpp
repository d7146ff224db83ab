#include <gtest/gtest.h>

#include "random_syntax.hpp"
#include "support.hpp"

using namespace lhc;

namespace {

Type P = ty::atom("P");

TEST(AlphaEq, RenamedBinder) {
  EXPECT_TRUE(alpha_eq(code::lam("a", P, code::var("a")), code::lam("b", P, code::var("b"))));
}

TEST(AlphaEq, DistinctBodies) {
  EXPECT_FALSE(alpha_eq(code::lam("a", P, code::var("a")), code::lam("a", P, code::bang(code::var("a")))));
}

TEST(AlphaEq, RenamingUnderTrailSubject) {
  EXPECT_TRUE(alpha_eq(trail::refl(code::lam("a", P, code::var("a"))), trail::refl(code::lam("c", P, code::var("c")))));
}

TEST(AlphaEq, SimpleAndAuditedNamespacesAreSeparate) {
  // \a. @a is not \b. @b: the audited @a is free in both.
  EXPECT_FALSE(alpha_eq(code::lam("a", P, code::avar("a")), code::lam("b", P, code::avar("b"))));
  EXPECT_TRUE(alpha_eq(code::let("u", P, code::var("s"), code::avar("u")),
                       code::let("v", P, code::var("s"), code::avar("v"))));
}

TEST(AlphaEq, BinderInsideAnnotation) {
  // Types embed codes; binders there are compared up to renaming too.
  Type a = ty::audited(code::lam("a", P, code::var("a")), P);
  Type b = ty::audited(code::lam("z", P, code::var("z")), P);
  EXPECT_TRUE(alpha_eq(a, b));
}

TEST(AlphaEq, FreeNamesMustMatch) {
  EXPECT_FALSE(alpha_eq(code::lam("a", P, code::var("b")), code::lam("a", P, code::var("c"))));
  EXPECT_FALSE(alpha_eq(code::lam("a", P, code::var("b")), code::lam("b", P, code::var("b"))));
}

TEST(FreeVars, LambdaBindsItsVariable) {
  auto fv = free_vars(code::lam("a", P, code::app(code::var("a"), code::var("b"))));
  EXPECT_EQ(fv.simple, (std::set<std::string>{"b"}));
  EXPECT_TRUE(fv.audited.empty());
}

TEST(FreeVars, LetBindsOnlyInBody) {
  auto fv = free_vars(code::let("u", P, code::app(code::var("s"), code::avar("u")), code::avar("u")));
  EXPECT_EQ(fv.simple, (std::set<std::string>{"s"}));
  EXPECT_EQ(fv.audited, (std::set<std::string>{"u"}));  // the occurrence in the bound term
  auto fv2 = free_vars(code::let("u", P, code::var("s"), code::avar("u")));
  EXPECT_TRUE(fv2.audited.empty());
}

TEST(FreeVars, BaBindsInBody) {
  auto fv = free_vars(trail::ba("a", P, code::var("a"), code::var("c")));
  EXPECT_EQ(fv.simple, (std::set<std::string>{"c"}));
  EXPECT_TRUE(fv.audited.empty());
}

TEST(Fresh, Examples) {
  EXPECT_EQ(fresh({"a"}, "a"), "a1");
  EXPECT_EQ(fresh({}, "x"), "x");
  EXPECT_EQ(fresh({"x", "x1"}, "x"), "x2");
}

TEST(Pretty, Examples) {
  EXPECT_EQ(pretty(code::lam("a", P, code::var("a"))), "\\a:P. a");
  EXPECT_EQ(pretty(ty::audited(code::bang(code::lam("a", P, code::var("a"))), ty::atom("N"))), "[!\\a:P. a]N");
  auto s = code::var("s");
  EXPECT_EQ(pretty(trail::trans(trail::refl(s), trail::ba("a", P, code::var("a"), code::var("b")))),
            "trans(refl(s), ba(a:P. a, b))");
}

TEST(Pretty, Precedence) {
  Code f = code::var("f"), x = code::var("x"), y = code::var("y");
  EXPECT_EQ(pretty(code::app(code::app(f, x), y)), "f x y");
  EXPECT_EQ(pretty(code::app(f, code::app(x, y))), "f (x y)");
  EXPECT_EQ(pretty(code::app(code::bang(f), x)), "!f x");
  EXPECT_EQ(pretty(code::bang(code::app(f, x))), "!(f x)");
  EXPECT_EQ(pretty(ty::arrow(ty::arrow(P, P), P)), "(P -> P) -> P");
  EXPECT_EQ(pretty(code::inspect({{Label::trpl_cons, f}, {Label::default_, x}})), "inspect { trpl1 => f; _ => x }");
}

TEST(Pretty, ElidedTrails) {
  Term m = term::bang(trail::refl(code::var("a")), term::var("a"));
  EXPECT_EQ(pretty_elided(m), "![..] a");
  EXPECT_EQ(pretty(m), "![refl(a)] a");
}

// Property: alpha_eq is an equivalence on random syntax, and renaming a bound
// variable consistently preserves it.
TEST(AlphaEqProperty, Equivalence) {
  test::RandomSyntax gen(11);
  std::vector<Code> xs;
  for (int i = 0; i < 300; ++i) xs.push_back(gen.code(3));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    ASSERT_TRUE(alpha_eq(xs[i], xs[i]));
    for (std::size_t j = 0; j < 40; ++j) {
      const Code& a = xs[i];
      const Code& b = xs[(i * 7 + j) % xs.size()];
      ASSERT_EQ(alpha_eq(a, b), alpha_eq(b, a));
      if (!alpha_eq(a, b)) continue;
      for (const auto& c : xs)
        if (alpha_eq(b, c)) ASSERT_TRUE(alpha_eq(a, c));
    }
  }
}

TEST(AlphaEqProperty, CanonicalKeyAgrees) {
  test::RandomSyntax gen(5);
  for (int i = 0; i < 400; ++i) {
    Code a = gen.code(3);
    Code b = gen.code(3);
    ASSERT_EQ(alpha_eq(a, b), canonical_key(a) == canonical_key(b)) << pretty(a) << " / " << pretty(b);
    // Renaming every binder through rename() on a closed lambda keeps the class.
    Code l = code::lam("a", P, a);
    Code r = code::lam("q9", P, rename(a, VarKind::simple, "a", "q9"));
    if (!all_names(a).contains(VarKind::simple, "q9")) ASSERT_TRUE(alpha_eq(l, r)) << pretty(l);
  }
}

// Property: free_vars(s{a:=t}) is within (free_vars(s) - a) + free_vars(t).
TEST(FreeVarsProperty, SubstitutionBound) {
  test::RandomSyntax gen(23);
  for (int i = 0; i < 500; ++i) {
    Code s = gen.code(4), t = gen.code(2);
    for (auto kind : {VarKind::simple, VarKind::audited}) {
      std::string v = kind == VarKind::simple ? "a" : "u";
      Code r = kind == VarKind::simple ? subst_simple(s, v, t) : subst_audited(s, v, t);
      VarSet bound = free_vars(s);
      bool occurs = bound.contains(kind, v);
      // Simple substitution does not enter bangs, so `a` may survive there.
      bool opaque = kind == VarKind::simple && pretty(s).find('!') != std::string::npos;
      if (!opaque) bound.of(kind).erase(v);
      if (occurs) bound.merge(free_vars(t));
      VarSet got = free_vars(r);
      for (auto k : {VarKind::simple, VarKind::audited})
        for (const auto& n : got.of(k)) ASSERT_TRUE(bound.contains(k, n)) << n << " in " << pretty(r);
    }
  }
}

}  // namespace
