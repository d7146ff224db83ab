#include <gtest/gtest.h>

#include "support.hpp"

using namespace lhc;
using test::pc;

namespace {

Type P = ty::atom("P");
Type N = ty::atom("N");
Type PP = ty::arrow(P, P);
Code id_code = code::lam("a", P, code::var("a"));

TypeErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const TypeError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no type error";
  return TypeErrorKind::mismatch;
}

TEST(Ttable, Examples) {
  EXPECT_TRUE(alpha_eq(ttable(Label::refl, N), N));
  EXPECT_TRUE(alpha_eq(ttable(Label::lam, N), ty::arrow(N, N)));
  EXPECT_TRUE(alpha_eq(ttable(Label::trans, N), ty::arrow(N, ty::arrow(N, N))));
  EXPECT_TRUE(alpha_eq(ttable(Label::trpl_cons, N), ty::arrow(N, ty::arrow(N, N))));
  for (Label l : {Label::ba, Label::bb, Label::ti, Label::trpl_nil, Label::default_})
    EXPECT_TRUE(alpha_eq(ttable(l, N), N));
}

TEST(InferCode, Examples) {
  EXPECT_TRUE(alpha_eq(infer_code(id_code), PP));
  EXPECT_TRUE(alpha_eq(infer_code(code::bang(id_code)), ty::audited(id_code, PP)));
  // let @u = !(\a.a) in !@u : [@u](P -> P) with u := \a.a.
  Code s = code::let("u", ty::arrow(P, P), code::bang(id_code), code::bang(code::avar("u")));
  EXPECT_TRUE(alpha_eq(infer_code(s), ty::audited(id_code, PP)));
}

TEST(InferCode, PreludeNumerals) {
  for (int n = 0; n <= 9; ++n) EXPECT_TRUE(alpha_eq(infer_code(pc("c" + std::to_string(n))), test::church_type()));
  Type nn = test::church_type();
  EXPECT_TRUE(alpha_eq(infer_code(pc("plus")), ty::arrow(nn, ty::arrow(nn, nn))));
}

TEST(InferCode, InspectionTakesTypeFromDefault) {
  Code s = code::inspect({{Label::ba, code::avar("u")}, {Label::trans, pc("\\x:P. \\y:P. x")}, {Label::default_, code::avar("u")}});
  Contexts cx = Contexts{}.with_audited("u", P);
  EXPECT_TRUE(alpha_eq(infer_code(cx, s), P));
}

TEST(InferTerm, ReflBang) {
  auto r = infer_term(term::bang(trail::refl(id_code), code_as_term(id_code)));
  EXPECT_TRUE(alpha_eq(r.type, ty::audited(id_code, PP)));
  EXPECT_TRUE(alpha_eq(r.code, code::bang(id_code)));
}

TEST(InferTerm, ReducedPairKeepsOriginalCode) {
  Code original = pc("!(pair c2 c6)");
  Term start = code_as_term(original);
  auto one = step(start, Strategy::leftmost_outermost);
  ASSERT_TRUE(one);
  auto r0 = infer_term(start);
  auto r1 = infer_term(one->first);
  EXPECT_TRUE(alpha_eq(r1.code, original));
  EXPECT_TRUE(alpha_eq(r1.type, r0.type));
  EXPECT_TRUE(alpha_eq(r1.type, ty::audited(as<Bang<CodeTag>>(original)->body, infer_code(pc("pair c2 c6")))));
}

TEST(InferTerm, TrailEndpointMismatch) {
  Term m = term::bang(trail::refl(id_code), term::lam("a", P, term::lam("b", P, term::var("a"))));
  EXPECT_EQ(kind_of([&] { infer_term(m); }), TypeErrorKind::trail_endpoint_mismatch);
}

TEST(InferTrail, Examples) {
  auto r = infer_trail(trail::refl(id_code));
  EXPECT_TRUE(alpha_eq(r.source, id_code));
  EXPECT_TRUE(alpha_eq(r.target, id_code));
  EXPECT_TRUE(alpha_eq(r.type, PP));

  Contexts cx = Contexts{}.with_simple("b", P);
  auto ba = infer_trail(cx, trail::ba("a", P, code::var("a"), code::var("b")));
  EXPECT_TRUE(alpha_eq(ba.source, code::app(id_code, code::var("b"))));
  EXPECT_TRUE(alpha_eq(ba.target, code::var("b")));
  EXPECT_TRUE(alpha_eq(ba.type, P));
}

TEST(InferTrail, TransNeedsMatchingEndpoints) {
  Contexts cx = Contexts{}.with_simple("s", P).with_simple("t", P);
  Trail q = trail::trans(trail::refl(code::var("s")), trail::refl(code::var("t")));
  EXPECT_EQ(kind_of([&] { infer_trail(cx, q); }), TypeErrorKind::trail_endpoint_mismatch);
}

TEST(InferTrail, TiFoldsItsHistory) {
  Contexts cx = Contexts{}.with_audited("u", P).with_audited("w", P);
  BranchMap<Code> theta{{Label::ba, code::avar("w")}, {Label::default_, code::avar("u")}};
  Trail h = trail::ba("a", P, code::var("a"), code::avar("u"));
  auto r = infer_trail(cx, trail::ti(h, theta));
  EXPECT_TRUE(alpha_eq(r.source, code::inspect(theta)));
  EXPECT_TRUE(alpha_eq(r.target, code::avar("w")));
  EXPECT_TRUE(alpha_eq(r.type, P));
}

TEST(TypeErrors, Kinds) {
  Code a = code::var("a");
  EXPECT_EQ(kind_of([&] { infer_code(a); }), TypeErrorKind::unbound);
  EXPECT_EQ(kind_of([&] { infer_code(code::avar("u")); }), TypeErrorKind::unbound);
  EXPECT_EQ(kind_of([&] { infer_code(code::lam("a", P, code::app(a, a))); }), TypeErrorKind::nonfunction);
  EXPECT_EQ(kind_of([&] { infer_code(code::app(id_code, id_code)); }), TypeErrorKind::mismatch);
  EXPECT_EQ(kind_of([&] { infer_code(code::lam("a", P, code::let("u", P, a, a))); }), TypeErrorKind::nonaudited);
  EXPECT_EQ(kind_of([&] { infer_code(code::let("u", P, code::bang(id_code), code::avar("u"))); }),
            TypeErrorKind::mismatch);  // annotation P against the bound's P -> P
  EXPECT_EQ(kind_of([&] { infer_code(code::inspect({{Label::refl, id_code}})); }), TypeErrorKind::missing_default);
  EXPECT_EQ(kind_of([&] { infer_code(code::inspect({{Label::trans, id_code}, {Label::default_, id_code}})); }),
            TypeErrorKind::branch_domain_mismatch);
  EXPECT_EQ(kind_of([&] { infer_code(code::lam("a", P, code::bang(a))); }), TypeErrorKind::nonempty_gamma_under_bang);
}

TEST(TypeErrors, Message) {
  try {
    infer_code(code::lam("a", P, code::app(code::var("a"), code::var("a"))));
    FAIL();
  } catch (const TypeError& e) {
    EXPECT_EQ(std::string(e.what()), "not a function: expected a function, found P in `a a`");
  }
}

// On enumerated trails the judgment's endpoints are src and tgt.
TEST(TrailEndpoints, EnumeratedTrails) {
  CodeGenerator gen;
  TrailGenerator trails(gen);
  std::size_t n = 0;
  for (const Contexts& cx : {Contexts{}, Contexts{}.with_simple("x0", P), Contexts{}.with_audited("u0", P)})
    for (std::size_t size = 2; size <= 7; ++size)
      for (const auto& t : trails.trails(cx, size)) {
        auto j = infer_trail(cx, t.trail);
        ASSERT_TRUE(alpha_eq(j.source, src(t.trail))) << pretty(t.trail);
        ASSERT_TRUE(alpha_eq(j.target, tgt(t.trail))) << pretty(t.trail);
        ASSERT_TRUE(alpha_eq(j.type, t.judgment.type));
        ++n;
      }
  EXPECT_GT(n, 5000u);
}

// A term's inferred code is code_of, on every term reachable from small programs.
TEST(TermCodeAgreement, ReachableTerms) {
  std::size_t n = 0;
  for (const Term& m : test::bang_corpus(7)) {
    auto g = reduction_graph(m, 100, 5000);
    for (const auto& node : g.nodes) {
      auto r = infer_term(node.term);
      ASSERT_TRUE(alpha_eq(r.code, code_of(node.term))) << pretty(node.term);
      ++n;
    }
  }
  EXPECT_GT(n, 1000u);
}

// Folding a well-typed trail through a well-typed exhaustive branch map
// yields the branch type.
TEST(FoldTyping, Enumerated) {
  CodeGenerator gen;
  TrailGenerator trails(gen);
  Contexts cx = Contexts{}.with_audited("u0", P).with_audited("u1", P);
  Code u0 = code::avar("u0"), u1 = code::avar("u1");
  std::vector<BranchMap<Code>> thetas;
  {
    BranchMap<Code> first, second;
    for (Label l : kAllLabels) {
      if (as<TypeAtom>(ttable(l, P))) {
        first.emplace(l, u0);
        second.emplace(l, l == Label::ba ? u1 : u0);
      } else if (l == Label::lam) {
        first.emplace(l, id_code);
        second.emplace(l, code::lam("a", P, u1));
      } else {
        first.emplace(l, pc("\\x:P. \\y:P. x"));
        second.emplace(l, pc("\\x:P. \\y:P. y"));
      }
    }
    thetas = {first, second};
  }
  for (const auto& th : thetas)
    for (const auto& [l, c] : th) ASSERT_TRUE(alpha_eq(infer_code(cx.boxed(), c), ttable(l, P)));
  std::size_t n = 0;
  for (std::size_t size = 2; size <= 7; ++size)
    for (const auto& t : trails.trails(cx, size))
      for (const auto& th : thetas) {
        ASSERT_TRUE(alpha_eq(infer_code(cx, fold_code(t.trail, th)), P)) << pretty(t.trail);
        ++n;
      }
  EXPECT_GT(n, 1000u);
}

// Adding unused declarations never changes a result.
TEST(Weakening, SpotChecks) {
  CodeGenerator gen;
  Contexts cx = Contexts{}.with_simple("x0", P);
  Contexts wide = Contexts{}.with_audited("zz", PP).with_simple("yy", P).with_simple("x0", P);
  std::size_t n = 0;
  for (const auto& c : gen.codes_up_to(cx, 6)) {
    ASSERT_TRUE(alpha_eq(infer_code(wide, c.code), infer_code(cx, c.code))) << pretty(c.code);
    ++n;
  }
  EXPECT_GT(n, 500u);
}

}  // namespace
