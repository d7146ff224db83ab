#include <gtest/gtest.h>

#include "support.hpp"

using namespace lhc;
using test::pc;

namespace {

Type P = ty::atom("P");
HsType hP = hty::atom("P");
Code id_code = code::lam("a", P, code::var("a"));
HsTerm hs_id = hs::lam("a", hP, hs::var("a"));

Term rooted(const Code& body) { return term::bang(trail::refl(body), code_as_term(body)); }

TEST(Erase, Types) {
  EXPECT_TRUE(alpha_eq(erase_type(ty::audited(id_code, ty::arrow(P, P))), hty::box(hty::arrow(hP, hP))));
  EXPECT_EQ(pretty(erase_type(ty::audited(id_code, ty::arrow(P, P)))), "[](P -> P)");
}

TEST(Erase, Terms) {
  EXPECT_TRUE(alpha_eq(erase_term(term::bang(trail::refl(code::var("s")), code_as_term(id_code))), hs::bang(hs_id)));
  BranchMap<Term> th{{Label::ba, term::var("x")}, {Label::default_, term::var("y")}};
  EXPECT_TRUE(alpha_eq(erase_term(term::inspect(th)),
                       hs::inspect({{Label::ba, hs::var("x")}, {Label::default_, hs::var("y")}})));
}

TEST(Erase, TrailsKeepShape) {
  Trail q = trail::trans(trail::refl(code::var("s")), trail::ba("a", P, code::var("a"), code::bang(code::var("b"))));
  HsTrail e = erase_trail(q);
  EXPECT_TRUE(alpha_eq(e, hs_trail::trans(hs_trail::refl(hs::var("s")),
                                          hs_trail::ba("a", hP, hs::var("a"), hs::bang(hs::var("b"))))));
}

TEST(HsInfer, Examples) {
  EXPECT_TRUE(alpha_eq(hs_infer(hs::bang(hs_id)), hty::box(hty::arrow(hP, hP))));
  HsContexts cx = HsContexts{}.with_simple("s", hty::box(hP));
  EXPECT_TRUE(alpha_eq(hs_infer(cx, hs::let("u", hP, hs::var("s"), hs::avar("u"))), hP));
}

TEST(HsInfer, ErasedAuditedSum) {
  Term m = test::rooted_main(test::load_program("audited_sum.lhc"));
  HsType t = hs_infer(erase_term(m));
  HsType n = erase_type(test::church_type());
  EXPECT_TRUE(alpha_eq(t, hty::box(n)));
}

TEST(HsInfer, Errors) {
  EXPECT_THROW(hs_infer(hs::lam("a", hP, hs::app(hs::var("a"), hs::var("a")))), TypeError);
  EXPECT_THROW(hs_infer(hs::lam("a", hP, hs::bang(hs::var("a")))), TypeError);
  EXPECT_THROW(hs_infer(hs::inspect({{Label::refl, hs_id}})), TypeError);
}

TEST(HsStep, Beta) {
  auto r = hs_step(hs::app(hs_id, hs::var("b")), TrailOracle::bounded(3));
  ASSERT_EQ(r.size(), 1u);
  EXPECT_TRUE(alpha_eq(r[0], hs::var("b")));
}

TEST(HsStep, BetaBox) {
  HsTerm s = hs::app(hs::var("f"), hs::var("x"));
  HsTerm t = hs::lam("a", hP, hs::app(hs::avar("u"), hs::avar("u")));
  auto r = hs_step(hs::let("u", hP, hs::bang(s), t), TrailOracle::bounded(3));
  ASSERT_EQ(r.size(), 1u);
  EXPECT_TRUE(alpha_eq(r[0], hs::lam("a", hP, hs::app(s, s))));
}

TEST(HsStep, InspectionUsesTheOracle) {
  HsTerm s = hs::var("s"), t = hs::var("t");
  HsTerm i = hs::inspect({{Label::refl, s}, {Label::default_, t}});
  auto r = hs_step(i, TrailOracle::injected(hs_trail::refl(hs::var("r"))));
  ASSERT_EQ(r.size(), 1u);
  EXPECT_TRUE(alpha_eq(r[0], s));
  // A bounded oracle offers both outcomes.
  auto all = hs_step(i, TrailOracle::bounded(3));
  ASSERT_EQ(all.size(), 2u);
}

TEST(HsStep, ReducesEverywhere) {
  HsTerm redex = hs::app(hs_id, hs::var("b"));
  HsTerm s = hs::lam("x", hP, hs::bang(hs::inspect({{Label::default_, redex}})));
  auto r = hs_step(s, TrailOracle::bounded(2));
  // The inspection itself, and the redex in its branch.
  EXPECT_EQ(r.size(), 2u);
}

TEST(Oracle, DistinctFoldResults) {
  BranchMap<HsTerm> theta{{Label::refl, hs::var("r")},
                          {Label::trans, hs::var("t")},
                          {Label::default_, hs::var("d")}};
  auto oracle = TrailOracle::bounded(5);
  auto qs = oracle.trails(theta);
  std::set<std::string> keys;
  for (const auto& q : qs) EXPECT_TRUE(keys.insert(canonical_key(fold<HsTag, HsTag>(q, theta))).second);
  // r, d, t r r, t r d, t d r, t d d, and deeper nestings all appear.
  EXPECT_GT(qs.size(), 6u);
  EXPECT_TRUE(keys.count(canonical_key(hs::apps(hs::var("t"), hs::var("r"), hs::var("d")))));
  // Copies share the cache and agree.
  auto copy = oracle;
  EXPECT_EQ(copy.trails(theta).size(), qs.size());
}

TEST(Oracle, BoundLimitsNesting) {
  BranchMap<HsTerm> theta{{Label::lam, hs::var("l")}, {Label::default_, hs::var("d")}};
  // lam^k applied to a leaf: sizes 1..b give b-1 nestings plus d.
  EXPECT_EQ(TrailOracle::bounded(4).trails(theta).size(), 4u);
  EXPECT_EQ(TrailOracle::bounded(1).trails(theta).size(), 1u);
}

TEST(Simulation, PairFirstStep) {
  Term m = test::rooted_main(test::load_program("pair.lhc"));
  auto s = step(m, Strategy::leftmost_outermost);
  ASSERT_TRUE(s);
  EXPECT_TRUE(check_erasure_simulation(m, s->first, s->second));
}

TEST(Simulation, NestedStep) {
  Code inner = code::bang(code::app(id_code, code::var("c")));
  Term m = rooted(code::app(code::lam("x", ty::audited(code::app(id_code, code::var("c")), P), code::var("x")), inner));
  auto s = step_at(m, redex_paths(m)[1]);
  ASSERT_EQ(s.second.depth, 1u);
  EXPECT_TRUE(check_erasure_simulation(m, s.first, s.second));
}

TEST(Simulation, InspectionStep) {
  Term m = test::rooted_main(test::load_program("profile.lhc"));
  std::size_t ti = 0;
  for (;;) {
    auto s = step(m, Strategy::cbv);
    if (!s) break;
    EXPECT_TRUE(check_erasure_simulation(m, s->first, s->second));
    ti += s->second.rule == Rule::ti;
    m = s->first;
  }
  EXPECT_EQ(ti, 1u);
}

TEST(Simulation, MismatchedPairIsRejected) {
  Term m = test::rooted_main(test::load_program("pair.lhc"));
  auto s = step(m, Strategy::leftmost_outermost);
  ASSERT_TRUE(s);
  EXPECT_FALSE(check_erasure_simulation(m, m, s->second));
  auto s2 = step(s->first, Strategy::leftmost_outermost);
  EXPECT_FALSE(check_erasure_simulation(m, s2->first, s2->second));
}

// Erasure keeps typing and simulates steps, over every reachable term and step.
TEST(ErasureProperty, SmallCorpus) {
  std::size_t steps = 0;
  for (const Term& m : test::bang_corpus(6)) {
    auto g = reduction_graph(m, 100, 5000);
    for (const auto& n : g.nodes) {
      auto t = infer_term(n.term);
      ASSERT_TRUE(alpha_eq(hs_infer(erase_term(n.term)), erase_type(t.type))) << pretty(n.term);
    }
    for (const auto& e : g.edges) {
      ASSERT_TRUE(check_erasure_simulation(g.nodes[e.from].term, g.nodes[e.to].term, e.info))
          << pretty(g.nodes[e.from].term);
      ++steps;
    }
  }
  EXPECT_GT(steps, 100u);
}

// s -> t implies s{u:=r} -> t{u:=r}.
TEST(Substitutivity, SmallInstances) {
  CodeGenerator gen;
  Contexts cx = Contexts{}.with_audited("u0", P).with_simple("x0", P);
  auto oracle = TrailOracle::bounded(3);
  std::vector<HsTerm> rs;
  for (const auto& r : gen.codes_up_to(Contexts{}, 3)) rs.push_back(erase_code(r.code));
  std::size_t n = 0;
  for (const auto& c : gen.codes_up_to(cx, 5)) {
    HsTerm s = erase_code(c.code);
    for (const auto& t : hs_step(s, oracle))
      for (const auto& r : rs) {
        HsTerm sr = hs_subst_audited(s, "u0", r);
        HsTerm tr = hs_subst_audited(t, "u0", r);
        auto succ = hs_step(sr, oracle);
        bool found = std::any_of(succ.begin(), succ.end(), [&](const HsTerm& x) { return alpha_eq(x, tr); });
        ASSERT_TRUE(found) << pretty(s) << " -> " << pretty(t) << " with " << pretty(r);
        ++n;
      }
  }
  EXPECT_GT(n, 1000u);
}

TEST(HsSn, SmallCorpus) {
  auto oracle = TrailOracle::bounded(4);
  for (const auto& c : enumerate_closed(6)) {
    auto g = hs_reduction_graph(erase_code(c.code), oracle, 10000, 50000);
    ASSERT_TRUE(g.complete());
    ASSERT_TRUE(g.acyclic()) << pretty(c.code);
    for (const auto& node : g.nodes)
      if (node.normal) ASSERT_TRUE(hs_is_normal(node.term));
  }
}

}  // namespace
