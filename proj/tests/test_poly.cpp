#include <gtest/gtest.h>

#include "towerlab/ratexpr.hpp"
#include "towerlab/towers.hpp"
#include "towerlab/verify.hpp"

using namespace towerlab;

namespace {

SparsePoly v(const FieldCtx& ctx, Var x, std::uint32_t e = 1) { return SparsePoly::variable(ctx, x, e); }
SparsePoly c(const FieldCtx& ctx, long long n) { return SparsePoly::constant(ctx, n); }

}  // namespace

TEST(Poly, VarParseAndName) {
  EXPECT_EQ(Var::parse("a3"), var_a(3));
  EXPECT_EQ(Var::parse("c12"), var_c(12));
  EXPECT_FALSE(Var::parse("d1"));
  EXPECT_FALSE(Var::parse("a0"));
  EXPECT_EQ(var_b(2).name(), "b2");
}

TEST(Poly, RelACharTwoExpansion) {
  auto f = make_field(2, 1, 1);
  const auto& ctx = *f;
  auto a1 = var_a(1), a2 = var_a(2);
  SparsePoly expected = v(ctx, a1) + v(ctx, a1) * v(ctx, a2) + v(ctx, a1, 2) * v(ctx, a2, 2) +
                        v(ctx, a1) * v(ctx, a2, 2) + v(ctx, a2, 2);
  EXPECT_EQ(rel_a(ctx, 1), expected);
  EXPECT_EQ(rel_a(ctx, 1).size(), 5u);
  EXPECT_EQ(rel_a(ctx, 1).total_degree(), 4u);
}

TEST(Poly, RelCAtQThree) {
  auto f = make_field(3, 1, 1);
  const auto& ctx = *f;
  SparsePoly expected = v(ctx, var_a(1)) * v(ctx, var_c(1), 2) - v(ctx, var_a(1)) + c(ctx, 1);
  EXPECT_EQ(rel_c(ctx, 1), expected);
}

TEST(Poly, ArithmeticAndEvaluation) {
  auto f = make_field(3, 1, 1);
  const auto& ctx = *f;
  auto x = v(ctx, var_a(1)), y = v(ctx, var_a(2));
  auto p = (x + y) * (x - y);
  EXPECT_EQ(p, v(ctx, var_a(1), 2) - v(ctx, var_a(2), 2));
  EXPECT_EQ(pow(x + c(ctx, 1), 3), v(ctx, var_a(1), 3) + c(ctx, 1));  // Frobenius in char 3
  Assignment at = [&](Var w) -> std::optional<Element> {
    return w == var_a(1) ? Element(ctx, 5) : Element(ctx, 7);
  };
  EXPECT_EQ(p.evaluate(at), Element(ctx, 5) * Element(ctx, 5) - Element(ctx, 7) * Element(ctx, 7));
  EXPECT_TRUE((p - p).is_zero());
  auto q = p.divide_exact(x + y);
  ASSERT_TRUE(q);
  EXPECT_EQ(*q, x - y);
  EXPECT_FALSE(p.divide_exact(x + c(ctx, 1)));
}

TEST(Poly, MissingCoordinateIsDomainError) {
  auto f = make_field(2, 1, 1);
  auto p = v(*f, var_b(1));
  Assignment none = [](Var) -> std::optional<Element> { return std::nullopt; };
  EXPECT_THROW(p.evaluate(none), DomainError);
}

TEST(Poly, TermOrderIsGradedLex) {
  auto f = make_field(2, 1, 1);
  const auto& ctx = *f;
  auto p = v(ctx, var_a(2), 2) + v(ctx, var_a(1)) * v(ctx, var_a(2)) + v(ctx, var_a(1)) + v(ctx, var_a(1), 3);
  EXPECT_EQ(p.leading_monomial(), (Monomial{{var_a(1), 3}}));
  std::vector<Monomial> order;
  for (const auto& [m, _] : p.terms()) order.push_back(m);
  EXPECT_EQ(order[1], (Monomial{{var_a(1), 1}, {var_a(2), 1}}));
  EXPECT_EQ(order[2], (Monomial{{var_a(2), 2}}));
}

TEST(RatExpr, DeclaredFactorsAndClearing) {
  auto f = make_field(3, 1, 1);
  const auto& ctx = *f;
  auto a = v(ctx, var_a(1));
  RatExpr e = RatExpr::over(c(ctx, 1), a) + RatExpr::over(c(ctx, 1), a - c(ctx, 1));
  // 1/a + 1/(a-1) = (2a - 1) / (a(a-1))
  EXPECT_EQ(clear_denominators(e, 3), a * c(ctx, 2) - c(ctx, 1));
  RatExpr bad = RatExpr::over(c(ctx, 1), a + c(ctx, 1));
  EXPECT_THROW(clear_denominators(bad, 3), UndeclaredDenominator);
  EXPECT_EQ(classify_factor(v(ctx, var_a(2), 3) + v(ctx, var_a(2)) - c(ctx, 1), 3),
            (DeclaredFactor{FactorKind::ALambda, 2}));
  EXPECT_EQ(classify_factor(v(ctx, var_c(1), 2) - c(ctx, 1), 3), (DeclaredFactor{FactorKind::CKummer, 1}));
}

TEST(RatExpr, EvaluationSkipsVanishingDenominators) {
  auto f = make_field(3, 1, 1);
  const auto& ctx = *f;
  auto a = v(ctx, var_a(1));
  RatExpr e = RatExpr::over(c(ctx, 1), a - c(ctx, 1));
  Assignment at_one = [&](Var) -> std::optional<Element> { return Element::one(ctx); };
  EXPECT_FALSE(e.try_evaluate(at_one));
  Assignment at_two = [&](Var) -> std::optional<Element> { return Element::from_integer(ctx, 2); };
  EXPECT_EQ(e.try_evaluate(at_two), Element::one(ctx));
}

TEST(Euclid, ReconstructsDividend) {
  for (unsigned p : {2u, 3u}) {
    auto f = make_field(p, 1, 1);
    const auto& ctx = *f;
    auto rel = rel_a(ctx, 1);
    auto a1 = v(ctx, var_a(1)), a2 = v(ctx, var_a(2));
    std::vector<SparsePoly> dividends = {pow(a2, 7) * a1 + a2 + c(ctx, 1), pow(a2 + a1, 5), rel * (a1 + a2)};
    for (const auto& P : dividends) {
      auto r = euclid_reduce(P, rel, var_a(2));
      EXPECT_EQ(pow(r.lc, r.lc_power) * P, r.pseudo_quotient * rel + r.pseudo_remainder);
      EXPECT_LT(r.pseudo_remainder.degree_in(var_a(2)), rel.degree_in(var_a(2)));
    }
    EXPECT_TRUE(euclid_reduce(rel * (a1 + a2), rel, var_a(2)).pseudo_remainder.is_zero());
  }
}

TEST(Rewrite, KummerPowersBecomeAVariables) {
  auto f = make_field(3, 1, 1);
  const auto& ctx = *f;
  auto a1 = v(ctx, var_a(1));
  // c1^(2(q-1)) -> ((a1 - 1)/a1)^2
  auto r = rewrite_to_base(RatExpr(v(ctx, var_c(1), 4)), 3);
  EXPECT_EQ(clear_denominators(r.base, 3), pow(a1 - c(ctx, 1), 2));
  EXPECT_TRUE(r.monomial.is_constant());
}

TEST(Rewrite, LoneCoordinateIsNotReducible) {
  auto f = make_field(3, 1, 1);
  EXPECT_THROW(rewrite_to_base(RatExpr(v(*f, var_c(1))), 3), NonReducibleExponent);
  auto f2 = make_field(2, 1, 1);
  EXPECT_NO_THROW(rewrite_to_base(RatExpr(v(*f2, var_c(1))), 2));
}

TEST(Rewrite, AsrecFactorsCommonB) {
  auto f = make_field(3, 1, 1);
  const auto& ctx = *f;
  auto spec = make_identity(ctx, "ID-ASREC", 2);
  auto r = rewrite_to_base(spec.expr, 3);
  EXPECT_EQ(r.monomial, v(ctx, var_b(1)));
  for (const auto& x : clear_denominators(r.base, 3).variables()) EXPECT_EQ(x.kind, VarKind::A);
}
