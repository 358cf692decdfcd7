#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "towerlab/solvers.hpp"

using namespace towerlab;

TEST(Solvers, RootsOfUnity) {
  auto f8 = make_field(2, 1, 1);
  EXPECT_EQ(roots_of_unity(*f8, 7).size(), 7u);
  EXPECT_EQ(roots_of_unity(*f8, 1).size(), 1u);
  auto f27 = make_field(3, 1, 1);
  auto mu2 = roots_of_unity(*f27, 2);
  ASSERT_EQ(mu2.size(), 2u);
  EXPECT_TRUE(mu2[0].is_one());
  EXPECT_EQ(mu2[1], -Element::one(*f27));
  EXPECT_THROW(roots_of_unity(*f27, 4), InvalidArgument);
}

TEST(Solvers, KummerZeroAndEmpty) {
  auto f = make_field(3, 1, 1);
  auto zero = kummer_solve(*f, 2, Element::zero(*f));
  ASSERT_EQ(zero.size(), 1u);
  EXPECT_TRUE(zero[0].is_zero());
  // exactly half of F_27^* are squares
  int solvable = 0;
  for (auto x : enumerate_elements(*f)) {
    if (x.is_zero()) continue;
    auto s = kummer_solve(*f, 2, x);
    EXPECT_TRUE(s.empty() || s.size() == 2u);
    EXPECT_EQ(!s.empty(), is_kummer_solvable(*f, 2, x));
    solvable += !s.empty();
  }
  EXPECT_EQ(solvable, 13);
}

TEST(Solvers, KummerSolutionsAreClosedUnderRootsOfUnity) {
  auto f = make_field(3, 1, 2);
  const std::uint64_t r = 2;
  auto mu = roots_of_unity(*f, r);
  for (FieldCtx::Code c = 1; c < f->size(); c += 5) {
    const Element rhs(*f, c);
    auto sols = kummer_solve(*f, r, rhs);
    std::set<FieldCtx::Code> codes;
    for (const auto& s : sols) codes.insert(s.code());
    for (const auto& s : sols) {
      EXPECT_EQ(pow(s, r), rhs);
      for (const auto& z : mu) EXPECT_TRUE(codes.count((s * z).code()));
    }
  }
}

TEST(Solvers, KummerNonDividingExponentUsesGcd) {
  auto f = make_field(2, 1, 1);  // |F*| = 7, gcd(3, 7) = 1: cubing is a bijection
  for (auto x : enumerate_elements(*f)) {
    if (x.is_zero()) continue;
    auto s = kummer_solve(*f, 3, x);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(pow(s[0], 3), x);
  }
}

TEST(Solvers, AdditiveSolutionSetsAreCosets) {
  auto f = make_field(3, 1, 2);
  const std::uint64_t q = 3;
  for (FieldCtx::Code vc = 1; vc < f->size(); vc += 13) {
    const Element v(*f, vc);
    auto kernel = additive_kernel(*f, v, q);
    // kernel size is a power of p and at most q
    EXPECT_TRUE(kernel.size() == 1 || kernel.size() == 3);
    EXPECT_TRUE(std::is_sorted(kernel.begin(), kernel.end()));
    for (FieldCtx::Code wc = 0; wc < f->size(); wc += 31) {
      const Element w(*f, wc);
      auto sols = additive_affine_solve(*f, v, w, q);
      EXPECT_TRUE(sols.empty() || sols.size() == kernel.size());
      for (const auto& y : sols) EXPECT_EQ(v * pow(y, q) + y, w);
      if (sols.size() > 1) {
        for (const auto& y : sols) {
          auto d = y - sols[0];
          EXPECT_TRUE(std::find(kernel.begin(), kernel.end(), d) != kernel.end());
        }
      }
    }
  }
}

TEST(Solvers, AdditiveRejectsNonPowerQ) {
  auto f = make_field(3, 1, 1);
  EXPECT_THROW(additive_affine_solve(*f, Element::one(*f), Element::one(*f), 2), InvalidArgument);
}

TEST(Solvers, SolveModP) {
  // x + 2y = 1, 2x + y = 2 over F_3 -> rank 1 (second row = 2 * first)
  auto sol = solve_mod_p({{1, 2}, {2, 1}}, {1, 2}, 3);
  ASSERT_TRUE(sol.particular);
  EXPECT_EQ(sol.kernel_basis.size(), 1u);
  auto bad = solve_mod_p({{1, 2}, {2, 1}}, {1, 0}, 3);
  EXPECT_FALSE(bad.particular);
}
