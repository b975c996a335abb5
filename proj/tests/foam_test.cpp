#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace websk;

namespace {
Rational r(long p, long q = 1) { return Rational(p, q); }
}  // namespace

TEST(Foam, PsiAggregates) {
  for (std::size_t n = 0; n <= 8; ++n) {
    Foam f = make_psi(n);
    EXPECT_EQ(f.euler_char, Integer(1 + n));
    EXPECT_EQ(f.self_int, Rational(2) - Rational(static_cast<long>(n), 2));
    EXPECT_EQ(f.tetra_points, Integer(n * (n - 1) / 2));
  }
  EXPECT_EQ(make_psi(3).tag, "Psi3");
  Foam m = make_psi2_minus();
  EXPECT_EQ(m.euler_char, 2);
  EXPECT_EQ(m.self_int, -1);
  EXPECT_EQ(m.tetra_points, 1);
}

TEST(Foam, SmallestActionDimensions) {
  EXPECT_EQ(moduli_dim(make_psi(0), {r(0)}), -1);
  EXPECT_EQ(moduli_dim(make_psi(1), {r(1, 32)}), 0);
  EXPECT_EQ(moduli_dim(make_psi(2), {r(0)}), 0);
  EXPECT_EQ(moduli_dim(make_psi(3), {r(1, 32)}), 0);
  EXPECT_EQ(moduli_dim(make_psi(3), {r(0)}), r(-1, 4));
}

TEST(Foam, MirrorPsi2) { EXPECT_EQ(moduli_dim(make_psi2_minus(), {r(0)}), -2); }

TEST(Foam, ClosedForm) {
  for (long n = 0; n <= 8; ++n) {
    for (long num = -4; num <= 40; ++num) {
      Rational kappa(num, 32);
      Rational shift = 1 - Rational(n, 2);
      EXPECT_EQ(moduli_dim(make_psi(static_cast<std::size_t>(n)), {kappa}), 8 * kappa - shift * shift)
          << "n=" << n << " kappa=" << to_string(kappa);
    }
  }
}

TEST(Foam, DimensionIsAffineInKappa) {
  Foam f = make_psi(5);
  Rational d0 = moduli_dim(f, {r(0)});
  EXPECT_EQ(moduli_dim(f, {r(3, 8)}) - d0, 3);
  EXPECT_EQ(moduli_dim(f, {kMinBubbleAction}) - d0, 1);
}

TEST(Foam, MinActionTable) {
  EXPECT_EQ(min_action_table(0).kappa, 0);
  EXPECT_EQ(min_action_table(0).formal_dim, -1);
  EXPECT_EQ(min_action_table(1).kappa, r(1, 32));
  EXPECT_EQ(min_action_table(2).holonomy, "Klein V4");
  EXPECT_EQ(min_action_table(3).automorphisms, "unobstructed");
  for (int n = 0; n <= 3; ++n) {
    auto e = min_action_table(n);
    EXPECT_EQ(moduli_dim(make_psi(static_cast<std::size_t>(n)), {e.kappa}), e.formal_dim) << n;
  }
  EXPECT_THROW(min_action_table(4), InputError);
  EXPECT_THROW(min_action_table(-1), InputError);
}

TEST(Foam, TetraFiber) {
  EXPECT_EQ(tetra_sum_fiber(2), 1);
  EXPECT_EQ(tetra_sum_fiber(3), 2);
  EXPECT_FALSE(tetra_sum_fiber(1));
}

TEST(Numeric, RationalParseAndPrint) {
  EXPECT_EQ(parse_rational("1/32"), r(1, 32));
  EXPECT_EQ(parse_rational("-3/6"), r(-1, 2));
  EXPECT_EQ(parse_rational("7"), 7);
  EXPECT_EQ(to_string(r(4, 2)), "2");
  EXPECT_EQ(to_string(r(-5, 2)), "-5/2");
  EXPECT_THROW(parse_rational("1/0"), InputError);
  EXPECT_THROW(parse_rational("x"), InputError);
  EXPECT_THROW(parse_rational("1/"), InputError);
  EXPECT_EQ(parse_integer("-12"), -12);
  EXPECT_THROW(parse_integer("1/2"), InputError);
}

TEST(Numeric, BigValues) {
  Integer big = parse_integer("123456789012345678901234567890");
  EXPECT_EQ(to_string(Rational(big, 3)), "41152263004115226300411522630");
}
