#include "chebydev/symfun.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace chebydev;

TEST(ElementarySymmetric, FirstAndTop) {
  const QPoly e1 = elementary_symmetric(1, 3);
  const QPoly sum = QPoly::variable(3, 0) + QPoly::variable(3, 1) + QPoly::variable(3, 2);
  EXPECT_EQ(e1, sum);
  EXPECT_EQ(elementary_symmetric(5, 5), QPoly::monomial({1, 1, 1, 1, 1}));
}

TEST(ElementarySymmetric, TermCountAndErrors) {
  EXPECT_EQ(elementary_symmetric(6, 12).size(), 924U);
  EXPECT_THROW(elementary_symmetric(4, 3), std::invalid_argument);
}

TEST(ElementarySymmetric, OnePairSurvives) {
  EXPECT_EQ(elementary_symmetric(2, 4)(std::vector<Rational>{1, 1, 0, 0}), Rational(1));
}

TEST(ElementarySymmetric, LadderPointValues) {
  for (unsigned d = 2; d <= 7; ++d) {
    for (unsigned k = 1; k <= d; ++k) {
      const QPoly ek = elementary_symmetric(k, d);
      for (unsigned j = 1; j <= d; ++j) {
        std::vector<Rational> x(d, Rational(0));
        for (unsigned i = 0; i < j; ++i) x[i] = Rational(1, j);
        // Independent count: subsets of the j nonzero coordinates.
        const Rational expected = Rational(binomial(j, k)) / rational_pow(Rational(j), k);
        ASSERT_EQ(ek(x), expected) << "k=" << k << " d=" << d << " j=" << j;
      }
    }
  }
}

TEST(PowerSum, BasicForms) {
  EXPECT_EQ(power_sum(1, 4), elementary_symmetric(1, 4));
  const QPoly m2(2, {{{2, 0}, Rational(1)}, {{0, 2}, Rational(1)}});
  EXPECT_EQ(power_sum(2, 2), m2);
  EXPECT_EQ(power_sum(0, 3), QPoly::constant(3, 3));
}

TEST(PowerSum, LadderPointValues) {
  for (unsigned d = 2; d <= 6; ++d) {
    for (unsigned k = 1; k <= 6; ++k) {
      for (unsigned j = 1; j <= d; ++j) {
        std::vector<Rational> x(d, Rational(0));
        for (unsigned i = 0; i < j; ++i) x[i] = Rational(1, j);
        ASSERT_EQ(power_sum(k, d)(x), Rational(1) / rational_pow(Rational(j), k - 1));
      }
    }
  }
}

TEST(PowerSum, NewtonIdentity) {
  for (unsigned d = 2; d <= 8; ++d) {
    const QPoly m1 = power_sum(1, d);
    const QPoly rhs = Rational(1, 2) * (m1 * m1 - power_sum(2, d));
    ASSERT_EQ(elementary_symmetric(2, d), rhs) << "d=" << d;
  }
}

TEST(Chebyshev, LowDegrees) {
  EXPECT_EQ(chebyshev_univariate(2), univariate<Rational>({-1, 0, 2}));
  EXPECT_EQ(chebyshev_univariate(3), univariate<Rational>({0, -3, 0, 4}));
  EXPECT_EQ(chebyshev_univariate(0), QPoly::constant(1, 1));
}

TEST(Chebyshev, ShiftedQuarticAtZero) {
  const QPoly t = QPoly::variable(1, 0);
  const QPoly shifted = compose(chebyshev_univariate(4), std::vector<QPoly>{Rational(2) * t - QPoly::constant(1, 1)});
  EXPECT_EQ(shifted(std::vector<Rational>{0}), Rational(1));
}

TEST(Chebyshev, LeadingCoefficient) {
  for (unsigned n = 1; n <= 12; ++n) {
    EXPECT_EQ(chebyshev_univariate(n).coefficient({n}), rational_pow(Rational(2), n - 1));
  }
}

TEST(Chebyshev, BoundedAndCosineIdentity) {
  for (unsigned n = 1; n <= 10; ++n) {
    const FPoly tn = chebyshev_univariate(n).to_float();
    for (int i = 0; i < 10000; ++i) {
      const double t = -1.0 + 2.0 * i / 9999.0;
      ASSERT_LE(std::abs(tn(std::vector<double>{t})), 1.0 + 1e-12);
    }
    for (int i = 0; i <= 100; ++i) {
      const double theta = std::numbers::pi * i / 100.0;
      ASSERT_NEAR(tn(std::vector<double>{std::cos(theta)}), std::cos(n * theta), 1e-12);
    }
  }
}

TEST(Symmetrize, OrbitAverages) {
  EXPECT_EQ(symmetrize(QPoly::monomial({2, 0, 0})), Rational(1, 3) * power_sum(2, 3));
  EXPECT_EQ(symmetrize(QPoly::monomial({1, 1, 0})), Rational(1, 3) * elementary_symmetric(2, 3));
}

TEST(Symmetrize, FixesSymmetricAndIsIdempotent) {
  const QPoly e = elementary_symmetric(2, 4) * elementary_symmetric(1, 4);
  EXPECT_EQ(symmetrize(e), e);
  EXPECT_TRUE(is_symmetric(e));
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> coef(-5, 5);
  std::uniform_int_distribution<unsigned> ex(0, 3);
  for (int trial = 0; trial < 200; ++trial) {
    QPoly p(3);
    for (int t = 0; t < 4; ++t) p.add_term({ex(rng), ex(rng), ex(rng)}, Rational(coef(rng)));
    const QPoly s = symmetrize(p);
    ASSERT_EQ(symmetrize(s), s);
    ASSERT_TRUE(is_symmetric(s));
  }
}

TEST(Partitions, Counts) {
  std::size_t total = 0;
  for (unsigned n = 0; n <= 4; ++n) total += partitions(n, 3).size();
  EXPECT_EQ(total, 11U);
  EXPECT_EQ(partitions(5, 2).size(), 3U);
}

TEST(MonomialSymmetric, MatchesPowerSum) {
  EXPECT_EQ(monomial_symmetric({3}, 4), power_sum(3, 4));
  EXPECT_EQ(monomial_symmetric({1, 1, 1}, 3), elementary_symmetric(3, 3));
}
