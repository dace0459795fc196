#include "chebydev/signatures.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

using namespace chebydev;

namespace {

std::vector<Rational> pt(std::initializer_list<Rational> v) { return {v}; }

}  // namespace

TEST(Orbit, Sizes) {
  EXPECT_EQ(orbit<Rational>(pt({1, 0, 0})).size(), 3U);
  const Rational t(1, 5);
  EXPECT_EQ(orbit<Rational>(pt({t, t, 1 - 2 * t})).size(), 3U);
  const Rational q(1, 4);
  EXPECT_EQ(orbit<Rational>(pt({q, q, q, q})).size(), 1U);
  EXPECT_EQ(orbit<Rational>(pt({0, 1, 2})).size(), 6U);
}

TEST(Orbit, CanonicalOrderIsIndependentOfInput) {
  EXPECT_EQ(orbit<Rational>(pt({0, 0, 1})), orbit<Rational>(pt({1, 0, 0})));
}

TEST(ExtremalSets, ThreeVariables) {
  const auto s = build_extremal_sets(3);
  ASSERT_EQ(s.plus.size(), 4U);
  ASSERT_EQ(s.minus.size(), 3U);
  const Rational h(1, 2), t(1, 3);
  EXPECT_NE(std::find(s.plus.begin(), s.plus.end(), pt({t, t, t})), s.plus.end());
  EXPECT_NE(std::find(s.plus.begin(), s.plus.end(), pt({1, 0, 0})), s.plus.end());
  for (const auto& p : {pt({h, h, 0}), pt({h, 0, h}), pt({0, h, h})}) {
    EXPECT_NE(std::find(s.minus.begin(), s.minus.end(), p), s.minus.end());
  }
}

TEST(ExtremalSets, FourVariablesSizes) {
  const auto s = build_extremal_sets(4);
  EXPECT_EQ(s.plus.size(), 1U + 6U);
  EXPECT_EQ(s.minus.size(), 4U + 4U);
}

TEST(ExtremalSets, TdTakesSignedUnitValues) {
  for (unsigned d = 3; d <= 8; ++d) {
    const auto s = build_extremal_sets(d);
    const QPoly T = build_Td(d).polynomial;
    for (const auto& p : s.plus) EXPECT_EQ(T(std::span<const Rational>(p)), Rational(1)) << d;
    for (const auto& p : s.minus) EXPECT_EQ(T(std::span<const Rational>(p)), Rational(-1)) << d;
    for (const auto& p : s.plus) {
      Rational sum = 0;
      for (const auto& x : p) sum += x;
      EXPECT_EQ(sum, Rational(1));
    }
  }
}

TEST(LFunctional, ThreeVariablesMatchesCubatureDifference) {
  const auto L = build_L_functional(3);
  ASSERT_EQ(L.size(), 7U);
  // 12 (L1 - L2) = 9 at the centroid, -4 at midpoints, +1 at vertices.
  for (std::size_t v = 0; v < L.size(); ++v) {
    const auto& p = L.points[v];
    const int zeros = static_cast<int>(std::count(p.begin(), p.end(), Rational(0)));
    const Rational signed_w = L.signs[v] > 0 ? L.weights[v] : Rational(-L.weights[v]);
    if (zeros == 0) EXPECT_EQ(signed_w, Rational(12) * Rational(3, 4));
    if (zeros == 1) EXPECT_EQ(signed_w, Rational(12) * Rational(-1, 3));
    if (zeros == 2) EXPECT_EQ(signed_w, Rational(12) * Rational(1, 12));
  }
}

TEST(LFunctional, AnnihilatesPowerSumsAndDegreeBelowD) {
  for (unsigned d = 3; d <= 8; ++d) {
    const auto L = build_L_functional(d);
    EXPECT_TRUE(check_annihilation(L, d - 1, d)) << d;
    for (unsigned k = 0; k < d; ++k) {
      const QPoly m = power_sum(k, d);
      Rational s = 0;
      for (std::size_t v = 0; v < L.size(); ++v) {
        const Rational val = L.weights[v] * m(std::span<const Rational>(L.points[v]));
        s += L.signs[v] > 0 ? val : Rational(-val);
      }
      EXPECT_EQ(s, Rational(0)) << "d=" << d << " k=" << k;
    }
  }
}

TEST(LFunctional, ValueOnTopElementarySymmetric) {
  for (unsigned d = 3; d <= 8; ++d) {
    const auto L = build_L_functional(d);
    const QPoly ed = elementary_symmetric(d, d);
    Rational s = 0;
    for (std::size_t v = 0; v < L.size(); ++v) {
      const Rational val = L.weights[v] * ed(std::span<const Rational>(L.points[v]));
      s += L.signs[v] > 0 ? val : Rational(-val);
    }
    EXPECT_EQ(s, Rational(1, d)) << d;
    EXPECT_FALSE(check_annihilation(L, d, d)) << d;
  }
}

TEST(Annihilation, DroppingAnOrbitBreaksIt) {
  auto L = build_L_functional(4);
  SignedPointSet<Rational> cut;
  for (std::size_t v = 0; v < L.size(); ++v) {
    if (std::count(L.points[v].begin(), L.points[v].end(), Rational(0)) == 3) continue;
    cut.add(L.points[v], L.signs[v], L.weights[v]);
  }
  EXPECT_FALSE(check_annihilation(cut, 3, 4));
}

TEST(Annihilation, R5PrintedWeights) {
  const auto k = derive_R5_constants();
  const auto S = r5_signature(k);
  EXPECT_EQ(S.size(), 19U);
  const auto rep4 = annihilation_report(S, 4, 3);
  EXPECT_LE(rep4.max_residual, 1e-6 * rep4.scale);
  const auto rep5 = annihilation_report(S, 5, 3);
  EXPECT_LE(rep5.max_residual, 1e-8 * rep5.scale);
  double total = 0.0, plus = 0.0;
  for (std::size_t v = 0; v < S.size(); ++v) {
    total += S.weights[v];
    if (S.signs[v] > 0) plus += S.weights[v];
  }
  EXPECT_NEAR(total, 1.0, 1e-8);
  EXPECT_NEAR(plus, 0.5, 1e-8);
}

// Orbit reduction is lossless on random symmetric functionals.
TEST(AnnihilationProperty, ReducedAgreesWithFull) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> num(0, 6), wt(1, 9), sg(0, 1);
  for (int trial = 0; trial < 60; ++trial) {
    const unsigned d = 2 + trial % 3;
    SignedPointSet<Rational> L;
    std::set<std::vector<Rational>> seen;
    const int orbits = 1 + trial % 4;
    for (int o = 0; o < orbits; ++o) {
      std::vector<Rational> base(d);
      for (auto& x : base) x = Rational(num(rng), 6);
      std::sort(base.begin(), base.end());
      if (!seen.insert(base).second) continue;
      const int s = sg(rng) ? 1 : -1;
      const Rational w(wt(rng));
      for (auto& p : orbit<Rational>(base)) L.add(p, s, w);
    }
    for (unsigned n = 0; n <= 3; ++n) {
      const auto full = annihilation_report(L, n, d);
      const auto red = annihilation_report_reduced(L, n, d);
      EXPECT_EQ(full.annihilates, red.annihilates) << trial << " n=" << n;
    }
  }
  for (unsigned d = 3; d <= 7; ++d) {
    const auto L = build_L_functional(d);
    EXPECT_TRUE(annihilation_report_reduced(L, d - 1, d).annihilates);
    EXPECT_FALSE(annihilation_report_reduced(L, d, d).annihilates);
  }
}

TEST(SolveWeights, R3RecoversCubatureWeights) {
  const auto s = build_extremal_sets(3);
  const auto sol = solve_signature_weights(s.plus, s.minus, 2, 3);
  ASSERT_EQ(sol.status, WeightStatus::unique);
  ASSERT_EQ(sol.exact_weights.size(), 7U);
  // 12(L1 - L2) normalized: per point 9/24, 4/24, 1/24.
  for (std::size_t v = 0; v < 7; ++v) {
    const auto& p = v < s.plus.size() ? s.plus[v] : s.minus[v - s.plus.size()];
    const int zeros = static_cast<int>(std::count(p.begin(), p.end(), Rational(0)));
    const Rational want = zeros == 0 ? Rational(3, 8) : zeros == 1 ? Rational(1, 6) : Rational(1, 24);
    EXPECT_EQ(sol.exact_weights[v], want);
  }
}

TEST(SolveWeights, TdSignatureMatchesLFunctional) {
  for (unsigned d = 3; d <= 7; ++d) {
    const auto s = build_extremal_sets(d);
    const auto sol = solve_signature_weights(s.plus, s.minus, d - 1, d);
    ASSERT_EQ(sol.status, WeightStatus::unique) << d;
    const auto L = build_L_functional(d);
    Rational total = 0;
    for (const auto& w : L.weights) total += w;
    // L lists orbits j = d..1, the same order S_+ ++ S_- does not follow, so compare by point.
    std::map<std::vector<Rational>, Rational> want;
    for (std::size_t v = 0; v < L.size(); ++v) want[L.points[v]] = L.weights[v] / total;
    std::vector<std::vector<Rational>> pts = s.plus;
    pts.insert(pts.end(), s.minus.begin(), s.minus.end());
    for (std::size_t v = 0; v < pts.size(); ++v) EXPECT_EQ(sol.exact_weights[v], want.at(pts[v])) << d;
  }
}

TEST(SolveWeights, OneDegreeTooHighIsInfeasible) {
  for (unsigned d = 3; d <= 6; ++d) {
    const auto s = build_extremal_sets(d);
    const auto sol = solve_signature_weights(s.plus, s.minus, d, d);
    EXPECT_EQ(sol.status, WeightStatus::infeasible) << d;
    EXPECT_EQ(sol.nullspace_dim, 0U);
  }
}

TEST(SolveWeights, R5RecoversPrintedWeights) {
  const auto k = derive_R5_constants();
  const auto S = r5_signature(k);
  std::vector<Point<double>> plus, minus;
  for (std::size_t v = 0; v < S.size(); ++v) (S.signs[v] > 0 ? plus : minus).push_back(S.points[v]);
  const auto sol = solve_signature_weights(plus, minus, 5, 3);
  ASSERT_EQ(sol.status, WeightStatus::unique) << sol.message;
  // Scale matching on the centroid orbit.
  std::vector<Point<double>> pts = plus;
  pts.insert(pts.end(), minus.begin(), minus.end());
  double centroid_w = 0.0;
  for (std::size_t v = 0; v < pts.size(); ++v) {
    if (std::abs(pts[v][0] - 1.0 / 3) < 1e-12 && std::abs(pts[v][1] - 1.0 / 3) < 1e-12) centroid_w = sol.weights[v];
  }
  ASSERT_GT(centroid_w, 0.0);
  const double scale = kR5PrintedWeights[0] / centroid_w;
  const auto reps = r5_orbit_representatives(k);
  for (std::size_t o = 0; o < reps.size(); ++o) {
    for (std::size_t v = 0; v < pts.size(); ++v) {
      auto a = pts[v], b = reps[o];
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      if (a == b) EXPECT_NEAR(sol.weights[v] * scale, kR5PrintedWeights[o], 1e-5) << "orbit " << o;
    }
  }
}

TEST(SolveWeights, R5AtDegreeFourIsUnderdetermined) {
  const auto k = derive_R5_constants();
  const auto S = r5_signature(k);
  std::vector<Point<double>> plus, minus;
  for (std::size_t v = 0; v < S.size(); ++v) (S.signs[v] > 0 ? plus : minus).push_back(S.points[v]);
  const auto sol = solve_signature_weights(plus, minus, 4, 3);
  EXPECT_EQ(sol.nullspace_dim, 2U);
  EXPECT_EQ(sol.status, WeightStatus::selected);
}

TEST(Certify, R3Exact) {
  const auto c = td_certificate(3);
  EXPECT_EQ(c.level, Rational(1, 72));
  const auto rep = certify_lower_bound(c);
  EXPECT_TRUE(rep.certified);
  EXPECT_EQ(rep.max_level_residual, 0.0);
}

TEST(Certify, TdExactThroughEight) {
  for (unsigned d = 3; d <= 8; ++d) {
    const auto rep = certify_lower_bound(td_certificate(d));
    EXPECT_TRUE(rep.certified) << d;
    for (const auto& r : rep.reasons) ADD_FAILURE() << d << ": " << r;
  }
}

TEST(Certify, FlippedSignIsReported) {
  auto c = td_certificate(3);
  c.support.signs[0] = -c.support.signs[0];
  const auto rep = certify_lower_bound(c);
  EXPECT_FALSE(rep.certified);
  EXPECT_FALSE(rep.level_ok);
  ASSERT_FALSE(rep.reasons.empty());
  EXPECT_NE(rep.reasons.front().find("sign mismatch"), std::string::npos);
}

TEST(Certify, ReasonsAreReportedSeparately) {
  auto c = td_certificate(4);
  c.support.weights[0] *= 2;  // breaks annihilation only
  auto rep = certify_lower_bound(c);
  EXPECT_TRUE(rep.level_ok);
  EXPECT_FALSE(rep.annihilation_ok);
  EXPECT_EQ(rep.reasons.size(), 1U);
  c = td_certificate(4);
  c.degree = 2;  // candidate has degree 3 > 2
  rep = certify_lower_bound(c);
  EXPECT_FALSE(rep.well_formed);
  c = td_certificate(4);
  c.support.weights[1] = 0;
  rep = certify_lower_bound(c);
  EXPECT_FALSE(rep.certified);
}

TEST(Certify, R5WithPrintedWeights) {
  const auto k = derive_R5_constants();
  const auto c = r5_certificate(k);
  EXPECT_NEAR(c.level, 6.2655e-5, 1e-8);
  const auto rep = certify_lower_bound(c, 1e-8);
  EXPECT_TRUE(rep.certified);
  for (const auto& r : rep.reasons) ADD_FAILURE() << r;
}

// Raising the level with the same support breaks the level condition.
TEST(CertifyProperty, MonotoneInLevel) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> bump(1, 1000);
  for (unsigned d = 3; d <= 6; ++d) {
    auto c = td_certificate(d);
    ASSERT_TRUE(certify_lower_bound(c).certified);
    for (int trial = 0; trial < 20; ++trial) {
      auto up = c;
      up.level = c.level * (1 + Rational(bump(rng), 100000));
      EXPECT_FALSE(certify_lower_bound(up).certified) << d;
    }
  }
  const auto k = derive_R5_constants();
  auto c5 = r5_certificate(k);
  for (double f : {1.001, 1.01, 1.5}) {
    auto up = c5;
    up.level *= f;
    EXPECT_FALSE(certify_lower_bound(up, 1e-8).certified);
  }
}

TEST(CertificateJson, ExactRoundTrip) {
  const auto c = td_certificate(4);
  const auto j = certificate_to_json(c);
  const auto back = certificate_from_json<Rational>(json::parse(j.dump()));
  EXPECT_EQ(back.target.terms(), c.target.terms());
  EXPECT_EQ(back.candidate.terms(), c.candidate.terms());
  EXPECT_EQ(back.level, c.level);
  EXPECT_EQ(back.support.points, c.support.points);
  EXPECT_EQ(back.support.weights, c.support.weights);
  EXPECT_EQ(back.support.signs, c.support.signs);
  EXPECT_EQ(certificate_to_json(back).dump(), j.dump());
  EXPECT_TRUE(certify_lower_bound(back).certified);
}

TEST(Combi, Examples) {
  EXPECT_EQ(combi_identity(4, 2), Integer(0));
  EXPECT_EQ(combi_identity(5, 4), Integer(0));
  EXPECT_EQ(combi_identity(3, 3), Integer(-6));
}

TEST(Combi, VanishesBelowDAndSignedFactorialAtD) {
  for (unsigned d = 1; d <= 15; ++d) {
    for (unsigned k = 1; k < d; ++k) EXPECT_EQ(combi_identity(d, k), Integer(0)) << d << "," << k;
    const Integer want = d % 2 == 0 ? factorial(d) : Integer(-factorial(d));
    EXPECT_EQ(combi_identity(d, d), want) << d;
  }
}

TEST(Cubature, DegreeTwoExactAndCubicSeparates) {
  const auto rep = cubature_check();
  EXPECT_TRUE(rep.exact_degree2);
  ASSERT_TRUE(rep.separating.has_value());
  for (const auto& row : rep.rows) {
    if (row.a == 0 && row.b == 0) {
      EXPECT_EQ(row.L1, Rational(1));
      EXPECT_EQ(row.L2, Rational(1));
    }
    if (row.a == 1 && row.b == 0) {
      EXPECT_EQ(row.L1, Rational(1, 3));
      EXPECT_EQ(row.integral, Rational(1, 3));
    }
    if (row.a == 3 && row.b == 0) {
      EXPECT_EQ(row.L1, Rational(1, 9));
      EXPECT_EQ(row.L2, Rational(1, 12));
      EXPECT_EQ(row.integral, Rational(1, 10));
    }
  }
}

// Independent check of the integral formula by a fine midpoint rule.
TEST(Cubature, IntegralFormulaAgainstQuadrature) {
  const auto rep = cubature_check();
  const int N = 400;
  for (const auto& row : rep.rows) {
    double s = 0.0;
    const double h = 1.0 / N;
    for (int i = 0; i < N; ++i) {
      for (int j = 0; i + j < N; ++j) {
        // lower triangle cell centroid, then upper one when it fits
        const double x = (i + 1.0 / 3) * h, y = (j + 1.0 / 3) * h;
        s += std::pow(x, row.a) * std::pow(y, row.b) * h * h / 2;
        if (i + j + 1 < N) {
          const double x2 = (i + 2.0 / 3) * h, y2 = (j + 2.0 / 3) * h;
          s += std::pow(x2, row.a) * std::pow(y2, row.b) * h * h / 2;
        }
      }
    }
    EXPECT_NEAR(2 * s, to_double(row.integral), 1e-5) << row.a << "," << row.b;
  }
}
