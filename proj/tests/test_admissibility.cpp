#include <gtest/gtest.h>

#include <stdexcept>

#include "nnv/metrics.hpp"
#include "oracles.hpp"

namespace nnv {
namespace {

TEST(IsAdmissible, KnownExamples) {
  EXPECT_TRUE(is_admissible(1, 0, 2));
  EXPECT_FALSE(is_admissible(1, 1, 2));
  EXPECT_TRUE(is_admissible(1, 1, 3));
  EXPECT_FALSE(is_admissible(1, 1.5, 3));
  EXPECT_TRUE(is_admissible(0.5, 0.5, 2));
  EXPECT_FALSE(is_admissible(0.5, 0.5 + 1e-6, 2));
}

TEST(IsAdmissible, OverridePressureValue) {
  // Vertex at x = 2.5 / 3 gives 6.25 / 6.
  EXPECT_NEAR(max_override_pressure(1, 1.5, 3), 6.25 / 6.0, 1e-12);
  EXPECT_NEAR(max_override_pressure_scan(1, 1.5, 3, 1e-4), 6.25 / 6.0, 1e-8);
}

TEST(IsAdmissible, CEqualsOneAdmitsUpToMMinusTwo) {
  for (std::size_t m = 3; m <= 8; ++m) {
    const double limit = static_cast<double>(m) - 2.0;
    EXPECT_TRUE(is_admissible(1, limit, m)) << m;
    EXPECT_TRUE(is_admissible(1, 0.5 * limit, m)) << m;
    EXPECT_FALSE(is_admissible(1, limit + 1e-3, m)) << m;
  }
}

TEST(IsAdmissible, RejectsSmallM) { EXPECT_THROW(is_admissible(1, 0, 1), std::invalid_argument); }

TEST(IsAdmissible, ClosedFormAgreesWithScanOnGrid) {
  for (std::size_t m = 2; m <= 5; ++m) {
    const double b_span = 4.0 * static_cast<double>(m);
    int disagreements = 0;
    for (int i = 0; i < 100; ++i) {
      for (int j = 0; j < 100; ++j) {
        const double c = i / 99.0;
        const double b = b_span * j / 99.0;
        if (!check_admissibility(c, b, m, 1e-4).agree()) ++disagreements;
      }
    }
    EXPECT_EQ(disagreements, 0) << "m = " << m;
  }
}

TEST(IsAdmissible, MatchesUnrearrangedOverrideOracle) {
  // Independent route: the metric inequality before it was rearranged into a
  // quadratic. Points within 1e-3 of the boundary are skipped, the oracle's
  // X grid cannot resolve them.
  for (std::size_t m = 2; m <= 5; ++m) {
    for (int i = 0; i <= 10; ++i) {
      for (int j = 0; j <= 12; ++j) {
        const double c = i / 10.0;
        const double b = 0.5 * j;
        const double bmax = oracle::boundary_closed_form(m, c);
        if (std::fabs(b - bmax) < 1e-3) continue;
        EXPECT_EQ(is_admissible(c, b, m), oracle::admissible_by_override_scan(c, b, m, 1e-3))
            << "m=" << m << " c=" << c << " b=" << b;
      }
    }
  }
}

TEST(MaxPenaltyBoundary, KnownAnchors) {
  for (double c : {0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0}) {
    EXPECT_NEAR(max_penalty_boundary(2, c), 1.0 - c, kBoundaryTolerance) << c;
  }
  EXPECT_NEAR(max_penalty_boundary(4, 1.0), 2.0, kBoundaryTolerance);
  EXPECT_NEAR(max_penalty_boundary(3, 1.0), 1.0, kBoundaryTolerance);
}

TEST(MaxPenaltyBoundary, MatchesAnalyticOracle) {
  for (std::size_t m = 2; m <= 8; ++m) {
    for (int i = 0; i <= 20; ++i) {
      const double c = i / 20.0;
      EXPECT_NEAR(max_penalty_boundary(m, c), oracle::boundary_closed_form(m, c), kBoundaryTolerance)
          << "m=" << m << " c=" << c;
    }
  }
}

TEST(MaxPenaltyBoundary, M3AtCZeroCrossCheckedByScan) {
  const double bmax = max_penalty_boundary(3, 0.0);
  EXPECT_NEAR(bmax, 3.0 + 2.0 * std::sqrt(2.0), kBoundaryTolerance);
  EXPECT_TRUE(oracle::admissible_by_override_scan(0.0, bmax - 1e-5, 3, 1e-5));
  EXPECT_FALSE(oracle::admissible_by_override_scan(0.0, bmax + 1e-5, 3, 1e-5));
}

TEST(MaxPenaltyBoundary, NestedCurves) {
  for (int i = 0; i <= 50; ++i) {
    const double c = i / 50.0;
    double prev = -1.0;
    for (std::size_t m = 2; m <= 6; ++m) {
      const double b = max_penalty_boundary(m, c);
      EXPECT_GE(b, prev - kBoundaryTolerance);
      prev = b;
    }
  }
  for (std::size_t m = 2; m <= 6; ++m) {
    double prev = 1e300;
    for (int i = 0; i <= 50; ++i) {
      const double b = max_penalty_boundary(m, i / 50.0);
      EXPECT_LE(b, prev + kBoundaryTolerance);
      prev = b;
    }
  }
}

TEST(MaxPenaltyCurve, SamplesIncludeBothEnds) {
  const auto curve = max_penalty_curve(2, 0.25);
  ASSERT_EQ(curve.size(), 5u);
  const double expected[] = {1.0, 0.75, 0.5, 0.25, 0.0};
  for (std::size_t k = 0; k < curve.size(); ++k) {
    EXPECT_NEAR(curve[k].c, 0.25 * k, 1e-15);
    EXPECT_NEAR(curve[k].b_max, expected[k], kBoundaryTolerance);
  }
  EXPECT_EQ(max_penalty_curve(3, 0.01).size(), 101u);
  EXPECT_THROW(max_penalty_curve(3, 0.0), std::invalid_argument);
}

TEST(TwoVoterOverride, Examples) {
  auto r = two_voter_override_check(1, 0, 5);
  EXPECT_DOUBLE_EQ(r.a_metric, 5.0);
  EXPECT_DOUBLE_EQ(r.b_metric, 5.0);
  EXPECT_FALSE(r.b_wins);

  r = two_voter_override_check(1, 1, 5);
  EXPECT_NEAR(r.a_metric, 10.0 / 3.0, 1e-12);
  EXPECT_DOUBLE_EQ(r.b_metric, 5.0);
  EXPECT_TRUE(r.b_wins);

  r = two_voter_override_check(0.5, 0.5, 0);
  EXPECT_DOUBLE_EQ(r.a_metric, 10.0);
  EXPECT_DOUBLE_EQ(r.b_metric, 10.0);
  EXPECT_FALSE(r.b_wins);

  EXPECT_THROW(two_voter_override_check(1, 0, 10.5), std::invalid_argument);
}

TEST(TwoVoterOverride, AdmissibleParametersNeverLetBWin) {
  for (int i = 0; i <= 20; ++i) {
    for (int j = 0; j <= 20; ++j) {
      const double c = i / 20.0;
      const double b = j / 20.0;
      if (!is_admissible(c, b, 2)) continue;
      for (int k = 0; k <= 1000; ++k) {
        ASSERT_FALSE(two_voter_override_check(c, b, k / 100.0).b_wins) << c << ' ' << b << ' ' << k;
      }
    }
  }
}

}  // namespace
}  // namespace nnv
