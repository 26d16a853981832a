#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "nlbox/distillation.hpp"
#include "nlbox/quantum.hpp"
#include "nlbox/wiring.hpp"

using namespace nlbox;

TEST(ClosedForm, EpsExamples) {
  EXPECT_NEAR(nl_closed_eps(0.1, 1), 2.2, 1e-15);
  EXPECT_NEAR(nl_closed_eps(0.1, 3), 2.488, 1e-15);
  for (int n = 1; n <= 10; ++n) EXPECT_DOUBLE_EQ(nl_closed_eps(0.5, n), 3.0);
  EXPECT_NEAR(nl(compose_xor(p_eps(0.1), 3)), 2.488, 1e-12);
}

TEST(ClosedForm, EpsDeltaExamples) {
  EXPECT_NEAR(nl_closed_eps_delta(0.01, 0.002, 2), 2.015648, 1e-14);
  EXPECT_NEAR(nl_closed_eps_delta(0.01, 0.002, 1), 2.008, 1e-14);
  for (int n = 1; n <= 6; ++n) EXPECT_EQ(nl_closed_eps_delta(0.27, 0.0, n), nl_closed_eps(0.27, n));
}

TEST(ClosedForm, RangeErrors) {
  EXPECT_THROW(nl_closed_eps(0.0, 2), BoxError);
  EXPECT_THROW(nl_closed_eps(0.2, 0), BoxError);
  EXPECT_THROW(nl_closed_eps_delta(0.2, 1.5, 2), BoxError);
}

TEST(Distillable, Examples) {
  EXPECT_TRUE(is_distillable_at(0.1, 0.0, 2));
  EXPECT_FALSE(is_distillable_at(0.5, 0.0, 2));
  EXPECT_TRUE(is_distillable_at(0.01, 0.002, 2));
  // NL_in below 2 is not a distillation even if the value grows.
  EXPECT_FALSE(is_distillable_at(0.45, 0.2, 2));
}

// Where 0 <= delta <= eps <= 1/2 the S functional is the largest CHSH value,
// so the closed form equals the brute-force NL.
TEST(ClosedForm, MatchesBruteForceNlOnParameterGrid) {
  for (int i = 0; i <= 20; ++i) {
    const double eps = 0.025 + 0.475 * i / 20.0;
    for (int j = 0; j <= 20; ++j) {
      const double delta = eps * j / 20.0;
      const Box resource = p_eps_delta(eps, delta);
      for (int n = 1; n <= 6; ++n) {
        ASSERT_NEAR(nl(compose_xor(resource, n)), nl_closed_eps_delta(eps, delta, n), 1e-9)
            << eps << ' ' << delta << ' ' << n;
      }
    }
  }
}

// On the whole parameter square the closed form is the S functional of the composite.
TEST(ClosedForm, MatchesBruteForceChshFunctionalEverywhere) {
  for (int i = 0; i <= 20; ++i) {
    const double eps = std::max(1e-3, i / 20.0);
    for (int j = 0; j <= 20; ++j) {
      const double delta = j / 20.0;
      const Box resource = p_eps_delta(eps, delta);
      for (int n = 1; n <= 6; ++n) {
        ASSERT_NEAR(chsh_s(correlators(compose_xor(resource, n))), nl_closed_eps_delta(eps, delta, n), 1e-9);
      }
    }
  }
}

TEST(ClosedForm, StrictlyIncreasingWithLimitThree) {
  for (double eps = 0.01; eps < 0.5; eps += 0.01) {
    for (int n = 2; n <= 40; ++n) {
      // Once (1 - 2 eps)^n is below the spacing of doubles near 3 the values tie.
      if (std::pow(1 - 2 * eps, n - 1) > 1e-14) {
        ASSERT_GT(nl_closed_eps(eps, n), nl_closed_eps(eps, n - 1));
      } else {
        ASSERT_GE(nl_closed_eps(eps, n), nl_closed_eps(eps, n - 1));
      }
    }
    const double gap = 3.0 - nl_closed_eps(eps, 40);
    EXPECT_NEAR(gap, std::pow(1 - 2 * eps, 40), 1e-12);
    if (eps >= 0.05) EXPECT_LT(gap, 0.0148);
    if (eps >= 0.15) EXPECT_LT(gap, 1e-6);
  }
}

TEST(Report, BruteAndClosedAgree) {
  const auto report = distillation_report({0.01, 0.002}, 1, 6);
  ASSERT_EQ(report.rows.size(), 6u);
  EXPECT_LE(report.max_discrepancy(), 1e-9);
  EXPECT_NEAR(report.nl_in, 2.008, 1e-12);
  EXPECT_TRUE(report.rows[1].resource_quantum);
  EXPECT_FALSE(report.rows[0].distilled);
  EXPECT_TRUE(report.rows[1].distilled);
  EXPECT_THROW(distillation_report({0.1, 0.0}, 3, 2), BoxError);
}

TEST(Optimizer, ReproducesOnePlusRootTwo) {
  const auto opt = optimize_quantum_distillation({});
  EXPECT_EQ(opt.n, 2);
  EXPECT_NEAR(opt.nl_out, 1.0 + std::numbers::sqrt2, 1e-4);
  EXPECT_NEAR(opt.eps, 0.30866, 1e-3);
  EXPECT_NEAR(opt.delta, 0.03806, 1e-3);
  EXPECT_GT(opt.nl_out, opt.nl_in);
  // The optimum lies on the frontier 3 asin(1 - 2 delta) - asin(1 - 2 eps) = pi.
  EXPECT_NEAR(3 * std::asin(1 - 2 * opt.delta) - std::asin(1 - 2 * opt.eps), std::numbers::pi, 1e-4);
  // Analytic frontier point: 1 - 2 delta = sin(3 pi / 8), 1 - 2 eps = sin(pi / 8).
  EXPECT_NEAR(1 - 2 * opt.delta, std::sin(3 * std::numbers::pi / 8), 1e-4);
  EXPECT_NEAR(1 - 2 * opt.eps, std::sin(std::numbers::pi / 8), 1e-4);
  const double u = 1 - 2 * opt.delta;
  EXPECT_TRUE(is_quantum_correlators({u, u, u, 1 - 2 * opt.eps}).quantum);
}

TEST(Optimizer, NeverExceedsCeiling) {
  for (int n_max : {2, 3, 7, 12}) {
    OptimizerSettings s;
    s.n_max = n_max;
    s.coarse_step = 2e-3;
    const auto opt = optimize_quantum_distillation(s);
    EXPECT_LE(opt.nl_out, 1.0 + std::numbers::sqrt2 + 1e-4) << n_max;
    EXPECT_EQ(opt.n, 2);
  }
}

TEST(Optimizer, DeltaZeroIsInfeasible) {
  OptimizerSettings s;
  s.fixed_delta = 0.0;
  EXPECT_FALSE(find_quantum_distillation_optimum(s).has_value());
  EXPECT_THROW(optimize_quantum_distillation(s), BoxError);
}

TEST(Optimizer, SettingsAreChecked) {
  OptimizerSettings s;
  s.n_max = 1;
  EXPECT_THROW(optimize_quantum_distillation(s), BoxError);
  s = {};
  s.resolution = 0.0;
  EXPECT_THROW(optimize_quantum_distillation(s), BoxError);
}
