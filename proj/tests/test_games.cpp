#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nlbox/games.hpp"
#include "nlbox/quantum.hpp"
#include "nlbox/wiring.hpp"
#include "test_support.hpp"

using namespace nlbox;

namespace {
Box tsirelson_box() {
  const double t = 1.0 / std::numbers::sqrt2;
  return from_correlators({t, t, t, -t});
}
}  // namespace

TEST(AndGame, PrBoxWinsAlways) { EXPECT_NEAR(and_game_success({pr(), 1}), 1.0, 1e-15); }

TEST(AndGame, TsirelsonPointGivesThreeQuarters) {
  EXPECT_NEAR(and_game_success({tsirelson_box(), 1}), 0.75, 1e-12);
}

TEST(AndGame, DistilledEpsResourceBeatsClassical) {
  // S = 3 - 0.4^4 = 2.9744, p = 6.9744 / 8 = 0.8718, p^2 + (1-p)^2 = 0.77647048
  const double success = and_game_success({p_eps(0.3), 4});
  EXPECT_NEAR(success, 0.77647048, 1e-12);
  EXPECT_GT(success, classical_and_optimum());
}

TEST(AndGame, ClassicalOptimum) {
  EXPECT_DOUBLE_EQ(classical_and_optimum(), 0.75);
  // a = b = 0 wins exactly when the target is 0: the target is 1 only for
  // x1 != y1 and x2 != y2, i.e. 4 of the 16 input tuples.
  int zero_targets = 0;
  for (int t = 0; t < 16; ++t) zero_targets += (((t >> 3) ^ (t >> 1)) & ((t >> 2) ^ t) & 1) == 0;
  EXPECT_DOUBLE_EQ(and_game_deterministic(0, 0), zero_targets / 16.0);
}

TEST(AndGame, ClosedFormMatchesEnumeration) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 100; ++i) {
    const Box b = testkit::random_non_signaling(rng);
    const AndGameStrategy s{b, 1 + i % 3};
    ASSERT_NEAR(and_game_success(s), and_game_success_closed(s), 1e-12);
  }
}

TEST(AndGame, IncreasingInChsh) {
  double previous = -1.0;
  for (int k = 0; k <= 100; ++k) {
    const double eta = 0.5 + 0.5 * k / 100.0;  // S = 4 eta from 2 to 4
    const double success = and_game_success({isotropic(eta), 1});
    EXPECT_GT(success, previous);
    previous = success;
  }
}

TEST(AndGame, QuantumResourcesGiveNoAdvantage) {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> corr(-1.0, 1.0);
  const double classical = classical_and_optimum();
  int tested = 0;
  for (int i = 0; i < 5000; ++i) {
    const Correlators c{corr(rng), corr(rng), corr(rng), corr(rng)};
    if (!is_quantum_correlators(c).quantum) continue;
    ++tested;
    ASSERT_LE(and_game_success({from_correlators(c), 1}), classical + 1e-9);
  }
  EXPECT_GT(tested, 100);
}

TEST(AndGame, WeakEpsResourceDistilledBeyondClassical) {
  const Box weak = p_eps(0.1);
  EXPECT_NEAR(nl(weak), 2.2, 1e-12);
  EXPECT_FALSE(is_quantum_box(weak).quantum);
  EXPECT_LE(and_game_success({weak, 1}), classical_and_optimum());
  EXPECT_GT(and_game_success({weak, 8}), classical_and_optimum());
}

TEST(AndGame, BadArguments) {
  EXPECT_THROW(and_game_success({pr(), 0}), BoxError);
  Table t = noise().matrix();
  t[row_index(0, 0)] = {1, 0, 0, 0};
  t[row_index(0, 1)] = {0, 0, 1, 0};
  EXPECT_THROW(and_game_success({Box(t), 1}), BoxError);
}
