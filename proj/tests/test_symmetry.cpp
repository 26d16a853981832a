#include <gtest/gtest.h>

#include <map>
#include <random>

#include "nlbox/symmetry.hpp"
#include "test_support.hpp"

using namespace nlbox;

namespace {
constexpr double kTol = 1e-9;

bool is_isotropic_pattern(const Correlators& c, double eta, double tol) {
  return std::abs(c.x00 - eta) <= tol && std::abs(c.x01 - eta) <= tol && std::abs(c.x10 - eta) <= tol &&
         std::abs(c.x11 + eta) <= tol;
}
}  // namespace

TEST(Relabelings, GroupShape) {
  const auto& all = relabelings();
  ASSERT_EQ(all.size(), 64u);
  EXPECT_TRUE(all[0].is_identity());
  std::mt19937_64 rng(1);
  const Box b = testkit::random_non_signaling(rng);
  EXPECT_EQ(all[0].apply(b), b);
  EXPECT_EQ(chsh_stabilizer().size(), 8u);
}

TEST(Relabelings, OutputFlipNegatesCorrelators) {
  const Relabeling flip{{0, 0, 1}, {}};
  EXPECT_EQ(correlators(flip.apply(pr())), (Correlators{-1, -1, -1, 1}));
}

TEST(Relabelings, PreserveNonSignalingAndNl) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    const Box b = testkit::random_non_signaling(rng);
    for (const auto& sigma : relabelings()) {
      const Box image = sigma.apply(b);
      ASSERT_TRUE(is_non_signaling(image, kTol).non_signaling);
      ASSERT_NEAR(nl(image), nl(b), 1e-12);
    }
  }
}

TEST(Depolarize, Examples) {
  EXPECT_LE(testkit::max_abs_diff(depolarize(isotropic(0.7)), isotropic(0.7)), kTol);
  const Box iso = depolarize(p_eps(0.1));
  EXPECT_TRUE(is_isotropic_pattern(correlators(iso), 0.55, kTol));
  EXPECT_NEAR(nl(iso), 2.2, kTol);
  EXPECT_LE(testkit::max_abs_diff(iso, isotropic(0.55)), kTol);
  EXPECT_LE(testkit::max_abs_diff(depolarize(pr()), pr()), kTol);
}

TEST(Depolarize, PreservesChshAndIsotropizes) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    const Box b = testkit::random_non_signaling(rng);
    const double s = chsh_s(correlators(b));
    const Box iso = depolarize(b);
    const auto c = correlators(iso);
    ASSERT_NEAR(chsh_s(c), s, kTol);
    ASSERT_TRUE(is_isotropic_pattern(c, s / 4.0, kTol));
    for (int party = 0; party < 2; ++party) {
      for (int input = 0; input < 2; ++input) ASSERT_NEAR(marginal_zero(iso, party, input), 0.5, kTol);
    }
    ASSERT_LE(testkit::max_abs_diff(depolarize(iso), iso), kTol);
  }
}

TEST(CanonicalBox, OrbitsAndSeparation) {
  const Relabeling global_flip{{0, 0, 1}, {0, 0, 1}};
  const Relabeling alice_flip{{0, 0, 1}, {}};
  EXPECT_EQ(canonical_form(pr()), canonical_form(global_flip.apply(pr())));
  EXPECT_EQ(canonical_form(pr()), canonical_form(alice_flip.apply(pr())));
  EXPECT_NE(canonical_form(p_eps(0.1)), canonical_form(p_eps(0.2)));

  std::mt19937_64 rng(4);
  for (int i = 0; i < 50; ++i) {
    const Box b = testkit::random_non_signaling(rng);
    const Box canonical = canonical_form(b);
    for (const auto& sigma : relabelings()) ASSERT_EQ(canonical_form(sigma.apply(b)), canonical);
  }
}

TEST(CanonicalStrategy, UnreadEntriesDoNotMatter) {
  // Output ignores out2, so the second input map is never read.
  const auto a = AdaptiveStrategy::from_maps(0, 0b10, 0b0000, 0b11001100);
  const auto b = AdaptiveStrategy::from_maps(0, 0b10, 0b1011, 0b11001100);
  EXPECT_EQ(behavior(a), behavior(b));
  EXPECT_EQ(canonical_form(a), canonical_form(b));
  EXPECT_NE(behavior(AdaptiveStrategy::xor_strategy()), behavior(AdaptiveStrategy::project_first()));
}

TEST(CanonicalStrategy, OuterRelabelingOrbit) {
  const auto s = AdaptiveStrategy::xor_strategy();
  for (int code = 0; code < 8; ++code) {
    const LocalRelabeling r{code & 1, (code >> 1) & 1, (code >> 2) & 1};
    EXPECT_LE(canonical_form(s), relabel_behavior(behavior(s), r));
  }
}

// Strategies with the same behaviour must give the same composite with any
// partner on any non-signaling box.
TEST(CanonicalStrategy, EqualBehaviourMeansEqualComposites) {
  std::map<StrategyBehavior, std::vector<std::uint32_t>> groups;
  for (std::uint32_t code = 0; code < AdaptiveStrategy::kCount; ++code) {
    groups[behavior(AdaptiveStrategy::from_code(code))].push_back(code);
  }
  std::vector<const std::vector<std::uint32_t>*> multi;
  for (const auto& [_, codes] : groups) {
    if (codes.size() > 1) multi.push_back(&codes);
  }
  ASSERT_FALSE(multi.empty());

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::uint32_t> any(0, AdaptiveStrategy::kCount - 1);
  for (int i = 0; i < 2000; ++i) {
    const auto& codes = *multi[std::uniform_int_distribution<std::size_t>(0, multi.size() - 1)(rng)];
    std::uniform_int_distribution<std::size_t> pick(0, codes.size() - 1);
    const auto s1 = AdaptiveStrategy::from_code(codes[pick(rng)]);
    const auto s2 = AdaptiveStrategy::from_code(codes[pick(rng)]);
    const auto partner = AdaptiveStrategy::from_code(any(rng));
    const Box b = testkit::random_non_signaling(rng);
    const Box lhs(compose_wiring2_unchecked(b.matrix(), s1, partner));
    const Box rhs(compose_wiring2_unchecked(b.matrix(), s2, partner));
    ASSERT_LE(testkit::max_abs_diff(lhs, rhs), 1e-12) << s1.code() << ' ' << s2.code();
    const Box lhs_bob(compose_wiring2_unchecked(b.matrix(), partner, s1));
    const Box rhs_bob(compose_wiring2_unchecked(b.matrix(), partner, s2));
    ASSERT_LE(testkit::max_abs_diff(lhs_bob, rhs_bob), 1e-12);
  }
}
