#pragma once

#include <cstdint>
#include <vector>

#include "nlbox/box.hpp"
#include "nlbox/wiring.hpp"

namespace nlbox {

/// Local reversible relabeling of one party: input x -> x ^ flip_input,
/// output a -> a ^ (flip_output_if_one & x) ^ flip_output, where x is the
/// new (relabeled) input.
struct LocalRelabeling {
  int flip_input = 0;
  int flip_output_if_one = 0;
  int flip_output = 0;

  friend bool operator==(const LocalRelabeling&, const LocalRelabeling&) = default;
};

struct Relabeling {
  LocalRelabeling alice;
  LocalRelabeling bob;

  bool is_identity() const { return *this == Relabeling{}; }
  /// The transformed box Q with Q(a'b'|x'y') = P(ab|xy).
  Box apply(const Box& box) const;
  friend bool operator==(const Relabeling&, const Relabeling&) = default;
};

/// All 64 local relabelings; index 0 is the identity.
const std::vector<Relabeling>& relabelings();

/// The relabelings that leave S = X00 + X01 + X10 - X11 unchanged on every box.
const std::vector<Relabeling>& chsh_stabilizer();

/// Averages the box over chsh_stabilizer(). The result has uniform marginals
/// and correlators (η, η, η, -η) with 4η = S of the input. Throws BoxError
/// for signaling input.
Box depolarize(const Box& box, double tol = kDefaultTol);

/// Lexicographically smallest table in the orbit of the box under relabelings().
Box canonical_form(const Box& box);

/// Truth table of a strategy against deterministic boxes: bit
/// 16 x + 4 r0 + r1 is the party's output on input x when physical box k
/// answers input i with bit i of r_k. Strategies with equal behaviour yield
/// identical composites with any partner on non-signaling boxes.
using StrategyBehavior = std::uint32_t;

StrategyBehavior behavior(AdaptiveStrategy strategy);

/// Behaviour of the strategy after relabeling its outer input and output.
StrategyBehavior relabel_behavior(StrategyBehavior behavior, const LocalRelabeling& relabeling);

/// Smallest behaviour over the eight outer relabelings of the strategy.
StrategyBehavior canonical_form(AdaptiveStrategy strategy);

}  // namespace nlbox
