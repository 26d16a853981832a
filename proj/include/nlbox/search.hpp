#pragma once

#include <cstddef>
#include <vector>

#include "nlbox/box.hpp"
#include "nlbox/symmetry.hpp"
#include "nlbox/wiring.hpp"

namespace nlbox {

struct StrategyClass {
  /// Smallest strategy code whose behaviour equals `canonical`.
  AdaptiveStrategy representative;
  StrategyBehavior canonical = 0;
  /// Number of raw strategies whose canonical form is this class.
  std::size_t members = 0;
};

struct StrategyEnumeration {
  std::size_t raw_count = 0;
  std::size_t behavior_classes = 0;
  /// Sorted by canonical behaviour; this order is the search tie-break.
  std::vector<StrategyClass> classes;
};

/// All AdaptiveStrategy::kCount strategies, merged by behaviour and then by
/// outer relabeling of the party's input and output. Computed once.
const StrategyEnumeration& enumerate_strategies();

struct SearchResult {
  Box input;
  double nl_in = 0.0;
  double nl_out = 0.0;
  Wiring2 best;
  std::size_t raw_strategies = 0;
  std::size_t behavior_classes = 0;
  std::size_t canonical_classes = 0;
  std::size_t pairs_evaluated = 0;
  /// Largest marginal discrepancy seen over all composites.
  double max_signaling = 0.0;
  double wall_seconds = 0.0;
};

/// Exhaustive search over pairs of deterministic two-copy strategies for the
/// largest NL of the composite. Ties go to the lexicographically smallest
/// (alice, bob) pair in class order, so the result does not depend on `jobs`.
/// Throws BoxError for signaling input.
SearchResult search_2copy(const Box& box, int jobs = 1, double tol = kDefaultTol);

/// Largest |P(a|x,y) - P(a|x,y')| or |P(b|x,y) - P(b|x',y)| in a table.
double max_marginal_discrepancy(const Table& table);

}  // namespace nlbox
