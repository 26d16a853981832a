#include "nlbox/games.hpp"

#include <algorithm>

#include "nlbox/wiring.hpp"

namespace nlbox {

namespace {

Box distilled_resource(const AndGameStrategy& strategy, double tol) {
  if (strategy.depth < 1) throw BoxError("AND game: depth must be at least 1");
  const auto ns = is_non_signaling(strategy.resource, tol);
  if (!ns.non_signaling) throw BoxError("AND game: resource is signaling");
  return strategy.depth == 1 ? strategy.resource : compose_xor(strategy.resource, strategy.depth, tol);
}

int and_target(int x1, int x2, int y1, int y2) { return (x1 ^ y1) & (x2 ^ y2); }

}  // namespace

double and_game_success(const AndGameStrategy& strategy, double tol) {
  const Box box = distilled_resource(strategy, tol);
  double total = 0.0;
  for (int inputs = 0; inputs < 16; ++inputs) {
    const int x1 = (inputs >> 3) & 1;
    const int x2 = (inputs >> 2) & 1;
    const int y1 = (inputs >> 1) & 1;
    const int y2 = inputs & 1;
    const int target = and_target(x1, x2, y1, y2);
    for (int outcomes = 0; outcomes < 16; ++outcomes) {
      const int a1 = (outcomes >> 3) & 1;
      const int b1 = (outcomes >> 2) & 1;
      const int a2 = (outcomes >> 1) & 1;
      const int b2 = outcomes & 1;
      const int a = (x1 & x2) ^ a1 ^ a2;
      const int b = (y1 & y2) ^ b1 ^ b2;
      if ((a ^ b) != target) continue;
      total += box.p(a1, b1, x1, y2) * box.p(a2, b2, x2, y1);
    }
  }
  return total / 16.0;
}

double and_game_success_closed(const AndGameStrategy& strategy, double tol) {
  const Box box = distilled_resource(strategy, tol);
  const double p = (4.0 + chsh_s(correlators(box))) / 8.0;
  return p * p + (1.0 - p) * (1.0 - p);
}

double and_game_deterministic(unsigned alice_table, unsigned bob_table) {
  int wins = 0;
  for (int inputs = 0; inputs < 16; ++inputs) {
    const int x1 = (inputs >> 3) & 1;
    const int x2 = (inputs >> 2) & 1;
    const int y1 = (inputs >> 1) & 1;
    const int y2 = inputs & 1;
    const int a = static_cast<int>((alice_table >> (2 * x1 + x2)) & 1u);
    const int b = static_cast<int>((bob_table >> (2 * y1 + y2)) & 1u);
    if ((a ^ b) == and_target(x1, x2, y1, y2)) ++wins;
  }
  return wins / 16.0;
}

double classical_and_optimum() {
  double best = 0.0;
  for (unsigned f = 0; f < 16; ++f) {
    for (unsigned g = 0; g < 16; ++g) best = std::max(best, and_game_deterministic(f, g));
  }
  return best;
}

}  // namespace nlbox
