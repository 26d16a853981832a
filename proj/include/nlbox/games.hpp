#pragma once

#include "nlbox/box.hpp"

namespace nlbox {

/// Two-box strategy for the distributed AND game a ^ b = (x1 ^ y1) & (x2 ^ y2).
///
/// The resource is first distilled with the XOR protocol on `depth` copies
/// (depth 1 uses it as is). Box 1 receives (x1, y2), box 2 receives
/// (x2, y1); Alice outputs x1 x2 ^ a1 ^ a2 and Bob y1 y2 ^ b1 ^ b2.
struct AndGameStrategy {
  Box resource;
  int depth = 1;
};

/// Exact success probability under uniform inputs, by enumerating all input
/// tuples and box outcomes. Throws BoxError for signaling resources or depth < 1.
double and_game_success(const AndGameStrategy& strategy, double tol = kDefaultTol);

/// p^2 + (1 - p)^2 with p = (4 + S) / 8, S the CHSH functional of the
/// (distilled) resource.
double and_game_success_closed(const AndGameStrategy& strategy, double tol = kDefaultTol);

/// Success of the deterministic local pair a = f(x1, x2), b = g(y1, y2);
/// bit (2 x1 + x2) of f is Alice's output.
double and_game_deterministic(unsigned alice_table, unsigned bob_table);

/// Best success over all 16 x 16 deterministic local strategies.
double classical_and_optimum();

}  // namespace nlbox
