#include "nlbox/wiring.hpp"

#include <cmath>
#include <sstream>

namespace nlbox {

namespace {

void require_non_signaling(const Box& box, double tol, const char* what) {
  const auto ns = is_non_signaling(box, tol);
  if (!ns.non_signaling) {
    throw BoxError(std::string(what) + ": box is signaling (marginal discrepancy " +
                   std::to_string(ns.max_discrepancy) + ")");
  }
}

// Accumulates sum over outcome tuples of the product of row probabilities,
// bucketed by the parities of Alice's and Bob's outputs.
void xor_enumerate(const std::array<double, 4>& row, int remaining, int parity_a, int parity_b, double weight,
                   std::array<double, 4>& out) {
  if (remaining == 0) {
    out[col_index(parity_a, parity_b)] += weight;
    return;
  }
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const double p = row[col_index(a, b)];
      if (p == 0.0) continue;
      xor_enumerate(row, remaining - 1, parity_a ^ a, parity_b ^ b, weight * p, out);
    }
  }
}

}  // namespace

Box compose_xor(const Box& box, int n, double tol) {
  if (n < 1 || n > kMaxXorCopies) {
    throw BoxError("compose_xor: n must be in [1, " + std::to_string(kMaxXorCopies) + "], got " +
                   std::to_string(n));
  }
  require_non_signaling(box, tol, "compose_xor");
  Table out{};
  for (int r = 0; r < 4; ++r) xor_enumerate(box.matrix()[r], n, 0, 0, 1.0, out[r]);
  return Box(out);
}

Box compose(const Box& box, const XorProtocol& protocol, double tol) { return compose_xor(box, protocol.n, tol); }

Correlators xor_correlator_law(const Correlators& c, int n) {
  if (n < 1) throw BoxError("xor_correlator_law: n must be positive");
  return {std::pow(c.x00, n), std::pow(c.x01, n), std::pow(c.x10, n), std::pow(c.x11, n)};
}

Correlators xor_correlator_law(const Box& box, int n) { return xor_correlator_law(correlators(box), n); }

AdaptiveStrategy AdaptiveStrategy::from_code(std::uint32_t code) {
  if (code >= kCount) throw BoxError("strategy code out of range: " + std::to_string(code));
  return AdaptiveStrategy(code);
}

AdaptiveStrategy AdaptiveStrategy::from_maps(int order, unsigned first_input, unsigned second_input,
                                             unsigned output) {
  if (order < 0 || order > 1 || first_input > 0x3u || second_input > 0xFu || output > 0xFFu) {
    throw BoxError("strategy map out of range");
  }
  return AdaptiveStrategy(static_cast<std::uint32_t>(order) | (first_input << 1) | (second_input << 3) |
                          (output << 7));
}

AdaptiveStrategy AdaptiveStrategy::xor_strategy() {
  // first_input(x) = x, second_input(x, o) = x, output = out1 ^ out2.
  return from_maps(0, 0b10, 0b1100, 0b01100110);
}

AdaptiveStrategy AdaptiveStrategy::project_first() {
  // output(x, o1, o2) = o1: bits 2,3 and 6,7.
  return from_maps(0, 0b10, 0b1100, 0b11001100);
}

std::string AdaptiveStrategy::describe() const {
  std::ostringstream out;
  out << "first box " << first_box() << "; first input [x=0:" << first_input(0) << ", x=1:" << first_input(1)
      << "]; second input [";
  for (int x = 0; x < 2; ++x) {
    for (int o = 0; o < 2; ++o) out << (x || o ? ", " : "") << x << o << ':' << second_input(x, o);
  }
  out << "]; output [";
  for (int x = 0; x < 2; ++x) {
    for (int o1 = 0; o1 < 2; ++o1) {
      for (int o2 = 0; o2 < 2; ++o2) out << (x || o1 || o2 ? ", " : "") << x << o1 << o2 << ':' << output(x, o1, o2);
    }
  }
  out << ']';
  return out.str();
}

Table compose_wiring2_unchecked(const Table& box, AdaptiveStrategy alice, AdaptiveStrategy bob) {
  Table out{};
  const int fa = alice.first_box();
  const int fb = bob.first_box();
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      auto& row = out[row_index(x, y)];
      // Outputs indexed by query order: a1 from Alice's first box, a2 from her second.
      for (int a1 = 0; a1 < 2; ++a1) {
        for (int a2 = 0; a2 < 2; ++a2) {
          std::array<int, 2> a_phys{};
          std::array<int, 2> x_phys{};
          a_phys[fa] = a1;
          a_phys[1 - fa] = a2;
          x_phys[fa] = alice.first_input(x);
          x_phys[1 - fa] = alice.second_input(x, a1);
          const int a = alice.output(x, a1, a2);
          for (int b1 = 0; b1 < 2; ++b1) {
            for (int b2 = 0; b2 < 2; ++b2) {
              std::array<int, 2> b_phys{};
              std::array<int, 2> y_phys{};
              b_phys[fb] = b1;
              b_phys[1 - fb] = b2;
              y_phys[fb] = bob.first_input(y);
              y_phys[1 - fb] = bob.second_input(y, b1);
              const int b = bob.output(y, b1, b2);
              const double p = box[row_index(x_phys[0], y_phys[0])][col_index(a_phys[0], b_phys[0])] *
                               box[row_index(x_phys[1], y_phys[1])][col_index(a_phys[1], b_phys[1])];
              row[col_index(a, b)] += p;
            }
          }
        }
      }
    }
  }
  return out;
}

Box compose_wiring2(const Box& box, const Wiring2& wiring, double tol) {
  require_non_signaling(box, tol, "compose_wiring2");
  Box result(compose_wiring2_unchecked(box.matrix(), wiring.alice, wiring.bob));
  require_non_signaling(result, tol, "compose_wiring2 result");
  return result;
}

}  // namespace nlbox
