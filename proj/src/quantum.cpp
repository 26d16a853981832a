#include "nlbox/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nlbox {

QuantumVerdict is_quantum_correlators(const Correlators& c, double tol) {
  std::array<double, 4> angle{};
  const auto xs = c.as_array();
  for (int r = 0; r < 4; ++r) {
    if (!(std::abs(xs[r]) <= 1.0 + tol)) {
      throw BoxError("correlator magnitude exceeds 1: " + std::to_string(xs[r]));
    }
    // Saturated points overshoot 1 by rounding; asin must not see that.
    angle[r] = std::asin(std::clamp(xs[r], -1.0, 1.0));
  }
  auto at = [&](int x, int y) { return angle[row_index(x, y)]; };
  double worst = -std::numbers::pi;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      const double lhs = at(x, y) + at(1 - x, y) + at(x, 1 - y) - at(1 - x, 1 - y);
      worst = std::max(worst, std::abs(lhs) - std::numbers::pi);
    }
  }
  return {worst <= tol, worst};
}

QuantumBoxVerdict is_quantum_box(const Box& box, double tol) {
  const auto ns = is_non_signaling(box, tol);
  if (!ns.non_signaling) throw BoxError("is_quantum_box requires a non-signaling box");

  bool uniform = true;
  for (int party = 0; party < 2; ++party) {
    for (int input = 0; input < 2; ++input) {
      if (std::abs(marginal_zero(box, party, input) - 0.5) > tol) uniform = false;
    }
  }
  const auto verdict = is_quantum_correlators(correlators(box), tol);
  return {verdict.quantum, verdict.worst_slack, uniform};
}

bool tsirelson_check(const Correlators& c, double tol) {
  return nl(c) <= 2.0 * std::numbers::sqrt2 + tol;
}

}  // namespace nlbox
