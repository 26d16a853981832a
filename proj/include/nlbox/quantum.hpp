#pragma once

#include "nlbox/box.hpp"

namespace nlbox {

struct QuantumVerdict {
  bool quantum = false;
  /// max over the four arcsin inequalities of (|lhs| - pi); <= 0 when satisfied.
  double worst_slack = 0.0;
};

/// Arcsine criterion for quantum-realizable correlators: for every xy,
/// |asin X_xy + asin X_x̄y + asin X_xȳ - asin X_x̄ȳ| <= pi.
/// Throws BoxError if some |X| exceeds 1 + tol.
QuantumVerdict is_quantum_correlators(const Correlators& c, double tol = kDefaultTol);

struct QuantumBoxVerdict {
  bool quantum = false;
  double worst_slack = 0.0;
  /// False when the marginals are not uniform: the verdict then only
  /// certifies the correlators, not the box itself.
  bool full_box = true;
};

/// Throws BoxError for signaling boxes.
QuantumBoxVerdict is_quantum_box(const Box& box, double tol = kDefaultTol);

/// Necessary condition only: the largest CHSH value is at most 2√2.
bool tsirelson_check(const Correlators& c, double tol = kDefaultTol);

}  // namespace nlbox
