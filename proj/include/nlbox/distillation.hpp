#pragma once

#include <optional>
#include <vector>

#include "nlbox/box.hpp"

namespace nlbox {

/// Margin by which the distilled value must exceed the resource value.
inline constexpr double kDistillMargin = 1e-12;

struct FamilyParams {
  double eps = 0.0;
  double delta = 0.0;
};

/// Throws BoxError unless 0 < eps <= 1 and 0 <= delta <= 1.
void check_family(const FamilyParams& params);

/// 3 - (1 - 2 eps)^n: CHSH value after XOR distillation of n copies of p_eps.
double nl_closed_eps(double eps, int n);
/// 3 (1 - 2 delta)^n - (1 - 2 eps)^n, the same for p_eps_delta.
double nl_closed_eps_delta(double eps, double delta, int n);

/// nl_closed(n) exceeds nl_closed(1) by more than kDistillMargin, and
/// nl_closed(1) > 2 + tol.
bool is_distillable_at(double eps, double delta, int n, double tol = kDefaultTol);

struct DistillationRow {
  int n = 1;
  double nl_closed = 0.0;
  double nl_brute = 0.0;  // NL of compose_xor(p_eps_delta(eps, delta), n)
  bool resource_quantum = false;
  bool distilled = false;
};

struct DistillationReport {
  FamilyParams params;
  double nl_in = 0.0;
  std::vector<DistillationRow> rows;

  /// Largest |nl_closed - nl_brute| over the rows.
  double max_discrepancy() const;
};

/// One row per n in [n_first, n_last]; brute values come from compose_xor.
DistillationReport distillation_report(const FamilyParams& params, int n_first, int n_last,
                                       double tol = kDefaultTol);

struct Optimum {
  int n = 0;
  double eps = 0.0;
  double delta = 0.0;
  double nl_in = 0.0;
  double nl_out = 0.0;
};

struct OptimizerSettings {
  int n_max = 20;
  double coarse_step = 1e-3;
  double resolution = 1e-6;
  /// Pins delta to a fixed value instead of searching over it.
  std::optional<double> fixed_delta;
  double tol = kDefaultTol;
};

/// Grid-plus-refine search for the largest 3(1-2d)^n - (1-2e)^n over
/// 2 <= n <= n_max such that p_eps_delta(e, d) has quantum-realizable
/// correlators and is distillable at n. Ties go to smaller n, then smaller eps.
/// Returns nullopt when no feasible point exists.
std::optional<Optimum> find_quantum_distillation_optimum(const OptimizerSettings& settings);

/// As above, but a missing optimum is an error.
Optimum optimize_quantum_distillation(const OptimizerSettings& settings);

}  // namespace nlbox
