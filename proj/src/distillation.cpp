#include "nlbox/distillation.hpp"

#include <algorithm>
#include <cmath>

#include "nlbox/quantum.hpp"
#include "nlbox/wiring.hpp"

namespace nlbox {

void check_family(const FamilyParams& params) {
  if (!(params.eps > 0.0 && params.eps <= 1.0)) throw BoxError("eps must be in (0, 1]");
  if (!(params.delta >= 0.0 && params.delta <= 1.0)) throw BoxError("delta must be in [0, 1]");
}

double nl_closed_eps(double eps, int n) { return nl_closed_eps_delta(eps, 0.0, n); }

double nl_closed_eps_delta(double eps, double delta, int n) {
  check_family({eps, delta});
  if (n < 1) throw BoxError("n must be positive");
  return 3.0 * std::pow(1.0 - 2.0 * delta, n) - std::pow(1.0 - 2.0 * eps, n);
}

bool is_distillable_at(double eps, double delta, int n, double tol) {
  const double in = nl_closed_eps_delta(eps, delta, 1);
  const double out = nl_closed_eps_delta(eps, delta, n);
  return in > 2.0 + tol && out - in > kDistillMargin;
}

double DistillationReport::max_discrepancy() const {
  double worst = 0.0;
  for (const auto& row : rows) worst = std::max(worst, std::abs(row.nl_closed - row.nl_brute));
  return worst;
}

DistillationReport distillation_report(const FamilyParams& params, int n_first, int n_last, double tol) {
  check_family(params);
  if (n_first < 1 || n_last < n_first) throw BoxError("invalid n range");
  DistillationReport report;
  report.params = params;
  const Box resource = p_eps_delta(params.eps, params.delta);
  report.nl_in = nl(resource);
  const bool quantum = is_quantum_box(resource, tol).quantum;
  for (int n = n_first; n <= n_last; ++n) {
    DistillationRow row;
    row.n = n;
    row.nl_closed = nl_closed_eps_delta(params.eps, params.delta, n);
    row.nl_brute = nl(compose_xor(resource, n, tol));
    row.resource_quantum = quantum;
    row.distilled = is_distillable_at(params.eps, params.delta, n, tol);
    report.rows.push_back(row);
  }
  return report;
}

namespace {

struct Candidate {
  int n = 0;
  double eps = 0.0;
  double delta = 0.0;
  double value = 0.0;
};

bool better(const Candidate& lhs, const std::optional<Candidate>& rhs) {
  if (!rhs) return true;
  if (lhs.value != rhs->value) return lhs.value > rhs->value;
  if (lhs.n != rhs->n) return lhs.n < rhs->n;
  if (lhs.eps != rhs->eps) return lhs.eps < rhs->eps;
  return lhs.delta < rhs->delta;
}

bool quantum_family(double eps, double delta, double tol) {
  const double u = 1.0 - 2.0 * delta;
  const double v = 1.0 - 2.0 * eps;
  return is_quantum_correlators({u, u, u, v}, tol).quantum;
}

// Best feasible n in [n_lo, n_hi] at one parameter point.
std::optional<Candidate> evaluate_point(double eps, double delta, int n_lo, int n_hi, double tol) {
  if (!(eps > 0.0 && eps <= 1.0 && delta >= 0.0 && delta <= 1.0)) return std::nullopt;
  if (!quantum_family(eps, delta, tol)) return std::nullopt;
  std::optional<Candidate> best;
  for (int n = n_lo; n <= n_hi; ++n) {
    if (!is_distillable_at(eps, delta, n, tol)) continue;
    Candidate c{n, eps, delta, nl_closed_eps_delta(eps, delta, n)};
    if (better(c, best)) best = c;
  }
  return best;
}

// Moves a quantum-feasible point down in delta onto the quantum frontier when
// the frontier lies within one step below it.
double snap_delta_to_frontier(double eps, double delta, double step, double tol) {
  double lo = std::max(0.0, delta - step);
  if (quantum_family(eps, lo, tol)) return delta;
  double hi = delta;
  for (int iter = 0; iter < 100 && hi - lo > 1e-15; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (quantum_family(eps, mid, tol) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace

std::optional<Optimum> find_quantum_distillation_optimum(const OptimizerSettings& settings) {
  if (settings.n_max < 2) throw BoxError("n_max must be at least 2");
  if (!(settings.coarse_step > 0.0 && settings.coarse_step <= 0.1)) throw BoxError("coarse_step must be in (0, 0.1]");
  if (!(settings.resolution > 0.0 && settings.resolution <= settings.coarse_step)) {
    throw BoxError("resolution must be positive and no larger than coarse_step");
  }
  if (settings.fixed_delta && !(*settings.fixed_delta >= 0.0 && *settings.fixed_delta <= 1.0)) {
    throw BoxError("fixed delta must be in [0, 1]");
  }

  const double h = settings.coarse_step;
  const auto steps = static_cast<long>(std::llround(1.0 / h));
  std::optional<Candidate> best;

  auto delta_values = [&](auto&& visit) {
    if (settings.fixed_delta) {
      visit(*settings.fixed_delta);
      return;
    }
    for (long j = 0; j <= steps; ++j) visit(std::min(1.0, static_cast<double>(j) * h));
  };

  for (long i = 1; i <= steps; ++i) {
    const double eps = std::min(1.0, static_cast<double>(i) * h);
    delta_values([&](double delta) {
      if (auto c = evaluate_point(eps, delta, 2, settings.n_max, settings.tol); c && better(*c, best)) best = c;
    });
  }
  if (!best) return std::nullopt;

  // Local refinement at the winning n: a 21x21 stencil recentred until it
  // stops moving, then the step shrinks tenfold. The optimum sits on the
  // curved quantum frontier, so one pass per level is not enough.
  constexpr int kMaxMovesPerLevel = 1000;
  for (double step = h / 10.0; step >= settings.resolution * (1.0 - 1e-9); step /= 10.0) {
    for (int move = 0; move < kMaxMovesPerLevel; ++move) {
      const Candidate centre = *best;
      for (int i = -10; i <= 10; ++i) {
        const double eps = centre.eps + i * step;
        for (int j = -10; j <= 10; ++j) {
          if (settings.fixed_delta && j != 0) continue;
          const double delta = settings.fixed_delta ? *settings.fixed_delta : centre.delta + j * step;
          auto c = evaluate_point(eps, delta, centre.n, centre.n, settings.tol);
          if (!c) continue;
          if (better(*c, best)) best = c;
          if (settings.fixed_delta) continue;
          const double snapped = snap_delta_to_frontier(eps, delta, step, settings.tol);
          if (auto s = evaluate_point(eps, snapped, centre.n, centre.n, settings.tol); s && better(*s, best)) best = s;
        }
      }
      if (best->eps == centre.eps && best->delta == centre.delta) break;
    }
  }

  return Optimum{best->n, best->eps, best->delta, nl_closed_eps_delta(best->eps, best->delta, 1), best->value};
}

Optimum optimize_quantum_distillation(const OptimizerSettings& settings) {
  auto optimum = find_quantum_distillation_optimum(settings);
  if (!optimum) throw BoxError("no quantum-realizable distillable point in the search domain");
  return *optimum;
}

}  // namespace nlbox
