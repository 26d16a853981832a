#include "nlbox/box.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nlbox {

double Correlators::at(int x, int y) const {
  switch (row_index(x, y)) {
    case 0: return x00;
    case 1: return x01;
    case 2: return x10;
    default: return x11;
  }
}

std::string Violation::describe() const {
  std::ostringstream out;
  out.precision(17);
  out << "row " << row;
  if (col >= 0) out << " col " << col;
  switch (kind) {
    case Kind::kNegativeEntry: out << ": negative entry"; break;
    case Kind::kEntryAboveOne: out << ": entry above one"; break;
    case Kind::kRowSum: out << ": row does not sum to 1"; break;
    case Kind::kNotFinite: out << ": entry is not finite"; break;
  }
  out << " (residual " << residual << ")";
  return out.str();
}

ValidationReport validate(const Box& box, double tol) {
  ValidationReport report;
  for (int r = 0; r < 4; ++r) {
    double sum = 0.0;
    bool finite = true;
    for (int c = 0; c < 4; ++c) {
      const double v = box.matrix()[r][c];
      if (!std::isfinite(v)) {
        report.violations.push_back({Violation::Kind::kNotFinite, r, c, v});
        finite = false;
        continue;
      }
      if (v < -tol) report.violations.push_back({Violation::Kind::kNegativeEntry, r, c, v});
      if (v > 1.0 + tol) report.violations.push_back({Violation::Kind::kEntryAboveOne, r, c, v - 1.0});
      sum += v;
    }
    if (finite && std::abs(sum - 1.0) > tol) {
      report.violations.push_back({Violation::Kind::kRowSum, r, -1, sum - 1.0});
    }
  }
  return report;
}

void require_valid(const Box& box, double tol) {
  const auto report = validate(box, tol);
  if (report.ok()) return;
  std::string msg = "invalid box:";
  for (const auto& v : report.violations) msg += "\n  " + v.describe();
  throw BoxError(msg);
}

SignalingCheck is_non_signaling(const Box& box, double tol) {
  require_valid(box, tol);
  double worst = 0.0;
  for (int x = 0; x < 2; ++x) {
    // Alice's marginal P(a|x) must agree for y = 0 and y = 1.
    for (int a = 0; a < 2; ++a) {
      const double m0 = box.p(a, 0, x, 0) + box.p(a, 1, x, 0);
      const double m1 = box.p(a, 0, x, 1) + box.p(a, 1, x, 1);
      worst = std::max(worst, std::abs(m0 - m1));
    }
  }
  for (int y = 0; y < 2; ++y) {
    for (int b = 0; b < 2; ++b) {
      const double m0 = box.p(0, b, 0, y) + box.p(1, b, 0, y);
      const double m1 = box.p(0, b, 1, y) + box.p(1, b, 1, y);
      worst = std::max(worst, std::abs(m0 - m1));
    }
  }
  return {worst <= tol, worst};
}

Correlators correlators(const Box& box) {
  auto corr = [&](int x, int y) {
    const auto& row = box.matrix()[row_index(x, y)];
    return row[0] + row[3] - row[1] - row[2];
  };
  return {corr(0, 0), corr(0, 1), corr(1, 0), corr(1, 1)};
}

std::array<ChshValue, 8> chsh_values(const Correlators& c) {
  std::array<ChshValue, 8> out;
  int k = 0;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      const double v = c.at(x, y) + c.at(1 - x, y) + c.at(x, 1 - y) - c.at(1 - x, 1 - y);
      out[k++] = {x, y, 1, v};
      out[k++] = {x, y, -1, -v};
    }
  }
  return out;
}

double chsh_s(const Correlators& c) { return c.x00 + c.x01 + c.x10 - c.x11; }

double nl(const Correlators& c) {
  double best = 0.0;
  for (const auto& v : chsh_values(c)) best = std::max(best, std::abs(v.value));
  return best;
}

double nl(const Box& box) { return nl(correlators(box)); }

bool is_local(const Box& box, double tol) {
  const auto ns = is_non_signaling(box, tol);
  if (!ns.non_signaling) {
    throw BoxError("is_local requires a non-signaling box (marginal discrepancy " +
                   std::to_string(ns.max_discrepancy) + ")");
  }
  return nl(box) <= 2.0 + tol;
}

double marginal_zero(const Box& box, int party, int input) {
  if (party == 0) return box.p(0, 0, input, 0) + box.p(0, 1, input, 0);
  return box.p(0, 0, 0, input) + box.p(1, 0, 0, input);
}

namespace {

void require_unit_interval(double v, const char* name, bool open_at_zero) {
  const bool ok = open_at_zero ? (v > 0.0 && v <= 1.0) : (v >= 0.0 && v <= 1.0);
  if (!ok || !std::isfinite(v)) {
    throw BoxError(std::string(name) + " out of range: " + std::to_string(v));
  }
}

// Row with uniform marginals and correlator X: P(ab) = (1 + (-1)^{a^b} X) / 4.
std::array<double, 4> uniform_row(double corr) {
  const double same = (1.0 + corr) / 4.0;
  const double diff = (1.0 - corr) / 4.0;
  return {same, diff, diff, same};
}

}  // namespace

Box pr() {
  return Box(Table{{{0.5, 0.0, 0.0, 0.5}, {0.5, 0.0, 0.0, 0.5}, {0.5, 0.0, 0.0, 0.5}, {0.0, 0.5, 0.5, 0.0}}});
}

Box noise() {
  Table t;
  for (auto& row : t) row = {0.25, 0.25, 0.25, 0.25};
  return Box(t);
}

Box p_eps(double eps) {
  require_unit_interval(eps, "eps", true);
  return p_eps_delta(eps, 0.0);
}

Box p_eps_delta(double eps, double delta) {
  require_unit_interval(eps, "eps", true);
  require_unit_interval(delta, "delta", false);
  const std::array<double, 4> d_row{0.5 - delta / 2, delta / 2, delta / 2, 0.5 - delta / 2};
  const std::array<double, 4> e_row{0.5 - eps / 2, eps / 2, eps / 2, 0.5 - eps / 2};
  return Box(Table{d_row, d_row, d_row, e_row});
}

Box isotropic(double eta) {
  require_unit_interval(eta, "eta", false);
  return mix(pr(), noise(), eta);
}

Box deterministic(unsigned fa, unsigned fb) {
  if (fa > 3 || fb > 3) throw BoxError("deterministic: functions are 2-bit truth tables");
  Table t{};
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      const int a = (fa >> x) & 1;
      const int b = (fb >> y) & 1;
      t[row_index(x, y)][col_index(a, b)] = 1.0;
    }
  }
  return Box(t);
}

Box mix(const Box& first, const Box& second, double lambda) {
  require_unit_interval(lambda, "lambda", false);
  Table t;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      t[r][c] = lambda * first.matrix()[r][c] + (1.0 - lambda) * second.matrix()[r][c];
    }
  }
  return Box(t);
}

Box from_correlators(const Correlators& c, double tol) {
  Table t;
  const auto xs = c.as_array();
  for (int r = 0; r < 4; ++r) {
    if (std::abs(xs[r]) > 1.0 + tol) {
      throw BoxError("correlator out of [-1, 1]: " + std::to_string(xs[r]));
    }
    t[r] = uniform_row(std::clamp(xs[r], -1.0, 1.0));
  }
  return Box(t);
}

Box cleaned(const Box& box, double tol) {
  Table t = box.matrix();
  for (auto& row : t) {
    double sum = 0.0;
    for (auto& v : row) {
      if (v < 0.0 && v >= -tol) v = 0.0;
      sum += v;
    }
    if (sum > 0.0) {
      for (auto& v : row) v /= sum;
    }
  }
  return Box(t);
}

}  // namespace nlbox
