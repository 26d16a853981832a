#include "nlbox/symmetry.hpp"

#include <algorithm>

namespace nlbox {

namespace {

int relabel_input(const LocalRelabeling& r, int new_input) { return new_input ^ r.flip_input; }

int relabel_output(const LocalRelabeling& r, int new_input, int new_output) {
  return new_output ^ (r.flip_output_if_one & new_input) ^ r.flip_output;
}

std::vector<Relabeling> make_relabelings() {
  std::vector<Relabeling> all;
  all.reserve(64);
  for (int code = 0; code < 64; ++code) {
    const LocalRelabeling a{code & 1, (code >> 1) & 1, (code >> 2) & 1};
    const LocalRelabeling b{(code >> 3) & 1, (code >> 4) & 1, (code >> 5) & 1};
    all.push_back({a, b});
  }
  return all;
}

// Coefficients of S(sigma(B)) in terms of the correlators of B, read off
// by applying sigma to the four unit correlator boxes.
std::array<double, 4> transformed_chsh_coefficients(const Relabeling& sigma) {
  std::array<double, 4> coeff{};
  for (int k = 0; k < 4; ++k) {
    std::array<double, 4> unit{};
    unit[k] = 1.0;
    const Box basis = from_correlators({unit[0], unit[1], unit[2], unit[3]});
    coeff[k] = chsh_s(correlators(sigma.apply(basis)));
  }
  return coeff;
}

std::vector<Relabeling> make_stabilizer() {
  std::vector<Relabeling> out;
  for (const auto& sigma : relabelings()) {
    if (transformed_chsh_coefficients(sigma) == std::array<double, 4>{1.0, 1.0, 1.0, -1.0}) out.push_back(sigma);
  }
  return out;
}

}  // namespace

Box Relabeling::apply(const Box& box) const {
  Table t{};
  for (int x2 = 0; x2 < 2; ++x2) {
    for (int y2 = 0; y2 < 2; ++y2) {
      const int x = relabel_input(alice, x2);
      const int y = relabel_input(bob, y2);
      for (int a2 = 0; a2 < 2; ++a2) {
        for (int b2 = 0; b2 < 2; ++b2) {
          const int a = relabel_output(alice, x2, a2);
          const int b = relabel_output(bob, y2, b2);
          t[row_index(x2, y2)][col_index(a2, b2)] = box.p(a, b, x, y);
        }
      }
    }
  }
  return Box(t);
}

const std::vector<Relabeling>& relabelings() {
  static const std::vector<Relabeling> all = make_relabelings();
  return all;
}

const std::vector<Relabeling>& chsh_stabilizer() {
  static const std::vector<Relabeling> stabilizer = make_stabilizer();
  return stabilizer;
}

Box depolarize(const Box& box, double tol) {
  const auto ns = is_non_signaling(box, tol);
  if (!ns.non_signaling) throw BoxError("depolarize requires a non-signaling box");
  const auto& group = chsh_stabilizer();
  Table sum{};
  for (const auto& sigma : group) {
    const Box image = sigma.apply(box);
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) sum[r][c] += image.matrix()[r][c];
    }
  }
  for (auto& row : sum) {
    for (auto& v : row) v /= static_cast<double>(group.size());
  }
  return Box(sum);
}

Box canonical_form(const Box& box) {
  Table best = box.matrix();
  for (const auto& sigma : relabelings()) best = std::min(best, sigma.apply(box).matrix());
  return Box(best);
}

StrategyBehavior behavior(AdaptiveStrategy s) {
  StrategyBehavior bits = 0;
  for (int x = 0; x < 2; ++x) {
    for (unsigned r0 = 0; r0 < 4; ++r0) {
      for (unsigned r1 = 0; r1 < 4; ++r1) {
        const unsigned first = s.first_box() == 0 ? r0 : r1;
        const unsigned second = s.first_box() == 0 ? r1 : r0;
        const int o1 = static_cast<int>((first >> s.first_input(x)) & 1u);
        const int o2 = static_cast<int>((second >> s.second_input(x, o1)) & 1u);
        if (s.output(x, o1, o2)) bits |= 1u << (16 * x + 4 * r0 + r1);
      }
    }
  }
  return bits;
}

StrategyBehavior relabel_behavior(StrategyBehavior bits, const LocalRelabeling& r) {
  StrategyBehavior out = 0;
  for (int x2 = 0; x2 < 2; ++x2) {
    const int x = relabel_input(r, x2);
    for (int responses = 0; responses < 16; ++responses) {
      const int old = static_cast<int>((bits >> (16 * x + responses)) & 1u);
      if (relabel_output(r, x2, old)) out |= 1u << (16 * x2 + responses);
    }
  }
  return out;
}

StrategyBehavior canonical_form(AdaptiveStrategy strategy) {
  const StrategyBehavior base = behavior(strategy);
  StrategyBehavior best = base;
  for (int code = 0; code < 8; ++code) {
    best = std::min(best, relabel_behavior(base, {code & 1, (code >> 1) & 1, (code >> 2) & 1}));
  }
  return best;
}

}  // namespace nlbox
