#include "nlbox/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <thread>
#include <unordered_map>

namespace nlbox {

namespace {

StrategyEnumeration build_enumeration() {
  std::unordered_map<StrategyBehavior, std::uint32_t> smallest_code;
  std::map<StrategyBehavior, std::size_t> members;
  for (std::uint32_t code = 0; code < AdaptiveStrategy::kCount; ++code) {
    const auto s = AdaptiveStrategy::from_code(code);
    smallest_code.try_emplace(behavior(s), code);  // codes visited in increasing order
    ++members[canonical_form(s)];
  }
  StrategyEnumeration out;
  out.raw_count = AdaptiveStrategy::kCount;
  out.behavior_classes = smallest_code.size();
  for (const auto& [canonical, count] : members) {
    out.classes.push_back({AdaptiveStrategy::from_code(smallest_code.at(canonical)), canonical, count});
  }
  return out;
}

struct PairBest {
  double nl = -1.0;
  std::size_t alice = 0;
  std::size_t bob = 0;
  double max_signaling = 0.0;
  std::size_t evaluated = 0;
};

bool improves(double nl, std::size_t i, std::size_t j, const PairBest& best) {
  if (nl != best.nl) return nl > best.nl;
  return std::pair{i, j} < std::pair{best.alice, best.bob};
}

PairBest scan_rows(const Table& box, const std::vector<StrategyClass>& classes, std::size_t begin, std::size_t end) {
  PairBest best;
  for (std::size_t i = begin; i < end; ++i) {
    for (std::size_t j = 0; j < classes.size(); ++j) {
      const Table composite = compose_wiring2_unchecked(box, classes[i].representative, classes[j].representative);
      best.max_signaling = std::max(best.max_signaling, max_marginal_discrepancy(composite));
      ++best.evaluated;
      const double value = nl(correlators(Box(composite)));
      if (improves(value, i, j, best)) {
        best.nl = value;
        best.alice = i;
        best.bob = j;
      }
    }
  }
  return best;
}

}  // namespace

const StrategyEnumeration& enumerate_strategies() {
  static const StrategyEnumeration enumeration = build_enumeration();
  return enumeration;
}

double max_marginal_discrepancy(const Table& t) {
  double worst = 0.0;
  for (int x = 0; x < 2; ++x) {
    const auto& r0 = t[row_index(x, 0)];
    const auto& r1 = t[row_index(x, 1)];
    worst = std::max(worst, std::abs((r0[0] + r0[1]) - (r1[0] + r1[1])));
    worst = std::max(worst, std::abs((r0[2] + r0[3]) - (r1[2] + r1[3])));
  }
  for (int y = 0; y < 2; ++y) {
    const auto& r0 = t[row_index(0, y)];
    const auto& r1 = t[row_index(1, y)];
    worst = std::max(worst, std::abs((r0[0] + r0[2]) - (r1[0] + r1[2])));
    worst = std::max(worst, std::abs((r0[1] + r0[3]) - (r1[1] + r1[3])));
  }
  return worst;
}

SearchResult search_2copy(const Box& box, int jobs, double tol) {
  const auto start = std::chrono::steady_clock::now();
  const auto ns = is_non_signaling(box, tol);
  if (!ns.non_signaling) throw BoxError("search_2copy requires a non-signaling box");

  const auto& enumeration = enumerate_strategies();
  const auto& classes = enumeration.classes;
  const std::size_t workers = static_cast<std::size_t>(std::clamp(jobs, 1, 256));

  std::vector<PairBest> partial(workers);
  const std::size_t chunk = (classes.size() + workers - 1) / workers;
  auto run = [&](std::size_t w) {
    const std::size_t begin = std::min(classes.size(), w * chunk);
    const std::size_t end = std::min(classes.size(), begin + chunk);
    partial[w] = scan_rows(box.matrix(), classes, begin, end);
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> threads;
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(run, w);
  }

  PairBest best;
  for (const auto& p : partial) {
    best.max_signaling = std::max(best.max_signaling, p.max_signaling);
    best.evaluated += p.evaluated;
    if (p.evaluated > 0 && improves(p.nl, p.alice, p.bob, best)) {
      best.nl = p.nl;
      best.alice = p.alice;
      best.bob = p.bob;
    }
  }

  SearchResult result;
  result.input = box;
  result.nl_in = nl(box);
  result.nl_out = best.nl;
  result.best = {classes[best.alice].representative, classes[best.bob].representative};
  result.raw_strategies = enumeration.raw_count;
  result.behavior_classes = enumeration.behavior_classes;
  result.canonical_classes = classes.size();
  result.pairs_evaluated = best.evaluated;
  result.max_signaling = best.max_signaling;
  result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace nlbox
