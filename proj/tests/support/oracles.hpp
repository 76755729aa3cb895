#pragma once

// Brute-force reference implementations used to pin expected values. These
// are written against plain index-based structures, independent of the
// library's types, so implementation and reference can only agree by
// computing the same thing.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <vector>

namespace oracles {

// Annotated ancestry forest as flat arrays: parent[i] == -1 for roots.
struct RefTree {
  std::vector<int> parent;
  std::vector<std::map<std::size_t, double>> evaluations;

  int add(int parent_index) {
    parent.push_back(parent_index);
    evaluations.emplace_back();
    return static_cast<int>(parent.size()) - 1;
  }
};

struct RefEstimate {
  double value = 0.0;
  bool failed = true;
  bool self = false;
  std::size_t distance = 0;
};

// Parent-chain scan, self first, truncated at depth_limit steps.
inline RefEstimate ref_estimate(const RefTree& tree, int node, std::size_t case_id,
                                std::size_t depth_limit, double worst_score) {
  std::size_t distance = 0;
  int current = node;
  while (true) {
    const auto hit = tree.evaluations[current].find(case_id);
    if (hit != tree.evaluations[current].end()) {
      return {hit->second, false, distance == 0, distance};
    }
    if (distance == depth_limit || tree.parent[current] < 0) {
      return {worst_score, true, false, distance};
    }
    current = tree.parent[current];
    ++distance;
  }
}

struct RefAbsPlan {
  std::vector<std::size_t> certain;
  std::vector<std::size_t> pool;
  std::size_t draws = 0;
};

// Ancestor-based subsampling restated over plain case-id sets
// ordered from the focal taxon outward: mark each step's evaluated cases
// ineligible until at most s remain eligible; the fill pool is the set that
// became ineligible at the stopping step. Ancestry exhausted with more than s
// eligible degrades to a uniform s-subset of the eligible.
inline RefAbsPlan ref_abs_plan(const std::vector<std::vector<std::size_t>>& ancestry_sets,
                               std::size_t num_cases, std::size_t s) {
  std::vector<char> eligible(num_cases, 1);
  auto count_eligible = [&] {
    return static_cast<std::size_t>(std::count(eligible.begin(), eligible.end(), 1));
  };
  std::vector<std::size_t> last_transition;
  std::size_t step = 0;
  while (count_eligible() > s && step < ancestry_sets.size()) {
    std::vector<std::size_t> transitioned;
    for (const std::size_t c : ancestry_sets[step]) {
      if (c < num_cases && eligible[c]) {
        eligible[c] = 0;
        transitioned.push_back(c);
      }
    }
    if (!transitioned.empty()) last_transition = transitioned;
    ++step;
  }
  RefAbsPlan plan;
  std::vector<std::size_t> still_eligible;
  for (std::size_t c = 0; c < num_cases; ++c) {
    if (eligible[c]) still_eligible.push_back(c);
  }
  if (still_eligible.size() > s) {
    plan.pool = still_eligible;
    plan.draws = s;
    return plan;
  }
  plan.certain = still_eligible;
  plan.draws = s - plan.certain.size();
  if (plan.draws > 0) {
    std::sort(last_transition.begin(), last_transition.end());
    plan.pool = last_transition;
  }
  return plan;
}

// Exact lexicase selection distribution by enumerating every column
// permutation; survivors of all filters split that permutation's mass.
inline std::vector<double> lexicase_exact_distribution(
    const std::vector<std::vector<double>>& table) {
  const std::size_t rows = table.size();
  const std::size_t cols = table.front().size();
  std::vector<std::size_t> order(cols);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> probability(rows, 0.0);
  std::size_t permutations = 0;
  std::sort(order.begin(), order.end());
  do {
    ++permutations;
    std::vector<std::size_t> pool(rows);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (const std::size_t c : order) {
      double best = table[pool.front()][c];
      for (const std::size_t r : pool) best = std::max(best, table[r][c]);
      std::vector<std::size_t> survivors;
      for (const std::size_t r : pool) {
        if (table[r][c] == best) survivors.push_back(r);
      }
      pool.swap(survivors);
    }
    for (const std::size_t r : pool) probability[r] += 1.0 / static_cast<double>(pool.size());
  } while (std::next_permutation(order.begin(), order.end()));
  for (double& p : probability) p /= static_cast<double>(permutations);
  return probability;
}

// Exact tournament distribution by enumerating every draw tuple; ties split
// among the distinct drawn maximizers.
inline std::vector<double> tournament_exact_distribution(const std::vector<double>& aggregates,
                                                         std::size_t k) {
  const std::size_t n = aggregates.size();
  std::size_t tuples = 1;
  for (std::size_t i = 0; i < k; ++i) tuples *= n;
  std::vector<double> probability(n, 0.0);
  std::vector<std::size_t> draw(k, 0);
  for (std::size_t t = 0; t < tuples; ++t) {
    std::size_t rest = t;
    for (std::size_t i = 0; i < k; ++i) {
      draw[i] = rest % n;
      rest /= n;
    }
    double best = aggregates[draw.front()];
    for (const std::size_t r : draw) best = std::max(best, aggregates[r]);
    std::vector<std::size_t> winners;
    for (const std::size_t r : draw) {
      if (aggregates[r] == best &&
          std::find(winners.begin(), winners.end(), r) == winners.end()) {
        winners.push_back(r);
      }
    }
    for (const std::size_t r : winners) {
      probability[r] += 1.0 / (static_cast<double>(tuples) * static_cast<double>(winners.size()));
    }
  }
  return probability;
}

}  // namespace oracles
