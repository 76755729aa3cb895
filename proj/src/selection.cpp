#include "phylosub/selection.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace phylosub {

double ScoreTable::row_sum(std::size_t r) const {
  const auto values = row(r);
  return std::accumulate(values.begin(), values.end(), 0.0);
}

std::string to_string(SelectionScheme scheme) {
  switch (scheme) {
    case SelectionScheme::lexicase:
      return "lexicase";
    case SelectionScheme::tournament:
      return "tournament";
  }
  throw std::invalid_argument("unknown selection scheme");
}

SelectionScheme parse_selection(const std::string& text) {
  if (text == "lexicase") return SelectionScheme::lexicase;
  if (text == "tournament") return SelectionScheme::tournament;
  throw std::invalid_argument("unknown selection scheme '" + text + "'");
}

std::size_t lexicase_select_one(const ScoreTable& table, rng::Engine& eng) {
  const std::size_t rows = table.rows();
  const std::size_t cols = table.cols();
  if (rows == 0) throw std::invalid_argument("lexicase on empty table");

  std::vector<std::size_t> order(cols);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = 0; i + 1 < cols; ++i) {
    const std::size_t j = i + rng::uniform_index(eng, cols - i);
    std::swap(order[i], order[j]);
  }

  std::vector<std::size_t> pool(rows);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  std::vector<std::size_t> survivors;
  survivors.reserve(rows);
  for (const std::size_t c : order) {
    if (pool.size() == 1) break;
    // Keep exactly the pool maximum on this case; equality is exact.
    double best = -std::numeric_limits<double>::infinity();
    survivors.clear();
    for (const std::size_t r : pool) {
      const double value = table.score(r, c);
      if (value > best) {
        best = value;
        survivors.assign(1, r);
      } else if (value == best) {
        survivors.push_back(r);
      }
    }
    pool.swap(survivors);
  }
  if (pool.size() == 1) return pool.front();
  return pool[rng::uniform_index(eng, pool.size())];
}

std::size_t tournament_select_one(std::span<const double> aggregates, std::size_t k,
                                  rng::Engine& eng) {
  if (aggregates.empty()) throw std::invalid_argument("tournament on empty table");
  if (k == 0) throw std::invalid_argument("tournament size must be positive");
  double best = -std::numeric_limits<double>::infinity();
  std::vector<std::size_t> tied;  // distinct drawn rows at the maximum
  for (std::size_t draw = 0; draw < k; ++draw) {
    const std::size_t r = rng::uniform_index(eng, aggregates.size());
    const double value = aggregates[r];
    if (value > best) {
      best = value;
      tied.assign(1, r);
    } else if (value == best && std::find(tied.begin(), tied.end(), r) == tied.end()) {
      tied.push_back(r);
    }
  }
  if (tied.size() == 1) return tied.front();
  return tied[rng::uniform_index(eng, tied.size())];
}

std::size_t tournament_select_one(const ScoreTable& table, std::size_t k, rng::Engine& eng) {
  std::vector<double> aggregates(table.rows());
  for (std::size_t r = 0; r < table.rows(); ++r) aggregates[r] = table.row_sum(r);
  return tournament_select_one(aggregates, k, eng);
}

std::vector<std::size_t> select_parents(const ScoreTable& table, SelectionScheme scheme,
                                        std::size_t tournament_size, std::size_t num_events,
                                        const StreamFn& stream_for, ExecMode mode) {
  std::vector<std::size_t> parents(num_events);
  std::vector<double> aggregates;
  if (scheme == SelectionScheme::tournament) {
    aggregates.resize(table.rows());
    for (std::size_t r = 0; r < table.rows(); ++r) aggregates[r] = table.row_sum(r);
  }
  auto one = [&](std::size_t e) {
    rng::Engine eng = stream_for(e);
    parents[e] = scheme == SelectionScheme::lexicase
                     ? lexicase_select_one(table, eng)
                     : tournament_select_one(aggregates, tournament_size, eng);
  };
  if (mode == ExecMode::openmp) {
#pragma omp parallel for schedule(static)
    for (std::size_t e = 0; e < num_events; ++e) one(e);
  } else {
    for (std::size_t e = 0; e < num_events; ++e) one(e);
  }
  return parents;
}

std::size_t distinct_parents(std::span<const std::size_t> parents) {
  std::vector<std::size_t> sorted(parents.begin(), parents.end());
  std::sort(sorted.begin(), sorted.end());
  return static_cast<std::size_t>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
}

}  // namespace phylosub
