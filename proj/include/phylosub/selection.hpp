#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "phylosub/exec.hpp"
#include "phylosub/rng.hpp"
#include "phylosub/sampling.hpp"

namespace phylosub {

// Where a score-table entry came from.
enum class Provenance : std::uint8_t { evaluated, estimated, failed_estimate };

// Dense population x criteria score matrix. Under estimation regimes and FULL
// the columns are the whole training set; under plain down-sampling they are
// the S shared sampled cases.
class ScoreTable {
 public:
  ScoreTable() = default;
  ScoreTable(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows),
        cols_(cols),
        scores_(rows * cols, fill),
        provenance_(rows * cols, Provenance::evaluated) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& score(std::size_t row, std::size_t col) { return scores_[row * cols_ + col]; }
  double score(std::size_t row, std::size_t col) const { return scores_[row * cols_ + col]; }
  Provenance& provenance(std::size_t row, std::size_t col) {
    return provenance_[row * cols_ + col];
  }
  Provenance provenance(std::size_t row, std::size_t col) const {
    return provenance_[row * cols_ + col];
  }

  std::span<const double> row(std::size_t r) const { return {scores_.data() + r * cols_, cols_}; }
  double row_sum(std::size_t r) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> scores_;
  std::vector<Provenance> provenance_;
};

enum class SelectionScheme { lexicase, tournament };

std::string to_string(SelectionScheme scheme);
SelectionScheme parse_selection(const std::string& text);

// One lexicase selection event: shuffle the columns, repeatedly keep only the
// rows matching the pool maximum (exact float equality) on the next column,
// then pick uniformly among the survivors.
std::size_t lexicase_select_one(const ScoreTable& table, rng::Engine& eng);

// One tournament: k uniform draws with replacement, best row sum wins, ties
// uniform among the drawn maximizers.
std::size_t tournament_select_one(std::span<const double> aggregates, std::size_t k,
                                  rng::Engine& eng);
std::size_t tournament_select_one(const ScoreTable& table, std::size_t k, rng::Engine& eng);

// pop_size independent selection events, one rng stream per event.
std::vector<std::size_t> select_parents(const ScoreTable& table, SelectionScheme scheme,
                                        std::size_t tournament_size, std::size_t num_events,
                                        const StreamFn& stream_for,
                                        ExecMode mode = ExecMode::serial);

// Number of distinct values in a parent index list.
std::size_t distinct_parents(std::span<const std::size_t> parents);

}  // namespace phylosub
