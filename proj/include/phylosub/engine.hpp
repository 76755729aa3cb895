#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "phylosub/config.hpp"
#include "phylosub/diagnostics.hpp"
#include "phylosub/phylogeny.hpp"
#include "phylosub/sampling.hpp"
#include "phylosub/selection.hpp"

namespace phylosub {

struct Individual {
  Genome genome;
  TraitVector phenotype;  // true trait scores, computed once per generation
  TaxonId taxon;
};

struct GenerationMetrics {
  std::size_t generation = 0;
  std::uint64_t evaluations = 0;  // cumulative; generation 0 counts
  double best_aggregate = 0.0;    // true population maximum
  std::size_t coverage = 0;       // satisfactory trait coverage
  std::size_t distinct_parents = 0;
  std::uint64_t est_attempts = 0;
  std::uint64_t est_failures = 0;
  double est_mae = 0.0;  // NaN unless estimation audit is on
};

// Per-replicate roll-up for summary.csv.
struct RunSummary {
  std::string condition;
  std::uint64_t seed = 0;
  double final_best_aggregate = 0.0;
  std::size_t final_coverage = 0;
  double mean_distinct_parents = 0.0;
  double est_failure_rate = 0.0;  // failures / attempts, 0 when no attempts
};

// Generational evolutionary search with phylogeny-tracked evaluation.
// Non-overlapping generations, asexual reproduction, births recorded before
// deaths. One generation runs: sample, evaluate + annotate, estimate, select,
// record metrics, reproduce.
class Engine {
 public:
  explicit Engine(ExperimentConfig config);

  // Phases 1-5: builds the score table for the current population, selects
  // pop_size parents, and returns this generation's metrics.
  GenerationMetrics evaluate_and_select();
  // Phase 6: replaces the population with the selected parents' mutated
  // offspring and advances the generation counter.
  void reproduce();
  GenerationMetrics run_generation();

  // Runs to the first satisfied stopping criterion. The sink sees every
  // metric_interval-th generation plus the final one. The final generation is
  // evaluated and selected but produces no offspring.
  void run(const std::function<void(const GenerationMetrics&)>& sink);
  std::vector<GenerationMetrics> run();

  const ExperimentConfig& config() const { return config_; }
  std::size_t generation() const { return generation_; }
  std::uint64_t cumulative_evaluations() const { return cumulative_evaluations_; }
  const Phylogeny& phylogeny() const { return phylo_; }
  std::span<const Individual> population() const { return population_; }
  const ScoreTable& score_table() const { return table_; }
  // Case id of each table column (identity except under plain down-sampling).
  std::span<const CaseId> table_cases() const { return table_cases_; }
  std::span<const std::size_t> last_parents() const { return parents_; }
  RunSummary summary() const;

 private:
  void build_assignment();
  void evaluate_population();
  void fill_estimates();
  void select();
  GenerationMetrics make_metrics() const;

  ExperimentConfig config_;
  std::size_t sample_size_ = 0;
  Phylogeny phylo_;
  std::vector<Individual> population_;
  std::size_t generation_ = 0;
  std::uint64_t cumulative_evaluations_ = 0;

  SampleAssignment assignment_;
  ScoreTable table_;
  std::vector<CaseId> table_cases_;
  std::vector<std::size_t> parents_;
  std::size_t last_distinct_parents_ = 0;
  std::uint64_t gen_est_attempts_ = 0;
  std::uint64_t gen_est_failures_ = 0;
  double gen_est_abs_error_ = 0.0;

  std::uint64_t total_est_attempts_ = 0;
  std::uint64_t total_est_failures_ = 0;
  double distinct_parent_sum_ = 0.0;
  std::size_t generations_recorded_ = 0;  // generations with a selection phase
  double final_best_aggregate_ = 0.0;
  std::size_t final_coverage_ = 0;
};

}  // namespace phylosub
