#include "phylosub/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace phylosub {

Engine::Engine(ExperimentConfig config) : config_(std::move(config)) {
  config_.validate();
  sample_size_ = config_.cases_per_individual();
  phylo_.set_generation(0);
  population_.resize(config_.pop_size);
  const Genome zero(config_.num_genes, 0.0);
  for (Individual& individual : population_) {
    individual.genome = zero;
    individual.taxon = phylo_.record_offspring(std::nullopt, individual.genome);
  }
}

void Engine::build_assignment() {
  const std::size_t n = config_.pop_size;
  const std::size_t cases = config_.num_cases();
  const std::uint64_t base = static_cast<std::uint64_t>(generation_) * n;
  const StreamFn stream_for = [this, base](std::size_t i) {
    return rng::make_stream(config_.seed, rng::Stream::sampling, base + i);
  };
  switch (config_.regime) {
    case RegimeKind::full:
      assignment_ = sample_full(cases, n);
      break;
    case RegimeKind::down_sample:
    case RegimeKind::down_sample_est: {
      rng::Engine eng = stream_for(0);
      assignment_ = sample_down(cases, sample_size_, n, eng);
      break;
    }
    case RegimeKind::irs:
      assignment_ = sample_irs(cases, sample_size_, n, stream_for, config_.exec);
      break;
    case RegimeKind::abs: {
      std::vector<TaxonId> taxa(n);
      for (std::size_t i = 0; i < n; ++i) taxa[i] = population_[i].taxon;
      assignment_ =
          sample_abs_population(taxa, phylo_, cases, sample_size_, stream_for, config_.exec);
      break;
    }
  }
  // Plain down-sampling scores only the shared sample; everything else keeps
  // one column per training case.
  if (config_.regime == RegimeKind::down_sample) {
    table_cases_ = assignment_.per_individual.front();
  } else {
    table_cases_.resize(cases);
    for (CaseId c = 0; c < cases; ++c) table_cases_[c] = c;
  }
}

void Engine::evaluate_population() {
  const std::size_t n = config_.pop_size;
  const std::size_t cases = config_.num_cases();
  table_ = ScoreTable(n, table_cases_.size(), std::numeric_limits<double>::quiet_NaN());

  // Column of each case id; only the sampled cases are mapped under plain
  // down-sampling.
  std::vector<std::size_t> col_of(cases, std::numeric_limits<std::size_t>::max());
  for (std::size_t col = 0; col < table_cases_.size(); ++col) col_of[table_cases_[col]] = col;

  auto evaluate_one = [&](std::size_t i) {
    Individual& individual = population_[i];
    individual.phenotype = translate(config_.diagnostic, individual.genome);
    for (const CaseId c : assignment_.per_individual[i]) {
      const std::size_t col = col_of[c];
      table_.score(i, col) = individual.phenotype[c];
      table_.provenance(i, col) = Provenance::evaluated;
    }
  };
  if (config_.exec == ExecMode::openmp) {
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i) evaluate_one(i);
  } else {
    for (std::size_t i = 0; i < n; ++i) evaluate_one(i);
  }

  // Annotation writes share taxa between clones, so they stay serialized.
  for (std::size_t i = 0; i < n; ++i) {
    const Individual& individual = population_[i];
    for (const CaseId c : assignment_.per_individual[i]) {
      phylo_.annotate(individual.taxon, c, individual.phenotype[c]);
    }
  }

  cumulative_evaluations_ += static_cast<std::uint64_t>(n) * sample_size_;

  double best = -std::numeric_limits<double>::infinity();
  std::vector<bool> satisfied(cases, false);
  for (const Individual& individual : population_) {
    best = std::max(best, aggregate_score(individual.phenotype));
    for (std::size_t c = 0; c < cases; ++c) {
      if (individual.phenotype[c] > kSatisfiedThreshold) satisfied[c] = true;
    }
  }
  final_best_aggregate_ = best;
  final_coverage_ = static_cast<std::size_t>(std::count(satisfied.begin(), satisfied.end(), true));
}

void Engine::fill_estimates() {
  const std::size_t n = config_.pop_size;
  const std::size_t cases = config_.num_cases();
  std::vector<std::uint64_t> attempts(n, 0);
  std::vector<std::uint64_t> failures(n, 0);
  std::vector<double> abs_error(n, 0.0);

  auto fill_row = [&](std::size_t i) {
    const Individual& individual = population_[i];
    const std::vector<CaseId>& assigned = assignment_.per_individual[i];
    std::size_t next_assigned = 0;
    for (CaseId c = 0; c < cases; ++c) {
      if (next_assigned < assigned.size() && assigned[next_assigned] == c) {
        ++next_assigned;
        continue;
      }
      const EstimationResult result =
          phylo_.estimate(individual.taxon, c, config_.depth_limit, config_.worst_score);
      table_.score(i, c) = result.value;
      table_.provenance(i, c) = result.source == EstimationResult::Source::failed
                                    ? Provenance::failed_estimate
                                    : Provenance::estimated;
      ++attempts[i];
      if (result.source == EstimationResult::Source::failed) ++failures[i];
      if (config_.audit_estimation) {
        abs_error[i] += std::abs(result.value - individual.phenotype[c]);
      }
    }
  };
  if (config_.exec == ExecMode::openmp) {
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i) fill_row(i);
  } else {
    for (std::size_t i = 0; i < n; ++i) fill_row(i);
  }

  gen_est_attempts_ = 0;
  gen_est_failures_ = 0;
  gen_est_abs_error_ = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    gen_est_attempts_ += attempts[i];
    gen_est_failures_ += failures[i];
    gen_est_abs_error_ += abs_error[i];
  }
  total_est_attempts_ += gen_est_attempts_;
  total_est_failures_ += gen_est_failures_;
}

void Engine::select() {
  const std::size_t n = config_.pop_size;
  const std::uint64_t base = static_cast<std::uint64_t>(generation_) * n;
  const StreamFn stream_for = [this, base](std::size_t e) {
    return rng::make_stream(config_.seed, rng::Stream::selection, base + e);
  };
  parents_ = select_parents(table_, config_.selection, config_.tournament_size, n, stream_for,
                            config_.exec);
  last_distinct_parents_ = distinct_parents(parents_);
  distinct_parent_sum_ += static_cast<double>(last_distinct_parents_);
  ++generations_recorded_;
}

GenerationMetrics Engine::make_metrics() const {
  GenerationMetrics metrics;
  metrics.generation = generation_;
  metrics.evaluations = cumulative_evaluations_;
  metrics.best_aggregate = final_best_aggregate_;
  metrics.coverage = final_coverage_;
  metrics.distinct_parents = last_distinct_parents_;
  metrics.est_attempts = gen_est_attempts_;
  metrics.est_failures = gen_est_failures_;
  if (config_.audit_estimation) {
    metrics.est_mae = gen_est_attempts_ == 0
                          ? 0.0
                          : gen_est_abs_error_ / static_cast<double>(gen_est_attempts_);
  } else {
    metrics.est_mae = std::numeric_limits<double>::quiet_NaN();
  }
  return metrics;
}

GenerationMetrics Engine::evaluate_and_select() {
  gen_est_attempts_ = 0;
  gen_est_failures_ = 0;
  gen_est_abs_error_ = 0.0;
  build_assignment();
  evaluate_population();
  if (uses_estimation(config_.regime)) fill_estimates();
  select();
  return make_metrics();
}

void Engine::reproduce() {
  const std::size_t n = config_.pop_size;
  const std::uint64_t base = static_cast<std::uint64_t>(generation_) * n;
  std::vector<Genome> offspring(n);
  auto mutate_one = [&](std::size_t e) {
    rng::Engine eng = rng::make_stream(config_.seed, rng::Stream::mutation, base + e);
    offspring[e] =
        mutate(population_[parents_[e]].genome, config_.mutation_rate, config_.mutation_sigma, eng);
  };
  if (config_.exec == ExecMode::openmp) {
#pragma omp parallel for schedule(static)
    for (std::size_t e = 0; e < n; ++e) mutate_one(e);
  } else {
    for (std::size_t e = 0; e < n; ++e) mutate_one(e);
  }

  phylo_.set_generation(generation_ + 1);
  std::vector<TaxonId> old_taxa(n);
  for (std::size_t i = 0; i < n; ++i) old_taxa[i] = population_[i].taxon;
  std::vector<TaxonId> new_taxa(n);
  for (std::size_t e = 0; e < n; ++e) {
    new_taxa[e] = phylo_.record_offspring(population_[parents_[e]].taxon, offspring[e]);
  }
  for (std::size_t i = 0; i < n; ++i) phylo_.record_death(old_taxa[i]);

  for (std::size_t e = 0; e < n; ++e) {
    population_[e].genome = std::move(offspring[e]);
    population_[e].phenotype.clear();
    population_[e].taxon = new_taxa[e];
  }
  ++generation_;
}

void Engine::run(const std::function<void(const GenerationMetrics&)>& sink) {
  while (true) {
    const GenerationMetrics metrics = evaluate_and_select();
    bool stop = false;
    if (config_.max_generations.has_value() && generation_ >= *config_.max_generations) {
      stop = true;
    }
    if (config_.max_evaluations.has_value() &&
        cumulative_evaluations_ >= *config_.max_evaluations) {
      stop = true;
    }
    if (generation_ % config_.metric_interval == 0 || stop) sink(metrics);
    if (stop) return;
    reproduce();
  }
}

std::vector<GenerationMetrics> Engine::run() {
  std::vector<GenerationMetrics> metrics;
  run([&metrics](const GenerationMetrics& row) { metrics.push_back(row); });
  return metrics;
}

GenerationMetrics Engine::run_generation() {
  const GenerationMetrics metrics = evaluate_and_select();
  reproduce();
  return metrics;
}

RunSummary Engine::summary() const {
  RunSummary summary;
  summary.condition = config_.condition();
  summary.seed = config_.seed;
  summary.final_best_aggregate = final_best_aggregate_;
  summary.final_coverage = final_coverage_;
  summary.mean_distinct_parents =
      generations_recorded_ == 0
          ? 0.0
          : distinct_parent_sum_ / static_cast<double>(generations_recorded_);
  summary.est_failure_rate =
      total_est_attempts_ == 0
          ? 0.0
          : static_cast<double>(total_est_failures_) / static_cast<double>(total_est_attempts_);
  return summary;
}

}  // namespace phylosub
