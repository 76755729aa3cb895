// Acceptance gate: one line per criterion, exit status = number of failures.
// Scales and tolerances are pinned here on purpose; the full-size experiments
// (pop 500, 100 genes, 50k generations) are replicated directionally at desk
// scale, with correctness criteria backed by brute-force references.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "phylosub/csv.hpp"
#include "phylosub/engine.hpp"
#include "phylosub/harness.hpp"
#include "support/oracles.hpp"

using namespace phylosub;
namespace fs = std::filesystem;

namespace {

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

double mean(const std::vector<double>& values) {
  double sum = 0.0;
  for (const double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

std::string fmt(double value) { return csv::format_double(value); }

// ---------------------------------------------------------------------------
// Randomized annotated ancestry chains shared by criteria 1 and 2.

struct ChainInstance {
  Phylogeny phylo;
  std::vector<TaxonId> chain;  // root first
  oracles::RefTree ref;
};

ChainInstance random_chain(rng::Engine& eng, std::size_t num_cases, std::size_t max_depth) {
  ChainInstance instance;
  const std::size_t depth = 1 + rng::uniform_index(eng, max_depth);
  int ref_node = -1;
  for (std::size_t d = 0; d < depth; ++d) {
    const Genome genome(2, static_cast<double>(d));
    instance.chain.push_back(d == 0
                                 ? instance.phylo.record_offspring(std::nullopt, genome)
                                 : instance.phylo.record_offspring(instance.chain.back(), genome));
    ref_node = instance.ref.add(ref_node);
    const std::size_t how_many = rng::uniform_index(eng, num_cases + 1);
    for (std::size_t k = 0; k < how_many; ++k) {
      const std::size_t case_id = rng::uniform_index(eng, num_cases);
      const double value = static_cast<double>(rng::uniform_index(eng, 1000)) / 10.0;
      // Keep-first on both sides.
      if (instance.ref.evaluations[ref_node].count(case_id) == 0) {
        instance.ref.evaluations[ref_node].emplace(case_id, value);
        instance.phylo.annotate(instance.chain.back(), case_id, value);
      }
    }
  }
  return instance;
}

// ---------------------------------------------------------------------------
// Desk-scale directional runs (criteria 4-7).

struct RepResult {
  double final_best = 0.0;
  double mid_best = 0.0;  // best aggregate at generation 1000
  double final_coverage = 0.0;
  double mean_distinct = 0.0;
};

RepResult run_condition(Diagnostic diagnostic, SelectionScheme selection, RegimeKind regime,
                        std::size_t generations, std::uint64_t seed) {
  ExperimentConfig config;
  config.diagnostic = diagnostic;
  config.num_genes = 50;
  config.pop_size = 100;
  config.mutation_rate = 0.007;
  config.mutation_sigma = 1.0;
  config.selection = selection;
  config.tournament_size = 8;
  config.regime = regime;
  config.subsample_rate = 0.1;
  config.max_generations = generations;
  config.metric_interval = 1000;
  config.seed = seed;

  Engine engine(config);
  RepResult result;
  engine.run([&result](const GenerationMetrics& m) {
    if (m.generation == 1000) result.mid_best = m.best_aggregate;
    result.final_best = m.best_aggregate;
    result.final_coverage = static_cast<double>(m.coverage);
  });
  result.mean_distinct = engine.summary().mean_distinct_parents;
  return result;
}

constexpr std::size_t kReps = 10;
const std::vector<RegimeKind> kCompared = {RegimeKind::down_sample, RegimeKind::down_sample_est,
                                           RegimeKind::irs, RegimeKind::abs};

using ConditionResults = std::map<RegimeKind, std::vector<RepResult>>;

ConditionResults run_block(Diagnostic diagnostic, SelectionScheme selection,
                           std::size_t generations, std::uint64_t seed_base) {
  ConditionResults results;
  for (const RegimeKind regime : kCompared) {
    for (std::size_t r = 0; r < kReps; ++r) {
      results[regime].push_back(
          run_condition(diagnostic, selection, regime, generations, seed_base + r));
    }
  }
  return results;
}

std::vector<double> collect(const ConditionResults& results, RegimeKind regime,
                            double RepResult::* field) {
  std::vector<double> values;
  for (const RepResult& rep : results.at(regime)) values.push_back(rep.*field);
  return values;
}

// Criterion 4's runs feed criterion 7, so they are computed once.
ConditionResults& exploitation_lexicase_block() {
  static ConditionResults results =
      run_block(Diagnostic::exploitation, SelectionScheme::lexicase, 2000, 1000);
  return results;
}

// ---------------------------------------------------------------------------
// Criteria.

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome criterion_estimation_oracle() {
  const auto start = std::chrono::steady_clock::now();
  rng::Engine eng(20240101);
  std::size_t comparisons = 0;
  std::size_t mismatches = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t num_cases = 1 + rng::uniform_index(eng, 12);
    ChainInstance instance = random_chain(eng, num_cases, 16);
    const double worst = -1.0;
    for (const std::size_t depth_limit : {0, 1, 2, 4, 8, 12}) {
      for (std::size_t d = 0; d < instance.chain.size(); ++d) {
        for (std::size_t c = 0; c < num_cases; ++c) {
          const EstimationResult got =
              instance.phylo.estimate(instance.chain[d], c, depth_limit, worst);
          const oracles::RefEstimate want =
              oracles::ref_estimate(instance.ref, static_cast<int>(d), c, depth_limit, worst);
          ++comparisons;
          const bool failed = got.source == EstimationResult::Source::failed;
          const bool self = got.source == EstimationResult::Source::self;
          if (got.value != want.value || failed != want.failed || self != want.self ||
              got.distance != want.distance) {
            ++mismatches;
          }
        }
      }
    }
  }
  const double seconds = elapsed_seconds(start);
  Outcome outcome;
  outcome.pass = mismatches == 0 && seconds < 10.0;
  outcome.detail = std::to_string(comparisons) + " comparisons over 1000 trees, " +
                   std::to_string(mismatches) + " mismatches, " + fmt(seconds) + "s (limit 10s)";
  return outcome;
}

Outcome criterion_abs_oracle() {
  const auto start = std::chrono::steady_clock::now();
  rng::Engine eng(20240202);
  std::size_t mismatches = 0;
  for (int trial = 0; trial < 1200; ++trial) {
    const std::size_t num_cases = 2 + rng::uniform_index(eng, 24);
    ChainInstance instance = random_chain(eng, num_cases, 8);
    const std::size_t s = 1 + rng::uniform_index(eng, num_cases);
    const TaxonId focal = instance.chain.back();

    std::vector<std::vector<std::size_t>> ancestry_sets;
    for (std::size_t d = instance.chain.size(); d-- > 0;) {
      std::vector<std::size_t> level;
      for (const auto& [case_id, value] : instance.ref.evaluations[d]) level.push_back(case_id);
      ancestry_sets.push_back(level);
    }

    const AbsPlan got = plan_abs(focal, instance.phylo, num_cases, s);
    const oracles::RefAbsPlan want = oracles::ref_abs_plan(ancestry_sets, num_cases, s);
    if (got.certain != want.certain || got.pool != want.pool || got.draws != want.draws) {
      ++mismatches;
      continue;
    }
    rng::Engine draw_eng(static_cast<std::uint64_t>(trial));
    const std::vector<CaseId> sample = sample_abs(focal, instance.phylo, num_cases, s, draw_eng);
    if (sample.size() != s || !std::is_sorted(sample.begin(), sample.end())) ++mismatches;
    for (const CaseId c : want.certain) {
      if (!std::binary_search(sample.begin(), sample.end(), c)) ++mismatches;
    }
  }

  // Distributional sanity on the random fill: a taxon evaluated on all four
  // cases with S = 2 draws two of {0,1,2,3}; all six pairs equally likely.
  Phylogeny phylo;
  const TaxonId taxon = phylo.record_offspring(std::nullopt, Genome{0.0});
  for (CaseId c = 0; c < 4; ++c) phylo.annotate(taxon, c, 1.0);
  rng::Engine fill_eng(99);
  std::map<std::pair<CaseId, CaseId>, double> counts;
  const int draws = 12000;
  for (int i = 0; i < draws; ++i) {
    const std::vector<CaseId> sample = sample_abs(taxon, phylo, 4, 2, fill_eng);
    counts[{sample[0], sample[1]}] += 1.0;
  }
  const double expected = draws / 6.0;
  double chi_square = 0.0;
  for (CaseId a = 0; a < 4; ++a) {
    for (CaseId b = a + 1; b < 4; ++b) {
      const double observed = counts[{a, b}];
      chi_square += (observed - expected) * (observed - expected) / expected;
    }
  }
  // 99.9th percentile of chi-square with 5 degrees of freedom.
  const bool uniform_fill = chi_square < 20.515;

  const double seconds = elapsed_seconds(start);
  Outcome outcome;
  outcome.pass = mismatches == 0 && uniform_fill && seconds < 30.0;
  outcome.detail = "1200 instances, " + std::to_string(mismatches) +
                   " mismatches; fill chi-square " + fmt(chi_square) +
                   " (limit 20.515 at df 5), " + fmt(seconds) + "s (limit 30s)";
  return outcome;
}

Outcome criterion_lexicase_distribution() {
  const std::vector<std::vector<std::vector<double>>> tables = {
      // 3x2
      {{1.0, 0.0}, {0.0, 1.0}, {0.0, 0.0}},
      {{5.0, 5.0}, {5.0, 5.0}, {0.0, 0.0}},
      {{2.0, 0.0}, {1.0, 1.0}, {0.0, 2.0}},
      {{3.0, 1.0}, {3.0, 2.0}, {0.0, 9.0}},
      {{4.0, 4.0}, {4.0, 4.0}, {4.0, 4.0}},
      {{1.0, 2.0}, {2.0, 1.0}, {2.0, 2.0}},
      // 4x3
      {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}, {1.0, 1.0, 1.0}},
      {{1.0, 1.0, 0.0}, {1.0, 0.0, 1.0}, {0.0, 1.0, 1.0}, {0.0, 0.0, 0.0}},
      {{9.0, 0.0, 0.0}, {0.0, 9.0, 0.0}, {0.0, 0.0, 9.0}, {3.0, 3.0, 3.0}},
      {{2.0, 2.0, 2.0}, {2.0, 2.0, 0.0}, {2.0, 0.0, 2.0}, {0.0, 2.0, 2.0}},
      {{1.0, 5.0, 1.0}, {5.0, 1.0, 1.0}, {1.0, 1.0, 5.0}, {5.0, 5.0, 1.0}},
      {{0.0, 0.0, 7.0}, {0.0, 7.0, 0.0}, {7.0, 0.0, 0.0}, {7.0, 7.0, 7.0}},
  };
  double worst_gap = 0.0;
  std::size_t failing_tables = 0;
  std::uint64_t seed = 20240303;
  for (const auto& rows : tables) {
    const std::vector<double> exact = oracles::lexicase_exact_distribution(rows);
    ScoreTable table(rows.size(), rows.front().size(), 0.0);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (std::size_t c = 0; c < rows[r].size(); ++c) table.score(r, c) = rows[r][c];
    }
    std::vector<double> freq(rows.size(), 0.0);
    rng::Engine eng(seed++);
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) freq[lexicase_select_one(table, eng)] += 1.0 / draws;
    bool ok = true;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const double gap = std::abs(freq[r] - exact[r]);
      worst_gap = std::max(worst_gap, gap);
      if (gap > 0.01) ok = false;
    }
    if (!ok) ++failing_tables;
  }
  Outcome outcome;
  outcome.pass = failing_tables == 0;
  outcome.detail = std::to_string(tables.size()) + " tables x 100000 draws, worst gap " +
                   fmt(worst_gap) + " (tolerance 0.01)";
  return outcome;
}

Outcome criterion_exploitation_lexicase() {
  const ConditionResults& results = exploitation_lexicase_block();
  const double ds = median(collect(results, RegimeKind::down_sample, &RepResult::final_best));
  const double est = median(collect(results, RegimeKind::down_sample_est, &RepResult::final_best));
  const double irs = median(collect(results, RegimeKind::irs, &RepResult::final_best));
  const double abs_med = median(collect(results, RegimeKind::abs, &RepResult::final_best));
  Outcome outcome;
  outcome.pass = ds > est && irs > est && abs_med > est;
  outcome.detail = "median final best aggregate: down-sample=" + fmt(ds) +
                   " down-sample-est=" + fmt(est) + " irs=" + fmt(irs) + " abs=" + fmt(abs_med) +
                   "; need down-sample, irs, abs each > down-sample-est";
  return outcome;
}

Outcome criterion_exploitation_tournament() {
  const ConditionResults results =
      run_block(Diagnostic::exploitation, SelectionScheme::tournament, 2000, 2000);
  const double est = median(collect(results, RegimeKind::down_sample_est, &RepResult::final_best));
  const double irs = median(collect(results, RegimeKind::irs, &RepResult::final_best));
  const double abs_med = median(collect(results, RegimeKind::abs, &RepResult::final_best));
  const double ds_mid = mean(collect(results, RegimeKind::down_sample, &RepResult::mid_best));
  const double irs_mid = mean(collect(results, RegimeKind::irs, &RepResult::mid_best));
  const double abs_mid = mean(collect(results, RegimeKind::abs, &RepResult::mid_best));
  Outcome outcome;
  outcome.pass = irs > est && abs_med > est && irs_mid > ds_mid && abs_mid > ds_mid;
  outcome.detail = "median final: irs=" + fmt(irs) + " abs=" + fmt(abs_med) +
                   " down-sample-est=" + fmt(est) + "; mean generation-1000: irs=" + fmt(irs_mid) +
                   " abs=" + fmt(abs_mid) + " down-sample=" + fmt(ds_mid);
  return outcome;
}

Outcome criterion_contradictory_coverage() {
  const ConditionResults results =
      run_block(Diagnostic::contradictory_objectives, SelectionScheme::lexicase, 5000, 3000);
  const double ds = median(collect(results, RegimeKind::down_sample, &RepResult::final_coverage));
  const double est =
      median(collect(results, RegimeKind::down_sample_est, &RepResult::final_coverage));
  const double irs = median(collect(results, RegimeKind::irs, &RepResult::final_coverage));
  const double abs_med = median(collect(results, RegimeKind::abs, &RepResult::final_coverage));
  Outcome outcome;
  outcome.pass = ds == 1.0 && irs >= est && abs_med >= est && est > ds;
  outcome.detail = "median final coverage: down-sample=" + fmt(ds) + " down-sample-est=" +
                   fmt(est) + " irs=" + fmt(irs) + " abs=" + fmt(abs_med) +
                   "; need down-sample = 1, irs/abs >= down-sample-est > down-sample";
  return outcome;
}

Outcome criterion_distinct_parents() {
  const ConditionResults& results = exploitation_lexicase_block();
  const std::vector<double> ds =
      collect(results, RegimeKind::down_sample, &RepResult::mean_distinct);
  Outcome outcome;
  outcome.pass = true;
  outcome.detail = "replicates with down-sample < other regime:";
  for (const RegimeKind regime :
       {RegimeKind::down_sample_est, RegimeKind::irs, RegimeKind::abs}) {
    const std::vector<double> other = collect(results, regime, &RepResult::mean_distinct);
    std::size_t wins = 0;
    for (std::size_t r = 0; r < kReps; ++r) {
      if (ds[r] < other[r]) ++wins;
    }
    outcome.detail += " " + to_string(regime) + "=" + std::to_string(wins) + "/10";
    if (wins < 8) outcome.pass = false;
  }
  outcome.detail += " (need >= 8/10 each)";
  return outcome;
}

Outcome criterion_budget_exactness() {
  std::size_t checked = 0;
  std::size_t wrong = 0;
  for (const RegimeKind regime : {RegimeKind::full, RegimeKind::down_sample,
                                  RegimeKind::down_sample_est, RegimeKind::irs, RegimeKind::abs}) {
    for (const double rate : {0.01, 0.1, 1.0}) {
      ExperimentConfig config;
      config.num_genes = 100;
      config.pop_size = 20;
      config.regime = regime;
      config.subsample_rate = rate;
      config.max_generations = 3;
      config.seed = 5;
      const std::size_t s = config.cases_per_individual();
      Engine engine(config);
      for (const GenerationMetrics& row : engine.run()) {
        ++checked;
        if (row.evaluations !=
            static_cast<std::uint64_t>(config.pop_size) * s * (row.generation + 1)) {
          ++wrong;
        }
      }
    }
  }
  Outcome outcome;
  outcome.pass = wrong == 0;
  outcome.detail = std::to_string(checked) + " generation rows across 5 regimes x rates" +
                   " {0.01,0.1,1}, " + std::to_string(wrong) + " off-budget";
  return outcome;
}

Outcome criterion_determinism() {
  RunManifest manifest;
  manifest.base.diagnostic = Diagnostic::multipath_exploration;
  manifest.base.num_genes = 10;
  manifest.base.pop_size = 12;
  manifest.base.mutation_rate = 0.1;
  manifest.base.regime = RegimeKind::abs;
  manifest.base.subsample_rate = 0.3;
  manifest.base.max_generations = 8;
  manifest.base.audit_estimation = true;
  manifest.base.dump_phylogeny = true;
  manifest.replicates = 3;
  manifest.seed_base = 77;

  const fs::path dir_a = fs::temp_directory_path() / "phylosub_accept_det_a";
  const fs::path dir_b = fs::temp_directory_path() / "phylosub_accept_det_b";
  fs::remove_all(dir_a);
  fs::remove_all(dir_b);
  manifest.out_dir = dir_a.string();
  manifest.parallel = 1;
  run_manifest(manifest);
  manifest.out_dir = dir_b.string();
  manifest.parallel = 4;
  run_manifest(manifest);

  auto slurp = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  };
  std::size_t files = 0;
  std::size_t differing = 0;
  for (std::size_t r = 0; r < 3; ++r) {
    for (const std::string& name : {metrics_path("", r), phylogeny_path("", r)}) {
      ++files;
      if (slurp(dir_a.string() + name) != slurp(dir_b.string() + name)) ++differing;
    }
  }
  ++files;
  if (slurp(summary_path(dir_a.string())) != slurp(summary_path(dir_b.string()))) ++differing;

  Outcome outcome;
  outcome.pass = differing == 0;
  outcome.detail = std::to_string(files) + " files compared across reruns with 1 vs 4 workers, " +
                   std::to_string(differing) + " differ";
  return outcome;
}

Outcome criterion_clone_estimation() {
  ExperimentConfig config;
  config.num_genes = 20;
  config.pop_size = 50;
  config.mutation_rate = 0.0;
  config.regime = RegimeKind::irs;
  config.subsample_rate = 0.1;
  config.audit_estimation = true;
  config.max_generations = 30;
  config.seed = 9;
  Engine engine(config);
  std::size_t rows_after_start = 0;
  std::size_t nonzero = 0;
  for (const GenerationMetrics& row : engine.run()) {
    if (row.generation == 0) continue;
    ++rows_after_start;
    if (!(row.est_mae == 0.0) || row.est_attempts == 0) ++nonzero;
  }
  Outcome outcome;
  outcome.pass = rows_after_start == 30 && nonzero == 0;
  outcome.detail = "mutation-free irs run, generations 1-30: " + std::to_string(nonzero) +
                   " rows with nonzero estimation error";
  return outcome;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1. estimation matches brute-force ancestor scan", criterion_estimation_oracle},
      {"2. ancestor-based sampling matches brute-force reference", criterion_abs_oracle},
      {"3. lexicase frequencies match exact enumeration", criterion_lexicase_distribution},
      {"4. exploitation/lexicase: estimation regimes trail plain down-sampling",
       criterion_exploitation_lexicase},
      {"5. exploitation/tournament: individualized sampling optimizes faster",
       criterion_exploitation_tournament},
      {"6. contradictory/lexicase: estimation preserves trait coverage",
       criterion_contradictory_coverage},
      {"7. plain down-sampling selects the fewest distinct parents",
       criterion_distinct_parents},
      {"8. cumulative evaluations exactly match pop x sample x generations",
       criterion_budget_exactness},
      {"9. reruns are bytewise identical at any worker count", criterion_determinism},
      {"10. clone populations estimate with zero error", criterion_clone_estimation},
  };

  int failures = 0;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = run();
    } catch (const std::exception& error) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + error.what();
    }
    const double seconds = elapsed_seconds(start);
    std::cout << (outcome.pass ? "[PASS] " : "[FAIL] ") << name << " — " << outcome.detail << " ["
              << fmt(seconds) << "s]" << std::endl;
    if (!outcome.pass) ++failures;
  }
  std::cout << (failures == 0 ? "ACCEPTANCE: all criteria passed"
                              : "ACCEPTANCE: " + std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures;
}
