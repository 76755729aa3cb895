#include "phylosub/harness.hpp"

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "phylosub/csv.hpp"

namespace phylosub {

namespace {

constexpr const char* kMetricsHeader =
    "generation,evaluations,best_aggregate,coverage,distinct_parents,est_attempts,est_failures,"
    "est_mae";
constexpr const char* kSummaryHeader =
    "condition,seed,final_best_aggregate,final_coverage,mean_distinct_parents,est_failure_rate";

void write_config_comments(std::ostream& out, const ExperimentConfig& config) {
  for (const auto& [key, value] : config.echo()) {
    out << "# " << key << '=' << value << '\n';
  }
}

std::string format_metrics_row(const GenerationMetrics& m) {
  return csv::join_row({csv::format_u64(m.generation), csv::format_u64(m.evaluations),
                        csv::format_double(m.best_aggregate), csv::format_u64(m.coverage),
                        csv::format_u64(m.distinct_parents), csv::format_u64(m.est_attempts),
                        csv::format_u64(m.est_failures), csv::format_double(m.est_mae)});
}

struct Stats {
  double median = 0.0;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
};

Stats compute_stats(std::vector<double> values) {
  Stats stats;
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  stats.median = n % 2 == 1 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
  double sum = 0.0;
  for (const double v : values) sum += v;
  stats.mean = sum / static_cast<double>(n);
  stats.min = values.front();
  stats.max = values.back();
  return stats;
}

}  // namespace

std::string metrics_path(const std::string& out_dir, std::size_t replicate) {
  return out_dir + "/metrics_r" + std::to_string(replicate) + ".csv";
}

std::string phylogeny_path(const std::string& out_dir, std::size_t replicate) {
  return out_dir + "/phylo_r" + std::to_string(replicate) + ".csv";
}

std::string summary_path(const std::string& out_dir) { return out_dir + "/summary.csv"; }

std::vector<RunSummary> run_manifest(const RunManifest& manifest) {
  manifest.base.validate();
  if (manifest.replicates == 0) throw ConfigError("replicates must be positive");
  if (manifest.out_dir.empty()) throw ConfigError("output directory required");
  std::filesystem::create_directories(manifest.out_dir);

  std::vector<RunSummary> summaries(manifest.replicates);
  std::vector<std::string> errors(manifest.replicates);
  const int workers = static_cast<int>(std::clamp<std::size_t>(manifest.parallel, 1, 64));

#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
  for (std::size_t r = 0; r < manifest.replicates; ++r) {
    try {
      ExperimentConfig config = manifest.base;
      config.seed = manifest.seed_base + r;
      config.replicate = r;

      std::ofstream out(metrics_path(manifest.out_dir, r), std::ios::trunc);
      if (!out) throw std::runtime_error("cannot write " + metrics_path(manifest.out_dir, r));
      write_config_comments(out, config);
      out << kMetricsHeader << '\n';

      Engine engine(config);
      engine.run([&out](const GenerationMetrics& m) { out << format_metrics_row(m) << '\n'; });
      if (!out) throw std::runtime_error("write failed: " + metrics_path(manifest.out_dir, r));

      if (config.dump_phylogeny) {
        std::ofstream tree(phylogeny_path(manifest.out_dir, r), std::ios::trunc);
        if (!tree) throw std::runtime_error("cannot write " + phylogeny_path(manifest.out_dir, r));
        write_config_comments(tree, config);
        engine.phylogeny().dump_csv(tree);
      }
      summaries[r] = engine.summary();
    } catch (const std::exception& error) {
      errors[r] = error.what();
    }
  }
  for (const std::string& error : errors) {
    if (!error.empty()) throw std::runtime_error(error);
  }

  std::ofstream out(summary_path(manifest.out_dir), std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + summary_path(manifest.out_dir));
  out << "# replicates=" << manifest.replicates << '\n';
  out << "# seed_base=" << manifest.seed_base << '\n';
  for (const auto& [key, value] : manifest.base.echo()) {
    if (key == "seed" || key == "replicate") continue;
    out << "# " << key << '=' << value << '\n';
  }
  out << kSummaryHeader << '\n';
  for (const RunSummary& s : summaries) {
    out << csv::join_row({s.condition, csv::format_u64(s.seed),
                          csv::format_double(s.final_best_aggregate),
                          csv::format_u64(s.final_coverage),
                          csv::format_double(s.mean_distinct_parents),
                          csv::format_double(s.est_failure_rate)})
        << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + summary_path(manifest.out_dir));
  return summaries;
}

std::string compare_summaries(const std::vector<std::string>& summary_files) {
  if (summary_files.empty()) throw std::invalid_argument("no summary files given");

  // condition -> per-metric value lists, in summary column order.
  std::map<std::string, std::array<std::vector<double>, 4>> conditions;
  for (const std::string& path : summary_files) {
    const csv::Table table = csv::read_csv_file(path);
    if (table.header.empty()) throw std::runtime_error("no header in '" + path + "'");
    const std::size_t condition_col = table.column("condition");
    const std::array<std::size_t, 4> metric_cols = {
        table.column("final_best_aggregate"), table.column("final_coverage"),
        table.column("mean_distinct_parents"), table.column("est_failure_rate")};
    for (const auto& row : table.rows) {
      auto& lists = conditions[row[condition_col]];
      for (std::size_t m = 0; m < metric_cols.size(); ++m) {
        lists[m].push_back(csv::parse_double(row[metric_cols[m]]));
      }
    }
  }
  if (conditions.empty()) throw std::runtime_error("no summary rows to compare");

  static constexpr std::array<const char*, 4> kMetricNames = {
      "best_aggregate", "coverage", "distinct_parents", "est_failure_rate"};
  std::ostringstream out;
  out << "condition,replicates";
  for (const char* name : kMetricNames) {
    out << ',' << name << "_median," << name << "_mean," << name << "_min," << name << "_max";
  }
  out << '\n';
  for (const auto& [condition, lists] : conditions) {
    out << condition << ',' << lists.front().size();
    for (const auto& values : lists) {
      const Stats stats = compute_stats(values);
      out << ',' << csv::format_double(stats.median) << ',' << csv::format_double(stats.mean)
          << ',' << csv::format_double(stats.min) << ',' << csv::format_double(stats.max);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace phylosub
