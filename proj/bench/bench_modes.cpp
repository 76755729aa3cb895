// Compares the serial reference path against the OpenMP kernels on one
// mid-size run and checks that both produce the same metric stream.

#include <chrono>
#include <cstdio>
#include <vector>

#include "phylosub/engine.hpp"

namespace {

phylosub::ExperimentConfig bench_config(phylosub::ExecMode mode) {
  phylosub::ExperimentConfig config;
  config.diagnostic = phylosub::Diagnostic::exploitation;
  config.num_genes = 100;
  config.pop_size = 200;
  config.selection = phylosub::SelectionScheme::lexicase;
  config.regime = phylosub::RegimeKind::irs;
  config.subsample_rate = 0.1;
  config.max_generations = 300;
  config.seed = 2024;
  config.exec = mode;
  return config;
}

double run_once(phylosub::ExecMode mode, std::vector<phylosub::GenerationMetrics>& metrics) {
  phylosub::Engine engine(bench_config(mode));
  const auto start = std::chrono::steady_clock::now();
  metrics = engine.run();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(stop - start).count();
}

bool same_metrics(const std::vector<phylosub::GenerationMetrics>& a,
                  const std::vector<phylosub::GenerationMetrics>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].generation != b[i].generation || a[i].evaluations != b[i].evaluations ||
        a[i].best_aggregate != b[i].best_aggregate || a[i].coverage != b[i].coverage ||
        a[i].distinct_parents != b[i].distinct_parents ||
        a[i].est_attempts != b[i].est_attempts || a[i].est_failures != b[i].est_failures) {
      return false;
    }
  }
  return true;
}

}  // namespace

int main() {
  std::vector<phylosub::GenerationMetrics> serial_metrics;
  std::vector<phylosub::GenerationMetrics> openmp_metrics;

  const double serial_seconds = run_once(phylosub::ExecMode::serial, serial_metrics);
  const double openmp_seconds = run_once(phylosub::ExecMode::openmp, openmp_metrics);

  std::printf("serial reference: %8.3f s\n", serial_seconds);
  std::printf("openmp kernels:   %8.3f s\n", openmp_seconds);
  std::printf("speedup:          %8.2fx\n", serial_seconds / openmp_seconds);
  if (!same_metrics(serial_metrics, openmp_metrics)) {
    std::printf("MISMATCH: execution modes disagree\n");
    return 1;
  }
  std::printf("metric streams identical across modes\n");
  return 0;
}
