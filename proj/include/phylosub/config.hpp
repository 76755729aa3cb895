#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "phylosub/diagnostics.hpp"
#include "phylosub/exec.hpp"
#include "phylosub/sampling.hpp"
#include "phylosub/selection.hpp"

namespace phylosub {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Complete description of one run. Everything needed to reproduce a replicate
// lives here and is echoed into every output file header.
struct ExperimentConfig {
  Diagnostic diagnostic = Diagnostic::exploitation;
  std::size_t num_genes = 100;  // one training case per gene
  std::size_t pop_size = 500;
  double mutation_rate = 0.007;
  double mutation_sigma = 1.0;
  SelectionScheme selection = SelectionScheme::lexicase;
  std::size_t tournament_size = 8;
  RegimeKind regime = RegimeKind::full;
  double subsample_rate = 1.0;
  std::size_t depth_limit = 8;
  double worst_score = 0.0;
  std::optional<std::size_t> max_generations;
  std::optional<std::uint64_t> max_evaluations;
  std::size_t metric_interval = 1;
  bool audit_estimation = false;
  bool dump_phylogeny = false;
  ExecMode exec = ExecMode::openmp;
  std::uint64_t seed = 1;
  std::size_t replicate = 0;

  std::size_t num_cases() const { return num_genes; }
  // Cases evaluated per individual per generation.
  std::size_t cases_per_individual() const;
  // Stable condition label: diagnostic, selection, regime, rate.
  std::string condition() const;

  // Throws ConfigError on any out-of-range or inconsistent field.
  void validate() const;

  // Ordered key=value view of every field, as accepted by parse_config.
  std::vector<std::pair<std::string, std::string>> echo() const;
};

// Parses flat key=value text ('#' starts a comment, blank lines ignored).
// Unknown keys, duplicate keys, and malformed values are errors.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);

}  // namespace phylosub
