#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "phylosub/config.hpp"
#include "phylosub/engine.hpp"

namespace phylosub {

// One experiment invocation: the base config fanned out over replicates.
// Replicate r runs with seed seed_base + r and writes its own metrics file,
// so results are identical no matter how replicates are scheduled.
struct RunManifest {
  ExperimentConfig base;
  std::size_t replicates = 1;
  std::uint64_t seed_base = 1;
  std::string out_dir;
  std::size_t parallel = 1;  // replicate-level workers
};

std::string metrics_path(const std::string& out_dir, std::size_t replicate);
std::string phylogeny_path(const std::string& out_dir, std::size_t replicate);
std::string summary_path(const std::string& out_dir);

// Runs every replicate, writes metrics_r<r>.csv (and phylo_r<r>.csv when
// configured), then summary.csv with one row per replicate in replicate
// order. Returns the summaries.
std::vector<RunSummary> run_manifest(const RunManifest& manifest);

// Groups summary rows from one or more summary.csv files by condition and
// returns a CSV of per-condition replicate count and median/mean/min/max for
// each summary metric, ordered by condition label.
std::string compare_summaries(const std::vector<std::string>& summary_files);

}  // namespace phylosub
