#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "phylosub/exec.hpp"
#include "phylosub/phylogeny.hpp"
#include "phylosub/rng.hpp"

namespace phylosub {

enum class RegimeKind { full, down_sample, down_sample_est, irs, abs };

// Regime identifiers as used in config files and condition labels.
std::string to_string(RegimeKind kind);
RegimeKind parse_regime(const std::string& text);
// Regimes that fill unevaluated score-table entries from the phylogeny.
bool uses_estimation(RegimeKind kind);

struct SamplingRegime {
  RegimeKind kind = RegimeKind::full;
  double rate = 1.0;  // subsample rate in (0, 1]
};

// S = round(rate * num_cases), clamped to at least 1.
std::size_t sample_size(double rate, std::size_t num_cases);

// Per-individual case assignment for one generation. Each entry is a sorted
// duplicate-free set of exactly S case ids (num_cases under FULL).
struct SampleAssignment {
  std::vector<std::vector<CaseId>> per_individual;
};

// Maps an individual index to its own deterministic rng stream.
using StreamFn = std::function<rng::Engine(std::size_t)>;

// Uniform random S-subset of [0, num_cases), sorted.
std::vector<CaseId> random_subset(std::size_t num_cases, std::size_t s, rng::Engine& eng);

// One shared uniform S-subset duplicated for every individual.
SampleAssignment sample_down(std::size_t num_cases, std::size_t s, std::size_t pop_size,
                             rng::Engine& eng);

// Independent uniform S-subset per individual.
SampleAssignment sample_irs(std::size_t num_cases, std::size_t s, std::size_t pop_size,
                            const StreamFn& stream_for, ExecMode mode = ExecMode::serial);

// Deterministic phase of ancestor-based subsampling. Walking the taxon and
// then its direct ancestors, each step marks that taxon's evaluated cases
// ineligible; the walk stops as soon as at most S cases remain eligible.
//   certain: cases included with certainty (the still-eligible set, or all
//            cases when num_cases <= S),
//   pool:    cases the random fill draws from (the set that became ineligible
//            at the stopping step, or the whole eligible set when ancestry
//            ran out first),
//   draws:   how many pool cases are drawn without replacement.
struct AbsPlan {
  std::vector<CaseId> certain;  // sorted
  std::vector<CaseId> pool;     // sorted
  std::size_t draws = 0;
};

AbsPlan plan_abs(TaxonId taxon, const Phylogeny& phylo, std::size_t num_cases, std::size_t s);

// Ancestor-based S-subset for one individual: the plan's certain cases plus
// `draws` uniform draws from its pool. Sorted.
std::vector<CaseId> sample_abs(TaxonId taxon, const Phylogeny& phylo, std::size_t num_cases,
                               std::size_t s, rng::Engine& eng);

SampleAssignment sample_abs_population(const std::vector<TaxonId>& taxa, const Phylogeny& phylo,
                                       std::size_t num_cases, std::size_t s,
                                       const StreamFn& stream_for,
                                       ExecMode mode = ExecMode::serial);

// Every case for every individual.
SampleAssignment sample_full(std::size_t num_cases, std::size_t pop_size);

}  // namespace phylosub
