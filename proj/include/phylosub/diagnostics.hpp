#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "phylosub/rng.hpp"

namespace phylosub {

// A genome is a fixed-length vector of gene values in [0, 100].
using Genome = std::vector<double>;
// A trait vector has one score per training case; trait i is case i.
using TraitVector = std::vector<double>;

inline constexpr double kGeneMin = 0.0;
inline constexpr double kGeneMax = 100.0;
// A trait counts as satisfied when strictly above this value.
inline constexpr double kSatisfiedThreshold = 98.0;

enum class Diagnostic { exploitation, contradictory_objectives, multipath_exploration };

// Diagnostic identifiers as used in config files and condition labels.
std::string to_string(Diagnostic diagnostic);
Diagnostic parse_diagnostic(const std::string& text);

// Identity translation: trait i = gene i.
TraitVector translate_exploitation(const Genome& genome);

// Only the maximum gene is expressed (ties break to the lowest index);
// every other trait is 0.
TraitVector translate_contradictory(const Genome& genome);

// The active region starts at the maximum gene (ties to the lowest index) and
// extends right while each next gene is <= its predecessor; no wraparound.
// Traits outside the active region are 0.
TraitVector translate_multipath(const Genome& genome);

TraitVector translate(Diagnostic diagnostic, const Genome& genome);

// Sum of all trait scores.
double aggregate_score(const TraitVector& traits);

// Number of distinct trait positions satisfied by at least one member.
std::size_t satisfactory_trait_coverage(std::span<const TraitVector> population,
                                        double threshold = kSatisfiedThreshold);

// Per-gene mutation: with probability per_gene_rate add a Normal(0, sigma)
// draw, then clamp to [0, 100]. Draw order is gene-index order.
Genome mutate(const Genome& genome, double per_gene_rate, double sigma, rng::Engine& eng);

}  // namespace phylosub
