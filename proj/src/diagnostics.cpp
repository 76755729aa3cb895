#include "phylosub/diagnostics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace phylosub {

TraitVector translate_exploitation(const Genome& genome) { return genome; }

TraitVector translate_contradictory(const Genome& genome) {
  TraitVector traits(genome.size(), 0.0);
  if (genome.empty()) return traits;
  const auto max_it = std::max_element(genome.begin(), genome.end());
  const auto idx = static_cast<std::size_t>(max_it - genome.begin());
  traits[idx] = genome[idx];
  return traits;
}

TraitVector translate_multipath(const Genome& genome) {
  TraitVector traits(genome.size(), 0.0);
  if (genome.empty()) return traits;
  const auto max_it = std::max_element(genome.begin(), genome.end());
  const auto start = static_cast<std::size_t>(max_it - genome.begin());
  traits[start] = genome[start];
  for (std::size_t i = start + 1; i < genome.size() && genome[i] <= genome[i - 1]; ++i) {
    traits[i] = genome[i];
  }
  return traits;
}

TraitVector translate(Diagnostic diagnostic, const Genome& genome) {
  switch (diagnostic) {
    case Diagnostic::exploitation:
      return translate_exploitation(genome);
    case Diagnostic::contradictory_objectives:
      return translate_contradictory(genome);
    case Diagnostic::multipath_exploration:
      return translate_multipath(genome);
  }
  throw std::invalid_argument("unknown diagnostic");
}

double aggregate_score(const TraitVector& traits) {
  return std::accumulate(traits.begin(), traits.end(), 0.0);
}

std::size_t satisfactory_trait_coverage(std::span<const TraitVector> population,
                                        double threshold) {
  if (population.empty()) return 0;
  std::vector<bool> satisfied(population.front().size(), false);
  for (const auto& traits : population) {
    for (std::size_t i = 0; i < traits.size(); ++i) {
      if (traits[i] > threshold) satisfied[i] = true;
    }
  }
  return static_cast<std::size_t>(std::count(satisfied.begin(), satisfied.end(), true));
}

Genome mutate(const Genome& genome, double per_gene_rate, double sigma, rng::Engine& eng) {
  Genome offspring = genome;
  std::bernoulli_distribution mutates(per_gene_rate);
  std::normal_distribution<double> step(0.0, sigma);
  for (double& gene : offspring) {
    if (!mutates(eng)) continue;
    gene = std::clamp(gene + step(eng), kGeneMin, kGeneMax);
  }
  return offspring;
}

std::string to_string(Diagnostic diagnostic) {
  switch (diagnostic) {
    case Diagnostic::exploitation:
      return "exploitation";
    case Diagnostic::contradictory_objectives:
      return "contradictory";
    case Diagnostic::multipath_exploration:
      return "multipath";
  }
  throw std::invalid_argument("unknown diagnostic");
}

Diagnostic parse_diagnostic(const std::string& text) {
  if (text == "exploitation") return Diagnostic::exploitation;
  if (text == "contradictory") return Diagnostic::contradictory_objectives;
  if (text == "multipath") return Diagnostic::multipath_exploration;
  throw std::invalid_argument("unknown diagnostic '" + text + "'");
}

}  // namespace phylosub
