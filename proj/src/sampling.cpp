#include "phylosub/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace phylosub {

std::string to_string(RegimeKind kind) {
  switch (kind) {
    case RegimeKind::full:
      return "full";
    case RegimeKind::down_sample:
      return "down-sample";
    case RegimeKind::down_sample_est:
      return "down-sample-est";
    case RegimeKind::irs:
      return "irs";
    case RegimeKind::abs:
      return "abs";
  }
  throw std::invalid_argument("unknown regime");
}

RegimeKind parse_regime(const std::string& text) {
  if (text == "full") return RegimeKind::full;
  if (text == "down-sample") return RegimeKind::down_sample;
  if (text == "down-sample-est") return RegimeKind::down_sample_est;
  if (text == "irs") return RegimeKind::irs;
  if (text == "abs") return RegimeKind::abs;
  throw std::invalid_argument("unknown regime '" + text + "'");
}

bool uses_estimation(RegimeKind kind) {
  return kind == RegimeKind::down_sample_est || kind == RegimeKind::irs ||
         kind == RegimeKind::abs;
}

std::size_t sample_size(double rate, std::size_t num_cases) {
  const auto rounded = static_cast<std::size_t>(std::llround(rate * static_cast<double>(num_cases)));
  return std::clamp<std::size_t>(rounded, 1, num_cases);
}

std::vector<CaseId> random_subset(std::size_t num_cases, std::size_t s, rng::Engine& eng) {
  std::vector<CaseId> ids(num_cases);
  std::iota(ids.begin(), ids.end(), CaseId{0});
  // Partial Fisher-Yates: the first s slots end up a uniform s-subset.
  for (std::size_t i = 0; i < s; ++i) {
    const std::size_t j = i + rng::uniform_index(eng, num_cases - i);
    std::swap(ids[i], ids[j]);
  }
  ids.resize(s);
  std::sort(ids.begin(), ids.end());
  return ids;
}

SampleAssignment sample_down(std::size_t num_cases, std::size_t s, std::size_t pop_size,
                             rng::Engine& eng) {
  SampleAssignment assignment;
  assignment.per_individual.assign(pop_size, random_subset(num_cases, s, eng));
  return assignment;
}

SampleAssignment sample_irs(std::size_t num_cases, std::size_t s, std::size_t pop_size,
                            const StreamFn& stream_for, ExecMode mode) {
  SampleAssignment assignment;
  assignment.per_individual.resize(pop_size);
  auto one = [&](std::size_t i) {
    rng::Engine eng = stream_for(i);
    assignment.per_individual[i] = random_subset(num_cases, s, eng);
  };
  if (mode == ExecMode::openmp) {
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < pop_size; ++i) one(i);
  } else {
    for (std::size_t i = 0; i < pop_size; ++i) one(i);
  }
  return assignment;
}

AbsPlan plan_abs(TaxonId taxon, const Phylogeny& phylo, std::size_t num_cases, std::size_t s) {
  std::vector<bool> eligible(num_cases, true);
  std::size_t eligible_count = num_cases;
  std::vector<CaseId> last_marked;

  const Taxon* current = &phylo.taxon(taxon);
  while (eligible_count > s && current != nullptr) {
    // Mark this taxon's evaluated cases ineligible; the ones that transition
    // here are the fill pool if this step ends the walk.
    std::vector<CaseId> marked_now;
    for (const auto& [case_id, score] : current->evaluations) {
      if (case_id < num_cases && eligible[case_id]) {
        eligible[case_id] = false;
        marked_now.push_back(case_id);
      }
    }
    eligible_count -= marked_now.size();
    if (!marked_now.empty()) last_marked = std::move(marked_now);
    current = current->parent.has_value() ? &phylo.taxon(*current->parent) : nullptr;
  }

  AbsPlan plan;
  if (eligible_count > s) {
    // Ancestry exhausted first: a plain uniform subset of the still-eligible.
    plan.pool.reserve(eligible_count);
    for (CaseId c = 0; c < num_cases; ++c) {
      if (eligible[c]) plan.pool.push_back(c);
    }
    plan.draws = s;
    return plan;
  }
  plan.certain.reserve(eligible_count);
  for (CaseId c = 0; c < num_cases; ++c) {
    if (eligible[c]) plan.certain.push_back(c);
  }
  plan.draws = s - plan.certain.size();
  if (plan.draws > 0) {
    // The loop only exits with fewer than s eligible right after a step that
    // marked at least one case, so last_marked is that stopping step's set.
    std::sort(last_marked.begin(), last_marked.end());
    plan.pool = std::move(last_marked);
  }
  return plan;
}

std::vector<CaseId> sample_abs(TaxonId taxon, const Phylogeny& phylo, std::size_t num_cases,
                               std::size_t s, rng::Engine& eng) {
  AbsPlan plan = plan_abs(taxon, phylo, num_cases, s);
  std::vector<CaseId> sample = std::move(plan.certain);
  if (plan.draws > 0) {
    for (std::size_t i = 0; i < plan.draws; ++i) {
      const std::size_t j = i + rng::uniform_index(eng, plan.pool.size() - i);
      std::swap(plan.pool[i], plan.pool[j]);
    }
    sample.insert(sample.end(), plan.pool.begin(), plan.pool.begin() + plan.draws);
  }
  std::sort(sample.begin(), sample.end());
  return sample;
}

SampleAssignment sample_abs_population(const std::vector<TaxonId>& taxa, const Phylogeny& phylo,
                                       std::size_t num_cases, std::size_t s,
                                       const StreamFn& stream_for, ExecMode mode) {
  SampleAssignment assignment;
  assignment.per_individual.resize(taxa.size());
  auto one = [&](std::size_t i) {
    rng::Engine eng = stream_for(i);
    assignment.per_individual[i] = sample_abs(taxa[i], phylo, num_cases, s, eng);
  };
  if (mode == ExecMode::openmp) {
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < taxa.size(); ++i) one(i);
  } else {
    for (std::size_t i = 0; i < taxa.size(); ++i) one(i);
  }
  return assignment;
}

SampleAssignment sample_full(std::size_t num_cases, std::size_t pop_size) {
  std::vector<CaseId> all(num_cases);
  std::iota(all.begin(), all.end(), CaseId{0});
  SampleAssignment assignment;
  assignment.per_individual.assign(pop_size, all);
  return assignment;
}

}  // namespace phylosub
