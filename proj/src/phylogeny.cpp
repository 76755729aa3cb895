#include "phylosub/phylogeny.hpp"

#include <algorithm>
#include <stdexcept>

namespace phylosub {

namespace {

std::string unknown_taxon_message(TaxonId id) {
  return "unknown taxon id " + std::to_string(id.value);
}

}  // namespace

const Taxon& Phylogeny::taxon(TaxonId id) const {
  const auto it = taxa_.find(id.value);
  if (it == taxa_.end()) throw std::out_of_range(unknown_taxon_message(id));
  return it->second;
}

Taxon& Phylogeny::taxon_ref(TaxonId id) {
  const auto it = taxa_.find(id.value);
  if (it == taxa_.end()) throw std::out_of_range(unknown_taxon_message(id));
  return it->second;
}

TaxonId Phylogeny::record_offspring(std::optional<TaxonId> parent, const Genome& genome) {
  if (parent.has_value()) {
    Taxon& parent_taxon = taxon_ref(*parent);
    if (parent_taxon.genome == genome) {
      // A clone: no genetic change, same taxon.
      ++parent_taxon.extant_count;
      return parent_taxon.id;
    }
  } else {
    // Initialization: equal founding genomes share a root taxon.
    for (const TaxonId root_id : roots_) {
      Taxon& root = taxon_ref(root_id);
      if (root.genome == genome) {
        ++root.extant_count;
        return root.id;
      }
    }
  }
  const TaxonId id{next_id_++};
  Taxon taxon;
  taxon.id = id;
  taxon.parent = parent;
  taxon.genome = genome;
  taxon.extant_count = 1;
  taxon.origin_generation = generation_;
  taxa_.emplace(id.value, std::move(taxon));
  if (parent.has_value()) {
    ++taxon_ref(*parent).child_count;
  } else {
    roots_.push_back(id);
  }
  return id;
}

void Phylogeny::record_death(TaxonId id) {
  Taxon& taxon = taxon_ref(id);
  if (taxon.extant_count == 0) throw std::logic_error("death recorded for extinct taxon");
  --taxon.extant_count;
  prune_upward(id);
}

// Removes the taxon if nothing in its subtree is extant, then walks up while
// that keeps being true. A retained child implies a living descendant, so the
// subtree test is extant_count == 0 && child_count == 0.
void Phylogeny::prune_upward(TaxonId id) {
  auto it = taxa_.find(id.value);
  while (it != taxa_.end() && it->second.extant_count == 0 && it->second.child_count == 0) {
    const std::optional<TaxonId> parent = it->second.parent;
    if (!parent.has_value()) {
      roots_.erase(std::find(roots_.begin(), roots_.end(), it->second.id));
    }
    taxa_.erase(it);
    if (!parent.has_value()) return;
    it = taxa_.find(parent->value);
    if (it == taxa_.end()) throw std::logic_error("retained taxon missing its parent");
    --it->second.child_count;
  }
}

void Phylogeny::annotate(TaxonId id, CaseId case_id, double score) {
  taxon_ref(id).evaluations.try_emplace(case_id, score);
}

EstimationResult Phylogeny::estimate(TaxonId id, CaseId case_id, std::size_t depth_limit,
                                     double worst_score) const {
  const Taxon* current = &taxon(id);
  std::size_t distance = 0;
  while (true) {
    const auto hit = current->evaluations.find(case_id);
    if (hit != current->evaluations.end()) {
      return {hit->second,
              distance == 0 ? EstimationResult::Source::self : EstimationResult::Source::ancestor,
              distance};
    }
    if (distance == depth_limit || !current->parent.has_value()) {
      return {worst_score, EstimationResult::Source::failed, distance};
    }
    current = &taxon(*current->parent);
    ++distance;
  }
}

std::vector<std::vector<CaseId>> Phylogeny::evaluated_cases_along_ancestry(TaxonId id) const {
  std::vector<std::vector<CaseId>> steps;
  const Taxon* current = &taxon(id);
  while (true) {
    std::vector<CaseId> cases;
    cases.reserve(current->evaluations.size());
    for (const auto& [case_id, score] : current->evaluations) cases.push_back(case_id);
    std::sort(cases.begin(), cases.end());
    steps.push_back(std::move(cases));
    if (!current->parent.has_value()) break;
    current = &taxon(*current->parent);
  }
  return steps;
}

std::size_t Phylogeny::total_extant() const {
  std::size_t total = 0;
  for (const auto& [value, taxon] : taxa_) total += taxon.extant_count;
  return total;
}

std::vector<TaxonId> Phylogeny::taxon_ids() const {
  std::vector<TaxonId> ids;
  ids.reserve(taxa_.size());
  for (const auto& [value, taxon] : taxa_) ids.push_back(taxon.id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

void Phylogeny::dump_csv(std::ostream& out) const {
  out << "taxon_id,parent_id,origin_generation,extant_count,num_evaluations\n";
  for (const TaxonId id : taxon_ids()) {
    const Taxon& t = taxon(id);
    out << t.id.value << ',';
    if (t.parent.has_value()) out << t.parent->value;
    out << ',' << t.origin_generation << ',' << t.extant_count << ',' << t.evaluations.size()
        << '\n';
  }
}

}  // namespace phylosub
