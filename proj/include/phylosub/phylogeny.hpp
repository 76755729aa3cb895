#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <unordered_map>
#include <vector>

#include "phylosub/diagnostics.hpp"

namespace phylosub {

using CaseId = std::size_t;

// Opaque taxon handle. Ids are assigned monotonically and never reused, so a
// pruned id stays invalid forever.
struct TaxonId {
  std::uint64_t value = 0;
  friend auto operator<=>(const TaxonId&, const TaxonId&) = default;
};

// One genotype-level node of the tracked tree. Clones share a taxon.
struct Taxon {
  TaxonId id;
  std::optional<TaxonId> parent;  // absent for roots
  Genome genome;                  // the genotype this taxon stands for
  std::unordered_map<CaseId, double> evaluations;
  std::size_t extant_count = 0;
  std::size_t origin_generation = 0;
  std::size_t child_count = 0;  // retained children only
};

struct EstimationResult {
  enum class Source { self, ancestor, failed };
  double value = 0.0;
  Source source = Source::failed;
  std::size_t distance = 0;  // steps searched; self = 0, parent = 1
};

// Runtime phylogeny over genotype taxa. Extinct subtrees are pruned as they
// die; ancestors of extant taxa are always retained, and unary chains are
// never collapsed so ancestry distances stay faithful.
class Phylogeny {
 public:
  // Records a birth. A genome equal to the parent's maps to the parent's
  // taxon; otherwise a new child taxon is created at the current generation.
  // Without a parent, an existing root with an equal genome is reused.
  TaxonId record_offspring(std::optional<TaxonId> parent, const Genome& genome);

  // Records a death; prunes the taxon's subtree once nothing in it is extant.
  void record_death(TaxonId id);

  // Attaches one evaluated score. First annotation of a case wins; later
  // annotations of the same case are discarded (evaluation is deterministic
  // per genotype, so they agree).
  void annotate(TaxonId id, CaseId case_id, double score);

  // Nearest-ancestor estimate for one case: the taxon itself counts as
  // distance 0, then direct ancestors up to depth_limit steps. Reaching the
  // root or the limit without a hit fails with worst_score.
  EstimationResult estimate(TaxonId id, CaseId case_id, std::size_t depth_limit,
                            double worst_score) const;

  // Evaluated-case sets from the taxon to its retained root, one sorted set
  // per ancestry step.
  std::vector<std::vector<CaseId>> evaluated_cases_along_ancestry(TaxonId id) const;

  // Generation stamp applied to newly created taxa.
  void set_generation(std::size_t generation) { generation_ = generation; }
  std::size_t generation() const { return generation_; }

  bool contains(TaxonId id) const { return taxa_.contains(id.value); }
  const Taxon& taxon(TaxonId id) const;
  std::size_t num_taxa() const { return taxa_.size(); }
  std::size_t total_extant() const;
  const std::vector<TaxonId>& roots() const { return roots_; }
  std::vector<TaxonId> taxon_ids() const;  // sorted

  // CSV edge list: taxon_id,parent_id,origin_generation,extant_count,
  // num_evaluations. Rows sorted by taxon id; roots have an empty parent_id.
  void dump_csv(std::ostream& out) const;

 private:
  Taxon& taxon_ref(TaxonId id);
  void prune_upward(TaxonId id);

  std::unordered_map<std::uint64_t, Taxon> taxa_;
  std::vector<TaxonId> roots_;
  std::uint64_t next_id_ = 0;
  std::size_t generation_ = 0;
};

}  // namespace phylosub
