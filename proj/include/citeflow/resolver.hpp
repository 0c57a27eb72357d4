#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "citeflow/corpus.hpp"
#include "citeflow/rational.hpp"

namespace citeflow {

enum class AssignmentMethod {
  SingleCategoryVenue,
  PredominantAmongCiting,
  PredominantAmongReferences,
  TieBreakRandom,
  FallbackRandom,
};

std::string_view to_string(AssignmentMethod m) noexcept;
std::optional<AssignmentMethod> parse_assignment_method(std::string_view s) noexcept;

struct Assignment {
  ScIndex sc{};
  AssignmentMethod method = AssignmentMethod::SingleCategoryVenue;
  bool tied = false;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// One resolved SC per publication, indexed by PubIndex.
class AssignmentTable {
 public:
  AssignmentTable() = default;
  AssignmentTable(std::vector<Assignment> entries, std::uint64_t seed)
      : entries_(std::move(entries)), seed_(seed) {}

  std::size_t size() const noexcept { return entries_.size(); }
  std::uint64_t seed() const noexcept { return seed_; }
  const Assignment& at(PubIndex p) const { return entries_[ix(p)]; }
  ScIndex sc_of(PubIndex p) const { return entries_[ix(p)].sc; }
  std::span<const Assignment> entries() const noexcept { return entries_; }

  friend bool operator==(const AssignmentTable&, const AssignmentTable&) = default;

 private:
  std::vector<Assignment> entries_;
  std::uint64_t seed_ = 0;
};

/// Which neighbours vote for a multi-SC publication.
enum class CounterpartRole {
  Citing,      // cohort publication cited at least once within the horizon
  References,  // everything else
};

CounterpartRole counterpart_role(const CorpusGraph& graph, PubIndex p);

/// The publications whose SCs are tallied for `p` under its role.
std::vector<PubIndex> counterparts(const CorpusGraph& graph, PubIndex p);

/// Phase 1: publications in single-SC venues are anchored to that SC.
std::vector<std::optional<ScIndex>> phase1_anchors(const CorpusGraph& graph);

struct ScScore {
  ScIndex sc{};
  BigRational score;
};

/// Votes for each candidate SC of `p` (in code order). An anchored
/// counterpart adds 1 to its SC; an unanchored one adds 1/k to each of its k
/// candidates. Votes for SCs outside p's candidate set are dropped.
std::vector<ScScore> tally_counterparts(const CorpusGraph& graph, PubIndex p,
                                        std::span<const std::optional<ScIndex>> anchors);

/// Tie-break hash: FNV-1a-64 over the pub id bytes, xored with splitmix64(seed)
/// and finalized with splitmix64. Stable across platforms and builds.
std::uint64_t tie_hash(std::uint64_t seed, std::string_view pub_id) noexcept;

/// Picks tied[tie_hash(seed, pub_id) % n] after sorting the codes.
/// Throws EmptyTieSet.
std::string break_tie(std::vector<std::string> tied_codes, std::uint64_t seed, std::string_view pub_id);
/// Same rule over registry indexes, which sort like their codes.
ScIndex break_tie(std::span<const ScIndex> tied_sorted, std::uint64_t seed, std::string_view pub_id);

/// Two-phase resolution of every publication. Deterministic in (graph, seed)
/// and independent of `threads`.
AssignmentTable resolve_all(const CorpusGraph& graph, std::uint64_t seed, unsigned threads = 1);

}  // namespace citeflow
