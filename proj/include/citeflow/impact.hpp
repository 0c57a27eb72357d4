#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "citeflow/corpus.hpp"
#include "citeflow/resolver.hpp"

namespace citeflow {

/// Field-normalized impact of one cohort publication: in-window citations
/// divided by the mean in-window citations of the horizon-cited cohort
/// publications resolved to the same SC.
struct ImpactScore {
  PubIndex pub{};
  ScIndex sc{};
  std::uint32_t raw_citations = 0;
  double norm_impact = 0.0;

  friend bool operator==(const ImpactScore&, const ImpactScore&) = default;
};

/// Mean over cohort pubs of `sc` that are cited at least once within the
/// horizon. Throws EmptySubjectCategory when there are none, or when none of
/// them is cited inside the window (the mean would be zero).
double sc_mean_citations(const CorpusGraph& graph, const AssignmentTable& assignments, ScIndex sc,
                         CitationWindow window = CitationWindow::full_horizon());

/// Throws NotCohortPublication, NoCitationsInWindow (uncited at horizon),
/// EmptySubjectCategory.
ImpactScore normalized_impact(const CorpusGraph& graph, const AssignmentTable& assignments, PubIndex pub,
                              CitationWindow window = CitationWindow::full_horizon());

class ImpactTable {
 public:
  int window = 0;
  std::vector<ImpactScore> scores;          // pub id order
  std::vector<std::optional<double>> sc_mean;  // by ScIndex; nullopt when undefined

  /// Score for `pub` if it is in the population.
  const ImpactScore* find(PubIndex pub) const;

 private:
  friend ImpactTable compute_impacts(const CorpusGraph&, const AssignmentTable&, CitationWindow, unsigned);
  std::vector<std::int64_t> slot_;  // PubIndex -> position in scores, -1 if absent
};

/// All impacts in one pass: SC means first (integer sums in pub id order),
/// then per-pub division.
ImpactTable compute_impacts(const CorpusGraph& graph, const AssignmentTable& assignments,
                            CitationWindow window = CitationWindow::full_horizon(), unsigned threads = 1);

}  // namespace citeflow
