#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "citeflow/corpus.hpp"
#include "citeflow/rational.hpp"
#include "citeflow/resolver.hpp"

namespace citeflow {

enum class FlowClass {
  TotallyIntra,        // share = 1
  TotallyExtra,        // share = 0
  PredominantlyIntra,  // 1/2 < share < 1
  PredominantlyExtra,  // 0 < share < 1/2
  Balanced,            // share = 1/2
};

std::string_view to_string(FlowClass c) noexcept;

/// Exact: the comparison with 1/2 is done on the fraction, never a float.
FlowClass classify(Fraction share_intra);

/// share > 1/2 (includes totally intra)
inline bool is_predominantly_intra(FlowClass c) noexcept {
  return c == FlowClass::TotallyIntra || c == FlowClass::PredominantlyIntra;
}
/// share < 1/2 (includes totally extra)
inline bool is_predominantly_extra(FlowClass c) noexcept {
  return c == FlowClass::TotallyExtra || c == FlowClass::PredominantlyExtra;
}

struct ScCount {
  ScIndex sc{};
  std::uint32_t count = 0;

  friend bool operator==(const ScCount&, const ScCount&) = default;
};

struct FlowProfile {
  PubIndex pub{};
  ScIndex sc{};  // the cited publication's resolved SC
  int window = 0;
  std::uint32_t n_cit = 0;
  std::uint32_t n_intra = 0;
  std::vector<ScCount> histogram;  // citing SC -> citations, in SC code order
  std::uint32_t distinct_all = 0;
  std::uint32_t distinct_extra = 0;
  FlowClass flow_class = FlowClass::Balanced;

  Fraction share_intra() const noexcept { return {n_intra, n_cit}; }
  Fraction share_extra() const noexcept { return share_intra().complement(); }
  std::uint32_t n_extra() const noexcept { return n_cit - n_intra; }

  friend bool operator==(const FlowProfile&, const FlowProfile&) = default;
};

/// Throws NotCohortPublication, NoCitationsInWindow.
FlowProfile flow_profile(const CorpusGraph& graph, const AssignmentTable& assignments, PubIndex pub,
                         CitationWindow window);

struct ProfilePopulation {
  int window = 0;
  std::vector<FlowProfile> profiles;  // pub id order
  /// Cohort publications cited within the horizon but not within this window.
  std::size_t skipped_in_window = 0;
  /// Cohort publications never cited within the horizon.
  std::size_t never_cited = 0;
};

ProfilePopulation profile_population(const CorpusGraph& graph, const AssignmentTable& assignments,
                                     CitationWindow window, unsigned threads = 1);

struct CoverageRow {
  std::optional<AreaIndex> area;  // nullopt: total
  std::size_t cited_at_horizon = 0;
  std::size_t cited_in_window = 0;

  std::optional<double> share() const noexcept {
    if (cited_at_horizon == 0) return std::nullopt;
    return static_cast<double>(cited_in_window) / static_cast<double>(cited_at_horizon);
  }
};

struct Coverage {
  int window = 0;
  std::vector<CoverageRow> areas;  // one per registry area, area code order
  CoverageRow total;
};

/// Per area (of the cohort pub's resolved SC): fraction of horizon-cited
/// cohort publications that are cited within the window.
Coverage coverage_share(const CorpusGraph& graph, const AssignmentTable& assignments, CitationWindow window);

}  // namespace citeflow
