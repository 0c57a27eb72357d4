#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "citeflow/corpus.hpp"
#include "citeflow/flows.hpp"
#include "citeflow/impact.hpp"
#include "citeflow/rational.hpp"
#include "citeflow/stats.hpp"

namespace citeflow {

// Rows keyed by area carry `area == nullopt` for the Total row. Every Total
// row is recomputed over the ungrouped population.

/// Flow-class breakdown of one area (Table 1 layout).
struct AreaFlowBreakdown {
  std::optional<AreaIndex> area;
  std::size_t total_pubs = 0;
  std::size_t n_totally_intra = 0;
  std::size_t n_totally_extra = 0;
  std::size_t n_predominantly_intra = 0;  // share > 1/2, includes totally intra
  std::optional<double> pct_totally_intra;
  std::optional<double> pct_totally_extra;
  std::optional<double> pct_predominantly_intra;
  std::optional<double> avg_share_intra;  // percent, exact mean correctly rounded
};

struct AreaFlowTable {
  std::vector<AreaFlowBreakdown> areas;  // one per registry area
  AreaFlowBreakdown total;
};

/// Groups by the area of each cited publication's resolved SC.
AreaFlowTable area_flow_breakdown(std::span<const FlowProfile> profiles, const AssignmentTable& assignments,
                                  const SubjectCategoryRegistry& registry);

/// Mean intra/extra shares of one SC (Table 2 layout). Shares are fractions in [0,1].
struct ScFlowSummary {
  ScIndex sc{};
  AreaIndex area{};
  std::size_t n_obs = 0;
  double avg_intra = 0.0;
  double avg_extra = 0.0;
  double diff = 0.0;
  std::size_t n_totally_intra = 0;
  std::size_t n_totally_extra = 0;
  /// Exact mean intra share.
  BigRational avg_intra_exact;
  /// avg_intra > 1/2, decided exactly.
  bool intra_majority = false;
};

struct ScFlowRanking {
  /// Observed SCs sorted by diff ascending, ties by SC code.
  std::vector<ScFlowSummary> ranked;
  std::size_t k = 10;

  std::span<const ScFlowSummary> lowest() const;
  std::span<const ScFlowSummary> highest() const;
};

ScFlowRanking sc_flow_shares(std::span<const FlowProfile> profiles, const SubjectCategoryRegistry& registry,
                             std::size_t k = 10);

/// Count of SCs with mean intra share strictly above 1/2 (Table 3 layout).
struct ScMajorityRow {
  std::optional<AreaIndex> area;
  std::size_t n_scs = 0;           // SCs with at least one observation
  std::size_t n_scs_registry = 0;  // all SCs of the area
  std::size_t n_majority = 0;
  std::optional<double> pct_majority;
};

struct ScMajorityTable {
  std::vector<ScMajorityRow> areas;
  ScMajorityRow total;
};

ScMajorityTable sc_majority_count(std::span<const ScFlowSummary> summaries, const SubjectCategoryRegistry& registry);

/// Descriptives of distinct_all per profile (Table 4 layout).
struct SpreadDescriptives {
  std::optional<AreaIndex> area;
  Descriptives stats;
};

struct SpreadTable {
  std::vector<SpreadDescriptives> areas;
  SpreadDescriptives total;
};

SpreadTable spread_descriptives(std::span<const FlowProfile> profiles, const SubjectCategoryRegistry& registry);

/// Mean impact of predominantly-intra vs predominantly-extra pubs (Table 5
/// layout). Balanced pubs belong to neither subset.
struct ImpactByClass {
  std::optional<AreaIndex> area;
  std::size_t n_intra = 0;
  std::size_t n_extra = 0;
  std::optional<double> avg_impact_intra;
  std::optional<double> avg_impact_extra;
  std::optional<double> delta;  // intra - extra
};

struct ImpactByClassTable {
  std::vector<ImpactByClass> areas;
  ImpactByClass total;
};

ImpactByClassTable impact_by_flow_class(std::span<const FlowProfile> profiles, const ImpactTable& impacts,
                                        const SubjectCategoryRegistry& registry);

/// Per-SC correlation of intra share vs normalized impact.
struct ScCorrelation {
  ScIndex sc{};
  std::size_t n_pairs = 0;
  std::optional<double> r;  // nullopt: fewer than 2 pairs or zero variance
};

/// Area rollup of ScCorrelation (Table 6 layout); statistics are over defined r only.
struct ScCorrelationSummary {
  std::optional<AreaIndex> area;
  std::size_t n_scs = 0;
  std::size_t n_negative = 0;
  std::size_t n_excluded = 0;
  std::optional<double> pct_negative;
  std::optional<double> corr_min;
  std::optional<double> corr_max;
  std::optional<double> corr_mean;
};

struct ScCorrelationTable {
  std::vector<ScCorrelation> per_sc;  // observed SCs, code order
  std::vector<ScCorrelationSummary> areas;
  ScCorrelationSummary total;
};

ScCorrelationTable sc_impact_correlation(std::span<const FlowProfile> profiles, const ImpactTable& impacts,
                                         const SubjectCategoryRegistry& registry);

/// Mean impact by number of citing SCs.
struct SpreadImpactPoint {
  std::uint32_t distinct_all = 0;
  double mean_impact = 0.0;
  std::size_t n = 0;
};

std::vector<SpreadImpactPoint> impact_by_spread(std::span<const FlowProfile> profiles, const ImpactTable& impacts);

/// Per-SC mean spread against the impact gap between predominantly-extra and
/// predominantly-intra publications.
struct ScSpreadDelta {
  ScIndex sc{};
  std::size_t n_obs = 0;
  double avg_spread = 0.0;
  std::optional<double> delta_extra_minus_intra;
};

std::vector<ScSpreadDelta> sc_spread_delta(std::span<const FlowProfile> profiles, const ImpactTable& impacts,
                                           const SubjectCategoryRegistry& registry);

/// Side-by-side window series: coverage plus flow breakdown per window.
struct WindowSeries {
  int window = 0;
  Coverage coverage;
  AreaFlowTable flows;
};

std::vector<WindowSeries> window_comparison(const CorpusGraph& graph, const AssignmentTable& assignments,
                                            std::span<const CitationWindow> windows, unsigned threads = 1);

}  // namespace citeflow
