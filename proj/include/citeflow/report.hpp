#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "citeflow/corpus.hpp"
#include "citeflow/flows.hpp"
#include "citeflow/impact.hpp"
#include "citeflow/resolver.hpp"
#include "citeflow/tables.hpp"

namespace citeflow {

inline constexpr int kReportSchemaVersion = 1;

struct AnalysisOptions {
  /// Window of the main tables and of the impact indicator.
  CitationWindow reference = CitationWindow::full_horizon();
  /// Windows compared side by side in the figure series. Empty: {2, full}
  /// (2 is dropped when the horizon is shorter).
  std::vector<CitationWindow> windows;
  std::size_t top_k = 10;
  unsigned threads = 1;
};

struct AnalysisReport {
  int reference_window = 0;
  ProfilePopulation population;
  ImpactTable impacts;

  AreaFlowTable table1;
  ScFlowRanking table2;
  ScMajorityTable table3;
  SpreadTable table4;
  ImpactByClassTable table5;
  ScCorrelationTable table6;
  std::vector<SpreadImpactPoint> fig3;
  std::vector<ScSpreadDelta> fig4;
  std::vector<WindowSeries> windows;  // fig5..fig8

  std::vector<std::string> warnings;
};

AnalysisReport analyze(const CorpusGraph& graph, const AssignmentTable& assignments, const AnalysisOptions& options);

/// Fixed-point rendering used in every CSV; "-0.0" is printed as "0.0".
std::string format_fixed(double v, int decimals);

/// table1.csv .. table6.csv, fig3.csv .. fig8.csv
void write_report_csv(const AnalysisReport& report, const CorpusGraph& graph, const std::filesystem::path& dir);

nlohmann::ordered_json report_to_json(const AnalysisReport& report, const CorpusGraph& graph,
                                      const AssignmentTable& assignments);
void write_report_json(const AnalysisReport& report, const CorpusGraph& graph, const AssignmentTable& assignments,
                       const std::filesystem::path& path);

/// profiles.csv: pub_id,window,n_cit,n_intra,share_intra,flow_class,distinct_all,distinct_extra
void write_profiles_csv(std::span<const ProfilePopulation> populations, const CorpusGraph& graph,
                        const std::filesystem::path& path);
/// impact.csv: pub_id,sc_code,raw_citations,norm_impact
void write_impact_csv(const ImpactTable& impacts, const CorpusGraph& graph, const std::filesystem::path& path);

}  // namespace citeflow
