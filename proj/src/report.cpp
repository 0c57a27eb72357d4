#include "citeflow/report.hpp"

#include <cstdio>
#include <fstream>

#include "citeflow/csv.hpp"
#include "citeflow/error.hpp"

namespace citeflow {

namespace {

constexpr int kPctDecimals = 1;
constexpr int kRealDecimals = 6;

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, path.string(), "cannot open for writing");
  return out;
}

std::string pct(const std::optional<double>& v) { return v ? format_fixed(*v, kPctDecimals) : std::string(); }
std::string real(const std::optional<double>& v) { return v ? format_fixed(*v, kRealDecimals) : std::string(); }
std::string num(std::size_t n) { return std::to_string(n); }

struct AreaLabel {
  std::string code;
  std::string name;
};

AreaLabel label(const SubjectCategoryRegistry& reg, const std::optional<AreaIndex>& area) {
  if (!area) return {"TOTAL", "Total"};
  return {reg.area(*area).code, reg.area(*area).name};
}

nlohmann::ordered_json opt(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

template <typename Row, typename Fn>
void each_row(const std::vector<Row>& areas, const Row& total, Fn&& fn) {
  for (const auto& r : areas) fn(r);
  fn(total);
}

}  // namespace

std::string format_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s(buf);
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

AnalysisReport analyze(const CorpusGraph& graph, const AssignmentTable& assignments, const AnalysisOptions& options) {
  const auto& reg = graph.registry();
  AnalysisReport r;
  r.reference_window = graph.window_years(options.reference);
  r.population = profile_population(graph, assignments, options.reference, options.threads);
  r.impacts = compute_impacts(graph, assignments, options.reference, options.threads);

  const auto& profiles = r.population.profiles;
  r.table1 = area_flow_breakdown(profiles, assignments, reg);
  r.table2 = sc_flow_shares(profiles, reg, options.top_k);
  r.table3 = sc_majority_count(r.table2.ranked, reg);
  r.table4 = spread_descriptives(profiles, reg);
  r.table5 = impact_by_flow_class(profiles, r.impacts, reg);
  r.table6 = sc_impact_correlation(profiles, r.impacts, reg);
  r.fig3 = impact_by_spread(profiles, r.impacts);
  r.fig4 = sc_spread_delta(profiles, r.impacts, reg);

  std::vector<CitationWindow> windows = options.windows;
  if (windows.empty()) {
    if (graph.full_horizon_years() > 2) windows.push_back(CitationWindow::years(2));
    windows.push_back(CitationWindow::full_horizon());
  }
  r.windows = window_comparison(graph, assignments, windows, options.threads);

  if (profiles.empty()) {
    r.warnings.push_back("empty population: no cohort publication is cited within " +
                         std::to_string(r.reference_window) + " years");
  }
  for (const auto& w : r.windows) {
    if (w.flows.total.total_pubs == 0) {
      r.warnings.push_back("empty population in window " + std::to_string(w.window));
    }
  }
  return r;
}

// ---------------------------------------------------------------------------

void write_report_csv(const AnalysisReport& r, const CorpusGraph& graph, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto& reg = graph.registry();

  {
    auto out = open_out(dir / "table1.csv");
    write_csv_row(out, {"area_code", "area_name", "total_pubs", "pct_totally_intra", "pct_totally_extra",
                        "pct_predominantly_intra", "avg_share_intra", "n_totally_intra", "n_totally_extra",
                        "n_predominantly_intra"});
    each_row(r.table1.areas, r.table1.total, [&](const AreaFlowBreakdown& row) {
      auto l = label(reg, row.area);
      write_csv_row(out, {l.code, l.name, num(row.total_pubs), pct(row.pct_totally_intra), pct(row.pct_totally_extra),
                          pct(row.pct_predominantly_intra), pct(row.avg_share_intra), num(row.n_totally_intra),
                          num(row.n_totally_extra), num(row.n_predominantly_intra)});
    });
  }
  {
    auto out = open_out(dir / "table2.csv");
    write_csv_row(out, {"rank", "sc_code", "sc_name", "area_code", "n_obs", "pct_intra", "pct_extra", "pct_diff",
                        "n_totally_intra", "n_totally_extra", "band"});
    const auto& ranked = r.table2.ranked;
    const std::size_t k = r.table2.k;
    for (std::size_t i = 0; i < ranked.size(); ++i) {
      const auto& s = ranked[i];
      const bool low = i < k;
      const bool high = i + k >= ranked.size();
      const char* band = low && high ? "both" : low ? "lowest" : high ? "highest" : "";
      write_csv_row(out, {num(i + 1), reg.sc(s.sc).code, reg.sc(s.sc).name, reg.area(s.area).code, num(s.n_obs),
                          pct(100.0 * s.avg_intra), pct(100.0 * s.avg_extra), pct(100.0 * s.diff),
                          num(s.n_totally_intra), num(s.n_totally_extra), band});
    }
  }
  {
    auto out = open_out(dir / "table3.csv");
    write_csv_row(out, {"area_code", "area_name", "n_scs", "n_scs_registry", "n_majority_intra", "pct_majority_intra"});
    each_row(r.table3.areas, r.table3.total, [&](const ScMajorityRow& row) {
      auto l = label(reg, row.area);
      write_csv_row(out, {l.code, l.name, num(row.n_scs), num(row.n_scs_registry), num(row.n_majority),
                          pct(row.pct_majority)});
    });
  }
  {
    auto out = open_out(dir / "table4.csv");
    write_csv_row(out, {"area_code", "area_name", "n", "mean", "sd", "min", "max", "median", "q1", "q3",
                        "single_observation"});
    each_row(r.table4.areas, r.table4.total, [&](const SpreadDescriptives& row) {
      auto l = label(reg, row.area);
      const auto& d = row.stats;
      if (d.empty()) {
        write_csv_row(out, {l.code, l.name, "0", "", "", "", "", "", "", "", "false"});
        return;
      }
      write_csv_row(out, {l.code, l.name, num(d.n), real(d.mean), real(d.sd), real(d.min), real(d.max),
                          real(d.median), real(d.q1), real(d.q3), d.single_observation() ? "true" : "false"});
    });
  }
  {
    auto out = open_out(dir / "table5.csv");
    write_csv_row(out, {"area_code", "area_name", "n_predominantly_intra", "n_predominantly_extra",
                        "avg_impact_predominantly_intra", "avg_impact_predominantly_extra", "delta_impact"});
    each_row(r.table5.areas, r.table5.total, [&](const ImpactByClass& row) {
      auto l = label(reg, row.area);
      write_csv_row(out, {l.code, l.name, num(row.n_intra), num(row.n_extra), real(row.avg_impact_intra),
                          real(row.avg_impact_extra), real(row.delta)});
    });
  }
  {
    auto out = open_out(dir / "table6.csv");
    write_csv_row(out, {"area_code", "area_name", "n_scs", "n_negative", "pct_negative", "corr_min", "corr_max",
                        "corr_mean", "n_excluded"});
    each_row(r.table6.areas, r.table6.total, [&](const ScCorrelationSummary& row) {
      auto l = label(reg, row.area);
      write_csv_row(out, {l.code, l.name, num(row.n_scs), num(row.n_negative), pct(row.pct_negative),
                          real(row.corr_min), real(row.corr_max), real(row.corr_mean), num(row.n_excluded)});
    });
  }
  {
    auto out = open_out(dir / "fig3.csv");
    write_csv_row(out, {"distinct_scs", "n", "mean_impact"});
    for (const auto& p : r.fig3) write_csv_row(out, {num(p.distinct_all), num(p.n), real(p.mean_impact)});
  }
  {
    auto out = open_out(dir / "fig4.csv");
    write_csv_row(out, {"sc_code", "area_code", "n_obs", "avg_spread", "delta_impact_extra_minus_intra"});
    for (const auto& d : r.fig4) {
      write_csv_row(out, {reg.sc(d.sc).code, reg.area(reg.area_of(d.sc)).code, num(d.n_obs), real(d.avg_spread),
                          real(d.delta_extra_minus_intra)});
    }
  }

  auto out5 = open_out(dir / "fig5.csv");
  auto out6 = open_out(dir / "fig6.csv");
  auto out7 = open_out(dir / "fig7.csv");
  auto out8 = open_out(dir / "fig8.csv");
  write_csv_row(out5, {"area_code", "area_name", "window", "cited_at_horizon", "cited_in_window", "pct_cited"});
  write_csv_row(out6, {"area_code", "area_name", "window", "n", "pct_totally_intra"});
  write_csv_row(out7, {"area_code", "area_name", "window", "n", "pct_predominantly_intra"});
  write_csv_row(out8, {"area_code", "area_name", "window", "n", "avg_share_intra"});
  for (const auto& w : r.windows) {
    const auto win = std::to_string(w.window);
    each_row(w.coverage.areas, w.coverage.total, [&](const CoverageRow& row) {
      auto l = label(reg, row.area);
      auto share = row.share();
      write_csv_row(out5, {l.code, l.name, win, num(row.cited_at_horizon), num(row.cited_in_window),
                           share ? pct(100.0 * *share) : std::string()});
    });
    each_row(w.flows.areas, w.flows.total, [&](const AreaFlowBreakdown& row) {
      auto l = label(reg, row.area);
      write_csv_row(out6, {l.code, l.name, win, num(row.total_pubs), pct(row.pct_totally_intra)});
      write_csv_row(out7, {l.code, l.name, win, num(row.total_pubs), pct(row.pct_predominantly_intra)});
      write_csv_row(out8, {l.code, l.name, win, num(row.total_pubs), pct(row.avg_share_intra)});
    });
  }
}

// ---------------------------------------------------------------------------

nlohmann::ordered_json report_to_json(const AnalysisReport& r, const CorpusGraph& graph,
                                      const AssignmentTable& assignments) {
  using json = nlohmann::ordered_json;
  const auto& reg = graph.registry();
  auto area_json = [&](const std::optional<AreaIndex>& a) {
    auto l = label(reg, a);
    return json{{"area_code", l.code}, {"area_name", l.name}};
  };
  auto flows_json = [&](const AreaFlowBreakdown& row) {
    json j = area_json(row.area);
    j["total_pubs"] = row.total_pubs;
    j["n_totally_intra"] = row.n_totally_intra;
    j["n_totally_extra"] = row.n_totally_extra;
    j["n_predominantly_intra"] = row.n_predominantly_intra;
    j["pct_totally_intra"] = opt(row.pct_totally_intra);
    j["pct_totally_extra"] = opt(row.pct_totally_extra);
    j["pct_predominantly_intra"] = opt(row.pct_predominantly_intra);
    j["avg_share_intra"] = opt(row.avg_share_intra);
    return j;
  };

  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["cohort_year"] = graph.cohort_year();
  j["horizon_year"] = graph.horizon_year();
  j["reference_window"] = r.reference_window;
  j["seed"] = assignments.seed();
  j["population"] = {{"profiles", r.population.profiles.size()},
                     {"skipped_in_window", r.population.skipped_in_window},
                     {"never_cited", r.population.never_cited}};
  j["warnings"] = r.warnings;

  json t1 = json::array();
  each_row(r.table1.areas, r.table1.total, [&](const auto& row) { t1.push_back(flows_json(row)); });
  j["table1"] = std::move(t1);

  json t2 = json::array();
  for (const auto& s : r.table2.ranked) {
    t2.push_back({{"sc_code", reg.sc(s.sc).code},
                  {"sc_name", reg.sc(s.sc).name},
                  {"area_code", reg.area(s.area).code},
                  {"n_obs", s.n_obs},
                  {"avg_intra", s.avg_intra},
                  {"avg_extra", s.avg_extra},
                  {"diff", s.diff},
                  {"n_totally_intra", s.n_totally_intra},
                  {"n_totally_extra", s.n_totally_extra}});
  }
  j["table2"] = {{"k", r.table2.k}, {"ranked", std::move(t2)}};

  json t3 = json::array();
  each_row(r.table3.areas, r.table3.total, [&](const ScMajorityRow& row) {
    json e = area_json(row.area);
    e["n_scs"] = row.n_scs;
    e["n_scs_registry"] = row.n_scs_registry;
    e["n_majority_intra"] = row.n_majority;
    e["pct_majority_intra"] = opt(row.pct_majority);
    t3.push_back(std::move(e));
  });
  j["table3"] = std::move(t3);

  json t4 = json::array();
  each_row(r.table4.areas, r.table4.total, [&](const SpreadDescriptives& row) {
    json e = area_json(row.area);
    const auto& d = row.stats;
    e["n"] = d.n;
    if (d.empty()) {
      for (const char* k : {"mean", "sd", "min", "max", "median", "q1", "q3"}) e[k] = nullptr;
    } else {
      e["mean"] = d.mean;
      e["sd"] = d.sd;
      e["min"] = d.min;
      e["max"] = d.max;
      e["median"] = d.median;
      e["q1"] = d.q1;
      e["q3"] = d.q3;
    }
    e["single_observation"] = d.single_observation();
    t4.push_back(std::move(e));
  });
  j["table4"] = std::move(t4);

  json t5 = json::array();
  each_row(r.table5.areas, r.table5.total, [&](const ImpactByClass& row) {
    json e = area_json(row.area);
    e["n_predominantly_intra"] = row.n_intra;
    e["n_predominantly_extra"] = row.n_extra;
    e["avg_impact_predominantly_intra"] = opt(row.avg_impact_intra);
    e["avg_impact_predominantly_extra"] = opt(row.avg_impact_extra);
    e["delta_impact"] = opt(row.delta);
    t5.push_back(std::move(e));
  });
  j["table5"] = std::move(t5);

  json t6 = json::array();
  each_row(r.table6.areas, r.table6.total, [&](const ScCorrelationSummary& row) {
    json e = area_json(row.area);
    e["n_scs"] = row.n_scs;
    e["n_negative"] = row.n_negative;
    e["n_excluded"] = row.n_excluded;
    e["corr_min"] = opt(row.corr_min);
    e["corr_max"] = opt(row.corr_max);
    e["corr_mean"] = opt(row.corr_mean);
    t6.push_back(std::move(e));
  });
  json per_sc = json::array();
  for (const auto& c : r.table6.per_sc) {
    per_sc.push_back({{"sc_code", reg.sc(c.sc).code}, {"n_pairs", c.n_pairs}, {"r", opt(c.r)}});
  }
  j["table6"] = {{"areas", std::move(t6)}, {"per_sc", std::move(per_sc)}};

  json f3 = json::array();
  for (const auto& p : r.fig3) f3.push_back({{"distinct_scs", p.distinct_all}, {"n", p.n}, {"mean_impact", p.mean_impact}});
  j["fig3"] = std::move(f3);

  json f4 = json::array();
  for (const auto& d : r.fig4) {
    f4.push_back({{"sc_code", reg.sc(d.sc).code},
                  {"n_obs", d.n_obs},
                  {"avg_spread", d.avg_spread},
                  {"delta_impact_extra_minus_intra", opt(d.delta_extra_minus_intra)}});
  }
  j["fig4"] = std::move(f4);

  json windows = json::array();
  for (const auto& w : r.windows) {
    json cov = json::array();
    each_row(w.coverage.areas, w.coverage.total, [&](const CoverageRow& row) {
      json e = area_json(row.area);
      e["cited_at_horizon"] = row.cited_at_horizon;
      e["cited_in_window"] = row.cited_in_window;
      e["share_cited"] = opt(row.share());
      cov.push_back(std::move(e));
    });
    json fl = json::array();
    each_row(w.flows.areas, w.flows.total, [&](const auto& row) { fl.push_back(flows_json(row)); });
    windows.push_back({{"window", w.window}, {"coverage", std::move(cov)}, {"flows", std::move(fl)}});
  }
  j["windows"] = std::move(windows);
  return j;
}

void write_report_json(const AnalysisReport& report, const CorpusGraph& graph, const AssignmentTable& assignments,
                       const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto out = open_out(path);
  out << report_to_json(report, graph, assignments).dump(2) << '\n';
}

void write_profiles_csv(std::span<const ProfilePopulation> populations, const CorpusGraph& graph,
                        const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto out = open_out(path);
  write_csv_row(out, {"pub_id", "window", "n_cit", "n_intra", "share_intra", "flow_class", "distinct_all",
                      "distinct_extra"});
  for (const auto& pop : populations) {
    for (const auto& p : pop.profiles) {
      write_csv_row(out, {graph.pub_id(p.pub), std::to_string(p.window), num(p.n_cit), num(p.n_intra),
                          format_fixed(p.share_intra().to_double(), kRealDecimals), to_string(p.flow_class),
                          num(p.distinct_all), num(p.distinct_extra)});
    }
  }
}

void write_impact_csv(const ImpactTable& impacts, const CorpusGraph& graph, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto out = open_out(path);
  write_csv_row(out, {"pub_id", "sc_code", "raw_citations", "norm_impact"});
  for (const auto& s : impacts.scores) {
    write_csv_row(out, {graph.pub_id(s.pub), graph.registry().sc(s.sc).code, num(s.raw_citations),
                        format_fixed(s.norm_impact, kRealDecimals)});
  }
}

}  // namespace citeflow
