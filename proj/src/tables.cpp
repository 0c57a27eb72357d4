#include "citeflow/tables.hpp"

#include <algorithm>
#include <map>

#include "citeflow/error.hpp"

namespace citeflow {

namespace {

std::optional<double> percent(std::size_t part, std::size_t whole) {
  if (whole == 0) return std::nullopt;
  return 100.0 * static_cast<double>(part) / static_cast<double>(whole);
}

struct FlowTally {
  std::size_t total = 0;
  std::size_t totally_intra = 0;
  std::size_t totally_extra = 0;
  std::size_t predominantly_intra = 0;
  ExactMean share;

  void add(const FlowProfile& p) {
    ++total;
    if (p.flow_class == FlowClass::TotallyIntra) ++totally_intra;
    if (p.flow_class == FlowClass::TotallyExtra) ++totally_extra;
    if (is_predominantly_intra(p.flow_class)) ++predominantly_intra;
    share.add(p.share_intra());
  }

  AreaFlowBreakdown row(std::optional<AreaIndex> area) const {
    AreaFlowBreakdown r;
    r.area = area;
    r.total_pubs = total;
    r.n_totally_intra = totally_intra;
    r.n_totally_extra = totally_extra;
    r.n_predominantly_intra = predominantly_intra;
    r.pct_totally_intra = percent(totally_intra, total);
    r.pct_totally_extra = percent(totally_extra, total);
    r.pct_predominantly_intra = percent(predominantly_intra, total);
    if (!share.empty()) r.avg_share_intra = to_double(share.mean() * 100);
    return r;
  }
};

struct MeanAcc {
  double sum = 0.0;
  std::size_t n = 0;

  void add(double v) {
    sum += v;
    ++n;
  }
  std::optional<double> mean() const {
    if (n == 0) return std::nullopt;
    return sum / static_cast<double>(n);
  }
};

}  // namespace

AreaFlowTable area_flow_breakdown(std::span<const FlowProfile> profiles, const AssignmentTable& assignments,
                                  const SubjectCategoryRegistry& registry) {
  std::vector<FlowTally> by_area(registry.area_count());
  FlowTally total;
  for (const auto& p : profiles) {
    by_area[ix(registry.area_of(assignments.sc_of(p.pub)))].add(p);
    total.add(p);
  }
  AreaFlowTable t;
  for (std::size_t a = 0; a < by_area.size(); ++a) t.areas.push_back(by_area[a].row(make_index<AreaIndex>(a)));
  t.total = total.row(std::nullopt);
  return t;
}

// ---------------------------------------------------------------------------

std::span<const ScFlowSummary> ScFlowRanking::lowest() const {
  return std::span<const ScFlowSummary>(ranked).first(std::min(k, ranked.size()));
}

std::span<const ScFlowSummary> ScFlowRanking::highest() const {
  return std::span<const ScFlowSummary>(ranked).last(std::min(k, ranked.size()));
}

ScFlowRanking sc_flow_shares(std::span<const FlowProfile> profiles, const SubjectCategoryRegistry& registry,
                             std::size_t k) {
  struct Acc {
    ExactMean share;
    std::size_t totally_intra = 0;
    std::size_t totally_extra = 0;
  };
  std::vector<Acc> acc(registry.sc_count());
  for (const auto& p : profiles) {
    auto& a = acc[ix(p.sc)];
    a.share.add(p.share_intra());
    if (p.flow_class == FlowClass::TotallyIntra) ++a.totally_intra;
    if (p.flow_class == FlowClass::TotallyExtra) ++a.totally_extra;
  }

  ScFlowRanking ranking;
  ranking.k = k;
  for (std::size_t s = 0; s < acc.size(); ++s) {
    if (acc[s].share.empty()) continue;
    ScFlowSummary row;
    row.sc = make_index<ScIndex>(s);
    row.area = registry.area_of(row.sc);
    row.n_obs = acc[s].share.count();
    row.avg_intra_exact = acc[s].share.mean();
    row.avg_intra = to_double(row.avg_intra_exact);
    row.avg_extra = to_double(1 - row.avg_intra_exact);
    row.diff = to_double(2 * row.avg_intra_exact - 1);
    row.n_totally_intra = acc[s].totally_intra;
    row.n_totally_extra = acc[s].totally_extra;
    row.intra_majority = row.avg_intra_exact > BigRational(1, 2);
    ranking.ranked.push_back(std::move(row));
  }
  // diff is monotone in the exact mean
  std::stable_sort(ranking.ranked.begin(), ranking.ranked.end(),
                   [](const ScFlowSummary& a, const ScFlowSummary& b) { return a.avg_intra_exact < b.avg_intra_exact; });
  return ranking;
}

ScMajorityTable sc_majority_count(std::span<const ScFlowSummary> summaries, const SubjectCategoryRegistry& registry) {
  ScMajorityTable t;
  t.areas.resize(registry.area_count());
  for (std::size_t a = 0; a < t.areas.size(); ++a) {
    t.areas[a].area = make_index<AreaIndex>(a);
    t.areas[a].n_scs_registry = registry.scs_in_area(make_index<AreaIndex>(a)).size();
  }
  t.total.n_scs_registry = registry.sc_count();
  for (const auto& s : summaries) {
    auto& row = t.areas[ix(s.area)];
    ++row.n_scs;
    ++t.total.n_scs;
    if (s.intra_majority) {
      ++row.n_majority;
      ++t.total.n_majority;
    }
  }
  for (auto& row : t.areas) row.pct_majority = percent(row.n_majority, row.n_scs);
  t.total.pct_majority = percent(t.total.n_majority, t.total.n_scs);
  return t;
}

// ---------------------------------------------------------------------------

SpreadTable spread_descriptives(std::span<const FlowProfile> profiles, const SubjectCategoryRegistry& registry) {
  std::vector<std::vector<double>> by_area(registry.area_count());
  std::vector<double> all;
  all.reserve(profiles.size());
  for (const auto& p : profiles) {
    by_area[ix(registry.area_of(p.sc))].push_back(p.distinct_all);
    all.push_back(p.distinct_all);
  }
  SpreadTable t;
  for (std::size_t a = 0; a < by_area.size(); ++a) {
    t.areas.push_back({make_index<AreaIndex>(a), describe(by_area[a])});
  }
  t.total = {std::nullopt, describe(all)};
  return t;
}

// ---------------------------------------------------------------------------

ImpactByClassTable impact_by_flow_class(std::span<const FlowProfile> profiles, const ImpactTable& impacts,
                                        const SubjectCategoryRegistry& registry) {
  struct Acc {
    MeanAcc intra;
    MeanAcc extra;

    ImpactByClass row(std::optional<AreaIndex> area) const {
      ImpactByClass r;
      r.area = area;
      r.n_intra = intra.n;
      r.n_extra = extra.n;
      r.avg_impact_intra = intra.mean();
      r.avg_impact_extra = extra.mean();
      if (r.avg_impact_intra && r.avg_impact_extra) r.delta = *r.avg_impact_intra - *r.avg_impact_extra;
      return r;
    }
  };
  std::vector<Acc> by_area(registry.area_count());
  Acc total;
  for (const auto& p : profiles) {
    const auto* score = impacts.find(p.pub);
    if (!score) continue;
    auto& a = by_area[ix(registry.area_of(p.sc))];
    if (is_predominantly_intra(p.flow_class)) {
      a.intra.add(score->norm_impact);
      total.intra.add(score->norm_impact);
    } else if (is_predominantly_extra(p.flow_class)) {
      a.extra.add(score->norm_impact);
      total.extra.add(score->norm_impact);
    }
  }
  ImpactByClassTable t;
  for (std::size_t a = 0; a < by_area.size(); ++a) t.areas.push_back(by_area[a].row(make_index<AreaIndex>(a)));
  t.total = total.row(std::nullopt);
  return t;
}

// ---------------------------------------------------------------------------

ScCorrelationTable sc_impact_correlation(std::span<const FlowProfile> profiles, const ImpactTable& impacts,
                                         const SubjectCategoryRegistry& registry) {
  struct Pairs {
    std::vector<double> share;
    std::vector<double> impact;
    bool observed = false;
  };
  std::vector<Pairs> by_sc(registry.sc_count());
  for (const auto& p : profiles) {
    auto& pairs = by_sc[ix(p.sc)];
    pairs.observed = true;
    const auto* score = impacts.find(p.pub);
    if (!score) continue;
    pairs.share.push_back(p.share_intra().to_double());
    pairs.impact.push_back(score->norm_impact);
  }

  struct Rollup {
    std::size_t excluded = 0;
    std::vector<double> rs;

    ScCorrelationSummary row(std::optional<AreaIndex> area) const {
      ScCorrelationSummary r;
      r.area = area;
      r.n_scs = rs.size();
      r.n_excluded = excluded;
      r.n_negative = static_cast<std::size_t>(std::count_if(rs.begin(), rs.end(), [](double v) { return v < 0.0; }));
      r.pct_negative = percent(r.n_negative, r.n_scs);
      if (!rs.empty()) {
        r.corr_min = *std::min_element(rs.begin(), rs.end());
        r.corr_max = *std::max_element(rs.begin(), rs.end());
        double sum = 0.0;
        for (double v : rs) sum += v;
        r.corr_mean = sum / static_cast<double>(rs.size());
      }
      return r;
    }
  };

  ScCorrelationTable t;
  std::vector<Rollup> by_area(registry.area_count());
  Rollup total;
  for (std::size_t s = 0; s < by_sc.size(); ++s) {
    if (!by_sc[s].observed) continue;
    ScCorrelation c;
    c.sc = make_index<ScIndex>(s);
    c.n_pairs = by_sc[s].share.size();
    if (c.n_pairs >= 2) c.r = pearson(by_sc[s].share, by_sc[s].impact);
    auto& a = by_area[ix(registry.area_of(c.sc))];
    if (c.r) {
      a.rs.push_back(*c.r);
      total.rs.push_back(*c.r);
    } else {
      ++a.excluded;
      ++total.excluded;
    }
    t.per_sc.push_back(c);
  }
  for (std::size_t a = 0; a < by_area.size(); ++a) t.areas.push_back(by_area[a].row(make_index<AreaIndex>(a)));
  t.total = total.row(std::nullopt);
  return t;
}

// ---------------------------------------------------------------------------

std::vector<SpreadImpactPoint> impact_by_spread(std::span<const FlowProfile> profiles, const ImpactTable& impacts) {
  std::map<std::uint32_t, MeanAcc> groups;
  for (const auto& p : profiles) {
    if (const auto* score = impacts.find(p.pub)) groups[p.distinct_all].add(score->norm_impact);
  }
  std::vector<SpreadImpactPoint> out;
  out.reserve(groups.size());
  for (const auto& [spread, acc] : groups) out.push_back({spread, *acc.mean(), acc.n});
  return out;
}

std::vector<ScSpreadDelta> sc_spread_delta(std::span<const FlowProfile> profiles, const ImpactTable& impacts,
                                           const SubjectCategoryRegistry& registry) {
  struct Acc {
    std::uint64_t spread_sum = 0;
    std::size_t n = 0;
    MeanAcc intra;
    MeanAcc extra;
  };
  std::vector<Acc> acc(registry.sc_count());
  for (const auto& p : profiles) {
    auto& a = acc[ix(p.sc)];
    a.spread_sum += p.distinct_all;
    ++a.n;
    const auto* score = impacts.find(p.pub);
    if (!score) continue;
    if (is_predominantly_intra(p.flow_class)) a.intra.add(score->norm_impact);
    if (is_predominantly_extra(p.flow_class)) a.extra.add(score->norm_impact);
  }
  std::vector<ScSpreadDelta> out;
  for (std::size_t s = 0; s < acc.size(); ++s) {
    if (acc[s].n == 0) continue;
    ScSpreadDelta d;
    d.sc = make_index<ScIndex>(s);
    d.n_obs = acc[s].n;
    d.avg_spread = static_cast<double>(acc[s].spread_sum) / static_cast<double>(acc[s].n);
    if (acc[s].intra.n > 0 && acc[s].extra.n > 0) {
      d.delta_extra_minus_intra = *acc[s].extra.mean() - *acc[s].intra.mean();
    }
    out.push_back(d);
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<WindowSeries> window_comparison(const CorpusGraph& graph, const AssignmentTable& assignments,
                                            std::span<const CitationWindow> windows, unsigned threads) {
  std::vector<WindowSeries> out;
  out.reserve(windows.size());
  for (const auto& w : windows) {
    WindowSeries series;
    series.window = graph.window_years(w);
    series.coverage = coverage_share(graph, assignments, w);
    const auto pop = profile_population(graph, assignments, w, threads);
    series.flows = area_flow_breakdown(pop.profiles, assignments, graph.registry());
    out.push_back(std::move(series));
  }
  return out;
}

}  // namespace citeflow
