#include "citeflow/flows.hpp"

#include <algorithm>

#include "citeflow/error.hpp"
#include "citeflow/parallel.hpp"

namespace citeflow {

std::string_view to_string(FlowClass c) noexcept {
  switch (c) {
    case FlowClass::TotallyIntra: return "TotallyIntra";
    case FlowClass::TotallyExtra: return "TotallyExtra";
    case FlowClass::PredominantlyIntra: return "PredominantlyIntra";
    case FlowClass::PredominantlyExtra: return "PredominantlyExtra";
    case FlowClass::Balanced: return "Balanced";
  }
  return "Unknown";
}

FlowClass classify(Fraction share) {
  if (share.den() == 0 || share.num() > share.den()) {
    throw std::domain_error("share must lie in [0, 1]");
  }
  if (share.num() == share.den()) return FlowClass::TotallyIntra;
  if (share.num() == 0) return FlowClass::TotallyExtra;
  const auto cmp = share <=> kHalf;
  if (cmp > 0) return FlowClass::PredominantlyIntra;
  if (cmp < 0) return FlowClass::PredominantlyExtra;
  return FlowClass::Balanced;
}

namespace {

// Builds the profile, or returns false when the pub has no in-window citation.
bool fill_profile(const CorpusGraph& graph, const AssignmentTable& assignments, PubIndex pub, int w,
                  std::vector<ScIndex>& scratch, FlowProfile& out) {
  scratch.clear();
  for (PubIndex q : graph.in_citations(pub)) {
    if (graph.in_window(graph.pub_year(q), w)) scratch.push_back(assignments.sc_of(q));
  }
  if (scratch.empty()) return false;
  std::sort(scratch.begin(), scratch.end());

  out.pub = pub;
  out.sc = assignments.sc_of(pub);
  out.window = w;
  out.n_cit = static_cast<std::uint32_t>(scratch.size());
  out.n_intra = 0;
  out.histogram.clear();
  for (ScIndex s : scratch) {
    if (!out.histogram.empty() && out.histogram.back().sc == s) {
      ++out.histogram.back().count;
    } else {
      out.histogram.push_back({s, 1});
    }
    if (s == out.sc) ++out.n_intra;
  }
  out.distinct_all = static_cast<std::uint32_t>(out.histogram.size());
  out.distinct_extra = out.distinct_all - (out.n_intra > 0 ? 1 : 0);
  out.flow_class = classify(out.share_intra());
  return true;
}

}  // namespace

FlowProfile flow_profile(const CorpusGraph& graph, const AssignmentTable& assignments, PubIndex pub,
                         CitationWindow window) {
  const int w = graph.window_years(window);
  if (!graph.is_cohort(pub)) throw Error(ErrorCode::NotCohortPublication, graph.pub_id(pub));
  std::vector<ScIndex> scratch;
  FlowProfile profile;
  if (!fill_profile(graph, assignments, pub, w, scratch, profile)) {
    throw Error(ErrorCode::NoCitationsInWindow, graph.pub_id(pub), "window " + std::to_string(w));
  }
  return profile;
}

ProfilePopulation profile_population(const CorpusGraph& graph, const AssignmentTable& assignments,
                                     CitationWindow window, unsigned threads) {
  const int w = graph.window_years(window);
  const int full = graph.full_horizon_years();
  const auto cohort = graph.cohort();

  // 0: never cited, 1: cited later than the window, 2: profiled
  std::vector<std::uint8_t> status(cohort.size(), 0);
  std::vector<FlowProfile> slots(cohort.size());
  parallel_for(cohort.size(), threads, [&](std::size_t begin, std::size_t end) {
    std::vector<ScIndex> scratch;
    for (std::size_t i = begin; i < end; ++i) {
      if (fill_profile(graph, assignments, cohort[i], w, scratch, slots[i])) {
        status[i] = 2;
      } else if (graph.citations_in_window(cohort[i], full) > 0) {
        status[i] = 1;
      }
    }
  });

  ProfilePopulation pop;
  pop.window = w;
  for (std::size_t i = 0; i < cohort.size(); ++i) {
    switch (status[i]) {
      case 2: pop.profiles.push_back(std::move(slots[i])); break;
      case 1: ++pop.skipped_in_window; break;
      default: ++pop.never_cited; break;
    }
  }
  return pop;
}

Coverage coverage_share(const CorpusGraph& graph, const AssignmentTable& assignments, CitationWindow window) {
  const int w = graph.window_years(window);
  const int full = graph.full_horizon_years();
  const auto& reg = graph.registry();

  Coverage cov;
  cov.window = w;
  cov.areas.resize(reg.area_count());
  for (std::size_t a = 0; a < reg.area_count(); ++a) cov.areas[a].area = make_index<AreaIndex>(a);

  for (PubIndex p : graph.cohort()) {
    std::size_t horizon = 0;
    std::size_t inside = 0;
    for (PubIndex q : graph.in_citations(p)) {
      const int y = graph.pub_year(q);
      if (graph.in_window(y, full)) ++horizon;
      if (graph.in_window(y, w)) ++inside;
    }
    if (horizon == 0) continue;
    auto& row = cov.areas[ix(reg.area_of(assignments.sc_of(p)))];
    ++row.cited_at_horizon;
    ++cov.total.cited_at_horizon;
    if (inside > 0) {
      ++row.cited_in_window;
      ++cov.total.cited_in_window;
    }
  }
  return cov;
}

}  // namespace citeflow
