#include "citeflow/impact.hpp"

#include "citeflow/error.hpp"
#include "citeflow/parallel.hpp"

namespace citeflow {

namespace {

struct SumCount {
  std::uint64_t sum = 0;
  std::uint64_t n = 0;
};

std::optional<double> mean_of(const SumCount& sc) {
  if (sc.n == 0 || sc.sum == 0) return std::nullopt;
  return static_cast<double>(sc.sum) / static_cast<double>(sc.n);
}

}  // namespace

double sc_mean_citations(const CorpusGraph& graph, const AssignmentTable& assignments, ScIndex sc,
                         CitationWindow window) {
  const int w = graph.window_years(window);
  const int full = graph.full_horizon_years();
  SumCount acc;
  for (PubIndex p : graph.cohort()) {
    if (assignments.sc_of(p) != sc || graph.citations_in_window(p, full) == 0) continue;
    acc.sum += graph.citations_in_window(p, w);
    ++acc.n;
  }
  const auto& code = graph.registry().sc(sc).code;
  if (acc.n == 0) throw Error(ErrorCode::EmptySubjectCategory, code, "no cited cohort publications");
  if (acc.sum == 0) throw Error(ErrorCode::EmptySubjectCategory, code, "no citations inside the window");
  return *mean_of(acc);
}

ImpactScore normalized_impact(const CorpusGraph& graph, const AssignmentTable& assignments, PubIndex pub,
                              CitationWindow window) {
  const int w = graph.window_years(window);
  if (!graph.is_cohort(pub)) throw Error(ErrorCode::NotCohortPublication, graph.pub_id(pub));
  if (graph.citations_in_window(pub, graph.full_horizon_years()) == 0) {
    throw Error(ErrorCode::NoCitationsInWindow, graph.pub_id(pub), "uncited within the horizon");
  }
  const ScIndex sc = assignments.sc_of(pub);
  const double mean = sc_mean_citations(graph, assignments, sc, window);
  const auto raw = static_cast<std::uint32_t>(graph.citations_in_window(pub, w));
  return {pub, sc, raw, static_cast<double>(raw) / mean};
}

const ImpactScore* ImpactTable::find(PubIndex pub) const {
  if (ix(pub) >= slot_.size() || slot_[ix(pub)] < 0) return nullptr;
  return &scores[static_cast<std::size_t>(slot_[ix(pub)])];
}

ImpactTable compute_impacts(const CorpusGraph& graph, const AssignmentTable& assignments, CitationWindow window,
                            unsigned threads) {
  const int w = graph.window_years(window);
  const int full = graph.full_horizon_years();
  const auto cohort = graph.cohort();

  // Per cohort pub: citations at horizon and in window.
  std::vector<std::uint32_t> at_horizon(cohort.size());
  std::vector<std::uint32_t> in_window(cohort.size());
  parallel_for(cohort.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      std::uint32_t h = 0;
      std::uint32_t n = 0;
      for (PubIndex q : graph.in_citations(cohort[i])) {
        const int y = graph.pub_year(q);
        if (graph.in_window(y, full)) ++h;
        if (graph.in_window(y, w)) ++n;
      }
      at_horizon[i] = h;
      in_window[i] = n;
    }
  });

  std::vector<SumCount> acc(graph.registry().sc_count());
  for (std::size_t i = 0; i < cohort.size(); ++i) {
    if (at_horizon[i] == 0) continue;
    auto& a = acc[ix(assignments.sc_of(cohort[i]))];
    a.sum += in_window[i];
    ++a.n;
  }

  ImpactTable table;
  table.window = w;
  table.sc_mean.reserve(acc.size());
  for (const auto& a : acc) table.sc_mean.push_back(mean_of(a));

  table.slot_.assign(graph.pub_count(), -1);
  for (std::size_t i = 0; i < cohort.size(); ++i) {
    if (at_horizon[i] == 0) continue;
    const ScIndex sc = assignments.sc_of(cohort[i]);
    const auto& mean = table.sc_mean[ix(sc)];
    if (!mean) continue;
    table.slot_[ix(cohort[i])] = static_cast<std::int64_t>(table.scores.size());
    table.scores.push_back({cohort[i], sc, in_window[i], static_cast<double>(in_window[i]) / *mean});
  }
  return table;
}

}  // namespace citeflow
