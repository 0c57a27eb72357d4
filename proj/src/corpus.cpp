#include "citeflow/corpus.hpp"

#include <algorithm>
#include <numeric>

#include "citeflow/error.hpp"

namespace citeflow {

namespace {

constexpr std::size_t kMaxWarningExamples = 10;

template <typename T, typename Key>
void sort_by_key(std::vector<T>& v, Key key) {
  std::sort(v.begin(), v.end(), [&](const T& a, const T& b) { return key(a) < key(b); });
}

template <typename T, typename Key>
void reject_duplicates(const std::vector<T>& sorted, Key key, std::string_view what) {
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (key(sorted[i]) == key(sorted[i - 1])) {
      throw Error(ErrorCode::DuplicateId, std::string(key(sorted[i])), std::string("duplicate ") + std::string(what));
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------

SubjectCategoryRegistry::SubjectCategoryRegistry(std::vector<Area> areas, std::vector<SubjectCategory> categories,
                                                 bool reference_schema)
    : areas_(std::move(areas)), categories_(std::move(categories)), reference_schema_(reference_schema) {
  if (areas_.empty() || categories_.empty()) {
    throw Error(ErrorCode::EmptyRegistry, "registry", "registry needs at least one area and one SC");
  }
  sort_by_key(areas_, [](const Area& a) -> const std::string& { return a.code; });
  sort_by_key(categories_, [](const SubjectCategory& c) -> const std::string& { return c.code; });
  reject_duplicates(areas_, [](const Area& a) -> const std::string& { return a.code; }, "area code");
  reject_duplicates(categories_, [](const SubjectCategory& c) -> const std::string& { return c.code; }, "SC code");

  sc_area_.reserve(categories_.size());
  for (const auto& sc : categories_) {
    auto a = find_area(sc.area_code);
    if (!a) throw Error(ErrorCode::UnknownArea, sc.area_code, "referenced by SC " + sc.code);
    sc_area_.push_back(*a);
  }
}

std::optional<ScIndex> SubjectCategoryRegistry::find_sc(std::string_view code) const {
  auto it = std::lower_bound(categories_.begin(), categories_.end(), code,
                             [](const SubjectCategory& c, std::string_view k) { return c.code < k; });
  if (it == categories_.end() || it->code != code) return std::nullopt;
  return make_index<ScIndex>(static_cast<std::size_t>(it - categories_.begin()));
}

std::optional<AreaIndex> SubjectCategoryRegistry::find_area(std::string_view code) const {
  auto it = std::lower_bound(areas_.begin(), areas_.end(), code,
                             [](const Area& a, std::string_view k) { return a.code < k; });
  if (it == areas_.end() || it->code != code) return std::nullopt;
  return make_index<AreaIndex>(static_cast<std::size_t>(it - areas_.begin()));
}

ScIndex SubjectCategoryRegistry::sc_index(std::string_view code) const {
  auto s = find_sc(code);
  if (!s) throw Error(ErrorCode::UnknownSubjectCategory, std::string(code));
  return *s;
}

std::vector<ScIndex> SubjectCategoryRegistry::scs_in_area(AreaIndex a) const {
  std::vector<ScIndex> out;
  for (std::size_t i = 0; i < sc_area_.size(); ++i) {
    if (sc_area_[i] == a) out.push_back(make_index<ScIndex>(i));
  }
  return out;
}

// ---------------------------------------------------------------------------

CitationWindow CitationWindow::years(int w) {
  if (w < 0) throw Error(ErrorCode::InvalidWindow, std::to_string(w), "window must be >= 0");
  CitationWindow cw;
  cw.years_ = w;
  return cw;
}

int CorpusGraph::window_years(CitationWindow w) const {
  if (w.is_full_horizon()) return full_horizon_years();
  int y = *w.explicit_years();
  if (y > full_horizon_years()) {
    throw Error(ErrorCode::InvalidWindow, std::to_string(y),
                "window exceeds horizon (" + std::to_string(full_horizon_years()) + " years)");
  }
  return y;
}

std::optional<VenueIndex> CorpusGraph::find_venue(std::string_view id) const {
  auto it = venue_lookup_.find(id);
  if (it == venue_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<PubIndex> CorpusGraph::find_pub(std::string_view id) const {
  auto it = pub_lookup_.find(id);
  if (it == pub_lookup_.end()) return std::nullopt;
  return it->second;
}

PubIndex CorpusGraph::pub_index(std::string_view id) const {
  auto p = find_pub(id);
  if (!p) throw Error(ErrorCode::UnknownPublication, std::string(id));
  return *p;
}

std::size_t CorpusGraph::citations_in_window(PubIndex p, int window_years) const {
  std::size_t n = 0;
  for (PubIndex q : in_citations(p)) {
    if (in_window(pub_year(q), window_years)) ++n;
  }
  return n;
}

RawCorpus CorpusGraph::to_raw() const {
  RawCorpus raw;
  raw.areas.assign(registry_.areas().begin(), registry_.areas().end());
  raw.categories.assign(registry_.categories().begin(), registry_.categories().end());
  raw.venues.reserve(venues_.size());
  for (const auto& v : venues_) {
    Venue out{v.venue_id, v.name, {}};
    for (ScIndex s : v.candidates) out.candidate_scs.push_back(registry_.sc(s).code);
    raw.venues.push_back(std::move(out));
  }
  raw.publications.reserve(pub_ids_.size());
  for (std::size_t i = 0; i < pub_ids_.size(); ++i) {
    raw.publications.push_back({pub_ids_[i], venues_[ix(pub_venues_[i])].venue_id, pub_years_[i]});
  }
  raw.edges.reserve(out_targets_.size());
  for (std::size_t i = 0; i < pub_ids_.size(); ++i) {
    for (PubIndex q : out_references(make_index<PubIndex>(i))) raw.edges.push_back({pub_ids_[i], pub_ids_[ix(q)]});
  }
  return raw;
}

// ---------------------------------------------------------------------------

namespace {

void build_csr(std::size_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& sorted_pairs,
               std::vector<std::size_t>& offsets, std::vector<PubIndex>& targets) {
  offsets.assign(n + 1, 0);
  for (const auto& [src, dst] : sorted_pairs) ++offsets[src + 1];
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  targets.resize(sorted_pairs.size());
  for (std::size_t i = 0; i < sorted_pairs.size(); ++i) targets[i] = make_index<PubIndex>(sorted_pairs[i].second);
}

}  // namespace

CorpusGraph build_graph(SubjectCategoryRegistry registry, std::vector<Venue> venues,
                        std::vector<Publication> publications, std::vector<CitationEdge> edges, int cohort_year,
                        int horizon_year, YearBounds bounds) {
  if (cohort_year > horizon_year) {
    throw Error(ErrorCode::InvalidWindow, std::to_string(cohort_year), "cohort year is after horizon year");
  }
  const int max_year = bounds.max_year.value_or(horizon_year);

  CorpusGraph g;
  g.registry_ = std::move(registry);
  g.cohort_year_ = cohort_year;
  g.horizon_year_ = horizon_year;

  // venues
  sort_by_key(venues, [](const Venue& v) -> const std::string& { return v.venue_id; });
  reject_duplicates(venues, [](const Venue& v) -> const std::string& { return v.venue_id; }, "venue id");
  g.venues_.reserve(venues.size());
  for (auto& v : venues) {
    if (v.candidate_scs.empty()) throw Error(ErrorCode::EmptyCandidateSet, v.venue_id);
    CorpusGraph::VenueInfo info;
    info.venue_id = std::move(v.venue_id);
    info.name = std::move(v.name);
    for (const auto& code : v.candidate_scs) {
      auto s = g.registry_.find_sc(code);
      if (!s) throw Error(ErrorCode::UnknownSubjectCategory, code, "candidate of venue " + info.venue_id);
      info.candidates.push_back(*s);
    }
    info.sorted_candidates = info.candidates;
    std::sort(info.sorted_candidates.begin(), info.sorted_candidates.end());
    if (std::adjacent_find(info.sorted_candidates.begin(), info.sorted_candidates.end()) !=
        info.sorted_candidates.end()) {
      throw Error(ErrorCode::DuplicateCandidate, info.venue_id);
    }
    g.venues_.push_back(std::move(info));
  }
  g.venue_lookup_.reserve(g.venues_.size());
  for (std::size_t i = 0; i < g.venues_.size(); ++i) {
    g.venue_lookup_.emplace(g.venues_[i].venue_id, make_index<VenueIndex>(i));
  }

  // publications
  sort_by_key(publications, [](const Publication& p) -> const std::string& { return p.pub_id; });
  reject_duplicates(publications, [](const Publication& p) -> const std::string& { return p.pub_id; },
                    "publication id");
  const std::size_t n = publications.size();
  g.pub_ids_.reserve(n);
  g.pub_years_.reserve(n);
  g.pub_venues_.reserve(n);
  for (auto& p : publications) {
    auto v = g.find_venue(p.venue_id);
    if (!v) throw Error(ErrorCode::UnknownVenue, p.venue_id, "referenced by publication " + p.pub_id);
    if (p.year < bounds.min_year || p.year > max_year) {
      throw Error(ErrorCode::YearOutOfRange, p.pub_id, "year " + std::to_string(p.year));
    }
    g.pub_ids_.push_back(std::move(p.pub_id));
    g.pub_years_.push_back(p.year);
    g.pub_venues_.push_back(*v);
  }
  g.pub_lookup_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    g.pub_lookup_.emplace(g.pub_ids_[i], make_index<PubIndex>(i));
    if (g.pub_years_[i] == cohort_year) g.cohort_.push_back(make_index<PubIndex>(i));
  }

  // edges
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;  // (citing, cited)
  pairs.reserve(edges.size());
  for (const auto& e : edges) {
    auto citing = g.find_pub(e.citing_id);
    if (!citing) throw Error(ErrorCode::UnknownPublication, e.citing_id, "citing end of edge");
    auto cited = g.find_pub(e.cited_id);
    if (!cited) throw Error(ErrorCode::UnknownPublication, e.cited_id, "cited end of edge");
    if (*citing == *cited) throw Error(ErrorCode::SelfCitation, e.citing_id + "->" + e.cited_id);
    pairs.emplace_back(static_cast<std::uint32_t>(ix(*citing)), static_cast<std::uint32_t>(ix(*cited)));
  }
  edges.clear();
  edges.shrink_to_fit();

  std::sort(pairs.begin(), pairs.end());
  if (auto dup = std::adjacent_find(pairs.begin(), pairs.end()); dup != pairs.end()) {
    throw Error(ErrorCode::DuplicateEdge, g.pub_ids_[dup->first] + "->" + g.pub_ids_[dup->second]);
  }
  build_csr(n, pairs, g.out_offsets_, g.out_targets_);
  for (auto& pr : pairs) std::swap(pr.first, pr.second);
  std::sort(pairs.begin(), pairs.end());
  build_csr(n, pairs, g.in_offsets_, g.in_targets_);
  return g;
}

CorpusGraph build_graph(RawCorpus raw, int cohort_year, int horizon_year, bool reference_schema,
                        YearBounds bounds) {
  SubjectCategoryRegistry registry(std::move(raw.areas), std::move(raw.categories), reference_schema);
  return build_graph(std::move(registry), std::move(raw.venues), std::move(raw.publications), std::move(raw.edges),
                     cohort_year, horizon_year, bounds);
}

namespace {

std::vector<std::string> ids_of(const CorpusGraph& graph, std::span<const PubIndex> pubs) {
  std::vector<std::string> out;
  out.reserve(pubs.size());
  for (PubIndex p : pubs) out.push_back(graph.pub_id(p));
  return out;
}

}  // namespace

std::vector<std::string> in_citations(const CorpusGraph& graph, std::string_view pub_id) {
  return ids_of(graph, graph.in_citations(graph.pub_index(pub_id)));
}

std::vector<std::string> out_references(const CorpusGraph& graph, std::string_view pub_id) {
  return ids_of(graph, graph.out_references(graph.pub_index(pub_id)));
}

// ---------------------------------------------------------------------------

std::string_view to_string(WarningKind kind) noexcept {
  switch (kind) {
    case WarningKind::TemporalAnomaly: return "TemporalAnomaly";
    case WarningKind::UncitedCohortPublication: return "UncitedCohortPublication";
    case WarningKind::RegistrySizeMismatch: return "RegistrySizeMismatch";
  }
  return "Unknown";
}

std::size_t ValidationReport::count(WarningKind kind) const noexcept {
  std::size_t n = 0;
  for (const auto& w : warnings) {
    if (w.kind == kind) n += w.count;
  }
  return n;
}

ValidationReport validate_corpus(const CorpusGraph& graph) {
  ValidationReport report;
  auto note = [](ValidationWarning& w, std::string example) {
    ++w.count;
    if (w.examples.size() < kMaxWarningExamples) w.examples.push_back(std::move(example));
  };

  ValidationWarning temporal{WarningKind::TemporalAnomaly, 0, {}};
  for (std::size_t i = 0; i < graph.pub_count(); ++i) {
    const auto cited = make_index<PubIndex>(i);
    for (PubIndex citing : graph.in_citations(cited)) {
      if (graph.pub_year(citing) < graph.pub_year(cited)) note(temporal, graph.pub_id(citing) + "->" + graph.pub_id(cited));
    }
  }
  if (temporal.count > 0) report.warnings.push_back(std::move(temporal));

  // Uncited means "no citation within the full horizon window", which is the
  // population criterion used by every analysis.
  ValidationWarning uncited{WarningKind::UncitedCohortPublication, 0, {}};
  const int full = graph.full_horizon_years();
  for (PubIndex p : graph.cohort()) {
    if (graph.citations_in_window(p, full) == 0) note(uncited, graph.pub_id(p));
  }
  if (uncited.count > 0) report.warnings.push_back(std::move(uncited));

  const auto& reg = graph.registry();
  if (reg.reference_schema() && !reg.matches_reference_size()) {
    report.warnings.push_back({WarningKind::RegistrySizeMismatch, 1,
                               {std::to_string(reg.sc_count()) + " SCs / " + std::to_string(reg.area_count()) +
                                " areas"}});
  }
  return report;
}

}  // namespace citeflow
