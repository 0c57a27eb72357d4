#pragma once

#include <climits>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <unordered_map>
#include <vector>

namespace citeflow {

// Dense indexes. Every index space is ordered by the lexicographic order of
// the corresponding string identifier, so iterating by index is iterating by id.
enum class AreaIndex : std::uint32_t {};
enum class ScIndex : std::uint32_t {};
enum class VenueIndex : std::uint32_t {};
enum class PubIndex : std::uint32_t {};

template <typename E>
  requires std::is_enum_v<E>
constexpr std::size_t ix(E e) noexcept {
  return static_cast<std::size_t>(static_cast<std::underlying_type_t<E>>(e));
}

template <typename E>
  requires std::is_enum_v<E>
constexpr E make_index(std::size_t i) noexcept {
  return static_cast<E>(static_cast<std::underlying_type_t<E>>(i));
}

// ---------------------------------------------------------------------------
// Raw records, as they appear in the input files.

struct Area {
  std::string code;
  std::string name;
};

struct SubjectCategory {
  std::string code;
  std::string name;
  std::string area_code;
};

struct Venue {
  std::string venue_id;
  std::string name;
  std::vector<std::string> candidate_scs;
};

struct Publication {
  std::string pub_id;
  std::string venue_id;
  int year = 0;
};

struct CitationEdge {
  std::string citing_id;
  std::string cited_id;
};

/// The four input tables before validation.
struct RawCorpus {
  std::vector<Area> areas;
  std::vector<SubjectCategory> categories;
  std::vector<Venue> venues;
  std::vector<Publication> publications;
  std::vector<CitationEdge> edges;
};

// ---------------------------------------------------------------------------

/// Number of SCs and macro-areas in the reference classification schema.
inline constexpr std::size_t kReferenceScCount = 254;
inline constexpr std::size_t kReferenceAreaCount = 13;

class SubjectCategoryRegistry {
 public:
  SubjectCategoryRegistry() = default;
  /// Validates and sorts both tables by code. Throws EmptyRegistry,
  /// DuplicateId, UnknownArea.
  SubjectCategoryRegistry(std::vector<Area> areas, std::vector<SubjectCategory> categories,
                          bool reference_schema = false);

  std::size_t area_count() const noexcept { return areas_.size(); }
  std::size_t sc_count() const noexcept { return categories_.size(); }

  const Area& area(AreaIndex a) const { return areas_[ix(a)]; }
  const SubjectCategory& sc(ScIndex s) const { return categories_[ix(s)]; }
  AreaIndex area_of(ScIndex s) const { return sc_area_[ix(s)]; }

  std::span<const Area> areas() const noexcept { return areas_; }
  std::span<const SubjectCategory> categories() const noexcept { return categories_; }

  std::optional<ScIndex> find_sc(std::string_view code) const;
  std::optional<AreaIndex> find_area(std::string_view code) const;
  /// Throws UnknownSubjectCategory.
  ScIndex sc_index(std::string_view code) const;

  /// SCs belonging to an area, in code order.
  std::vector<ScIndex> scs_in_area(AreaIndex a) const;

  bool reference_schema() const noexcept { return reference_schema_; }
  bool matches_reference_size() const noexcept {
    return sc_count() == kReferenceScCount && area_count() == kReferenceAreaCount;
  }

 private:
  std::vector<Area> areas_;
  std::vector<SubjectCategory> categories_;
  std::vector<AreaIndex> sc_area_;
  bool reference_schema_ = false;
};

/// Calendar-year span [cohort, cohort + years] restricting which citing
/// publications count. FullHorizon resolves to horizon - cohort.
class CitationWindow {
 public:
  static CitationWindow years(int w);
  static CitationWindow full_horizon() noexcept { return CitationWindow{}; }

  bool is_full_horizon() const noexcept { return !years_.has_value(); }
  std::optional<int> explicit_years() const noexcept { return years_; }

  friend bool operator==(const CitationWindow&, const CitationWindow&) = default;

 private:
  std::optional<int> years_;
};

struct YearBounds {
  int min_year = INT_MIN;
  /// Defaults to the horizon year when unset.
  std::optional<int> max_year;
};

/// Validated, immutable citation graph with CSR adjacency in both directions.
class CorpusGraph {
 public:
  struct VenueInfo {
    std::string venue_id;
    std::string name;
    std::vector<ScIndex> candidates;  // input order
    std::vector<ScIndex> sorted_candidates;
  };

  // Lookup tables hold views into the id storage, so the graph is move-only.
  CorpusGraph(const CorpusGraph&) = delete;
  CorpusGraph& operator=(const CorpusGraph&) = delete;
  CorpusGraph(CorpusGraph&&) = default;
  CorpusGraph& operator=(CorpusGraph&&) = default;

  const SubjectCategoryRegistry& registry() const noexcept { return registry_; }
  int cohort_year() const noexcept { return cohort_year_; }
  int horizon_year() const noexcept { return horizon_year_; }
  int full_horizon_years() const noexcept { return horizon_year_ - cohort_year_; }

  /// Resolves FullHorizon and range-checks explicit windows (InvalidWindow).
  int window_years(CitationWindow w) const;
  /// cohort <= citing_year <= cohort + w
  bool in_window(int citing_year, int window_years) const noexcept {
    return citing_year >= cohort_year_ && citing_year <= cohort_year_ + window_years;
  }

  std::size_t venue_count() const noexcept { return venues_.size(); }
  const VenueInfo& venue(VenueIndex v) const { return venues_[ix(v)]; }
  std::optional<VenueIndex> find_venue(std::string_view id) const;

  std::size_t pub_count() const noexcept { return pub_ids_.size(); }
  const std::string& pub_id(PubIndex p) const { return pub_ids_[ix(p)]; }
  int pub_year(PubIndex p) const { return pub_years_[ix(p)]; }
  VenueIndex pub_venue(PubIndex p) const { return pub_venues_[ix(p)]; }
  std::span<const ScIndex> candidates(PubIndex p) const {
    return venues_[ix(pub_venues_[ix(p)])].sorted_candidates;
  }
  bool is_cohort(PubIndex p) const { return pub_years_[ix(p)] == cohort_year_; }

  std::optional<PubIndex> find_pub(std::string_view id) const;
  /// Throws UnknownPublication.
  PubIndex pub_index(std::string_view id) const;

  std::size_t edge_count() const noexcept { return in_targets_.size(); }

  /// Citing publications of `p`, sorted by pub id.
  std::span<const PubIndex> in_citations(PubIndex p) const {
    return {in_targets_.data() + in_offsets_[ix(p)], in_targets_.data() + in_offsets_[ix(p) + 1]};
  }
  /// Cited publications in the bibliography of `p`, sorted by pub id.
  std::span<const PubIndex> out_references(PubIndex p) const {
    return {out_targets_.data() + out_offsets_[ix(p)], out_targets_.data() + out_offsets_[ix(p) + 1]};
  }
  std::size_t in_degree(PubIndex p) const { return in_offsets_[ix(p) + 1] - in_offsets_[ix(p)]; }
  std::size_t out_degree(PubIndex p) const { return out_offsets_[ix(p) + 1] - out_offsets_[ix(p)]; }

  /// Number of citations to `p` whose citing year falls in the window.
  std::size_t citations_in_window(PubIndex p, int window_years) const;

  /// Cohort publications in pub id order.
  std::span<const PubIndex> cohort() const noexcept { return cohort_; }

  /// Normalized raw records (sorted by id), suitable for re-serialization.
  RawCorpus to_raw() const;

 private:
  friend CorpusGraph build_graph(SubjectCategoryRegistry, std::vector<Venue>, std::vector<Publication>,
                                 std::vector<CitationEdge>, int, int, YearBounds);
  CorpusGraph() = default;

  SubjectCategoryRegistry registry_;
  int cohort_year_ = 0;
  int horizon_year_ = 0;

  std::vector<VenueInfo> venues_;
  std::unordered_map<std::string_view, VenueIndex> venue_lookup_;

  std::vector<std::string> pub_ids_;
  std::vector<int> pub_years_;
  std::vector<VenueIndex> pub_venues_;
  std::unordered_map<std::string_view, PubIndex> pub_lookup_;
  std::vector<PubIndex> cohort_;

  std::vector<std::size_t> in_offsets_;
  std::vector<PubIndex> in_targets_;
  std::vector<std::size_t> out_offsets_;
  std::vector<PubIndex> out_targets_;
};

/// Validates referential integrity and builds the adjacency indexes.
/// Throws UnknownVenue, UnknownPublication, DuplicateEdge, SelfCitation,
/// UnknownSubjectCategory, EmptyCandidateSet, DuplicateCandidate, DuplicateId,
/// YearOutOfRange, InvalidWindow (cohort after horizon).
CorpusGraph build_graph(SubjectCategoryRegistry registry, std::vector<Venue> venues,
                        std::vector<Publication> publications, std::vector<CitationEdge> edges,
                        int cohort_year, int horizon_year, YearBounds bounds = {});

CorpusGraph build_graph(RawCorpus raw, int cohort_year, int horizon_year, bool reference_schema = false,
                        YearBounds bounds = {});

std::vector<std::string> in_citations(const CorpusGraph& graph, std::string_view pub_id);
std::vector<std::string> out_references(const CorpusGraph& graph, std::string_view pub_id);

// ---------------------------------------------------------------------------

enum class WarningKind {
  TemporalAnomaly,           // citing year earlier than the cited publication's year
  UncitedCohortPublication,  // cohort publication with no citation within the horizon
  RegistrySizeMismatch,      // reference schema flagged but not 254 SCs / 13 areas
};

std::string_view to_string(WarningKind kind) noexcept;

struct ValidationWarning {
  WarningKind kind;
  std::size_t count = 0;
  std::vector<std::string> examples;  // first few offending record ids
};

struct ValidationReport {
  std::vector<ValidationWarning> warnings;

  bool clean() const noexcept { return warnings.empty(); }
  std::size_t count(WarningKind kind) const noexcept;
};

ValidationReport validate_corpus(const CorpusGraph& graph);

}  // namespace citeflow
