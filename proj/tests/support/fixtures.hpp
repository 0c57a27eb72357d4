#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "citeflow/corpus.hpp"
#include "citeflow/corpus_io.hpp"

namespace fixtures {

inline std::filesystem::path data_dir() { return CITEFLOW_TEST_DATA; }
inline std::filesystem::path worked_example_dir() { return data_dir() / "worked_example"; }

inline constexpr int kWorkedCohort = 2015;
inline constexpr int kWorkedHorizon = 2022;

inline citeflow::RawCorpus worked_example_raw() {
  return citeflow::read_corpus(citeflow::CorpusPaths::in_directory(worked_example_dir()));
}

inline citeflow::CorpusGraph worked_example_graph() {
  return citeflow::build_graph(worked_example_raw(), kWorkedCohort, kWorkedHorizon);
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::uint64_t counter = 0;
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("citeflow-" + tag + "-" + std::to_string(rd()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void spit(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << text;
}

/// Hand-built corpora: one single-SC venue per SC ("J-<sc>"), cohort pubs
/// and batches of citing pubs added by SC.
class Builder {
 public:
  explicit Builder(int cohort = 2015, int horizon = 2022) : cohort_(cohort), horizon_(horizon) {}

  Builder& area(const std::string& code) {
    raw_.areas.push_back({code, "Area " + code});
    return *this;
  }
  Builder& sc(const std::string& code, const std::string& area_code) {
    raw_.categories.push_back({code, "Category " + code, area_code});
    raw_.venues.push_back({"J-" + code, "Journal " + code, {code}});
    return *this;
  }
  Builder& venue(const std::string& id, std::vector<std::string> scs) {
    raw_.venues.push_back({id, "Venue " + id, std::move(scs)});
    return *this;
  }

  /// Publication in venue `venue_id`; `year` defaults to the cohort year.
  std::string pub(const std::string& venue_id, std::optional<int> year = std::nullopt) {
    const std::string id = "p" + std::to_string(next_++);
    add_pub(id, venue_id, year.value_or(cohort_));
    return id;
  }
  /// Cohort publication in the single-SC venue of `sc_code`.
  std::string cohort_pub(const std::string& sc_code) { return pub("J-" + sc_code); }

  /// `count` new publications from `sc_code` citing `cited` in `year`.
  Builder& cite(const std::string& cited, const std::string& sc_code, int count, std::optional<int> year = std::nullopt) {
    for (int i = 0; i < count; ++i) {
      const std::string id = "c" + std::to_string(next_++);
      add_pub(id, "J-" + sc_code, year.value_or(cohort_ + 1));
      edge(id, cited);
    }
    return *this;
  }
  Builder& edge(const std::string& citing, const std::string& cited) {
    raw_.edges.push_back({citing, cited});
    return *this;
  }

  const citeflow::RawCorpus& raw() const { return raw_; }
  citeflow::CorpusGraph graph() const { return citeflow::build_graph(raw_, cohort_, horizon_); }

 private:
  void add_pub(const std::string& id, const std::string& venue, int year) {
    raw_.publications.push_back({id, venue, year});
  }

  citeflow::RawCorpus raw_;
  int cohort_;
  int horizon_;
  int next_ = 1000;  // keeps ids the same length, so id order is creation order
};

struct RandomCorpus {
  citeflow::RawCorpus raw;
  int cohort_year = 2015;
  int horizon_year = 2022;
};

struct RandomCorpusLimits {
  int max_cohort_pubs = 50;
  int max_edges = 500;
};

/// Small random corpus. Covers multi-SC venues, empty areas, pre-cohort
/// publications, citations outside the window, and temporal anomalies.
inline RandomCorpus random_corpus(std::uint64_t seed, RandomCorpusLimits limits = {}) {
  std::mt19937_64 rng(seed);
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

  RandomCorpus rc;
  rc.cohort_year = 2015;
  rc.horizon_year = 2015 + uni(1, 7);
  auto& raw = rc.raw;

  const int n_areas = uni(1, 4);
  for (int a = 0; a < n_areas; ++a) raw.areas.push_back({"A" + std::to_string(a), "Area " + std::to_string(a)});
  const int n_scs = uni(2, 8);
  for (int s = 0; s < n_scs; ++s) {
    raw.categories.push_back({"S" + std::to_string(s), "Category " + std::to_string(s),
                              raw.areas[static_cast<std::size_t>(uni(0, n_areas - 1))].code});
  }
  const int n_venues = uni(2, 10);
  for (int v = 0; v < n_venues; ++v) {
    const int k = std::min(n_scs, uni(1, 3));
    std::set<int> scs;
    while (static_cast<int>(scs.size()) < k) scs.insert(uni(0, n_scs - 1));
    std::vector<std::string> codes;
    for (int s : scs) codes.push_back("S" + std::to_string(s));
    std::shuffle(codes.begin(), codes.end(), rng);
    raw.venues.push_back({"V" + std::to_string(v), "Venue " + std::to_string(v), codes});
  }

  const int n_cohort = uni(1, limits.max_cohort_pubs);
  const int n_other = uni(5, 60);
  std::vector<int> cohort_idx;
  for (int i = 0; i < n_cohort; ++i) {
    cohort_idx.push_back(static_cast<int>(raw.publications.size()));
    raw.publications.push_back({"C" + std::to_string(i), raw.venues[static_cast<std::size_t>(uni(0, n_venues - 1))].venue_id,
                                rc.cohort_year});
  }
  for (int i = 0; i < n_other; ++i) {
    // any year but the cohort year, so the cohort stays within the limit
    int year = uni(rc.cohort_year - 2, rc.horizon_year - 1);
    if (year >= rc.cohort_year) ++year;
    raw.publications.push_back(
        {"P" + std::to_string(i), raw.venues[static_cast<std::size_t>(uni(0, n_venues - 1))].venue_id, year});
  }

  const int n_pubs = static_cast<int>(raw.publications.size());
  const int target = uni(0, limits.max_edges);
  std::set<std::pair<int, int>> seen;
  for (int attempt = 0; attempt < target * 3 && static_cast<int>(seen.size()) < target; ++attempt) {
    const int citing = uni(0, n_pubs - 1);
    const int cited = uni(0, 9) < 8 ? cohort_idx[static_cast<std::size_t>(uni(0, static_cast<int>(cohort_idx.size()) - 1))]
                                    : uni(0, n_pubs - 1);
    if (citing == cited || !seen.insert({citing, cited}).second) continue;
    raw.edges.push_back({raw.publications[static_cast<std::size_t>(citing)].pub_id,
                         raw.publications[static_cast<std::size_t>(cited)].pub_id});
  }
  return rc;
}

}  // namespace fixtures
