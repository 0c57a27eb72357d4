#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "citeflow/corpus.hpp"
#include "citeflow/resolver.hpp"
#include "citeflow/toml_lite.hpp"

namespace citeflow {

/// Parameters of the synthetic corpus generator. This generative model is a
/// testing device: intra-SC citation probability at year offset y is
/// intra_affinity * (1 + immediacy_decay)^-y.
struct SynthConfig {
  std::size_t n_areas = 3;
  std::size_t n_scs = 12;
  std::size_t n_venues = 24;  // >= n_scs; venue i has primary SC i mod n_scs
  double multi_sc_venue_fraction = 0.3;
  std::size_t max_venue_scs = 3;
  std::size_t n_cohort_pubs = 1000;
  /// Citing publications per year offset 0..W; W is the horizon length.
  /// Each entry must be >= n_scs so every SC is present every year.
  std::vector<std::size_t> citing_pubs_per_year = std::vector<std::size_t>(8, 2000);
  double intra_affinity = 0.5;
  double immediacy_decay = 0.0;
  /// Citations per cohort pub: citations_min + Poisson(citations_mean), capped.
  double citations_mean = 5.0;
  std::size_t citations_min = 0;
  std::size_t citations_max = 1000;
  int cohort_year = 2015;
  std::uint64_t seed = 1;

  int horizon_year() const noexcept { return cohort_year + static_cast<int>(citing_pubs_per_year.size()) - 1; }

  /// Throws InvalidConfig.
  void validate() const;

  /// Reads keys from the document root or from a [synth] table.
  static SynthConfig from_toml(const toml::Document& doc);
};

struct GeneratedCitation {
  std::uint32_t citing = 0;  // index into RawCorpus::publications
  std::uint32_t cited = 0;
  int year_offset = 0;
  double p_intra = 0.0;
  bool intra = false;
};

struct GroundTruth {
  std::vector<std::string> pub_ids;  // parallel to true_sc
  std::vector<std::string> true_sc;
  std::vector<GeneratedCitation> log;
  std::size_t dropped_duplicates = 0;
};

struct SynthCorpus {
  RawCorpus corpus;
  GroundTruth truth;
  int cohort_year = 0;
  int horizon_year = 0;
};

SynthCorpus generate(const SynthConfig& config);

/// Writes the four corpus CSVs, truth.csv (pub_id,true_sc) and run.toml.
void write_synth(const SynthCorpus& synth, const std::filesystem::path& dir);

/// Fraction of multi-SC-venue publications whose resolved SC equals the
/// planted one. 1.0 when there are none.
double ground_truth_accuracy(const CorpusGraph& graph, const AssignmentTable& assignments, const GroundTruth& truth);

}  // namespace citeflow
