#include "citeflow/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <unordered_set>

#include "citeflow/corpus_io.hpp"
#include "citeflow/csv.hpp"
#include "citeflow/error.hpp"

namespace citeflow {

namespace {

// std distributions are implementation-defined; these keep output identical
// across standard libraries.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;
  while (true) {
    const std::uint64_t x = rng();
    if (x >= threshold) return x % n;
  }
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t poisson(std::mt19937_64& rng, double mean) {
  if (mean <= 0.0) return 0;
  const double limit = std::exp(-mean);
  std::size_t k = 0;
  double p = uniform01(rng);
  while (p > limit) {
    ++k;
    p *= uniform01(rng);
  }
  return k;
}

std::string padded(const char* prefix, std::size_t i, int width) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%0*zu", prefix, width, i);
  return buf;
}

int digits(std::size_t n) { return std::max(1, static_cast<int>(std::to_string(n).size())); }

[[noreturn]] void invalid(const std::string& field, const std::string& why) {
  throw Error(ErrorCode::InvalidConfig, field, why);
}

}  // namespace

void SynthConfig::validate() const {
  if (n_areas == 0) invalid("n_areas", "must be positive");
  if (n_scs < n_areas) invalid("n_scs", "must be >= n_areas");
  if (n_venues < n_scs) invalid("n_venues", "must be >= n_scs");
  if (n_cohort_pubs == 0) invalid("n_cohort_pubs", "must be positive");
  if (max_venue_scs == 0 || max_venue_scs > n_scs) invalid("max_venue_scs", "must be in [1, n_scs]");
  if (!(multi_sc_venue_fraction >= 0.0 && multi_sc_venue_fraction <= 1.0)) {
    invalid("multi_sc_venue_fraction", "must be in [0, 1]");
  }
  if (!(intra_affinity >= 0.0 && intra_affinity <= 1.0)) invalid("intra_affinity", "must be in [0, 1]");
  if (!(immediacy_decay >= 0.0)) invalid("immediacy_decay", "must be >= 0");
  if (!(citations_mean >= 0.0 && citations_mean <= 500.0)) invalid("citations_mean", "must be in [0, 500]");
  if (citations_min > citations_max) invalid("citations_min", "must be <= citations_max");
  if (citing_pubs_per_year.empty()) invalid("citing_pubs_per_year", "needs at least one year");
  for (auto n : citing_pubs_per_year) {
    if (n < n_scs) invalid("citing_pubs_per_year", "every year needs at least n_scs citing publications");
  }
}

SynthConfig SynthConfig::from_toml(const toml::Document& doc) {
  SynthConfig c;
  const bool nested = std::any_of(doc.entries().begin(), doc.entries().end(),
                                  [](const auto& kv) { return kv.first.rfind("synth.", 0) == 0; });
  auto key = [&](const char* k) { return nested ? std::string("synth.") + k : std::string(k); };
  auto size = [&](const char* k, std::size_t& dst) {
    if (auto v = doc.get_int(key(k))) {
      if (*v < 0) invalid(k, "must be non-negative");
      dst = static_cast<std::size_t>(*v);
    }
  };
  size("n_areas", c.n_areas);
  size("n_scs", c.n_scs);
  size("n_venues", c.n_venues);
  size("max_venue_scs", c.max_venue_scs);
  size("n_cohort_pubs", c.n_cohort_pubs);
  size("citations_min", c.citations_min);
  size("citations_max", c.citations_max);
  if (auto v = doc.get_double(key("multi_sc_venue_fraction"))) c.multi_sc_venue_fraction = *v;
  if (auto v = doc.get_double(key("intra_affinity"))) c.intra_affinity = *v;
  if (auto v = doc.get_double(key("immediacy_decay"))) c.immediacy_decay = *v;
  if (auto v = doc.get_double(key("citations_mean"))) c.citations_mean = *v;
  if (auto v = doc.get_int(key("cohort_year"))) c.cohort_year = static_cast<int>(*v);
  if (auto v = doc.get_int(key("seed"))) c.seed = static_cast<std::uint64_t>(*v);
  if (auto v = doc.get_int_array(key("citing_pubs_per_year"))) {
    c.citing_pubs_per_year.clear();
    for (auto n : *v) {
      if (n < 0) invalid("citing_pubs_per_year", "must be non-negative");
      c.citing_pubs_per_year.push_back(static_cast<std::size_t>(n));
    }
  }
  c.validate();
  return c;
}

SynthCorpus generate(const SynthConfig& config) {
  config.validate();
  std::mt19937_64 rng(config.seed);

  SynthCorpus out;
  out.cohort_year = config.cohort_year;
  out.horizon_year = config.horizon_year();
  auto& raw = out.corpus;
  auto& truth = out.truth;

  const int area_w = digits(config.n_areas);
  for (std::size_t a = 0; a < config.n_areas; ++a) {
    raw.areas.push_back({padded("A", a, area_w), padded("Area ", a, area_w)});
  }
  const int sc_w = digits(config.n_scs);
  for (std::size_t s = 0; s < config.n_scs; ++s) {
    raw.categories.push_back({padded("S", s, sc_w), padded("Subject ", s, sc_w), raw.areas[s % config.n_areas].code});
  }

  // venues
  std::vector<std::vector<std::uint32_t>> venue_scs(config.n_venues);
  std::vector<std::vector<std::uint32_t>> venues_with_sc(config.n_scs);
  const int venue_w = digits(config.n_venues);
  for (std::size_t v = 0; v < config.n_venues; ++v) {
    auto& scs = venue_scs[v];
    scs.push_back(static_cast<std::uint32_t>(v % config.n_scs));
    if (config.max_venue_scs > 1 && uniform01(rng) < config.multi_sc_venue_fraction) {
      const std::size_t extra = 1 + uniform_below(rng, config.max_venue_scs - 1);
      while (scs.size() < 1 + extra) {
        const auto s = static_cast<std::uint32_t>(uniform_below(rng, config.n_scs));
        if (std::find(scs.begin(), scs.end(), s) == scs.end()) scs.push_back(s);
      }
    }
    Venue venue{padded("V", v, venue_w), padded("Venue ", v, venue_w), {}};
    for (auto s : scs) {
      venue.candidate_scs.push_back(raw.categories[s].code);
      venues_with_sc[s].push_back(static_cast<std::uint32_t>(v));
    }
    raw.venues.push_back(std::move(venue));
  }

  std::vector<std::uint32_t> true_sc;
  auto add_pub = [&](std::string id, std::size_t venue, std::uint32_t sc, int year) {
    raw.publications.push_back({std::move(id), raw.venues[venue].venue_id, year});
    true_sc.push_back(sc);
    return static_cast<std::uint32_t>(raw.publications.size() - 1);
  };

  // cohort
  const int cohort_w = digits(config.n_cohort_pubs);
  for (std::size_t i = 0; i < config.n_cohort_pubs; ++i) {
    const auto v = uniform_below(rng, config.n_venues);
    const auto sc = venue_scs[v][uniform_below(rng, venue_scs[v].size())];
    add_pub(padded("C", i, cohort_w), v, sc, config.cohort_year);
  }

  // citing pools by (year offset, SC)
  const std::size_t years = config.citing_pubs_per_year.size();
  std::vector<std::vector<std::vector<std::uint32_t>>> pools(years, std::vector<std::vector<std::uint32_t>>(config.n_scs));
  std::size_t total_citing = 0;
  for (std::size_t y = 0; y < years; ++y) {
    const int w = digits(config.citing_pubs_per_year[y]);
    for (std::size_t j = 0; j < config.citing_pubs_per_year[y]; ++j) {
      const auto sc = static_cast<std::uint32_t>(j % config.n_scs);
      const auto& options = venues_with_sc[sc];
      const auto v = options[uniform_below(rng, options.size())];
      const auto idx = add_pub("P" + std::to_string(y) + "-" + padded("", j, w), v, sc,
                               config.cohort_year + static_cast<int>(y));
      pools[y][sc].push_back(idx);
    }
    total_citing += config.citing_pubs_per_year[y];
  }

  // citations; the offset year is drawn proportionally to the yearly pool size
  std::vector<double> p_intra(years);
  for (std::size_t y = 0; y < years; ++y) {
    p_intra[y] = std::clamp(config.intra_affinity * std::pow(1.0 + config.immediacy_decay, -static_cast<double>(y)),
                            0.0, 1.0);
  }
  auto draw_year = [&] {
    auto r = uniform_below(rng, total_citing);
    for (std::size_t y = 0; y < years; ++y) {
      if (r < config.citing_pubs_per_year[y]) return y;
      r -= config.citing_pubs_per_year[y];
    }
    return years - 1;
  };

  constexpr int kDuplicateRetries = 16;
  std::unordered_set<std::uint32_t> chosen;
  for (std::uint32_t cited = 0; cited < config.n_cohort_pubs; ++cited) {
    const std::size_t n = std::min(config.citations_max, config.citations_min + poisson(rng, config.citations_mean));
    chosen.clear();
    for (std::size_t c = 0; c < n; ++c) {
      const std::size_t y = draw_year();
      const bool intra = config.n_scs == 1 || uniform01(rng) < p_intra[y];
      std::uint32_t sc = true_sc[cited];
      if (!intra) {
        const auto other = static_cast<std::uint32_t>(uniform_below(rng, config.n_scs - 1));
        sc = other >= sc ? other + 1 : other;
      }
      const auto& pool = pools[y][sc];
      bool placed = false;
      for (int attempt = 0; attempt < kDuplicateRetries && !placed; ++attempt) {
        const auto citing = pool[uniform_below(rng, pool.size())];
        if (chosen.insert(citing).second) {
          truth.log.push_back({citing, cited, static_cast<int>(y), p_intra[y], intra});
          placed = true;
        }
      }
      if (!placed) ++truth.dropped_duplicates;
    }
  }

  raw.edges.reserve(truth.log.size());
  for (const auto& e : truth.log) {
    raw.edges.push_back({raw.publications[e.citing].pub_id, raw.publications[e.cited].pub_id});
  }
  truth.pub_ids.reserve(raw.publications.size());
  truth.true_sc.reserve(raw.publications.size());
  for (std::size_t i = 0; i < raw.publications.size(); ++i) {
    truth.pub_ids.push_back(raw.publications[i].pub_id);
    truth.true_sc.push_back(raw.categories[true_sc[i]].code);
  }
  return out;
}

void write_synth(const SynthCorpus& synth, const std::filesystem::path& dir) {
  write_corpus_csv(synth.corpus, dir);
  {
    std::ofstream out(dir / "truth.csv", std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, (dir / "truth.csv").string(), "cannot open for writing");
    write_csv_row(out, {"pub_id", "true_sc"});
    for (std::size_t i = 0; i < synth.truth.pub_ids.size(); ++i) {
      write_csv_row(out, {synth.truth.pub_ids[i], synth.truth.true_sc[i]});
    }
  }
  std::ofstream run(dir / "run.toml", std::ios::binary | std::ios::trunc);
  if (!run) throw Error(ErrorCode::IoError, (dir / "run.toml").string(), "cannot open for writing");
  run << "# generated alongside the synthetic corpus\n"
      << "cohort_year = " << synth.cohort_year << "\n"
      << "horizon_year = " << synth.horizon_year << "\n"
      << "input = \".\"\n";
}

double ground_truth_accuracy(const CorpusGraph& graph, const AssignmentTable& assignments, const GroundTruth& truth) {
  std::size_t total = 0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < truth.pub_ids.size(); ++i) {
    auto p = graph.find_pub(truth.pub_ids[i]);
    if (!p || graph.candidates(*p).size() < 2) continue;
    ++total;
    if (graph.registry().sc(assignments.sc_of(*p)).code == truth.true_sc[i]) ++hits;
  }
  return total == 0 ? 1.0 : static_cast<double>(hits) / static_cast<double>(total);
}

}  // namespace citeflow
