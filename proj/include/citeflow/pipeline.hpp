#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "citeflow/corpus_io.hpp"
#include "citeflow/synth.hpp"

namespace citeflow {

struct RunConfig {
  /// Directory holding registry/venues/publications/citations.
  std::optional<std::filesystem::path> input;
  // Per-file inputs override the directory.
  std::optional<std::filesystem::path> registry, venues, publications, citations;
  std::optional<std::filesystem::path> graph_cache;
  std::optional<std::filesystem::path> assignments;

  std::optional<int> cohort_year;
  std::optional<int> horizon_year;
  std::uint64_t seed = 0;
  std::vector<int> windows;  // empty: {2, full}
  std::vector<std::string> formats{"csv", "json"};
  std::filesystem::path out = ".";
  unsigned threads = 0;
  bool reference_schema = false;
  std::size_t top_k = 10;

  /// Relative paths in the file are taken relative to the file's directory.
  static RunConfig from_toml(const toml::Document& doc, const std::filesystem::path& base_dir);
  static RunConfig load(const std::filesystem::path& path);
};

// Each command writes one JSON object to `out` and diagnostics to `err`.
// Exit codes: 0 ok, 1 validation error, 2 I/O or parse error.
int cmd_ingest(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_resolve(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_analyze(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_report(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_pipeline(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_synth(const SynthConfig& config, const std::filesystem::path& out_dir, std::ostream& out, std::ostream& err);

}  // namespace citeflow
