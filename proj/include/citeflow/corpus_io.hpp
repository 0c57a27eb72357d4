#pragma once

#include <cstdint>
#include <filesystem>

#include "citeflow/corpus.hpp"
#include "citeflow/resolver.hpp"

namespace citeflow {

enum class RecordFormat { Csv, Jsonl };

/// .jsonl / .ndjson -> Jsonl, anything else -> Csv.
RecordFormat infer_format(const std::filesystem::path& path);

struct CorpusPaths {
  std::filesystem::path registry;
  std::filesystem::path venues;
  std::filesystem::path publications;
  std::filesystem::path citations;

  /// registry/venues/publications/citations with .csv, falling back to .jsonl.
  static CorpusPaths in_directory(const std::filesystem::path& dir);
};

// Readers throw ParseError("file:line") on malformed rows and IoError on
// missing files.
void read_registry(const std::filesystem::path& path, std::vector<Area>& areas,
                   std::vector<SubjectCategory>& categories);
std::vector<Venue> read_venues(const std::filesystem::path& path);
std::vector<Publication> read_publications(const std::filesystem::path& path);
std::vector<CitationEdge> read_citations(const std::filesystem::path& path);

RawCorpus read_corpus(const CorpusPaths& paths);

/// Writes registry.csv, venues.csv, publications.csv, citations.csv.
void write_corpus_csv(const RawCorpus& raw, const std::filesystem::path& dir);

// Binary graph cache: the normalized records plus the analysis years.
void save_graph_cache(const CorpusGraph& graph, const std::filesystem::path& path);
CorpusGraph load_graph_cache(const std::filesystem::path& path);

/// assignments.csv: pub_id,sc_code,method,tied
void write_assignments_csv(const CorpusGraph& graph, const AssignmentTable& table, const std::filesystem::path& path);
/// Checks totality and candidate containment (InvalidAssignment).
AssignmentTable read_assignments_csv(const CorpusGraph& graph, const std::filesystem::path& path,
                                     std::uint64_t seed = 0);

}  // namespace citeflow
