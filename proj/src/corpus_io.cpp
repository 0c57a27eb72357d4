#include "citeflow/corpus_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>

#include <cereal/archives/portable_binary.hpp>
#include <cereal/types/string.hpp>
#include <cereal/types/vector.hpp>
#include <json.hpp>

#include "citeflow/csv.hpp"
#include "citeflow/error.hpp"

namespace citeflow {

// cereal hooks
template <class Archive>
void serialize(Archive& ar, Area& a) {
  ar(a.code, a.name);
}
template <class Archive>
void serialize(Archive& ar, SubjectCategory& s) {
  ar(s.code, s.name, s.area_code);
}
template <class Archive>
void serialize(Archive& ar, Venue& v) {
  ar(v.venue_id, v.name, v.candidate_scs);
}
template <class Archive>
void serialize(Archive& ar, Publication& p) {
  ar(p.pub_id, p.venue_id, p.year);
}
template <class Archive>
void serialize(Archive& ar, CitationEdge& e) {
  ar(e.citing_id, e.cited_id);
}

namespace {

constexpr std::uint32_t kCacheMagic = 0x43464731;  // "CFG1"
constexpr std::uint32_t kCacheVersion = 1;

using RecordFn = std::function<void(std::span<const std::string>, const std::string& where)>;

void for_each_csv(const std::filesystem::path& path, std::span<const std::string_view> columns, const RecordFn& fn) {
  CsvReader reader(path);
  std::vector<std::size_t> idx;
  for (auto c : columns) idx.push_back(reader.column(c));
  std::vector<std::string> fields;
  std::vector<std::string> picked(columns.size());
  while (reader.next(fields)) {
    for (std::size_t i = 0; i < idx.size(); ++i) picked[i] = fields[idx[i]];
    fn(picked, reader.where());
  }
}

std::string json_scalar(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_array()) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += ';';
      out += json_scalar(v[i]);
    }
    return out;
  }
  return v.dump();
}

void for_each_jsonl(const std::filesystem::path& path, std::span<const std::string_view> columns, const RecordFn& fn) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, path.string(), "cannot open for reading");
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::string> picked(columns.size());
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = path.string() + ":" + std::to_string(lineno);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::ParseError, where, e.what());
    }
    if (!j.is_object()) throw Error(ErrorCode::ParseError, where, "expected a JSON object");
    for (std::size_t i = 0; i < columns.size(); ++i) {
      auto it = j.find(std::string(columns[i]));
      if (it == j.end()) throw Error(ErrorCode::ParseError, where, "missing field '" + std::string(columns[i]) + "'");
      picked[i] = json_scalar(*it);
    }
    fn(picked, where);
  }
}

void for_each_record(const std::filesystem::path& path, std::initializer_list<std::string_view> columns,
                     const RecordFn& fn) {
  const std::vector<std::string_view> cols(columns);
  if (!std::filesystem::exists(path)) throw Error(ErrorCode::IoError, path.string(), "file not found");
  if (infer_format(path) == RecordFormat::Jsonl) {
    for_each_jsonl(path, cols, fn);
  } else {
    for_each_csv(path, cols, fn);
  }
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

void require_nonempty(const std::string& value, std::string_view column, const std::string& where) {
  if (trim(value).empty()) throw Error(ErrorCode::ParseError, where, "empty " + std::string(column));
}

int parse_year(const std::string& s, const std::string& where) {
  const auto t = trim(s);
  int year = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), year);
  if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
    throw Error(ErrorCode::ParseError, where, "invalid year '" + s + "'");
  }
  return year;
}

std::filesystem::path pick(const std::filesystem::path& dir, const std::string& stem) {
  for (const char* ext : {".csv", ".jsonl", ".ndjson"}) {
    auto p = dir / (stem + ext);
    if (std::filesystem::exists(p)) return p;
  }
  return dir / (stem + ".csv");
}

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream out(path, mode | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, path.string(), "cannot open for writing");
  return out;
}

}  // namespace

RecordFormat infer_format(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  return (ext == ".jsonl" || ext == ".ndjson") ? RecordFormat::Jsonl : RecordFormat::Csv;
}

CorpusPaths CorpusPaths::in_directory(const std::filesystem::path& dir) {
  return {pick(dir, "registry"), pick(dir, "venues"), pick(dir, "publications"), pick(dir, "citations")};
}

void read_registry(const std::filesystem::path& path, std::vector<Area>& areas,
                   std::vector<SubjectCategory>& categories) {
  std::map<std::string, std::string, std::less<>> area_names;
  for_each_record(path, {"sc_code", "sc_name", "area_code", "area_name"}, [&](auto f, const std::string& where) {
    require_nonempty(f[0], "sc_code", where);
    require_nonempty(f[2], "area_code", where);
    auto [it, inserted] = area_names.emplace(f[2], f[3]);
    if (!inserted && it->second != f[3]) {
      throw Error(ErrorCode::InconsistentArea, f[2], "conflicting names at " + where);
    }
    categories.push_back({f[0], f[1], f[2]});
  });
  for (auto& [code, name] : area_names) areas.push_back({code, name});
}

std::vector<Venue> read_venues(const std::filesystem::path& path) {
  std::vector<Venue> venues;
  for_each_record(path, {"venue_id", "name", "sc_codes"}, [&](auto f, const std::string& where) {
    require_nonempty(f[0], "venue_id", where);
    Venue v{f[0], f[1], {}};
    std::string_view rest = f[2];
    while (!rest.empty()) {
      const auto cut = rest.find(';');
      const auto code = trim(rest.substr(0, cut));
      if (!code.empty()) v.candidate_scs.emplace_back(code);
      if (cut == std::string_view::npos) break;
      rest.remove_prefix(cut + 1);
    }
    venues.push_back(std::move(v));
  });
  return venues;
}

std::vector<Publication> read_publications(const std::filesystem::path& path) {
  std::vector<Publication> pubs;
  for_each_record(path, {"pub_id", "venue_id", "year"}, [&](auto f, const std::string& where) {
    require_nonempty(f[0], "pub_id", where);
    pubs.push_back({f[0], f[1], parse_year(f[2], where)});
  });
  return pubs;
}

std::vector<CitationEdge> read_citations(const std::filesystem::path& path) {
  std::vector<CitationEdge> edges;
  for_each_record(path, {"citing_id", "cited_id"}, [&](auto f, const std::string& where) {
    require_nonempty(f[0], "citing_id", where);
    require_nonempty(f[1], "cited_id", where);
    edges.push_back({f[0], f[1]});
  });
  return edges;
}

RawCorpus read_corpus(const CorpusPaths& paths) {
  RawCorpus raw;
  read_registry(paths.registry, raw.areas, raw.categories);
  raw.venues = read_venues(paths.venues);
  raw.publications = read_publications(paths.publications);
  raw.edges = read_citations(paths.citations);
  return raw;
}

void write_corpus_csv(const RawCorpus& raw, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::map<std::string_view, std::string_view> area_names;
  for (const auto& a : raw.areas) area_names.emplace(a.code, a.name);

  {
    auto out = open_out(dir / "registry.csv");
    write_csv_row(out, {"sc_code", "sc_name", "area_code", "area_name"});
    for (const auto& c : raw.categories) write_csv_row(out, {c.code, c.name, c.area_code, area_names[c.area_code]});
  }
  {
    auto out = open_out(dir / "venues.csv");
    write_csv_row(out, {"venue_id", "name", "sc_codes"});
    for (const auto& v : raw.venues) {
      std::string codes;
      for (std::size_t i = 0; i < v.candidate_scs.size(); ++i) {
        if (i) codes += ';';
        codes += v.candidate_scs[i];
      }
      write_csv_row(out, {v.venue_id, v.name, codes});
    }
  }
  {
    auto out = open_out(dir / "publications.csv");
    write_csv_row(out, {"pub_id", "venue_id", "year"});
    for (const auto& p : raw.publications) write_csv_row(out, {p.pub_id, p.venue_id, std::to_string(p.year)});
  }
  {
    auto out = open_out(dir / "citations.csv");
    write_csv_row(out, {"citing_id", "cited_id"});
    for (const auto& e : raw.edges) write_csv_row(out, {e.citing_id, e.cited_id});
  }
}

void save_graph_cache(const CorpusGraph& graph, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto out = open_out(path, std::ios::binary);
  RawCorpus raw = graph.to_raw();
  cereal::PortableBinaryOutputArchive ar(out);
  ar(kCacheMagic, kCacheVersion, graph.cohort_year(), graph.horizon_year(), graph.registry().reference_schema());
  ar(raw.areas, raw.categories, raw.venues, raw.publications, raw.edges);
}

CorpusGraph load_graph_cache(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, path.string(), "cannot open graph cache");
  std::uint32_t magic = 0;
  std::uint32_t version = 0;
  int cohort = 0;
  int horizon = 0;
  bool reference = false;
  RawCorpus raw;
  try {
    cereal::PortableBinaryInputArchive ar(in);
    ar(magic, version);
    if (magic != kCacheMagic || version != kCacheVersion) {
      throw Error(ErrorCode::ParseError, path.string(), "not a citeflow graph cache (or wrong version)");
    }
    ar(cohort, horizon, reference);
    ar(raw.areas, raw.categories, raw.venues, raw.publications, raw.edges);
  } catch (const cereal::Exception& e) {
    throw Error(ErrorCode::ParseError, path.string(), e.what());
  }
  return build_graph(std::move(raw), cohort, horizon, reference);
}

void write_assignments_csv(const CorpusGraph& graph, const AssignmentTable& table, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto out = open_out(path, std::ios::binary);
  write_csv_row(out, {"pub_id", "sc_code", "method", "tied"});
  const auto& reg = graph.registry();
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto p = make_index<PubIndex>(i);
    const auto& a = table.at(p);
    write_csv_row(out, {graph.pub_id(p), reg.sc(a.sc).code, to_string(a.method), a.tied ? "true" : "false"});
  }
}

AssignmentTable read_assignments_csv(const CorpusGraph& graph, const std::filesystem::path& path,
                                     std::uint64_t seed) {
  std::vector<Assignment> entries(graph.pub_count());
  std::vector<bool> seen(graph.pub_count(), false);
  for_each_record(path, {"pub_id", "sc_code", "method", "tied"}, [&](auto f, const std::string& where) {
    auto p = graph.find_pub(f[0]);
    if (!p) throw Error(ErrorCode::InvalidAssignment, f[0], "unknown publication at " + where);
    if (seen[ix(*p)]) throw Error(ErrorCode::InvalidAssignment, f[0], "assigned twice at " + where);
    auto sc = graph.registry().find_sc(f[1]);
    auto cands = graph.candidates(*p);
    if (!sc || !std::binary_search(cands.begin(), cands.end(), *sc)) {
      throw Error(ErrorCode::InvalidAssignment, f[0], "SC '" + f[1] + "' is not a venue candidate");
    }
    auto method = parse_assignment_method(f[2]);
    if (!method) throw Error(ErrorCode::ParseError, where, "unknown method '" + f[2] + "'");
    if (f[3] != "true" && f[3] != "false") throw Error(ErrorCode::ParseError, where, "tied must be true/false");
    entries[ix(*p)] = {*sc, *method, f[3] == "true"};
    seen[ix(*p)] = true;
  });
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) {
      throw Error(ErrorCode::InvalidAssignment, graph.pub_id(make_index<PubIndex>(i)), "missing from " + path.string());
    }
  }
  return AssignmentTable(std::move(entries), seed);
}

}  // namespace citeflow
