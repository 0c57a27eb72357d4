#include "citeflow/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <ostream>

#include <json.hpp>

#include "citeflow/error.hpp"
#include "citeflow/flows.hpp"
#include "citeflow/impact.hpp"
#include "citeflow/parallel.hpp"
#include "citeflow/report.hpp"
#include "citeflow/resolver.hpp"

namespace citeflow {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

fs::path resolve_path(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

int require_year(const std::optional<int>& v, const char* name) {
  if (!v) throw Error(ErrorCode::InvalidConfig, name, "required (flag or config file)");
  return *v;
}

bool has_corpus_input(const RunConfig& c) {
  return c.input || c.registry || c.venues || c.publications || c.citations;
}

CorpusPaths corpus_paths(const RunConfig& c) {
  CorpusPaths paths;
  if (c.input) paths = CorpusPaths::in_directory(*c.input);
  if (c.registry) paths.registry = *c.registry;
  if (c.venues) paths.venues = *c.venues;
  if (c.publications) paths.publications = *c.publications;
  if (c.citations) paths.citations = *c.citations;
  for (const auto* p : {&paths.registry, &paths.venues, &paths.publications, &paths.citations}) {
    if (p->empty()) throw Error(ErrorCode::InvalidConfig, "input", "missing corpus file path");
  }
  return paths;
}

CorpusGraph graph_from_input(const RunConfig& c) {
  const int cohort = require_year(c.cohort_year, "cohort_year");
  const int horizon = require_year(c.horizon_year, "horizon_year");
  return build_graph(read_corpus(corpus_paths(c)), cohort, horizon, c.reference_schema);
}

// Cache first, then raw input, then the cache left by a previous ingest.
CorpusGraph obtain_graph(const RunConfig& c) {
  std::optional<fs::path> cache = c.graph_cache;
  if (!cache && !has_corpus_input(c) && fs::exists(c.out / "graph.cache")) cache = c.out / "graph.cache";
  if (!cache) {
    if (!has_corpus_input(c)) throw Error(ErrorCode::InvalidConfig, "input", "no corpus input or graph cache given");
    return graph_from_input(c);
  }
  CorpusGraph g = load_graph_cache(*cache);
  const bool same_years = (!c.cohort_year || *c.cohort_year == g.cohort_year()) &&
                          (!c.horizon_year || *c.horizon_year == g.horizon_year());
  if (same_years) return g;
  return build_graph(g.to_raw(), c.cohort_year.value_or(g.cohort_year()), c.horizon_year.value_or(g.horizon_year()),
                     c.reference_schema);
}

AssignmentTable obtain_assignments(const RunConfig& c, const CorpusGraph& g) {
  std::optional<fs::path> path = c.assignments;
  if (!path && fs::exists(c.out / "assignments.csv")) path = c.out / "assignments.csv";
  if (path) return read_assignments_csv(g, *path, c.seed);
  return resolve_all(g, c.seed, effective_threads(c.threads));
}

std::vector<CitationWindow> profile_windows(const RunConfig& c, const CorpusGraph& g) {
  std::vector<CitationWindow> out;
  if (c.windows.empty()) {
    if (g.full_horizon_years() > 2) out.push_back(CitationWindow::years(2));
    out.push_back(CitationWindow::full_horizon());
    return out;
  }
  std::vector<int> ws = c.windows;
  std::sort(ws.begin(), ws.end());
  ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
  for (int w : ws) {
    auto win = CitationWindow::years(w);
    g.window_years(win);  // throws InvalidWindow beyond the horizon
    out.push_back(win);
  }
  return out;
}

json graph_counts(const CorpusGraph& g) {
  json j;
  j["pubs"] = g.pub_count();
  j["venues"] = g.venue_count();
  j["edges"] = g.edge_count();
  j["subject_categories"] = g.registry().sc_count();
  j["cohort_pubs"] = g.cohort().size();
  j["cohort_year"] = g.cohort_year();
  j["horizon_year"] = g.horizon_year();
  return j;
}

json warnings_json(const ValidationReport& report, std::ostream& err) {
  json arr = json::array();
  for (const auto& w : report.warnings) {
    err << "warning: " << to_string(w.kind) << ": " << w.count << " record(s)";
    if (!w.examples.empty()) {
      err << ", e.g.";
      for (const auto& e : w.examples) err << ' ' << e;
    }
    err << '\n';
    json j;
    j["kind"] = std::string(to_string(w.kind));
    j["count"] = w.count;
    j["examples"] = w.examples;
    arr.push_back(std::move(j));
  }
  return arr;
}

json stage_ingest(const RunConfig& c, const CorpusGraph& g, std::ostream& err) {
  fs::create_directories(c.out);
  const fs::path cache = c.out / "graph.cache";
  save_graph_cache(g, cache);
  json j = graph_counts(g);
  j["warnings"] = warnings_json(validate_corpus(g), err);
  j["graph_cache"] = cache.string();
  return j;
}

json stage_resolve(const RunConfig& c, const CorpusGraph& g, const AssignmentTable& asg) {
  fs::create_directories(c.out);
  const fs::path path = c.out / "assignments.csv";
  write_assignments_csv(g, asg, path);
  std::map<std::string, std::size_t> by_method;
  std::size_t tied = 0;
  for (const auto& a : asg.entries()) {
    ++by_method[std::string(to_string(a.method))];
    if (a.tied) ++tied;
  }
  json j;
  j["seed"] = asg.seed();
  j["assigned"] = asg.size();
  j["by_method"] = by_method;
  j["tied"] = tied;
  j["assignments"] = path.string();
  return j;
}

json stage_analyze(const RunConfig& c, const CorpusGraph& g, const AssignmentTable& asg) {
  fs::create_directories(c.out);
  const unsigned threads = effective_threads(c.threads);
  std::vector<ProfilePopulation> pops;
  for (const auto& w : profile_windows(c, g)) pops.push_back(profile_population(g, asg, w, threads));
  const auto impacts = compute_impacts(g, asg, CitationWindow::full_horizon(), threads);
  write_profiles_csv(pops, g, c.out / "profiles.csv");
  write_impact_csv(impacts, g, c.out / "impact.csv");

  json windows = json::array();
  for (const auto& p : pops) {
    json w;
    w["window"] = p.window;
    w["profiled"] = p.profiles.size();
    w["skipped_in_window"] = p.skipped_in_window;
    w["never_cited"] = p.never_cited;
    windows.push_back(std::move(w));
  }
  json j;
  j["windows"] = std::move(windows);
  j["impact_rows"] = impacts.scores.size();
  j["profiles"] = (c.out / "profiles.csv").string();
  j["impact"] = (c.out / "impact.csv").string();
  return j;
}

json stage_report(const RunConfig& c, const CorpusGraph& g, const AssignmentTable& asg, std::ostream& err) {
  AnalysisOptions opts;
  opts.windows = profile_windows(c, g);
  opts.top_k = c.top_k;
  opts.threads = effective_threads(c.threads);
  const auto report = analyze(g, asg, opts);
  for (const auto& w : report.warnings) err << "warning: " << w << '\n';

  fs::create_directories(c.out);
  json files = json::array();
  for (const auto& f : c.formats) {
    if (f == "csv") {
      write_report_csv(report, g, c.out);
      files.push_back("csv");
    } else if (f == "json") {
      write_report_json(report, g, asg, c.out / "report.json");
      files.push_back("json");
    } else {
      throw Error(ErrorCode::InvalidConfig, "format", "expected csv or json, got '" + f + "'");
    }
  }
  json j;
  j["reference_window"] = report.reference_window;
  j["profiled"] = report.population.profiles.size();
  j["formats"] = std::move(files);
  j["warnings"] = report.warnings;
  return j;
}

void check_formats(const RunConfig& c) {
  for (const auto& f : c.formats) {
    if (f != "csv" && f != "json") throw Error(ErrorCode::InvalidConfig, "format", "expected csv or json, got '" + f + "'");
  }
}

template <class Body>
int guarded(const char* command, std::ostream& out, std::ostream& err, Body&& body) {
  json summary;
  summary["command"] = command;
  try {
    body(summary);
    summary["status"] = "ok";
    out << summary.dump() << '\n';
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    summary["status"] = "error";
    summary["error"] = {{"code", std::string(to_string(e.code()))}, {"subject", e.subject()}, {"message", e.what()}};
    out << summary.dump() << '\n';
    return is_validation_error(e.code()) ? 1 : 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    summary["status"] = "error";
    summary["error"] = {{"code", "IoError"}, {"subject", ""}, {"message", e.what()}};
    out << summary.dump() << '\n';
    return 2;
  }
}

}  // namespace

RunConfig RunConfig::from_toml(const toml::Document& doc, const fs::path& base_dir) {
  RunConfig c;
  auto path_key = [&](const char* k, std::optional<fs::path>& dst) {
    if (auto v = doc.get_string(k)) dst = resolve_path(base_dir, *v);
  };
  path_key("input", c.input);
  path_key("registry", c.registry);
  path_key("venues", c.venues);
  path_key("publications", c.publications);
  path_key("citations", c.citations);
  path_key("graph_cache", c.graph_cache);
  path_key("assignments", c.assignments);
  if (auto v = doc.get_string("out")) c.out = resolve_path(base_dir, *v);
  if (auto v = doc.get_int("cohort_year")) c.cohort_year = static_cast<int>(*v);
  if (auto v = doc.get_int("horizon_year")) c.horizon_year = static_cast<int>(*v);
  if (auto v = doc.get_int("seed")) c.seed = static_cast<std::uint64_t>(*v);
  if (auto v = doc.get_int_array("windows")) c.windows.assign(v->begin(), v->end());
  if (auto v = doc.get_string_array("formats")) c.formats = *v;
  if (auto v = doc.get_int("threads")) {
    if (*v < 0) throw Error(ErrorCode::InvalidConfig, "threads", "must be non-negative");
    c.threads = static_cast<unsigned>(*v);
  }
  if (auto v = doc.get_bool("reference_schema")) c.reference_schema = *v;
  if (auto v = doc.get_int("top_k")) {
    if (*v < 0) throw Error(ErrorCode::InvalidConfig, "top_k", "must be non-negative");
    c.top_k = static_cast<std::size_t>(*v);
  }
  return c;
}

RunConfig RunConfig::load(const fs::path& path) {
  return from_toml(toml::parse_file(path), path.parent_path());
}

int cmd_ingest(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return guarded("ingest", out, err, [&](json& s) {
    if (!has_corpus_input(c)) throw Error(ErrorCode::InvalidConfig, "input", "no corpus input given");
    const auto g = graph_from_input(c);
    s["ingest"] = stage_ingest(c, g, err);
  });
}

int cmd_resolve(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return guarded("resolve", out, err, [&](json& s) {
    const auto g = obtain_graph(c);
    const auto asg = resolve_all(g, c.seed, effective_threads(c.threads));
    s["resolve"] = stage_resolve(c, g, asg);
  });
}

int cmd_analyze(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return guarded("analyze", out, err, [&](json& s) {
    const auto g = obtain_graph(c);
    const auto asg = obtain_assignments(c, g);
    s["analyze"] = stage_analyze(c, g, asg);
  });
}

int cmd_report(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return guarded("report", out, err, [&](json& s) {
    check_formats(c);
    const auto g = obtain_graph(c);
    const auto asg = obtain_assignments(c, g);
    s["report"] = stage_report(c, g, asg, err);
  });
}

int cmd_pipeline(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return guarded("pipeline", out, err, [&](json& s) {
    check_formats(c);
    const auto g = c.graph_cache ? load_graph_cache(*c.graph_cache) : graph_from_input(c);
    profile_windows(c, g);  // reject bad windows before writing anything
    s["ingest"] = stage_ingest(c, g, err);
    const auto asg = resolve_all(g, c.seed, effective_threads(c.threads));
    s["resolve"] = stage_resolve(c, g, asg);
    s["analyze"] = stage_analyze(c, g, asg);
    s["report"] = stage_report(c, g, asg, err);
  });
}

int cmd_synth(const SynthConfig& config, const fs::path& out_dir, std::ostream& out, std::ostream& err) {
  return guarded("synth", out, err, [&](json& s) {
    const auto synth = generate(config);
    fs::create_directories(out_dir);
    write_synth(synth, out_dir);
    json j;
    j["seed"] = config.seed;
    j["pubs"] = synth.corpus.publications.size();
    j["venues"] = synth.corpus.venues.size();
    j["edges"] = synth.corpus.edges.size();
    j["subject_categories"] = synth.corpus.categories.size();
    j["cohort_year"] = synth.cohort_year;
    j["horizon_year"] = synth.horizon_year;
    j["dropped_duplicates"] = synth.truth.dropped_duplicates;
    j["out"] = out_dir.string();
    s["synth"] = std::move(j);
  });
}

}  // namespace citeflow
