#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "citeflow/error.hpp"
#include "citeflow/pipeline.hpp"
#include "citeflow/synth.hpp"

namespace {

struct Flags {
  std::string config;
  std::string input, registry, venues, publications, citations, graph_cache, assignments, out;
  int cohort_year = 0;
  int horizon_year = 0;
  std::uint64_t seed = 0;
  std::vector<int> windows;
  std::vector<std::string> formats;
  unsigned threads = 0;
  std::size_t top_k = 10;
  bool reference_schema = false;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "TOML run configuration; flags override it");
  cmd->add_option("--input", f.input, "directory with registry/venues/publications/citations (.csv or .jsonl)");
  cmd->add_option("--registry", f.registry, "subject category registry file");
  cmd->add_option("--venues", f.venues, "venue file");
  cmd->add_option("--publications", f.publications, "publication file");
  cmd->add_option("--citations", f.citations, "citation edge file");
  cmd->add_option("--graph", f.graph_cache, "graph cache written by ingest");
  cmd->add_option("--assignments", f.assignments, "assignments.csv written by resolve");
  cmd->add_option("--cohort-year", f.cohort_year, "cohort year");
  cmd->add_option("--horizon-year", f.horizon_year, "last citing year");
  cmd->add_option("--seed", f.seed, "tie-break seed");
  cmd->add_option("--window", f.windows, "citation window in years (repeatable)")->take_all();
  cmd->add_option("--format", f.formats, "report format: csv, json (repeatable)")->take_all();
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--threads", f.threads, "worker threads, 0 = all cores");
  cmd->add_option("--top-k", f.top_k, "rows in each band of the SC ranking");
  cmd->add_flag("--reference-schema", f.reference_schema, "expect the 254-SC / 13-area schema");
}

// Every subcommand binds the same Flags, so presence is asked of the one
// that was parsed.
citeflow::RunConfig build_config(const Flags& f, const CLI::App& cmd) {
  citeflow::RunConfig c = f.config.empty() ? citeflow::RunConfig{} : citeflow::RunConfig::load(f.config);
  if (!f.input.empty()) c.input = f.input;
  if (!f.registry.empty()) c.registry = f.registry;
  if (!f.venues.empty()) c.venues = f.venues;
  if (!f.publications.empty()) c.publications = f.publications;
  if (!f.citations.empty()) c.citations = f.citations;
  if (!f.graph_cache.empty()) c.graph_cache = f.graph_cache;
  if (!f.assignments.empty()) c.assignments = f.assignments;
  if (cmd.count("--out")) c.out = f.out;
  if (cmd.count("--cohort-year")) c.cohort_year = f.cohort_year;
  if (cmd.count("--horizon-year")) c.horizon_year = f.horizon_year;
  if (cmd.count("--seed")) c.seed = f.seed;
  if (!f.windows.empty()) c.windows = f.windows;
  if (!f.formats.empty()) c.formats = f.formats;
  if (cmd.count("--threads")) c.threads = f.threads;
  if (cmd.count("--top-k")) c.top_k = f.top_k;
  if (f.reference_schema) c.reference_schema = true;
  return c;
}

int report_setup_error(const std::exception& e) {
  std::cerr << "error: " << e.what() << '\n';
  if (const auto* ce = dynamic_cast<const citeflow::Error*>(&e)) {
    return citeflow::is_validation_error(ce->code()) ? 1 : 2;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"citeflow: subject-category knowledge-flow analysis of citation corpora"};
  app.require_subcommand(1);

  Flags f;
  auto* ingest = app.add_subcommand("ingest", "validate a corpus and write graph.cache");
  auto* resolve = app.add_subcommand("resolve", "assign one subject category per publication");
  auto* analyze = app.add_subcommand("analyze", "write per-publication profiles and impact");
  auto* report = app.add_subcommand("report", "write tables, figures and report.json");
  auto* pipeline = app.add_subcommand("pipeline", "ingest, resolve, analyze and report");
  for (auto* cmd : {ingest, resolve, analyze, report, pipeline}) add_common(cmd, f);

  std::string synth_config;
  std::string synth_out = ".";
  std::uint64_t synth_seed = 0;
  int synth_cohort = 0;
  auto* synth = app.add_subcommand("synth", "generate a synthetic corpus with planted subject categories");
  synth->add_option("--config", synth_config, "synthetic corpus parameters (TOML)");
  synth->add_option("--out", synth_out, "output directory");
  auto* o_synth_seed = synth->add_option("--seed", synth_seed, "generator seed");
  auto* o_synth_cohort = synth->add_option("--cohort-year", synth_cohort, "cohort year");

  CLI11_PARSE(app, argc, argv);

  if (synth->parsed()) {
    citeflow::SynthConfig cfg;
    try {
      if (!synth_config.empty()) cfg = citeflow::SynthConfig::from_toml(citeflow::toml::parse_file(synth_config));
      if (o_synth_seed->count()) cfg.seed = synth_seed;
      if (o_synth_cohort->count()) cfg.cohort_year = synth_cohort;
    } catch (const std::exception& e) {
      return report_setup_error(e);
    }
    return citeflow::cmd_synth(cfg, synth_out, std::cout, std::cerr);
  }

  CLI::App* chosen = pipeline;
  for (auto* cmd : {ingest, resolve, analyze, report}) {
    if (cmd->parsed()) chosen = cmd;
  }
  citeflow::RunConfig cfg;
  try {
    cfg = build_config(f, *chosen);
  } catch (const std::exception& e) {
    return report_setup_error(e);
  }
  if (chosen == ingest) return citeflow::cmd_ingest(cfg, std::cout, std::cerr);
  if (chosen == resolve) return citeflow::cmd_resolve(cfg, std::cout, std::cerr);
  if (chosen == analyze) return citeflow::cmd_analyze(cfg, std::cout, std::cerr);
  if (chosen == report) return citeflow::cmd_report(cfg, std::cout, std::cerr);
  return citeflow::cmd_pipeline(cfg, std::cout, std::cerr);
}
