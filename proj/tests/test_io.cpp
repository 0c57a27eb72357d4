#include <catch_amalgamated.hpp>

#include <functional>

#include "citeflow/corpus_io.hpp"
#include "citeflow/csv.hpp"
#include "citeflow/error.hpp"
#include "citeflow/resolver.hpp"
#include "citeflow/toml_lite.hpp"
#include "fixtures.hpp"

using namespace citeflow;
using fixtures::spit;
using fixtures::TempDir;

namespace {

Error error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  FAIL("no citeflow::Error thrown");
  return Error(ErrorCode::IoError, "");
}

std::vector<std::vector<std::string>> read_all(const std::filesystem::path& p) {
  CsvReader r(p);
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> f;
  while (r.next(f)) rows.push_back(f);
  return rows;
}

void same_corpus(const RawCorpus& a, const RawCorpus& b) {
  REQUIRE(a.publications.size() == b.publications.size());
  for (std::size_t i = 0; i < a.publications.size(); ++i) {
    CHECK(a.publications[i].pub_id == b.publications[i].pub_id);
    CHECK(a.publications[i].venue_id == b.publications[i].venue_id);
    CHECK(a.publications[i].year == b.publications[i].year);
  }
  REQUIRE(a.edges.size() == b.edges.size());
  for (std::size_t i = 0; i < a.edges.size(); ++i) {
    CHECK(a.edges[i].citing_id == b.edges[i].citing_id);
    CHECK(a.edges[i].cited_id == b.edges[i].cited_id);
  }
  REQUIRE(a.venues.size() == b.venues.size());
  for (std::size_t i = 0; i < a.venues.size(); ++i) {
    CHECK(a.venues[i].venue_id == b.venues[i].venue_id);
    CHECK(a.venues[i].name == b.venues[i].name);
    CHECK(a.venues[i].candidate_scs == b.venues[i].candidate_scs);
  }
  REQUIRE(a.categories.size() == b.categories.size());
  for (std::size_t i = 0; i < a.categories.size(); ++i) {
    CHECK(a.categories[i].code == b.categories[i].code);
    CHECK(a.categories[i].area_code == b.categories[i].area_code);
  }
}

}  // namespace

TEST_CASE("csv reader: quoting, blank lines, CRLF, BOM") {
  TempDir dir("csv");
  spit(dir / "a.csv", "\xEF\xBB\xBF" "a,b,c\r\n1,\"x, y\",\"say \"\"hi\"\"\"\r\n\r\n2,\"multi\nline\",\r\n");
  CsvReader r(dir / "a.csv");
  CHECK(r.column("c") == 2);
  std::vector<std::string> f;
  REQUIRE(r.next(f));
  CHECK(f == std::vector<std::string>{"1", "x, y", "say \"hi\""});
  REQUIRE(r.next(f));
  CHECK(f == std::vector<std::string>{"2", "multi\nline", ""});
  CHECK(r.line() == 4);
  CHECK_FALSE(r.next(f));
}

TEST_CASE("csv reader errors name the file and line") {
  TempDir dir("csvbad");
  spit(dir / "bad.csv", "a,b\n1,2\n3\n");
  CsvReader r(dir / "bad.csv");
  std::vector<std::string> f;
  REQUIRE(r.next(f));
  const auto e = error_of([&] { r.next(f); });
  CHECK(e.code() == ErrorCode::ParseError);
  CHECK(e.subject() == (dir / "bad.csv").string() + ":3");

  spit(dir / "quote.csv", "a\n\"open\n");
  CHECK(error_of([&] { read_all(dir / "quote.csv"); }).code() == ErrorCode::ParseError);
  spit(dir / "cr.csv", "a\nx\ry\n");
  CHECK(error_of([&] { read_all(dir / "cr.csv"); }).code() == ErrorCode::ParseError);
  CHECK(error_of([&] { CsvReader missing(dir / "nope.csv"); }).code() == ErrorCode::IoError);
  spit(dir / "cols.csv", "a\n1\n");
  CHECK(error_of([&] { CsvReader(dir / "cols.csv").column("b"); }).code() == ErrorCode::ParseError);
}

TEST_CASE("csv writer round trip") {
  TempDir dir("csvw");
  {
    std::ofstream out(dir / "w.csv", std::ios::binary);
    write_csv_row(out, {"h1", "h2"});
    write_csv_row(out, {"a,b", "q\"uote"});
    write_csv_row(out, {"line\nbreak", ""});
  }
  const auto rows = read_all(dir / "w.csv");
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == std::vector<std::string>{"a,b", "q\"uote"});
  CHECK(rows[1] == std::vector<std::string>{"line\nbreak", ""});
}

TEST_CASE("corpus readers") {
  TempDir dir("corpus");
  SECTION("malformed year names file and line") {
    spit(dir / "publications.csv", "pub_id,venue_id,year\np1,V,2015\np2,V,20x5\n");
    const auto e = error_of([&] { read_publications(dir / "publications.csv"); });
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(e.subject() == (dir / "publications.csv").string() + ":3");
  }
  SECTION("venue SC lists are split on semicolons") {
    spit(dir / "venues.csv", "venue_id,name,sc_codes\nV1,One,A; B ;C\n");
    const auto v = read_venues(dir / "venues.csv");
    REQUIRE(v.size() == 1);
    CHECK(v[0].candidate_scs == std::vector<std::string>{"A", "B", "C"});
  }
  SECTION("conflicting area names") {
    spit(dir / "registry.csv", "sc_code,sc_name,area_code,area_name\nA,a,X,Ex\nB,b,X,Other\n");
    std::vector<Area> areas;
    std::vector<SubjectCategory> cats;
    CHECK(error_of([&] { read_registry(dir / "registry.csv", areas, cats); }).code() == ErrorCode::InconsistentArea);
  }
  SECTION("JSONL input") {
    spit(dir / "registry.jsonl",
         "{\"sc_code\":\"A\",\"sc_name\":\"a\",\"area_code\":\"X\",\"area_name\":\"Ex\"}\n"
         "{\"sc_code\":\"B\",\"sc_name\":\"b\",\"area_code\":\"X\",\"area_name\":\"Ex\"}\n");
    spit(dir / "venues.jsonl", "{\"venue_id\":\"V\",\"name\":\"v\",\"sc_codes\":[\"A\",\"B\"]}\n");
    spit(dir / "publications.jsonl",
         "{\"pub_id\":\"p1\",\"venue_id\":\"V\",\"year\":2015}\n\n{\"pub_id\":\"p2\",\"venue_id\":\"V\",\"year\":\"2016\"}\n");
    spit(dir / "citations.jsonl", "{\"citing_id\":\"p2\",\"cited_id\":\"p1\"}\n");
    const auto paths = CorpusPaths::in_directory(dir.path());
    CHECK(infer_format(paths.venues) == RecordFormat::Jsonl);
    const auto g = build_graph(read_corpus(paths), 2015, 2022);
    CHECK(g.pub_count() == 2);
    CHECK(g.edge_count() == 1);
    CHECK(g.candidates(g.pub_index("p1")).size() == 2);
  }
  SECTION("JSONL errors name the line") {
    spit(dir / "citations.jsonl", "{\"citing_id\":\"p2\",\"cited_id\":\"p1\"}\n{\"citing_id\":\"p2\"}\n");
    const auto e = error_of([&] { read_citations(dir / "citations.jsonl"); });
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(e.subject() == (dir / "citations.jsonl").string() + ":2");
  }
  SECTION("missing file") {
    CHECK(error_of([&] { read_citations(dir / "citations.csv"); }).code() == ErrorCode::IoError);
  }
}

TEST_CASE("csv corpus round trip") {
  for (std::uint64_t seed : {3u, 17u, 41u}) {
    const auto rc = fixtures::random_corpus(seed);
    const auto g = build_graph(rc.raw, rc.cohort_year, rc.horizon_year);
    TempDir dir("rt");
    write_corpus_csv(g.to_raw(), dir.path());
    const auto back = build_graph(read_corpus(CorpusPaths::in_directory(dir.path())), rc.cohort_year, rc.horizon_year);
    same_corpus(g.to_raw(), back.to_raw());
  }
}

TEST_CASE("graph cache round trip") {
  const auto rc = fixtures::random_corpus(8);
  const auto g = build_graph(rc.raw, rc.cohort_year, rc.horizon_year);
  TempDir dir("cache");
  save_graph_cache(g, dir / "graph.cache");
  const auto back = load_graph_cache(dir / "graph.cache");
  CHECK(back.cohort_year() == g.cohort_year());
  CHECK(back.horizon_year() == g.horizon_year());
  same_corpus(g.to_raw(), back.to_raw());

  spit(dir / "junk.cache", "not a cache at all");
  CHECK(error_of([&] { load_graph_cache(dir / "junk.cache"); }).code() == ErrorCode::ParseError);
  CHECK(error_of([&] { load_graph_cache(dir / "none.cache"); }).code() == ErrorCode::IoError);
}

TEST_CASE("assignments file round trip and validation") {
  const auto g = fixtures::worked_example_graph();
  const auto asg = resolve_all(g, 11);
  TempDir dir("asg");
  write_assignments_csv(g, asg, dir / "assignments.csv");
  const auto back = read_assignments_csv(g, dir / "assignments.csv", 11);
  CHECK(back == asg);

  auto text = fixtures::slurp(dir / "assignments.csv");
  SECTION("SC outside the venue candidates") {
    const auto pos = text.find("P-CITED,ISLS");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 12, "P-CITED,EDU");
    spit(dir / "bad.csv", text);
    CHECK(error_of([&] { read_assignments_csv(g, dir / "bad.csv"); }).code() == ErrorCode::InvalidAssignment);
  }
  SECTION("missing publication") {
    const auto pos = text.find("P-CITED,");
    text.erase(pos, text.find('\n', pos) - pos + 1);
    spit(dir / "short.csv", text);
    const auto e = error_of([&] { read_assignments_csv(g, dir / "short.csv"); });
    CHECK(e.code() == ErrorCode::InvalidAssignment);
    CHECK(e.subject() == "P-CITED");
  }
}

TEST_CASE("toml subset") {
  const auto doc = toml::parse(R"(# run config
cohort_year = 2015
seed = 1_000
ratio = 0.25
name = "out dir"   # trailing comment
path = 'C:\raw'
flag = true
windows = [
  2,
  7,  # trailing comma allowed
]

[synth]
n_scs = 12
formats = ["csv", "json"]
)");
  CHECK(doc.get_int("cohort_year") == 2015);
  CHECK(doc.get_int("seed") == 1000);
  CHECK(doc.get_double("ratio") == 0.25);
  CHECK(doc.get_double("cohort_year") == 2015.0);
  CHECK(doc.get_string("name") == "out dir");
  CHECK(doc.get_string("path") == "C:\\raw");
  CHECK(doc.get_bool("flag") == true);
  CHECK(doc.get_int_array("windows") == std::vector<std::int64_t>{2, 7});
  CHECK(doc.get_int("synth.n_scs") == 12);
  CHECK(doc.get_string_array("synth.formats") == std::vector<std::string>{"csv", "json"});
  CHECK_FALSE(doc.get_int("absent"));
  CHECK(error_of([&] { (void)doc.get_int("name"); }).code() == ErrorCode::InvalidConfig);

  CHECK(error_of([] { toml::parse("a = 1\na = 2\n", "dup.toml"); }).subject() == "dup.toml:2");
  CHECK(error_of([] { toml::parse("a = \n"); }).code() == ErrorCode::ParseError);
  CHECK(error_of([] { toml::parse("a = \"open\n"); }).code() == ErrorCode::ParseError);
  CHECK(error_of([] { toml::parse("a = 1 2\n"); }).code() == ErrorCode::ParseError);
}
