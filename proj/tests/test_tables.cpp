#include <catch_amalgamated.hpp>

#include "citeflow/report.hpp"
#include "citeflow/tables.hpp"
#include "fixtures.hpp"
#include "oracle_check.hpp"

using namespace citeflow;
using Catch::Approx;

namespace {

struct Run {
  CorpusGraph graph;
  AssignmentTable asg;
  ProfilePopulation pop;
  ImpactTable imp;

  explicit Run(const fixtures::Builder& b)
      : graph(b.graph()),
        asg(resolve_all(graph, 1)),
        pop(profile_population(graph, asg, CitationWindow::full_horizon())),
        imp(compute_impacts(graph, asg)) {}

  const SubjectCategoryRegistry& reg() const { return graph.registry(); }
};

fixtures::Builder two_areas() {
  fixtures::Builder b;
  b.area("A").area("B").sc("X", "A").sc("Y", "A").sc("Z", "B");
  return b;
}

}  // namespace

TEST_CASE("area breakdown of shares 1, 0, 3/5, 2/5") {
  auto b = two_areas();
  auto p1 = b.cohort_pub("X");
  b.cite(p1, "X", 2);
  auto p2 = b.cohort_pub("X");
  b.cite(p2, "Y", 3);
  auto p3 = b.cohort_pub("X");
  b.cite(p3, "X", 3).cite(p3, "Z", 2);
  auto p4 = b.cohort_pub("X");
  b.cite(p4, "X", 2).cite(p4, "Y", 3);
  Run r(b);
  const auto t = area_flow_breakdown(r.pop.profiles, r.asg, r.reg());
  REQUIRE(t.total.total_pubs == 4);
  CHECK(*t.total.pct_totally_intra == 25.0);
  CHECK(*t.total.pct_totally_extra == 25.0);
  CHECK(*t.total.pct_predominantly_intra == 50.0);
  CHECK(*t.total.avg_share_intra == 50.0);
  CHECK(t.areas[0].total_pubs == 4);
  CHECK(t.areas[1].total_pubs == 0);
  CHECK_FALSE(t.areas[1].pct_totally_intra.has_value());
  CHECK_FALSE(t.areas[1].avg_share_intra.has_value());
}

TEST_CASE("area breakdown of a single totally intra pub") {
  auto b = two_areas();
  auto p = b.cohort_pub("Z");
  b.cite(p, "Z", 4);
  Run r(b);
  const auto t = area_flow_breakdown(r.pop.profiles, r.asg, r.reg());
  const auto& row = t.areas[1];
  CHECK(*row.pct_totally_intra == 100.0);
  CHECK(*row.pct_totally_extra == 0.0);
  CHECK(*row.pct_predominantly_intra == 100.0);
  CHECK(*row.avg_share_intra == 100.0);
}

TEST_CASE("area breakdown of the worked example") {
  const auto g = fixtures::worked_example_graph();
  const auto asg = resolve_all(g, 0);
  const auto pop = profile_population(g, asg, CitationWindow::full_horizon());
  const auto t = area_flow_breakdown(pop.profiles, asg, g.registry());
  CHECK(*t.total.pct_predominantly_intra == 0.0);
  CHECK(format_fixed(*t.total.avg_share_intra, 1) == "47.1");
  CHECK(*t.total.avg_share_intra == Approx(100.0 * 24 / 51).epsilon(1e-15));
}

TEST_CASE("per-SC shares and ranking") {
  auto b = two_areas();
  auto p1 = b.cohort_pub("X");
  b.cite(p1, "X", 1).cite(p1, "Y", 4);  // 0.2
  auto p2 = b.cohort_pub("X");
  b.cite(p2, "X", 2).cite(p2, "Y", 3);  // 0.4
  auto p3 = b.cohort_pub("Z");
  b.cite(p3, "Z", 3);  // 1.0
  Run r(b);
  const auto t = sc_flow_shares(r.pop.profiles, r.reg(), 1);
  REQUIRE(t.ranked.size() == 2);
  CHECK(r.reg().sc(t.ranked[0].sc).code == "X");
  CHECK(t.ranked[0].avg_intra_exact == BigRational(3, 10));
  CHECK(t.ranked[0].avg_intra == Approx(0.3).epsilon(1e-15));
  CHECK(t.ranked[0].diff == Approx(-0.4).epsilon(1e-15));
  CHECK(t.ranked[0].n_obs == 2);
  CHECK(r.reg().sc(t.ranked[1].sc).code == "Z");
  CHECK(t.ranked[1].diff == 1.0);
  CHECK(t.ranked[1].n_totally_intra == 1);
  REQUIRE(t.lowest().size() == 1);
  CHECK(t.lowest()[0].sc == t.ranked[0].sc);
  CHECK(t.highest()[0].sc == t.ranked[1].sc);
}

TEST_CASE("majority count uses a strict comparison") {
  auto b = two_areas();
  auto p1 = b.cohort_pub("X");
  b.cite(p1, "X", 1).cite(p1, "Y", 1);  // exactly 1/2
  auto p2 = b.cohort_pub("Z");
  b.cite(p2, "Z", 2).cite(p2, "X", 3);  // 0.4
  Run r(b);
  const auto shares = sc_flow_shares(r.pop.profiles, r.reg());
  const auto t = sc_majority_count(shares.ranked, r.reg());
  CHECK(t.total.n_majority == 0);
  CHECK(t.total.n_scs == 2);
  CHECK(t.total.n_scs_registry == 3);
  CHECK(t.areas[0].n_scs == 1);
  CHECK(t.areas[0].n_scs_registry == 2);
  CHECK(*t.areas[0].pct_majority == 0.0);
}

TEST_CASE("majority count with every SC at 0.4") {
  auto b = two_areas();
  for (const char* sc : {"X", "Y", "Z"}) {
    auto p = b.cohort_pub(sc);
    b.cite(p, sc, 2).cite(p, sc == std::string("X") ? "Y" : "X", 3);
  }
  Run r(b);
  const auto t = sc_majority_count(sc_flow_shares(r.pop.profiles, r.reg()).ranked, r.reg());
  for (const auto& row : t.areas) CHECK(row.n_majority == 0);
  CHECK(t.total.n_majority == 0);
}

TEST_CASE("spread descriptives") {
  auto b = two_areas();
  const char* others[] = {"Y", "Z"};
  // spreads 1, 2, 3 in SC X (area A) and a single spread-3 pub in SC Z (area B)
  auto p1 = b.cohort_pub("X");
  b.cite(p1, "X", 1);
  auto p2 = b.cohort_pub("X");
  b.cite(p2, "X", 1).cite(p2, others[0], 1);
  auto p3 = b.cohort_pub("X");
  b.cite(p3, "X", 1).cite(p3, "Y", 1).cite(p3, "Z", 1);
  auto p4 = b.cohort_pub("Z");
  b.cite(p4, "X", 1).cite(p4, "Y", 1).cite(p4, "Z", 1);
  Run r(b);
  const auto t = spread_descriptives(r.pop.profiles, r.reg());
  const auto& a = t.areas[0].stats;
  CHECK(a.n == 3);
  CHECK(a.median == 2.0);
  CHECK(a.sd == 1.0);
  const auto& z = t.areas[1].stats;
  CHECK(z.single_observation());
  CHECK(z.min == 3.0);
  CHECK(z.max == 3.0);
  CHECK(z.sd == 0.0);
  CHECK(t.total.stats.n == 4);
}

TEST_CASE("impact by flow class") {
  auto b = two_areas();
  auto p1 = b.cohort_pub("X");
  b.cite(p1, "X", 18).cite(p1, "Y", 2);  // share 0.9, 20 citations
  auto p2 = b.cohort_pub("X");
  b.cite(p2, "X", 3).cite(p2, "Y", 27);  // share 0.1, 30 citations
  Run r(b);
  const auto t = impact_by_flow_class(r.pop.profiles, r.imp, r.reg());
  CHECK(t.total.n_intra == 1);
  CHECK(t.total.n_extra == 1);
  CHECK(*t.total.avg_impact_intra == Approx(0.8).epsilon(1e-15));
  CHECK(*t.total.avg_impact_extra == Approx(1.2).epsilon(1e-15));
  CHECK(*t.total.delta == Approx(-0.4).epsilon(1e-14));
}

TEST_CASE("impact by flow class when every pub is balanced") {
  auto b = two_areas();
  auto p1 = b.cohort_pub("X");
  b.cite(p1, "X", 1).cite(p1, "Y", 1);
  auto p2 = b.cohort_pub("X");
  b.cite(p2, "X", 2).cite(p2, "Y", 2);
  Run r(b);
  const auto t = impact_by_flow_class(r.pop.profiles, r.imp, r.reg());
  CHECK(t.total.n_intra == 0);
  CHECK(t.total.n_extra == 0);
  CHECK_FALSE(t.total.avg_impact_intra);
  CHECK_FALSE(t.total.avg_impact_extra);
  CHECK_FALSE(t.total.delta);
}

TEST_CASE("correlation: impact decreasing in share, and exclusions") {
  auto b = two_areas();
  auto p1 = b.cohort_pub("X");
  b.cite(p1, "X", 2);  // share 1, 2 citations
  auto p2 = b.cohort_pub("X");
  b.cite(p2, "X", 2).cite(p2, "Y", 2);  // share 1/2, 4 citations
  auto p3 = b.cohort_pub("X");
  b.cite(p3, "X", 1).cite(p3, "Y", 7);  // share 1/8, 8 citations
  auto lone = b.cohort_pub("Z");
  b.cite(lone, "Z", 1);
  Run r(b);
  const auto t = sc_impact_correlation(r.pop.profiles, r.imp, r.reg());
  REQUIRE(t.per_sc.size() == 2);
  CHECK(*t.per_sc[0].r < 0.0);
  CHECK_FALSE(t.per_sc[1].r);
  CHECK(t.areas[0].n_negative == 1);
  CHECK(t.areas[0].n_scs == 1);
  CHECK(t.areas[1].n_excluded == 1);
  CHECK(t.total.n_excluded == 1);
  CHECK(*t.total.pct_negative == 100.0);
}

TEST_CASE("impact by spread") {
  SECTION("all spread 1 with impact 1") {
    auto b = two_areas();
    auto p1 = b.cohort_pub("X");
    b.cite(p1, "X", 3);
    auto p2 = b.cohort_pub("X");
    b.cite(p2, "X", 3);
    Run r(b);
    const auto pts = impact_by_spread(r.pop.profiles, r.imp);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].distinct_all == 1);
    CHECK(pts[0].mean_impact == 1.0);
    CHECK(pts[0].n == 2);
  }
  SECTION("increasing with spread") {
    auto b = two_areas();
    auto p1 = b.cohort_pub("X");
    b.cite(p1, "X", 1);
    auto p2 = b.cohort_pub("X");
    b.cite(p2, "X", 1).cite(p2, "Y", 1);
    auto p3 = b.cohort_pub("X");
    b.cite(p3, "X", 1).cite(p3, "Y", 1).cite(p3, "Z", 1);
    Run r(b);
    const auto pts = impact_by_spread(r.pop.profiles, r.imp);
    REQUIRE(pts.size() == 3);
    CHECK(pts[0].mean_impact < pts[1].mean_impact);
    CHECK(pts[1].mean_impact < pts[2].mean_impact);
    CHECK(pts[2].mean_impact == 1.5);
  }
}

TEST_CASE("spread delta per SC") {
  auto b = two_areas();
  auto p1 = b.cohort_pub("X");
  b.cite(p1, "X", 3).cite(p1, "Y", 1);  // intra, 4 citations, spread 2
  auto p2 = b.cohort_pub("X");
  b.cite(p2, "X", 1).cite(p2, "Y", 3).cite(p2, "Z", 4);  // extra, 8 citations, spread 3
  Run r(b);
  const auto d = sc_spread_delta(r.pop.profiles, r.imp, r.reg());
  REQUIRE(d.size() == 1);
  CHECK(d[0].avg_spread == 2.5);
  CHECK(*d[0].delta_extra_minus_intra == Approx(8.0 / 6 - 4.0 / 6).epsilon(1e-15));
}

TEST_CASE("window comparison") {
  auto b = two_areas();
  auto p = b.cohort_pub("X");
  b.cite(p, "X", 3, 2016).cite(p, "Y", 3, 2020);
  auto q = b.cohort_pub("Z");
  b.cite(q, "Z", 2, 2021);
  Run r(b);
  SECTION("full horizon twice gives identical columns") {
    const std::vector<CitationWindow> ws{CitationWindow::full_horizon(), CitationWindow::full_horizon()};
    const auto s = window_comparison(r.graph, r.asg, ws);
    REQUIRE(s.size() == 2);
    CHECK(s[0].window == s[1].window);
    CHECK(*s[0].flows.total.avg_share_intra == *s[1].flows.total.avg_share_intra);
    CHECK(s[0].coverage.total.cited_in_window == s[1].coverage.total.cited_in_window);
    CHECK(*s[0].coverage.total.share() == 1.0);
  }
  SECTION("late extra citations raise the short-window intra share") {
    const std::vector<CitationWindow> ws{CitationWindow::years(2), CitationWindow::full_horizon()};
    const auto s = window_comparison(r.graph, r.asg, ws);
    CHECK(*s[0].flows.areas[0].avg_share_intra > *s[1].flows.areas[0].avg_share_intra);
    CHECK(s[0].coverage.total.cited_in_window == 1);
    CHECK(s[0].coverage.total.cited_at_horizon == 2);
    CHECK(*s[0].coverage.total.share() == 0.5);
    CHECK(s[0].flows.areas[1].total_pubs == 0);
  }
}

TEST_CASE("aggregates equal the brute-force oracle on random corpora") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto rc = fixtures::random_corpus(seed);
    const auto failures = oracle::oracle_mismatches(rc, seed * 7, "corpus " + std::to_string(seed));
    for (const auto& f : failures) UNSCOPED_INFO(f);
    CHECK(failures.empty());
  }
}
