#include <catch_amalgamated.hpp>

#include <algorithm>
#include <functional>
#include <set>

#include "citeflow/error.hpp"
#include "citeflow/flows.hpp"
#include "fixtures.hpp"

using namespace citeflow;
using fixtures::Builder;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no citeflow::Error thrown");
  return ErrorCode::IoError;
}

Builder two_sc() {
  Builder b;
  b.area("X").area("Y").sc("A", "X").sc("B", "Y");
  return b;
}

}  // namespace

TEST_CASE("classify") {
  CHECK(classify({24, 51}) == FlowClass::PredominantlyExtra);
  CHECK(classify({26, 51}) == FlowClass::PredominantlyIntra);
  CHECK(classify({1, 1}) == FlowClass::TotallyIntra);
  CHECK(classify({0, 3}) == FlowClass::TotallyExtra);
  CHECK(classify({1, 2}) == FlowClass::Balanced);
  CHECK(classify({50, 100}) == FlowClass::Balanced);
  // 2^53 + 1 over 2^54 + 2 is exactly 1/2 although double rounding would hide it
  const std::uint64_t big = (std::uint64_t{1} << 53) + 1;
  CHECK(classify({big, 2 * big}) == FlowClass::Balanced);
  CHECK(classify({big, 2 * big - 1}) == FlowClass::PredominantlyIntra);
  CHECK(is_predominantly_intra(FlowClass::TotallyIntra));
  CHECK_FALSE(is_predominantly_intra(FlowClass::Balanced));
  CHECK_FALSE(is_predominantly_extra(FlowClass::Balanced));
}

TEST_CASE("worked example profile") {
  const auto g = fixtures::worked_example_graph();
  const auto t = resolve_all(g, 0);
  const auto p = flow_profile(g, t, g.pub_index("P-CITED"), CitationWindow::full_horizon());
  const auto& reg = g.registry();
  CHECK(reg.sc(p.sc).code == "ISLS");
  CHECK(p.n_cit == 51);
  CHECK(p.n_intra == 24);
  CHECK(p.share_intra() == Fraction{24, 51});
  CHECK(p.share_intra().exact() == BigRational(8, 17));
  CHECK(p.flow_class == FlowClass::PredominantlyExtra);
  CHECK(p.distinct_all == 21);
  CHECK(p.distinct_extra == 20);
  CHECK(p.n_extra() == 27);
  std::size_t singletons = 0;
  std::map<std::string, std::uint32_t> hist;
  for (const auto& h : p.histogram) {
    hist[reg.sc(h.sc).code] = h.count;
    if (h.sc != p.sc && h.count == 1) ++singletons;
  }
  CHECK(singletons == 17);
  CHECK(hist.at("CSIA") == 4);
  CHECK(hist.at("EDU") == 2);
  CHECK(hist.at("MULTI") == 4);
  CHECK(hist.at("ISLS") == 24);
  const auto pop = profile_population(g, t, CitationWindow::full_horizon());
  CHECK(pop.profiles.size() == 1);
}

TEST_CASE("small profiles") {
  SECTION("all intra") {
    auto b = two_sc();
    const auto p = b.cohort_pub("A");
    b.cite(p, "A", 5);
    const auto g = b.graph();
    const auto f = flow_profile(g, resolve_all(g, 0), g.pub_index(p), CitationWindow::full_horizon());
    CHECK(f.share_intra() == Fraction{1, 1});
    CHECK(f.flow_class == FlowClass::TotallyIntra);
    CHECK(f.distinct_all == 1);
    CHECK(f.distinct_extra == 0);
  }
  SECTION("one intra, one extra") {
    auto b = two_sc();
    const auto p = b.cohort_pub("A");
    b.cite(p, "A", 1).cite(p, "B", 1);
    const auto g = b.graph();
    const auto f = flow_profile(g, resolve_all(g, 0), g.pub_index(p), CitationWindow::full_horizon());
    CHECK(f.flow_class == FlowClass::Balanced);
    CHECK(f.distinct_all == 2);
    CHECK(f.distinct_extra == 1);
  }
  SECTION("errors") {
    auto b = two_sc();
    const auto p = b.cohort_pub("A");
    b.cite(p, "A", 1, 2019);
    const auto g = b.graph();
    const auto t = resolve_all(g, 0);
    CHECK(code_of([&] { flow_profile(g, t, g.pub_index(p), CitationWindow::years(2)); }) ==
          ErrorCode::NoCitationsInWindow);
    const auto citer = in_citations(g, p).front();
    CHECK(code_of([&] { flow_profile(g, t, g.pub_index(citer), CitationWindow::full_horizon()); }) ==
          ErrorCode::NotCohortPublication);
  }
}

TEST_CASE("population skips and coverage") {
  auto b = two_sc();
  const auto p1 = b.cohort_pub("A");
  const auto p2 = b.cohort_pub("A");
  const auto p3 = b.cohort_pub("B");
  b.cohort_pub("B");  // never cited
  b.cite(p1, "A", 2, 2016).cite(p2, "B", 1, 2017).cite(p3, "A", 3, 2020);
  const auto g = b.graph();
  const auto t = resolve_all(g, 0);

  const auto w2 = profile_population(g, t, CitationWindow::years(2));
  CHECK(w2.profiles.size() == 2);
  CHECK(w2.skipped_in_window == 1);
  CHECK(w2.never_cited == 1);
  CHECK(g.pub_id(w2.profiles[0].pub) == p1);
  CHECK(g.pub_id(w2.profiles[1].pub) == p2);

  const auto full = profile_population(g, t, CitationWindow::full_horizon());
  CHECK(full.profiles.size() == 3);
  CHECK(full.skipped_in_window == 0);

  const auto cov_full = coverage_share(g, t, CitationWindow::full_horizon());
  CHECK(cov_full.total.share() == 1.0);
  for (const auto& row : cov_full.areas) CHECK(row.share() == 1.0);
  const auto cov2 = coverage_share(g, t, CitationWindow::years(2));
  CHECK(cov2.total.cited_at_horizon == 3);
  CHECK(cov2.total.cited_in_window == 2);
  CHECK(cov2.areas[0].share() == 1.0);  // X: p1, p2
  CHECK(cov2.areas[1].share() == 0.0);  // Y: p3 cited only in 2020
}

TEST_CASE("all citations late gives zero coverage at w=2") {
  auto b = two_sc();
  for (int i = 0; i < 4; ++i) b.cite(b.cohort_pub(i % 2 ? "A" : "B"), "A", 2, 2018);
  const auto g = b.graph();
  const auto t = resolve_all(g, 0);
  CHECK(coverage_share(g, t, CitationWindow::years(2)).total.share() == 0.0);
  CHECK(profile_population(g, t, CitationWindow::years(2)).profiles.empty());
}

TEST_CASE("profile invariants on random corpora") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const auto rc = fixtures::random_corpus(seed);
    const auto g = build_graph(rc.raw, rc.cohort_year, rc.horizon_year);
    const auto t = resolve_all(g, seed);
    const auto full = g.window_years(CitationWindow::full_horizon());
    std::vector<ProfilePopulation> pops;
    for (int w = 0; w <= full; ++w) pops.push_back(profile_population(g, t, CitationWindow::years(w)));
    INFO("corpus " << seed);
    CHECK(profile_population(g, t, CitationWindow::years(full), 8).profiles == pops.back().profiles);
    for (int w = 0; w <= full; ++w) {
      const auto& pop = pops[static_cast<std::size_t>(w)];
      for (const auto& p : pop.profiles) {
        CHECK(p.share_intra().exact() + p.share_extra().exact() == 1);
        CHECK(p.n_intra <= p.n_cit);
        std::uint32_t sum = 0;
        for (const auto& h : p.histogram) sum += h.count;
        CHECK(sum == p.n_cit);
        CHECK(p.distinct_all >= 1);
        CHECK(p.distinct_all <= std::min<std::size_t>(p.n_cit, g.registry().sc_count()));
        CHECK(p.distinct_extra == p.distinct_all - (p.n_intra > 0 ? 1 : 0));
        CHECK(p.flow_class == classify(p.share_intra()));
        CHECK(p.sc == t.sc_of(p.pub));
      }
      if (w == 0) continue;
      // monotone in w: population grows by inclusion, n_cit never drops
      const auto& prev = pops[static_cast<std::size_t>(w - 1)];
      std::map<PubIndex, std::uint32_t> now;
      for (const auto& p : pop.profiles) now[p.pub] = p.n_cit;
      for (const auto& p : prev.profiles) {
        REQUIRE(now.count(p.pub) == 1);
        CHECK(now[p.pub] >= p.n_cit);
      }
      CHECK(pop.profiles.size() + pop.skipped_in_window == prev.profiles.size() + prev.skipped_in_window);
    }
    const auto cov = coverage_share(g, t, CitationWindow::full_horizon());
    if (cov.total.cited_at_horizon > 0) CHECK(cov.total.share() == 1.0);
  }
}
