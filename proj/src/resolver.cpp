#include "citeflow/resolver.hpp"

#include <algorithm>
#include <map>

#include "citeflow/error.hpp"
#include "citeflow/parallel.hpp"

namespace citeflow {

std::string_view to_string(AssignmentMethod m) noexcept {
  switch (m) {
    case AssignmentMethod::SingleCategoryVenue: return "SingleCategoryVenue";
    case AssignmentMethod::PredominantAmongCiting: return "PredominantAmongCiting";
    case AssignmentMethod::PredominantAmongReferences: return "PredominantAmongReferences";
    case AssignmentMethod::TieBreakRandom: return "TieBreakRandom";
    case AssignmentMethod::FallbackRandom: return "FallbackRandom";
  }
  return "Unknown";
}

std::optional<AssignmentMethod> parse_assignment_method(std::string_view s) noexcept {
  for (auto m : {AssignmentMethod::SingleCategoryVenue, AssignmentMethod::PredominantAmongCiting,
                 AssignmentMethod::PredominantAmongReferences, AssignmentMethod::TieBreakRandom,
                 AssignmentMethod::FallbackRandom}) {
    if (to_string(m) == s) return m;
  }
  return std::nullopt;
}

CounterpartRole counterpart_role(const CorpusGraph& graph, PubIndex p) {
  if (graph.is_cohort(p) && graph.citations_in_window(p, graph.full_horizon_years()) > 0) {
    return CounterpartRole::Citing;
  }
  return CounterpartRole::References;
}

std::vector<PubIndex> counterparts(const CorpusGraph& graph, PubIndex p) {
  std::vector<PubIndex> out;
  if (counterpart_role(graph, p) == CounterpartRole::Citing) {
    const int full = graph.full_horizon_years();
    for (PubIndex q : graph.in_citations(p)) {
      if (graph.in_window(graph.pub_year(q), full)) out.push_back(q);
    }
  } else {
    auto refs = graph.out_references(p);
    out.assign(refs.begin(), refs.end());
  }
  return out;
}

std::vector<std::optional<ScIndex>> phase1_anchors(const CorpusGraph& graph) {
  std::vector<std::optional<ScIndex>> anchors(graph.pub_count());
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    auto cands = graph.candidates(make_index<PubIndex>(i));
    if (cands.size() == 1) anchors[i] = cands.front();
  }
  return anchors;
}

namespace {

// Per-candidate vote counts: whole votes plus fractional votes pooled by
// denominator (the counterpart's candidate-set size).
struct VoteCount {
  std::uint64_t whole = 0;
  std::map<std::uint64_t, std::uint64_t> split;
};

std::vector<ScScore> tally(const CorpusGraph& graph, PubIndex p, std::span<const PubIndex> voters,
                           std::span<const std::optional<ScIndex>> anchors) {
  const auto cands = graph.candidates(p);
  std::vector<VoteCount> votes(cands.size());
  auto slot = [&](ScIndex s) -> VoteCount* {
    auto it = std::lower_bound(cands.begin(), cands.end(), s);
    return (it != cands.end() && *it == s) ? &votes[static_cast<std::size_t>(it - cands.begin())] : nullptr;
  };
  for (PubIndex q : voters) {
    if (const auto& anchor = anchors[ix(q)]) {
      if (auto* v = slot(*anchor)) ++v->whole;
      continue;
    }
    const auto qcands = graph.candidates(q);
    for (ScIndex s : qcands) {
      if (auto* v = slot(s)) ++v->split[qcands.size()];
    }
  }
  std::vector<ScScore> out;
  out.reserve(cands.size());
  for (std::size_t i = 0; i < cands.size(); ++i) {
    BigRational score(votes[i].whole);
    for (const auto& [den, num] : votes[i].split) score += BigRational(num, den);
    out.push_back({cands[i], std::move(score)});
  }
  return out;
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::vector<ScScore> tally_counterparts(const CorpusGraph& graph, PubIndex p,
                                        std::span<const std::optional<ScIndex>> anchors) {
  const auto voters = counterparts(graph, p);
  return tally(graph, p, voters, anchors);
}

std::uint64_t tie_hash(std::uint64_t seed, std::string_view pub_id) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : pub_id) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return splitmix64(h ^ splitmix64(seed));
}

ScIndex break_tie(std::span<const ScIndex> tied_sorted, std::uint64_t seed, std::string_view pub_id) {
  if (tied_sorted.empty()) throw Error(ErrorCode::EmptyTieSet, std::string(pub_id));
  if (tied_sorted.size() == 1) return tied_sorted.front();
  return tied_sorted[tie_hash(seed, pub_id) % tied_sorted.size()];
}

std::string break_tie(std::vector<std::string> tied_codes, std::uint64_t seed, std::string_view pub_id) {
  if (tied_codes.empty()) throw Error(ErrorCode::EmptyTieSet, std::string(pub_id));
  std::sort(tied_codes.begin(), tied_codes.end());
  if (tied_codes.size() == 1) return tied_codes.front();
  return tied_codes[tie_hash(seed, pub_id) % tied_codes.size()];
}

AssignmentTable resolve_all(const CorpusGraph& graph, std::uint64_t seed, unsigned threads) {
  const auto anchors = phase1_anchors(graph);
  std::vector<Assignment> entries(graph.pub_count());

  parallel_for(graph.pub_count(), threads, [&](std::size_t begin, std::size_t end) {
    std::vector<ScIndex> best;
    for (std::size_t i = begin; i < end; ++i) {
      const auto p = make_index<PubIndex>(i);
      if (anchors[i]) {
        entries[i] = {*anchors[i], AssignmentMethod::SingleCategoryVenue, false};
        continue;
      }
      const auto role = counterpart_role(graph, p);
      const auto scores = tally_counterparts(graph, p, anchors);

      best.clear();
      const BigRational* top = nullptr;
      for (const auto& s : scores) {
        if (!top || s.score > *top) {
          top = &s.score;
          best.assign(1, s.sc);
        } else if (s.score == *top) {
          best.push_back(s.sc);
        }
      }
      const std::string& id = graph.pub_id(p);
      if (*top == 0) {
        entries[i] = {break_tie(graph.candidates(p), seed, id), AssignmentMethod::FallbackRandom, true};
      } else if (best.size() > 1) {
        entries[i] = {break_tie(best, seed, id), AssignmentMethod::TieBreakRandom, true};
      } else {
        entries[i] = {best.front(),
                      role == CounterpartRole::Citing ? AssignmentMethod::PredominantAmongCiting
                                                      : AssignmentMethod::PredominantAmongReferences,
                      false};
      }
    }
  });
  return AssignmentTable(std::move(entries), seed);
}

}  // namespace citeflow
