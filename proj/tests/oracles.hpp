// Test-only oracles, kept independent of the library implementation paths
// they are used to check.
#pragma once

#include <cmath>
#include <cstdint>
#include <deque>
#include <map>
#include <string>
#include <vector>

#include "lexnav/corpus.hpp"
#include "lexnav/graphgen.hpp"
#include "lexnav/rng.hpp"
#include "lexnav/topology.hpp"

namespace oracles {

// Direct per-bin evaluation of the conditional linkage frequency: one linear
// scan over the edge list per pair, no log-index shortcuts.
struct BruteForceBins {
  std::vector<int64_t> total, linked;
  int64_t below_total = 0, below_linked = 0;
  int64_t above_total = 0, above_linked = 0;
  int64_t infinite_total = 0, infinite_linked = 0;
};

inline BruteForceBins brute_force_linkage(const std::vector<lexnav::PairRecord>& pairs,
                                          double lambda, const std::vector<double>& edges) {
  const size_t bins = edges.size() - 1;
  BruteForceBins out;
  out.total.assign(bins, 0);
  out.linked.assign(bins, 0);
  for (const auto& p : pairs) {
    const bool is_linked = p.overlap > lambda;
    if (p.rho.is_infinite()) {
      ++out.infinite_total;
      out.infinite_linked += is_linked;
      continue;
    }
    if (p.rho.value < edges.front()) {
      ++out.below_total;
      out.below_linked += is_linked;
      continue;
    }
    if (p.rho.value >= edges.back()) {
      ++out.above_total;
      out.above_linked += is_linked;
      continue;
    }
    for (size_t i = 0; i < bins; ++i) {
      if (p.rho.value >= edges[i] && p.rho.value < edges[i + 1]) {
        ++out.total[i];
        out.linked[i] += is_linked;
        break;
      }
    }
  }
  return out;
}

// BFS shortest path length over out-links; -1 when unreachable.
inline int64_t bfs_distance(const lexnav::NavGraph& g, int32_t source, int32_t target) {
  std::vector<int64_t> dist(g.num_nodes(), -1);
  std::deque<int32_t> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const int32_t u = queue.front();
    queue.pop_front();
    if (u == target) return dist[u];
    for (int32_t v : g.out[u])
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
  }
  return -1;
}

// Small random corpus with overlapping vocabulary and random links.
inline lexnav::WebCorpus random_corpus(int pages, uint64_t seed,
                                       lexnav::Weighting weighting = lexnav::Weighting::Tfidf) {
  lexnav::Rng rng(seed);
  std::vector<lexnav::PageRecord> records;
  const int vocab = 20;
  for (int i = 0; i < pages; ++i) {
    std::string text;
    const int words = 4 + static_cast<int>(rng.below(20));
    for (int w = 0; w < words; ++w) {
      text += "w" + std::to_string(rng.below(vocab));
      text += ' ';
    }
    records.push_back({"http://p" + std::to_string(i), "page " + std::to_string(i), text});
  }
  std::vector<std::pair<std::string, std::string>> links;
  const int n_links = pages * 2;
  for (int i = 0; i < n_links; ++i) {
    const auto a = rng.below(pages);
    const auto b = rng.below(pages);
    links.emplace_back("http://p" + std::to_string(a), "http://p" + std::to_string(b));
  }
  lexnav::CorpusOptions opts;
  opts.weighting = weighting;
  return lexnav::build_corpus(std::move(records), links, opts);
}

// Random sparse vector with positive weights.
inline lexnav::TermVector random_vector(lexnav::Rng& rng, int vocab, int max_terms) {
  const int terms = 1 + static_cast<int>(rng.below(max_terms));
  std::map<lexnav::TermId, double> entries;
  for (int i = 0; i < terms; ++i)
    entries[static_cast<lexnav::TermId>(rng.below(vocab))] = 0.1 + rng.unit() * 4.0;
  return lexnav::TermVector::from_entries({entries.begin(), entries.end()});
}

// Pearson chi-square statistic against expected counts (expected > 0).
inline double chi_square_stat(const std::vector<int64_t>& observed,
                              const std::vector<double>& expected) {
  double stat = 0;
  for (size_t i = 0; i < observed.size(); ++i) {
    const double d = static_cast<double>(observed[i]) - expected[i];
    stat += d * d / expected[i];
  }
  return stat;
}

}  // namespace oracles
