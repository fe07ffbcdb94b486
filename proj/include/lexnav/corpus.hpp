#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lexnav/textkit.hpp"

namespace lexnav {

using PageId = int32_t;

struct Page {
  PageId id = -1;
  std::string url;
  std::string title;  // carried from the pages file; the text field is what gets vectorized
  TermVector vector;
  std::vector<PageId> outlinks;  // sorted, unique, never the page itself
};

struct CorpusOptions {
  Weighting weighting = Weighting::Tfidf;
  std::unordered_set<std::string> stopwords;
};

struct LoadStats {
  int64_t links_kept = 0;
  int64_t dangling_links_dropped = 0;
  int64_t self_links_dropped = 0;
  int64_t duplicate_links_dropped = 0;
};

struct PageRecord {
  std::string url;
  std::string title;
  std::string text;
};

// Immutable after construction; safe for shared concurrent reads.
class WebCorpus {
 public:
  size_t size() const { return pages_.size(); }
  const Page& page(PageId id) const;
  const std::vector<Page>& pages() const { return pages_; }
  const std::vector<PageId>& inlinks(PageId id) const;
  // Sorted inlinks(p) ∪ outlinks(p) ∪ {p}; never empty.
  const std::vector<PageId>& neighborhood(PageId id) const;
  const Lexicon& lexicon() const { return lexicon_; }
  const LoadStats& stats() const { return stats_; }

  friend WebCorpus build_corpus(std::vector<PageRecord>,
                                const std::vector<std::pair<std::string, std::string>>&,
                                const CorpusOptions&);

 private:
  void check_id(PageId id) const;

  std::vector<Page> pages_;
  std::vector<std::vector<PageId>> inlinks_;
  std::vector<std::vector<PageId>> neighborhoods_;
  Lexicon lexicon_;
  LoadStats stats_;
};

struct NeighborhoodSet {
  PageId page = -1;
  std::vector<PageId> members;  // sorted
};

struct PairRecord {
  PageId id1 = 0;  // id1 < id2
  PageId id2 = 0;
  LexicalDistance rho;
  double overlap = 0;
};

// Pages get dense ids in input order. Links between unknown urls are dropped
// and counted; so are self links and duplicates. Throws on duplicate urls.
WebCorpus build_corpus(std::vector<PageRecord> pages,
                       const std::vector<std::pair<std::string, std::string>>& links,
                       const CorpusOptions& opts = {});

// Pages file: url<TAB>title<TAB>text per line (\t, \n, \\ escapes).
// Links file: src_url<TAB>dst_url per line. Parse errors name file and line.
WebCorpus load_corpus(const std::filesystem::path& pages_file,
                      const std::filesystem::path& links_file,
                      const CorpusOptions& opts = {});

NeighborhoodSet neighborhood_set(const WebCorpus& corpus, PageId p);

// Jaccard overlap of the two neighborhood sets, in [0,1].
double link_overlap(const WebCorpus& corpus, PageId p1, PageId p2);

// `count` distinct unordered pairs drawn uniformly without replacement from
// all N(N-1)/2 (all of them, in lexicographic order, if count is larger).
// Deterministic for a given seed regardless of thread count.
std::vector<PairRecord> sample_pairs(const WebCorpus& corpus, int64_t count, uint64_t seed,
                                     int threads = 1);

// CSV `id1,id2,rho,overlap`; infinite rho serializes as the literal `inf`.
std::string pairs_to_csv(std::span<const PairRecord> pairs);
std::vector<PairRecord> pairs_from_csv(std::string_view csv, std::string_view context);

}  // namespace lexnav
