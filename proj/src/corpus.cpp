#include "lexnav/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "lexnav/parallel.hpp"
#include "lexnav/rng.hpp"
#include "lexnav/util.hpp"

namespace lexnav {

const Page& WebCorpus::page(PageId id) const {
  check_id(id);
  return pages_[id];
}

const std::vector<PageId>& WebCorpus::inlinks(PageId id) const {
  check_id(id);
  return inlinks_[id];
}

const std::vector<PageId>& WebCorpus::neighborhood(PageId id) const {
  check_id(id);
  return neighborhoods_[id];
}

void WebCorpus::check_id(PageId id) const {
  if (id < 0 || static_cast<size_t>(id) >= pages_.size())
    throw std::invalid_argument("page id " + std::to_string(id) + " out of range");
}

WebCorpus build_corpus(std::vector<PageRecord> records,
                       const std::vector<std::pair<std::string, std::string>>& links,
                       const CorpusOptions& opts) {
  WebCorpus corpus;
  const size_t n = records.size();

  std::unordered_map<std::string, PageId> by_url;
  by_url.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    if (records[i].url.empty()) throw std::runtime_error("empty url for page " + std::to_string(i));
    auto [it, inserted] = by_url.emplace(records[i].url, static_cast<PageId>(i));
    if (!inserted) throw std::runtime_error("duplicate url: " + records[i].url);
  }

  // Lexicon over the whole corpus first, so tf-idf weights are stable.
  std::vector<std::vector<std::string>> doc_tokens(n);
  for (size_t i = 0; i < n; ++i) {
    doc_tokens[i] = tokenize(records[i].text);
    if (!opts.stopwords.empty())
      std::erase_if(doc_tokens[i], [&](const std::string& t) { return opts.stopwords.contains(t); });
    corpus.lexicon_.add_document(doc_tokens[i]);
  }

  corpus.pages_.resize(n);
  for (size_t i = 0; i < n; ++i) {
    Page& p = corpus.pages_[i];
    p.id = static_cast<PageId>(i);
    p.url = std::move(records[i].url);
    p.title = std::move(records[i].title);
    p.vector = term_vector(doc_tokens[i], corpus.lexicon_, opts.weighting);
  }

  std::vector<std::unordered_set<PageId>> out_sets(n);
  for (const auto& [src_url, dst_url] : links) {
    auto src = by_url.find(src_url);
    auto dst = by_url.find(dst_url);
    if (src == by_url.end() || dst == by_url.end()) {
      ++corpus.stats_.dangling_links_dropped;
      continue;
    }
    if (src->second == dst->second) {
      ++corpus.stats_.self_links_dropped;
      continue;
    }
    if (!out_sets[src->second].insert(dst->second).second)
      ++corpus.stats_.duplicate_links_dropped;
  }

  corpus.inlinks_.assign(n, {});
  for (size_t i = 0; i < n; ++i) {
    auto& out = corpus.pages_[i].outlinks;
    out.assign(out_sets[i].begin(), out_sets[i].end());
    std::sort(out.begin(), out.end());
    corpus.stats_.links_kept += static_cast<int64_t>(out.size());
    for (PageId dst : out) corpus.inlinks_[dst].push_back(static_cast<PageId>(i));
  }
  for (auto& in : corpus.inlinks_) std::sort(in.begin(), in.end());

  corpus.neighborhoods_.resize(n);
  for (size_t i = 0; i < n; ++i) {
    auto& nb = corpus.neighborhoods_[i];
    nb.reserve(corpus.inlinks_[i].size() + corpus.pages_[i].outlinks.size() + 1);
    std::set_union(corpus.inlinks_[i].begin(), corpus.inlinks_[i].end(),
                   corpus.pages_[i].outlinks.begin(), corpus.pages_[i].outlinks.end(),
                   std::back_inserter(nb));
    auto self = std::lower_bound(nb.begin(), nb.end(), static_cast<PageId>(i));
    if (self == nb.end() || *self != static_cast<PageId>(i))
      nb.insert(self, static_cast<PageId>(i));
  }
  return corpus;
}

namespace {

std::vector<PageRecord> parse_pages_file(const std::filesystem::path& path) {
  std::vector<PageRecord> records;
  const auto lines = read_lines(path);
  for (size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    auto fields = split(lines[i], '\t');
    if (fields.size() != 3)
      throw std::runtime_error(path.string() + ": line " + std::to_string(i + 1) +
                               ": expected 3 tab-separated fields, got " +
                               std::to_string(fields.size()));
    try {
      records.push_back({unescape_field(fields[0]), unescape_field(fields[1]),
                         unescape_field(fields[2])});
    } catch (const std::exception& e) {
      throw std::runtime_error(path.string() + ": line " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return records;
}

std::vector<std::pair<std::string, std::string>> parse_links_file(
    const std::filesystem::path& path) {
  std::vector<std::pair<std::string, std::string>> links;
  const auto lines = read_lines(path);
  for (size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    auto fields = split(lines[i], '\t');
    if (fields.size() != 2)
      throw std::runtime_error(path.string() + ": line " + std::to_string(i + 1) +
                               ": expected 2 tab-separated fields, got " +
                               std::to_string(fields.size()));
    links.emplace_back(std::string(fields[0]), std::string(fields[1]));
  }
  return links;
}

}  // namespace

WebCorpus load_corpus(const std::filesystem::path& pages_file,
                      const std::filesystem::path& links_file, const CorpusOptions& opts) {
  auto records = parse_pages_file(pages_file);
  auto links = parse_links_file(links_file);
  try {
    return build_corpus(std::move(records), links, opts);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(pages_file.string() + ": " + e.what());
  }
}

NeighborhoodSet neighborhood_set(const WebCorpus& corpus, PageId p) {
  return NeighborhoodSet{p, corpus.neighborhood(p)};
}

double link_overlap(const WebCorpus& corpus, PageId p1, PageId p2) {
  const auto& a = corpus.neighborhood(p1);
  const auto& b = corpus.neighborhood(p2);
  size_t inter = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++inter;
      ++ia;
      ++ib;
    }
  }
  const size_t uni = a.size() + b.size() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

namespace {

// Lexicographic rank <-> (i, j) with i < j over N nodes.
struct PairIndex {
  int64_t n;
  uint64_t total() const { return static_cast<uint64_t>(n) * (n - 1) / 2; }
  uint64_t offset(int64_t i) const {
    return static_cast<uint64_t>(i) * (2 * n - i - 1) / 2;
  }
  std::pair<PageId, PageId> decode(uint64_t k) const {
    int64_t i = static_cast<int64_t>(
        static_cast<double>(n) - 0.5 -
        std::sqrt((static_cast<double>(n) - 0.5) * (static_cast<double>(n) - 0.5) -
                  2.0 * static_cast<double>(k)));
    i = std::clamp<int64_t>(i, 0, n - 2);
    while (i > 0 && offset(i) > k) --i;
    while (i < n - 2 && offset(i + 1) <= k) ++i;
    const int64_t j = i + 1 + static_cast<int64_t>(k - offset(i));
    return {static_cast<PageId>(i), static_cast<PageId>(j)};
  }
};

}  // namespace

std::vector<PairRecord> sample_pairs(const WebCorpus& corpus, int64_t count, uint64_t seed,
                                     int threads) {
  if (corpus.size() < 2) throw std::invalid_argument("pair sampling needs at least 2 pages");
  if (count < 0) throw std::invalid_argument("pair count must be >= 0");

  const PairIndex index{static_cast<int64_t>(corpus.size())};
  const uint64_t total = index.total();

  std::vector<uint64_t> chosen;
  if (static_cast<uint64_t>(count) >= total) {
    chosen.resize(total);
    for (uint64_t k = 0; k < total; ++k) chosen[k] = k;
  } else {
    // Floyd's sampling: `count` distinct ranks, kept in draw order.
    Rng rng(seed);
    std::unordered_set<uint64_t> seen;
    seen.reserve(static_cast<size_t>(count) * 2);
    chosen.reserve(static_cast<size_t>(count));
    for (uint64_t v = total - static_cast<uint64_t>(count); v < total; ++v) {
      const uint64_t t = rng.below(v + 1);
      if (seen.insert(t).second) {
        chosen.push_back(t);
      } else {
        seen.insert(v);
        chosen.push_back(v);
      }
    }
  }

  std::vector<PairRecord> records(chosen.size());
  parallel_for(static_cast<int64_t>(chosen.size()), threads, [&](int64_t i) {
    const auto [a, b] = index.decode(chosen[i]);
    records[i] = PairRecord{
        a, b, lexical_distance(corpus.page(a).vector, corpus.page(b).vector),
        link_overlap(corpus, a, b)};
  });
  return records;
}

std::string pairs_to_csv(std::span<const PairRecord> pairs) {
  std::string out = "id1,id2,rho,overlap\n";
  for (const auto& p : pairs) {
    out += std::to_string(p.id1);
    out += ',';
    out += std::to_string(p.id2);
    out += ',';
    out += format_double(p.rho.value);
    out += ',';
    out += format_double(p.overlap);
    out += '\n';
  }
  return out;
}

std::vector<PairRecord> pairs_from_csv(std::string_view csv, std::string_view context) {
  auto lines = split(csv, '\n');
  if (lines.empty() || lines[0] != "id1,id2,rho,overlap")
    throw std::runtime_error(std::string(context) + ": missing pairs CSV header");
  std::vector<PairRecord> pairs;
  for (size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    auto f = split(lines[i], ',');
    if (f.size() != 4)
      throw std::runtime_error(std::string(context) + ": line " + std::to_string(i + 1) +
                               ": expected 4 fields");
    PairRecord p;
    p.id1 = static_cast<PageId>(parse_int(f[0], "id1"));
    p.id2 = static_cast<PageId>(parse_int(f[1], "id2"));
    p.rho.value = parse_double(f[2], "rho");
    p.overlap = parse_double(f[3], "overlap");
    if (p.rho.value < 0 || p.overlap < 0 || p.overlap > 1)
      throw std::runtime_error(std::string(context) + ": line " + std::to_string(i + 1) +
                               ": rho/overlap out of range");
    pairs.push_back(p);
  }
  return pairs;
}

}  // namespace lexnav
