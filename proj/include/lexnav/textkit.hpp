#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace lexnav {

using TermId = int32_t;

enum class Weighting { RawTf, Tfidf };

// Sparse non-negative term-weight vector with a cached Euclidean norm.
// Entries are sorted by term id; zero weights are never stored.
class TermVector {
 public:
  TermVector() = default;

  // Throws on non-positive weights or duplicate ids; exact zeros are elided
  // before validation (a zero weight means "term absent").
  static TermVector from_entries(std::vector<std::pair<TermId, double>> entries);

  const std::vector<std::pair<TermId, double>>& entries() const { return entries_; }
  double norm() const { return norm_; }
  bool empty() const { return entries_.empty(); }
  size_t size() const { return entries_.size(); }

  double dot(const TermVector& other) const;

  friend bool operator==(const TermVector&, const TermVector&) = default;

 private:
  std::vector<std::pair<TermId, double>> entries_;
  double norm_ = 0;
};

// Corpus-wide term table: dense ids 0..T-1 plus per-term document frequency.
class Lexicon {
 public:
  Lexicon() = default;

  // Synthetic lexicon with explicit document frequencies (ids assigned in
  // input order). Validates 1 <= df <= total_docs.
  static Lexicon from_doc_freqs(const std::vector<std::pair<std::string, int64_t>>& freqs,
                                int64_t total_docs);

  // Interns every distinct token of one document and bumps its doc frequency.
  void add_document(const std::vector<std::string>& tokens);

  std::optional<TermId> find(std::string_view term) const;
  int64_t doc_freq(TermId id) const;
  int64_t total_docs() const { return total_docs_; }
  size_t size() const { return doc_freq_.size(); }

 private:
  std::unordered_map<std::string, TermId> ids_;
  std::vector<int64_t> doc_freq_;
  int64_t total_docs_ = 0;
};

// Content distance 1/s - 1; infinite exactly when similarity is zero.
struct LexicalDistance {
  double value = std::numeric_limits<double>::infinity();

  bool is_infinite() const { return std::isinf(value); }
  static LexicalDistance infinite() { return {}; }
  static LexicalDistance finite(double v);

  // Infinities compare equal to each other and after every finite distance.
  auto operator<=>(const LexicalDistance&) const = default;
};

// Lowercased maximal runs of ASCII alphanumerics; everything else separates.
std::vector<std::string> tokenize(std::string_view text);

// RawTf weight = term count; Tfidf weight = count * ln(totalDocs/docFreq).
// Terms missing from the lexicon (and zero tf-idf weights) are dropped.
TermVector term_vector(const std::vector<std::string>& tokens, const Lexicon& lexicon,
                       Weighting scheme);

// dot/(|a||b|) clamped to [0,1]; 0 when either norm is 0; exactly 1 for
// equal non-empty vectors.
double cosine_similarity(const TermVector& a, const TermVector& b);

LexicalDistance lexical_distance(const TermVector& a, const TermVector& b);

// One lowercase term per line; blank lines ignored.
std::unordered_set<std::string> load_stopwords(const std::filesystem::path& file);

}  // namespace lexnav
