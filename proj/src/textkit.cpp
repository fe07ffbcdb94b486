#include "lexnav/textkit.hpp"

#include <algorithm>
#include <stdexcept>

#include "lexnav/util.hpp"

namespace lexnav {

namespace {

bool is_token_char(char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

char to_lower_ascii(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c + 32) : c; }

}  // namespace

TermVector TermVector::from_entries(std::vector<std::pair<TermId, double>> entries) {
  std::erase_if(entries, [](const auto& e) { return e.second == 0.0; });
  std::sort(entries.begin(), entries.end());
  double sum_sq = 0;
  for (size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].second < 0)
      throw std::invalid_argument("term weight must be positive");
    if (i > 0 && entries[i].first == entries[i - 1].first)
      throw std::invalid_argument("duplicate term id in vector");
    sum_sq += entries[i].second * entries[i].second;
  }
  TermVector v;
  v.entries_ = std::move(entries);
  v.norm_ = std::sqrt(sum_sq);
  return v;
}

double TermVector::dot(const TermVector& other) const {
  double sum = 0;
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() && b != other.entries_.end()) {
    if (a->first < b->first) {
      ++a;
    } else if (b->first < a->first) {
      ++b;
    } else {
      sum += a->second * b->second;
      ++a;
      ++b;
    }
  }
  return sum;
}

Lexicon Lexicon::from_doc_freqs(const std::vector<std::pair<std::string, int64_t>>& freqs,
                                int64_t total_docs) {
  Lexicon lex;
  lex.total_docs_ = total_docs;
  for (const auto& [term, df] : freqs) {
    if (df < 1 || df > total_docs)
      throw std::invalid_argument("doc frequency out of [1, totalDocs] for term '" + term + "'");
    auto [it, inserted] = lex.ids_.emplace(term, static_cast<TermId>(lex.doc_freq_.size()));
    if (!inserted) throw std::invalid_argument("duplicate term '" + term + "'");
    lex.doc_freq_.push_back(df);
  }
  return lex;
}

void Lexicon::add_document(const std::vector<std::string>& tokens) {
  ++total_docs_;
  std::unordered_set<std::string_view> seen;
  for (const auto& tok : tokens) {
    if (!seen.insert(tok).second) continue;
    auto [it, inserted] = ids_.emplace(tok, static_cast<TermId>(doc_freq_.size()));
    if (inserted)
      doc_freq_.push_back(1);
    else
      ++doc_freq_[it->second];
  }
}

std::optional<TermId> Lexicon::find(std::string_view term) const {
  auto it = ids_.find(std::string(term));
  return it == ids_.end() ? std::nullopt : std::optional<TermId>(it->second);
}

int64_t Lexicon::doc_freq(TermId id) const {
  if (id < 0 || static_cast<size_t>(id) >= doc_freq_.size())
    throw std::invalid_argument("unknown term id");
  return doc_freq_[id];
}

LexicalDistance LexicalDistance::finite(double v) {
  if (!(v >= 0) || std::isinf(v)) throw std::invalid_argument("finite distance must be >= 0");
  return LexicalDistance{v};
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : text) {
    if (is_token_char(c)) {
      current += to_lower_ascii(c);
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

TermVector term_vector(const std::vector<std::string>& tokens, const Lexicon& lexicon,
                       Weighting scheme) {
  if (scheme == Weighting::Tfidf && lexicon.total_docs() == 0)
    throw std::invalid_argument("tf-idf weighting needs document frequencies");
  std::unordered_map<TermId, int64_t> counts;
  for (const auto& tok : tokens)
    if (auto id = lexicon.find(tok)) ++counts[*id];

  std::vector<std::pair<TermId, double>> entries;
  entries.reserve(counts.size());
  const double total = static_cast<double>(lexicon.total_docs());
  for (const auto& [id, count] : counts) {
    double w = static_cast<double>(count);
    if (scheme == Weighting::Tfidf)
      w *= std::log(total / static_cast<double>(lexicon.doc_freq(id)));
    entries.emplace_back(id, w);
  }
  return TermVector::from_entries(std::move(entries));
}

double cosine_similarity(const TermVector& a, const TermVector& b) {
  if (a.norm() == 0 || b.norm() == 0) return 0.0;
  if (a.entries() == b.entries()) return 1.0;
  const double s = a.dot(b) / (a.norm() * b.norm());
  return std::clamp(s, 0.0, 1.0);
}

LexicalDistance lexical_distance(const TermVector& a, const TermVector& b) {
  const double s = cosine_similarity(a, b);
  if (s == 0.0) return LexicalDistance::infinite();
  return LexicalDistance{1.0 / s - 1.0};
}

std::unordered_set<std::string> load_stopwords(const std::filesystem::path& file) {
  std::unordered_set<std::string> words;
  for (const auto& line : read_lines(file))
    if (!line.empty()) words.insert(line);
  return words;
}

}  // namespace lexnav
