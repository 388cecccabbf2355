#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "sentivec/errors.hpp"
#include "sentivec/preprocess.hpp"
#include "sentivec/vectors.hpp"

namespace sentivec {

struct TfidfConfig {
  std::size_t min_df = 5;    // keep terms appearing in at least this many docs
  double max_df = 0.8;       // prune terms in more than floor(max_df * n) docs
  bool sublinear_tf = true;  // 1 + ln(count) instead of count/len
  bool use_idf = true;
  bool l2_normalize = true;

  bool operator==(const TfidfConfig&) const = default;
};

// Term -> dense column index plus per-term document frequency, fitted on
// training documents only. Indices follow lexicographic term order.
class Vocabulary {
 public:
  Vocabulary() = default;

  // Terms must be lexicographically sorted and unique; doc freqs in [1, n_docs].
  Vocabulary(std::size_t n_docs,
             std::vector<std::pair<std::string, std::size_t>> term_dfs)
      : n_docs_(n_docs) {
    terms_.reserve(term_dfs.size());
    doc_freq_.reserve(term_dfs.size());
    for (auto& [term, df] : term_dfs) {
      if (!terms_.empty() && term <= terms_.back())
        throw ArgumentError("Vocabulary: terms must be sorted and unique");
      if (df < 1 || df > n_docs_)
        throw ArgumentError("Vocabulary: doc_freq out of range for term \"" +
                            term + "\"");
      index_.emplace(term, static_cast<std::uint32_t>(terms_.size()));
      terms_.push_back(std::move(term));
      doc_freq_.push_back(df);
    }
  }

  std::size_t size() const { return terms_.size(); }
  std::size_t n_docs() const { return n_docs_; }

  std::optional<std::uint32_t> index_of(std::string_view term) const {
    auto it = index_.find(std::string(term));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  const std::string& term(std::uint32_t index) const { return terms_.at(index); }
  std::size_t doc_freq(std::uint32_t index) const { return doc_freq_.at(index); }

  std::uint64_t fingerprint() const {
    std::uint64_t h = fnv1a(&n_docs_, sizeof(n_docs_));
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      h = fnv1a(terms_[i].data(), terms_[i].size(), h);
      h = fnv1a(&doc_freq_[i], sizeof(doc_freq_[i]), h);
    }
    return h;
  }

 private:
  std::size_t n_docs_ = 0;
  std::vector<std::string> terms_;
  std::vector<std::size_t> doc_freq_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

// Builds the pruned vocabulary: drop terms with doc_freq < min_df or
// doc_freq > floor(max_df * n_docs) (ties kept).
inline Vocabulary fit_vocabulary(const std::vector<TokenizedDocument>& train,
                                 const TfidfConfig& config) {
  if (train.empty()) throw ArgumentError("fit_vocabulary: no training documents");
  std::map<std::string, std::size_t> df;  // ordered => lexicographic indices
  std::vector<std::string_view> seen;
  for (const auto& doc : train) {
    seen.clear();
    seen.assign(doc.tokens.begin(), doc.tokens.end());
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    for (auto term : seen) ++df[std::string(term)];
  }

  std::size_t n = train.size();
  auto max_count =
      static_cast<std::size_t>(std::floor(config.max_df * static_cast<double>(n)));
  std::vector<std::pair<std::string, std::size_t>> kept;
  for (auto& [term, count] : df) {
    if (count < config.min_df || count > max_count) continue;
    kept.emplace_back(term, count);
  }
  if (kept.empty())
    throw ComputeError("fit_vocabulary: every term was pruned (min_df=" +
                       std::to_string(config.min_df) +
                       ", max_df*n=" + std::to_string(max_count) + ")");
  return Vocabulary(n, std::move(kept));
}

// TF(t, d) = count(t, d) / |d|. Defined as 0 for empty documents.
inline double term_frequency(std::string_view term, const TokenizedDocument& doc) {
  if (doc.tokens.empty()) return 0.0;
  std::size_t count = 0;
  for (const auto& t : doc.tokens)
    if (t == term) ++count;
  return static_cast<double>(count) / static_cast<double>(doc.tokens.size());
}

// IDF(t) = ln(n_docs / doc_freq(t)); exactly 0 for a term in every document.
inline double inverse_document_frequency(std::string_view term,
                                         const Vocabulary& vocab) {
  auto idx = vocab.index_of(term);
  if (!idx)
    throw ArgumentError("inverse_document_frequency: term not in vocabulary: \"" +
                        std::string(term) + "\"");
  return std::log(static_cast<double>(vocab.n_docs()) /
                  static_cast<double>(vocab.doc_freq(*idx)));
}

inline double idf_from_counts(std::size_t n_docs, std::size_t doc_freq) {
  return std::log(static_cast<double>(n_docs) / static_cast<double>(doc_freq));
}

// Weight per in-vocabulary term: tf_component * idf_component, where the tf
// component is 1 + ln(count) when sublinear, else count / |d|. Out-of-
// vocabulary tokens are ignored; exact zero weights are not stored.
inline SparseVector transform(const TokenizedDocument& doc, const Vocabulary& vocab,
                              const TfidfConfig& config) {
  SparseVector vec;
  vec.dim = static_cast<std::uint32_t>(vocab.size());
  if (doc.tokens.empty()) return vec;

  std::unordered_map<std::uint32_t, std::size_t> counts;
  for (const auto& token : doc.tokens)
    if (auto idx = vocab.index_of(token)) ++counts[*idx];
  if (counts.empty()) return vec;

  vec.entries.reserve(counts.size());
  double len = static_cast<double>(doc.tokens.size());
  for (const auto& [idx, count] : counts) {
    double tf = config.sublinear_tf ? 1.0 + std::log(static_cast<double>(count))
                                    : static_cast<double>(count) / len;
    double idf =
        config.use_idf ? idf_from_counts(vocab.n_docs(), vocab.doc_freq(idx)) : 1.0;
    double w = tf * idf;
    if (w != 0.0) vec.entries.emplace_back(idx, w);
  }
  std::sort(vec.entries.begin(), vec.entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  if (config.l2_normalize) l2_normalize(vec);
  return vec;
}

inline std::vector<SparseVector> transform_corpus(
    const std::vector<TokenizedDocument>& docs, const Vocabulary& vocab,
    const TfidfConfig& config) {
  std::vector<SparseVector> out;
  out.reserve(docs.size());
  for (const auto& doc : docs) out.push_back(transform(doc, vocab, config));
  return out;
}

// --- vocabulary serialization (versioned text format) ---

inline void save_vocabulary(const Vocabulary& vocab, const TfidfConfig& config,
                            std::ostream& out) {
  char max_df_buf[40];
  std::snprintf(max_df_buf, sizeof(max_df_buf), "%.17g", config.max_df);
  out << "sentivec-vocab v1\n";
  out << "n_docs " << vocab.n_docs() << "\n";
  out << "terms " << vocab.size() << "\n";
  out << "config min_df=" << config.min_df << " max_df=" << max_df_buf
      << " sublinear_tf=" << (config.sublinear_tf ? 1 : 0)
      << " use_idf=" << (config.use_idf ? 1 : 0)
      << " l2_normalize=" << (config.l2_normalize ? 1 : 0) << "\n";
  for (std::uint32_t i = 0; i < vocab.size(); ++i)
    out << vocab.term(i) << '\t' << i << '\t' << vocab.doc_freq(i) << "\n";
}

inline void save_vocabulary(const Vocabulary& vocab, const TfidfConfig& config,
                            const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write vocabulary file: " + path.string());
  save_vocabulary(vocab, config, out);
}

inline std::pair<Vocabulary, TfidfConfig> load_vocabulary(std::istream& in) {
  std::string line;
  auto next = [&](const char* what) -> std::string& {
    if (!std::getline(in, line))
      throw DataError(std::string("vocabulary file truncated: expected ") + what);
    return line;
  };
  if (next("header") != "sentivec-vocab v1")
    throw DataError("not a sentivec-vocab v1 file");
  std::size_t n_docs = 0, n_terms = 0;
  {
    std::istringstream ss(next("n_docs"));
    std::string key;
    if (!(ss >> key >> n_docs) || key != "n_docs")
      throw DataError("vocabulary file: bad n_docs line");
  }
  {
    std::istringstream ss(next("terms"));
    std::string key;
    if (!(ss >> key >> n_terms) || key != "terms")
      throw DataError("vocabulary file: bad terms line");
  }
  TfidfConfig config;
  {
    std::istringstream ss(next("config"));
    std::string key;
    ss >> key;
    if (key != "config") throw DataError("vocabulary file: bad config line");
    std::string kv;
    while (ss >> kv) {
      auto eq = kv.find('=');
      if (eq == std::string::npos)
        throw DataError("vocabulary file: bad config token: " + kv);
      std::string k = kv.substr(0, eq), v = kv.substr(eq + 1);
      if (k == "min_df")
        config.min_df = std::stoull(v);
      else if (k == "max_df")
        config.max_df = std::stod(v);
      else if (k == "sublinear_tf")
        config.sublinear_tf = v == "1";
      else if (k == "use_idf")
        config.use_idf = v == "1";
      else if (k == "l2_normalize")
        config.l2_normalize = v == "1";
      else
        throw DataError("vocabulary file: unknown config key: " + k);
    }
  }
  std::vector<std::pair<std::string, std::size_t>> term_dfs;
  term_dfs.reserve(n_terms);
  for (std::size_t i = 0; i < n_terms; ++i) {
    std::string& row = next("term row");
    auto t1 = row.find('\t');
    auto t2 = row.rfind('\t');
    if (t1 == std::string::npos || t2 == t1)
      throw DataError("vocabulary file: bad term row: " + row);
    std::string term = row.substr(0, t1);
    std::size_t index = std::stoull(row.substr(t1 + 1, t2 - t1 - 1));
    std::size_t df = std::stoull(row.substr(t2 + 1));
    if (index != i) throw DataError("vocabulary file: term rows out of order");
    term_dfs.emplace_back(std::move(term), df);
  }
  return {Vocabulary(n_docs, std::move(term_dfs)), config};
}

inline std::pair<Vocabulary, TfidfConfig> load_vocabulary(
    const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open vocabulary file: " + path.string());
  return load_vocabulary(in);
}

}  // namespace sentivec
