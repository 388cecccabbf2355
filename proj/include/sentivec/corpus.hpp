#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "sentivec/errors.hpp"
#include "sentivec/rng.hpp"

namespace sentivec {

enum class Polarity { Positive, Negative };

// Class label y: Positive -> 1, Negative -> 0.
inline int label_value(Polarity p) { return p == Polarity::Positive ? 1 : 0; }

inline const char* polarity_name(Polarity p) {
  return p == Polarity::Positive ? "positive" : "negative";
}

struct Document {
  int id = 0;
  std::string text;
  Polarity label = Polarity::Positive;
};

struct Corpus {
  std::string name;
  std::vector<Document> documents;

  std::size_t size() const { return documents.size(); }

  std::size_t count(Polarity p) const {
    std::size_t n = 0;
    for (const auto& d : documents)
      if (d.label == p) ++n;
    return n;
  }
};

struct HoldOut {
  std::size_t train_count = 0;
  std::size_t test_count = 0;
  std::uint64_t seed = 0;

  bool operator==(const HoldOut&) const = default;
};

struct KFoldCV {
  std::size_t k = 10;
  std::uint64_t seed = 0;

  bool operator==(const KFoldCV&) const = default;
};

using SplitPlan = std::variant<HoldOut, KFoldCV>;

struct FoldIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

// Dirty-input bookkeeping for the loaders; skipped content is counted, never
// silently dropped.
struct LoadWarnings {
  std::size_t blank_lines = 0;
  std::size_t undecodable = 0;
  std::vector<std::string> messages;

  void warn(std::string msg) { messages.push_back(std::move(msg)); }
};

namespace detail {

inline bool valid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    std::size_t extra;
    if (c < 0x80) {
      extra = 0;
    } else if ((c & 0xE0) == 0xC0) {
      if (c < 0xC2) return false;  // overlong
      extra = 1;
    } else if ((c & 0xF0) == 0xE0) {
      extra = 2;
    } else if ((c & 0xF8) == 0xF0) {
      if (c > 0xF4) return false;  // beyond U+10FFFF
      extra = 3;
    } else {
      return false;
    }
    if (i + extra >= s.size() && extra > 0) return false;  // truncated sequence
    for (std::size_t k = 1; k <= extra; ++k) {
      if ((static_cast<unsigned char>(s[i + k]) & 0xC0) != 0x80) return false;
    }
    i += extra + 1;
  }
  return true;
}

inline bool is_blank(std::string_view s) {
  return s.find_first_not_of(" \t\r\n\f\v") == std::string_view::npos;
}

inline std::string_view trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n\f\v");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n\f\v");
  return s.substr(b, e - b + 1);
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

// Splits on '\n', tolerating a trailing '\r' (CRLF input).
inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) {
      if (start < text.size()) lines.push_back(text.substr(start));
      break;
    }
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

}  // namespace detail

// UCI sentiment-labelled format: one `sentence<TAB>label` per line with
// label in {0,1}. Lines that are blank or not valid UTF-8 are skipped and
// counted; structurally malformed lines are hard errors naming the line.
inline Corpus load_tab_labeled(const std::filesystem::path& path,
                               LoadWarnings* warnings = nullptr) {
  std::string content = detail::read_file(path);
  Corpus corpus;
  corpus.name = path.stem().string();
  LoadWarnings local;
  LoadWarnings& warn = warnings ? *warnings : local;

  std::size_t line_no = 0;
  for (std::string_view line : detail::split_lines(content)) {
    ++line_no;
    if (detail::is_blank(line)) {
      ++warn.blank_lines;
      continue;
    }
    if (!detail::valid_utf8(line)) {
      ++warn.undecodable;
      warn.warn(path.string() + ": line " + std::to_string(line_no) +
                ": not valid UTF-8, skipped");
      continue;
    }
    std::size_t tab = line.rfind('\t');
    if (tab == std::string_view::npos)
      throw DataError(path.string() + ": line " + std::to_string(line_no) +
                      ": expected `sentence<TAB>label`");
    std::string_view label = detail::trim(line.substr(tab + 1));
    std::string_view text = detail::trim(line.substr(0, tab));
    if (label != "0" && label != "1")
      throw DataError(path.string() + ": line " + std::to_string(line_no) +
                      ": label must be 0 or 1, got \"" + std::string(label) +
                      "\"");
    if (text.empty()) {
      ++warn.blank_lines;
      continue;
    }
    Document doc;
    doc.id = static_cast<int>(corpus.documents.size());
    doc.text = std::string(text);
    doc.label = label == "1" ? Polarity::Positive : Polarity::Negative;
    corpus.documents.push_back(std::move(doc));
  }
  return corpus;
}

namespace detail {

inline void load_directory_into(const std::filesystem::path& dir,
                                Polarity label, Corpus& corpus,
                                LoadWarnings& warn) {
  if (!std::filesystem::is_directory(dir))
    throw DataError("not a directory: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file()) files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty())
    throw DataError("no files for " + std::string(polarity_name(label)) +
                    " class in directory: " + dir.string());

  for (const auto& file : files) {
    std::string content = read_file(file);
    if (!valid_utf8(content)) {
      ++warn.undecodable;
      warn.warn(file.string() + ": not valid UTF-8, skipped");
      continue;
    }
    std::string_view text = trim(content);
    if (text.empty()) {
      ++warn.blank_lines;
      warn.warn(file.string() + ": empty file, skipped");
      continue;
    }
    Document doc;
    doc.id = static_cast<int>(corpus.documents.size());
    doc.text = std::string(text);
    doc.label = label;
    corpus.documents.push_back(std::move(doc));
  }
}

}  // namespace detail

// Directory-pair format (e.g. aclImdb): one review per file, class given by
// the directory. Files are visited in sorted filename order.
inline Corpus load_directory_pair(const std::filesystem::path& pos_dir,
                                  const std::filesystem::path& neg_dir,
                                  LoadWarnings* warnings = nullptr,
                                  std::string name = {}) {
  Corpus corpus;
  corpus.name = name.empty() ? pos_dir.parent_path().filename().string() : name;
  LoadWarnings local;
  LoadWarnings& warn = warnings ? *warnings : local;
  detail::load_directory_into(pos_dir, Polarity::Positive, corpus, warn);
  detail::load_directory_into(neg_dir, Polarity::Negative, corpus, warn);
  return corpus;
}

// Line-pair format (sentence polarity v1.0): one sentence per line, one file
// per class. Blank and undecodable lines are skipped and counted.
inline Corpus load_line_pair(const std::filesystem::path& pos_file,
                             const std::filesystem::path& neg_file,
                             LoadWarnings* warnings = nullptr) {
  Corpus corpus;
  corpus.name = pos_file.stem().string();
  LoadWarnings local;
  LoadWarnings& warn = warnings ? *warnings : local;

  auto load_lines = [&](const std::filesystem::path& path, Polarity label) {
    std::string content = detail::read_file(path);
    std::size_t line_no = 0;
    for (std::string_view line : detail::split_lines(content)) {
      ++line_no;
      if (detail::is_blank(line)) {
        ++warn.blank_lines;
        continue;
      }
      if (!detail::valid_utf8(line)) {
        ++warn.undecodable;
        warn.warn(path.string() + ": line " + std::to_string(line_no) +
                  ": not valid UTF-8, skipped");
        continue;
      }
      Document doc;
      doc.id = static_cast<int>(corpus.documents.size());
      doc.text = std::string(detail::trim(line));
      doc.label = label;
      corpus.documents.push_back(std::move(doc));
    }
  };
  load_lines(pos_file, Polarity::Positive);
  load_lines(neg_file, Polarity::Negative);
  return corpus;
}

namespace detail {

// Largest-remainder apportionment of `total` over class quotas; ties go to
// the earlier class. Quotas are capped by `available`.
inline std::array<std::size_t, 2> apportion(std::size_t total,
                                            std::array<std::size_t, 2> weights,
                                            std::array<std::size_t, 2> available) {
  std::size_t wsum = weights[0] + weights[1];
  std::array<std::size_t, 2> out = {0, 0};
  if (wsum == 0 || total == 0) return out;
  std::array<double, 2> exact{};
  std::size_t assigned = 0;
  for (int c = 0; c < 2; ++c) {
    exact[c] = static_cast<double>(total) * static_cast<double>(weights[c]) /
               static_cast<double>(wsum);
    out[c] = std::min(static_cast<std::size_t>(exact[c]), available[c]);
    assigned += out[c];
  }
  // Hand out the remainder one at a time, largest fractional part first.
  while (assigned < total) {
    int pick = -1;
    double best = -1.0;
    for (int c = 0; c < 2; ++c) {
      if (out[c] >= available[c]) continue;
      double frac = exact[c] - static_cast<double>(out[c]);
      if (frac > best) {
        best = frac;
        pick = c;
      }
    }
    if (pick < 0) break;  // nothing left anywhere
    ++out[pick];
    ++assigned;
  }
  return out;
}

inline std::array<std::vector<std::size_t>, 2> shuffled_class_indices(
    const Corpus& corpus, std::uint64_t seed) {
  std::array<std::vector<std::size_t>, 2> by_class;
  for (std::size_t i = 0; i < corpus.documents.size(); ++i)
    by_class[corpus.documents[i].label == Polarity::Positive ? 0 : 1].push_back(i);
  Rng rng(seed);
  shuffle_in_place(by_class[0], rng);
  shuffle_in_place(by_class[1], rng);
  return by_class;
}

}  // namespace detail

// New corpus from a subset of document indices; ids are re-densified.
inline Corpus subset(const Corpus& corpus, const std::vector<std::size_t>& indices,
                     std::string name = {}) {
  Corpus out;
  out.name = name.empty() ? corpus.name : std::move(name);
  out.documents.reserve(indices.size());
  for (std::size_t idx : indices) {
    Document d = corpus.documents.at(idx);
    d.id = static_cast<int>(out.documents.size());
    out.documents.push_back(std::move(d));
  }
  return out;
}

// Index sets for a stratified hold-out split. Train takes its per-class
// share of the corpus proportions; test is then apportioned over what
// remains. Deterministic for a fixed seed.
inline FoldIndices holdout_indices(const Corpus& corpus, const HoldOut& plan) {
  if (plan.train_count + plan.test_count > corpus.size())
    throw ArgumentError("holdout_split: train_count + test_count (" +
                        std::to_string(plan.train_count + plan.test_count) +
                        ") exceeds corpus size (" + std::to_string(corpus.size()) +
                        ")");
  auto by_class = detail::shuffled_class_indices(corpus, plan.seed);
  std::array<std::size_t, 2> sizes = {by_class[0].size(), by_class[1].size()};

  auto train_share = detail::apportion(plan.train_count, sizes, sizes);
  std::array<std::size_t, 2> remaining = {sizes[0] - train_share[0],
                                          sizes[1] - train_share[1]};
  auto test_share = detail::apportion(plan.test_count, remaining, remaining);

  FoldIndices out;
  for (int c = 0; c < 2; ++c) {
    out.train.insert(out.train.end(), by_class[c].begin(),
                     by_class[c].begin() + train_share[c]);
    out.test.insert(out.test.end(), by_class[c].begin() + train_share[c],
                    by_class[c].begin() + train_share[c] + test_share[c]);
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

inline std::pair<Corpus, Corpus> holdout_split(const Corpus& corpus,
                                               const HoldOut& plan) {
  FoldIndices idx = holdout_indices(corpus, plan);
  return {subset(corpus, idx.train, corpus.name + "/train"),
          subset(corpus, idx.test, corpus.name + "/test")};
}

// Stratified k-fold. Per class, fold sizes are n_c/k rounded, with the +1
// remainders dealt circularly across classes so overall fold sizes also
// differ by at most one. Test folds partition the corpus.
inline std::vector<FoldIndices> kfold_splits(const Corpus& corpus,
                                             const KFoldCV& plan) {
  if (plan.k < 2) throw ArgumentError("kfold_splits: k must be >= 2");
  if (plan.k > corpus.size())
    throw ArgumentError("kfold_splits: k (" + std::to_string(plan.k) +
                        ") exceeds corpus size (" + std::to_string(corpus.size()) +
                        ")");
  auto by_class = detail::shuffled_class_indices(corpus, plan.seed);
  std::size_t k = plan.k;

  std::vector<std::vector<std::size_t>> folds(k);
  std::size_t extra_cursor = 0;
  for (int c = 0; c < 2; ++c) {
    std::size_t n_c = by_class[c].size();
    std::size_t base = n_c / k;
    std::size_t rem = n_c % k;
    // Fold f receives base docs, plus one extra while the circular remainder
    // cursor passes over it.
    std::vector<std::size_t> fold_size(k, base);
    for (std::size_t r = 0; r < rem; ++r)
      ++fold_size[(extra_cursor + r) % k];
    extra_cursor = (extra_cursor + rem) % k;

    std::size_t next = 0;
    for (std::size_t f = 0; f < k; ++f)
      for (std::size_t t = 0; t < fold_size[f]; ++t)
        folds[f].push_back(by_class[c][next++]);
  }

  std::vector<FoldIndices> out(k);
  for (std::size_t f = 0; f < k; ++f) {
    std::sort(folds[f].begin(), folds[f].end());
    out[f].test = folds[f];
    for (std::size_t g = 0; g < k; ++g) {
      if (g == f) continue;
      out[f].train.insert(out[f].train.end(), folds[g].begin(), folds[g].end());
    }
    std::sort(out[f].train.begin(), out[f].train.end());
  }
  return out;
}

}  // namespace sentivec
