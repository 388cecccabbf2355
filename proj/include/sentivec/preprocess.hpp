#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "sentivec/corpus.hpp"
#include "sentivec/errors.hpp"
#include "sentivec/stopword_list.hpp"

namespace sentivec {

using Token = std::string;

struct TokenizedDocument {
  int id = 0;
  std::vector<Token> tokens;
  Polarity label = Polarity::Positive;
};

class StopwordSet {
 public:
  StopwordSet() = default;

  template <typename Range>
  static StopwordSet from_words(const Range& words) {
    StopwordSet s;
    for (const auto& w : words) s.words_.insert(std::string(w));
    return s;
  }

  // The bundled English list (also shipped as data/stopwords_english.txt).
  static const StopwordSet& english() {
    static const StopwordSet s = from_words(kEnglishStopwords);
    return s;
  }

  static StopwordSet none() { return StopwordSet(); }

  // One word per line; blank lines and lines starting with '#' are ignored.
  static StopwordSet from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open stopword file: " + path.string());
    StopwordSet s;
    std::string line;
    while (std::getline(in, line)) {
      std::string_view w = detail::trim(line);
      if (w.empty() || w.front() == '#') continue;
      std::string lower(w);
      for (char& c : lower)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
      s.words_.insert(std::move(lower));
    }
    return s;
  }

  bool contains(std::string_view token) const {
    return words_.count(std::string(token)) > 0;
  }

  std::size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }

 private:
  std::unordered_set<std::string> words_;
};

namespace detail {

// Decodes one UTF-8 codepoint starting at s[i]; advances i. Invalid bytes
// decode as U+FFFD and advance by one.
inline char32_t decode_utf8(std::string_view s, std::size_t& i) {
  unsigned char c = static_cast<unsigned char>(s[i]);
  std::size_t extra;
  char32_t cp;
  if (c < 0x80) {
    extra = 0;
    cp = c;
  } else if ((c & 0xE0) == 0xC0) {
    extra = 1;
    cp = c & 0x1F;
  } else if ((c & 0xF0) == 0xE0) {
    extra = 2;
    cp = c & 0x0F;
  } else if ((c & 0xF8) == 0xF0) {
    extra = 3;
    cp = c & 0x07;
  } else {
    ++i;
    return 0xFFFD;
  }
  if (i + extra >= s.size()) {
    ++i;
    return 0xFFFD;
  }
  for (std::size_t k = 1; k <= extra; ++k) {
    unsigned char cc = static_cast<unsigned char>(s[i + k]);
    if ((cc & 0xC0) != 0x80) {
      ++i;
      return 0xFFFD;
    }
    cp = (cp << 6) | (cc & 0x3F);
  }
  i += extra + 1;
  return cp;
}

// ASCII alnum and apostrophe are word characters. Non-ASCII codepoints count
// as word characters too (accented letters, CJK, ...) except for the common
// punctuation and symbol ranges below. U+2019 is handled by the caller.
inline bool is_word_codepoint(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') ||
           (cp >= '0' && cp <= '9') || cp == '\'';
  }
  if (cp >= 0xA0 && cp <= 0xBF) return false;      // Latin-1 punctuation/symbols
  if (cp == 0xD7 || cp == 0xF7) return false;      // multiplication/division sign
  if (cp >= 0x2000 && cp <= 0x206F) return false;  // general punctuation
  if (cp >= 0x2E00 && cp <= 0x2E7F) return false;  // supplemental punctuation
  if (cp == 0xFFFD) return false;
  return true;
}

inline void append_lowered(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    char c = static_cast<char>(cp);
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    out.push_back(c);
    return;
  }
  // Lowercase the Latin-1 uppercase range; everything else passes through.
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) cp += 0x20;
  if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

}  // namespace detail

// Lowercased maximal runs of word characters (letters, digits, apostrophes);
// everything else separates. Tokens shorter than two codepoints are dropped.
inline std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::string current;
  std::size_t current_len = 0;  // codepoints

  auto flush = [&] {
    if (current_len >= 2) tokens.push_back(current);
    current.clear();
    current_len = 0;
  };

  std::size_t i = 0;
  while (i < text.size()) {
    char32_t cp = detail::decode_utf8(text, i);
    if (cp == 0x2019) cp = '\'';  // curly apostrophe
    if (detail::is_word_codepoint(cp)) {
      detail::append_lowered(current, cp);
      ++current_len;
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

// Order-preserving filter.
inline std::vector<Token> remove_stopwords(const std::vector<Token>& tokens,
                                           const StopwordSet& stops) {
  std::vector<Token> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens)
    if (!stops.contains(t)) out.push_back(t);
  return out;
}

// Tokenizes every document, optionally filtering stopwords. Documents that
// end up with no tokens are retained so ids and labels stay aligned.
inline std::vector<TokenizedDocument> preprocess_corpus(const Corpus& corpus,
                                                        const StopwordSet& stops,
                                                        bool apply_stops) {
  std::vector<TokenizedDocument> out;
  out.reserve(corpus.size());
  for (const auto& doc : corpus.documents) {
    TokenizedDocument td;
    td.id = doc.id;
    td.label = doc.label;
    td.tokens = tokenize(doc.text);
    if (apply_stops) td.tokens = remove_stopwords(td.tokens, stops);
    out.push_back(std::move(td));
  }
  return out;
}

}  // namespace sentivec
