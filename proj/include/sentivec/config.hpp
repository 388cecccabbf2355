#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sentivec/errors.hpp"
#include "sentivec/eval.hpp"

// Run configuration: a plain-text section/key-value format.
//
//   # full-line comments only
//   seed = 42                 master seed (overridable with --seed)
//   out = results.csv         output file (extension follows format)
//   format = csv              csv | json
//   jobs = 1                  parallel grid cells
//
//   [split]                   global split defaults
//   kind = kfold              kfold | holdout
//   k = 10
//
//   [dataset NAME]
//   format = tab_labeled      tab_labeled | dir_pair | line_pair
//   path = ...                (tab_labeled)
//   pos = ...  neg = ...      (dir_pair, line_pair)
//   kind/k/train/test/split_seed   per-dataset split override
//   vectorizers = a, b        subset of configured vectorizers (default all)
//   classifiers = x, y        subset of configured classifiers (default all)
//
//   [vectorizer NAME]         kind = tfidf | doc2vec, then hyperparameters
//   [classifier NAME]         kind = logistic | knn | bernoulli_nb |
//                             svm_linear | svm_rbf | decision_tree | constant
//
// Unknown sections and keys are rejected. Omitted hyperparameters take the
// library defaults (tfidf: min_df=5, max_df=0.8, sublinear_tf, use_idf, l2,
// english stopwords; doc2vec: min_count=1, window=10, vector_size=100, ...).

namespace sentivec {

struct SplitSpec {
  enum class Kind { KFold, HoldOut };
  Kind kind = Kind::KFold;
  std::size_t k = 10;
  std::size_t train_count = 0;
  std::size_t test_count = 0;
  std::optional<std::uint64_t> seed;  // unset: derived from the master seed

  bool operator==(const SplitSpec&) const = default;

  SplitPlan materialize(std::uint64_t fallback_seed) const {
    std::uint64_t s = seed ? *seed : fallback_seed;
    if (kind == Kind::KFold) return KFoldCV{k, s};
    return HoldOut{train_count, test_count, s};
  }
};

struct DatasetSpec {
  enum class Format { TabLabeled, DirPair, LinePair };
  std::string name;
  Format format = Format::TabLabeled;
  std::filesystem::path path;  // tab_labeled
  std::filesystem::path pos;   // dir_pair / line_pair
  std::filesystem::path neg;
  SplitSpec split;
  std::vector<std::string> vectorizers;  // empty: all configured
  std::vector<std::string> classifiers;  // empty: all configured

  bool operator==(const DatasetSpec&) const = default;

  Corpus load(LoadWarnings* warnings = nullptr) const {
    Corpus c;
    switch (format) {
      case Format::TabLabeled:
        c = load_tab_labeled(path, warnings);
        break;
      case Format::DirPair:
        c = load_directory_pair(pos, neg, warnings);
        break;
      case Format::LinePair:
        c = load_line_pair(pos, neg, warnings);
        break;
    }
    c.name = name;
    return c;
  }
};

struct NamedVectorizer {
  std::string name;
  VectorizerConfig config;

  bool operator==(const NamedVectorizer&) const = default;
};

struct NamedClassifier {
  std::string name;
  ClassifierConfig config;

  bool operator==(const NamedClassifier&) const = default;
};

struct RunConfig {
  std::uint64_t master_seed = 1;
  std::string out;  // empty: results.csv / results.json per format
  enum class Format { Csv, Json };
  Format format = Format::Csv;
  std::size_t jobs = 1;
  SplitSpec default_split;
  std::vector<DatasetSpec> datasets;
  std::vector<NamedVectorizer> vectorizers;
  std::vector<NamedClassifier> classifiers;

  bool operator==(const RunConfig&) const = default;

  std::string output_path() const {
    if (!out.empty()) return out;
    return format == Format::Csv ? "results.csv" : "results.json";
  }
};

namespace config_detail {

struct Cursor {
  std::string file;
  std::size_t line = 0;
  std::string section;  // "" for the global scope

  [[noreturn]] void fail(const std::string& msg) const {
    std::string where = file + ":" + std::to_string(line);
    if (!section.empty()) where += ": [" + section + "]";
    throw ConfigError(where + ": " + msg);
  }
};

inline bool valid_name(std::string_view name) {
  if (name.empty()) return false;
  for (char c : name) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
              (c >= '0' && c <= '9') || c == '_' || c == '-' || c == '.';
    if (!ok) return false;
  }
  return true;
}

inline bool parse_bool(const std::string& value, const Cursor& at,
                       const std::string& key) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  at.fail("key \"" + key + "\": expected true/false, got \"" + value + "\"");
}

inline std::uint64_t parse_u64(const std::string& value, const Cursor& at,
                               const std::string& key) {
  try {
    std::size_t pos = 0;
    unsigned long long v = std::stoull(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing chars");
    return v;
  } catch (const std::exception&) {
    at.fail("key \"" + key + "\": expected a non-negative integer, got \"" +
            value + "\"");
  }
}

inline double parse_f64(const std::string& value, const Cursor& at,
                        const std::string& key) {
  try {
    std::size_t pos = 0;
    double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing chars");
    return v;
  } catch (const std::exception&) {
    at.fail("key \"" + key + "\": expected a number, got \"" + value + "\"");
  }
}

inline std::vector<std::string> parse_name_list(const std::string& value,
                                                const Cursor& at,
                                                const std::string& key) {
  std::vector<std::string> names;
  std::string current;
  std::istringstream ss(value);
  while (std::getline(ss, current, ',')) {
    std::string_view token = detail::trim(current);
    if (token.empty()) continue;
    if (!valid_name(token))
      at.fail("key \"" + key + "\": invalid name \"" + std::string(token) + "\"");
    names.emplace_back(token);
  }
  return names;
}

inline std::string format_u64(std::uint64_t v) { return std::to_string(v); }

inline std::string format_f64(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Applies a key to a split spec; returns false if the key is not split-related.
inline bool apply_split_key(SplitSpec& split, const std::string& key,
                            const std::string& value, const Cursor& at) {
  if (key == "kind") {
    if (value == "kfold")
      split.kind = SplitSpec::Kind::KFold;
    else if (value == "holdout")
      split.kind = SplitSpec::Kind::HoldOut;
    else
      at.fail("key \"kind\": expected kfold or holdout, got \"" + value + "\"");
  } else if (key == "k") {
    split.k = parse_u64(value, at, key);
  } else if (key == "train") {
    split.train_count = parse_u64(value, at, key);
  } else if (key == "test") {
    split.test_count = parse_u64(value, at, key);
  } else if (key == "split_seed") {
    split.seed = parse_u64(value, at, key);
  } else {
    return false;
  }
  return true;
}

}  // namespace config_detail

inline RunConfig parse_config(std::istream& in, const std::string& filename) {
  using namespace config_detail;
  RunConfig config;

  enum class Scope { Global, Split, Dataset, Vectorizer, Classifier };
  Scope scope = Scope::Global;
  Cursor at{filename, 0, ""};

  DatasetSpec* dataset = nullptr;
  // Vectorizer/classifier sections start untyped; `kind` selects the config.
  struct PendingSection {
    std::string name;
    bool has_kind = false;
    Cursor opened_at;
  } pending;
  NamedVectorizer* vectorizer = nullptr;
  NamedClassifier* classifier = nullptr;

  auto require_kind = [&]() {
    if (!pending.has_kind)
      pending.opened_at.fail("section needs `kind = ...` before other keys");
  };

  std::string raw;
  while (std::getline(in, raw)) {
    ++at.line;
    std::string_view line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;

    if (line.front() == '[') {
      if (line.back() != ']') at.fail("unterminated section header");
      std::string_view inner = detail::trim(line.substr(1, line.size() - 2));
      auto space = inner.find(' ');
      std::string type(space == std::string_view::npos ? inner
                                                       : inner.substr(0, space));
      std::string name(space == std::string_view::npos
                           ? std::string_view{}
                           : detail::trim(inner.substr(space + 1)));
      at.section = std::string(inner);
      dataset = nullptr;
      vectorizer = nullptr;
      classifier = nullptr;

      if (type == "split") {
        if (!name.empty()) at.fail("[split] takes no name");
        if (!config.datasets.empty())
          at.fail("[split] must appear before any [dataset ...] section");
        scope = Scope::Split;
      } else if (type == "dataset" || type == "vectorizer" || type == "classifier") {
        if (!valid_name(name))
          at.fail("section needs a name of [A-Za-z0-9_.-]+, got \"" + name + "\"");
        if (type == "dataset") {
          for (const auto& d : config.datasets)
            if (d.name == name) at.fail("duplicate dataset \"" + name + "\"");
          config.datasets.emplace_back();
          dataset = &config.datasets.back();
          dataset->name = name;
          dataset->split = config.default_split;
          scope = Scope::Dataset;
        } else if (type == "vectorizer") {
          for (const auto& v : config.vectorizers)
            if (v.name == name) at.fail("duplicate vectorizer \"" + name + "\"");
          pending = {name, false, at};
          scope = Scope::Vectorizer;
        } else {
          for (const auto& c : config.classifiers)
            if (c.name == name) at.fail("duplicate classifier \"" + name + "\"");
          pending = {name, false, at};
          scope = Scope::Classifier;
        }
      } else {
        at.fail("unknown section type \"" + type + "\"");
      }
      continue;
    }

    auto eq = line.find('=');
    if (eq == std::string_view::npos) at.fail("expected `key = value`");
    std::string key(detail::trim(line.substr(0, eq)));
    std::string value(detail::trim(line.substr(eq + 1)));
    if (key.empty()) at.fail("empty key");

    switch (scope) {
      case Scope::Global: {
        if (key == "seed")
          config.master_seed = parse_u64(value, at, key);
        else if (key == "out")
          config.out = value;
        else if (key == "format") {
          if (value == "csv")
            config.format = RunConfig::Format::Csv;
          else if (value == "json")
            config.format = RunConfig::Format::Json;
          else
            at.fail("key \"format\": expected csv or json, got \"" + value + "\"");
        } else if (key == "jobs") {
          config.jobs = std::max<std::uint64_t>(1, parse_u64(value, at, key));
        } else {
          at.fail("unknown key \"" + key + "\"");
        }
        break;
      }
      case Scope::Split: {
        if (!apply_split_key(config.default_split, key, value, at))
          at.fail("unknown key \"" + key + "\"");
        break;
      }
      case Scope::Dataset: {
        if (key == "format") {
          if (value == "tab_labeled")
            dataset->format = DatasetSpec::Format::TabLabeled;
          else if (value == "dir_pair")
            dataset->format = DatasetSpec::Format::DirPair;
          else if (value == "line_pair")
            dataset->format = DatasetSpec::Format::LinePair;
          else
            at.fail("key \"format\": expected tab_labeled, dir_pair or "
                    "line_pair, got \"" + value + "\"");
        } else if (key == "path") {
          dataset->path = value;
        } else if (key == "pos") {
          dataset->pos = value;
        } else if (key == "neg") {
          dataset->neg = value;
        } else if (key == "vectorizers") {
          dataset->vectorizers = parse_name_list(value, at, key);
        } else if (key == "classifiers") {
          dataset->classifiers = parse_name_list(value, at, key);
        } else if (!apply_split_key(dataset->split, key, value, at)) {
          at.fail("unknown key \"" + key + "\"");
        }
        break;
      }
      case Scope::Vectorizer: {
        if (key == "kind") {
          if (pending.has_kind) at.fail("duplicate key \"kind\"");
          config.vectorizers.emplace_back();
          vectorizer = &config.vectorizers.back();
          vectorizer->name = pending.name;
          if (value == "tfidf")
            vectorizer->config = TfidfVectorizerConfig{};
          else if (value == "doc2vec")
            vectorizer->config = Doc2VecVectorizerConfig{};
          else
            at.fail("key \"kind\": expected tfidf or doc2vec, got \"" + value +
                    "\"");
          pending.has_kind = true;
          break;
        }
        require_kind();
        if (auto* tf = std::get_if<TfidfVectorizerConfig>(&vectorizer->config)) {
          if (key == "min_df")
            tf->tfidf.min_df = parse_u64(value, at, key);
          else if (key == "max_df")
            tf->tfidf.max_df = parse_f64(value, at, key);
          else if (key == "sublinear_tf")
            tf->tfidf.sublinear_tf = parse_bool(value, at, key);
          else if (key == "use_idf")
            tf->tfidf.use_idf = parse_bool(value, at, key);
          else if (key == "l2_normalize")
            tf->tfidf.l2_normalize = parse_bool(value, at, key);
          else if (key == "encoding") {
            if (value != "utf-8")
              at.fail("key \"encoding\": only utf-8 is supported");
          } else if (key == "stop_words") {
            if (value == "english")
              tf->remove_stopwords = true;
            else if (value == "none")
              tf->remove_stopwords = false;
            else
              at.fail("key \"stop_words\": expected english or none, got \"" +
                      value + "\"");
          } else {
            at.fail("unknown key \"" + key + "\" for kind tfidf");
          }
        } else {
          auto& dv = std::get<Doc2VecVectorizerConfig>(vectorizer->config);
          if (key == "min_count")
            dv.d2v.min_count = parse_u64(value, at, key);
          else if (key == "window")
            dv.d2v.window = parse_u64(value, at, key);
          else if (key == "vector_size")
            dv.d2v.vector_size = parse_u64(value, at, key);
          else if (key == "sample")
            dv.d2v.sample = parse_f64(value, at, key);
          else if (key == "negative")
            dv.d2v.negative = parse_u64(value, at, key);
          else if (key == "workers")
            dv.d2v.workers = parse_u64(value, at, key);
          else if (key == "dm")
            dv.d2v.dm = parse_bool(value, at, key);
          else if (key == "epochs")
            dv.d2v.epochs = parse_u64(value, at, key);
          else if (key == "learning_rate")
            dv.d2v.learning_rate = parse_f64(value, at, key);
          else if (key == "min_learning_rate")
            dv.d2v.min_learning_rate = parse_f64(value, at, key);
          else if (key == "dynamic_window")
            dv.d2v.dynamic_window = parse_bool(value, at, key);
          else if (key == "infer_steps")
            dv.infer_steps = parse_u64(value, at, key);
          else if (key == "stop_words") {
            if (value == "english")
              dv.remove_stopwords = true;
            else if (value == "none")
              dv.remove_stopwords = false;
            else
              at.fail("key \"stop_words\": expected english or none, got \"" +
                      value + "\"");
          } else {
            at.fail("unknown key \"" + key + "\" for kind doc2vec");
          }
        }
        break;
      }
      case Scope::Classifier: {
        if (key == "kind") {
          if (pending.has_kind) at.fail("duplicate key \"kind\"");
          config.classifiers.emplace_back();
          classifier = &config.classifiers.back();
          classifier->name = pending.name;
          if (value == "logistic")
            classifier->config = LogisticConfig{};
          else if (value == "knn")
            classifier->config = KnnConfig{};
          else if (value == "bernoulli_nb")
            classifier->config = BernoulliNbConfig{};
          else if (value == "svm_linear")
            classifier->config = SvmConfig{};
          else if (value == "svm_rbf")
            classifier->config = SvmConfig{RbfKernel{}, 1.0, 1e-3, 1000};
          else if (value == "decision_tree")
            classifier->config = DecisionTreeConfig{};
          else if (value == "constant")
            classifier->config = ConstantConfig{};
          else
            at.fail("key \"kind\": unknown classifier kind \"" + value + "\"");
          pending.has_kind = true;
          break;
        }
        require_kind();
        if (auto* lr = std::get_if<LogisticConfig>(&classifier->config)) {
          if (key == "lambda")
            lr->reg_lambda = parse_f64(value, at, key);
          else if (key == "learning_rate")
            lr->learning_rate = parse_f64(value, at, key);
          else if (key == "iterations")
            lr->iterations = parse_u64(value, at, key);
          else
            at.fail("unknown key \"" + key + "\" for kind logistic");
        } else if (auto* knn = std::get_if<KnnConfig>(&classifier->config)) {
          if (key == "k")
            knn->k = parse_u64(value, at, key);
          else
            at.fail("unknown key \"" + key + "\" for kind knn");
        } else if (auto* nb = std::get_if<BernoulliNbConfig>(&classifier->config)) {
          if (key == "alpha")
            nb->alpha = parse_f64(value, at, key);
          else
            at.fail("unknown key \"" + key + "\" for kind bernoulli_nb");
        } else if (auto* svm = std::get_if<SvmConfig>(&classifier->config)) {
          if (key == "C")
            svm->C = parse_f64(value, at, key);
          else if (key == "tol")
            svm->tol = parse_f64(value, at, key);
          else if (key == "max_passes")
            svm->max_passes = parse_u64(value, at, key);
          else if (key == "gamma") {
            if (auto* rbf = std::get_if<RbfKernel>(&svm->kernel))
              rbf->gamma = parse_f64(value, at, key);
            else
              at.fail("key \"gamma\" only applies to kind svm_rbf");
          } else {
            at.fail("unknown key \"" + key + "\" for kind svm");
          }
        } else if (auto* dt =
                       std::get_if<DecisionTreeConfig>(&classifier->config)) {
          if (key == "max_depth")
            dt->max_depth = parse_u64(value, at, key);
          else if (key == "min_leaf")
            dt->min_leaf = parse_u64(value, at, key);
          else
            at.fail("unknown key \"" + key + "\" for kind decision_tree");
        } else {
          auto& cc = std::get<ConstantConfig>(classifier->config);
          if (key == "label") {
            if (value == "positive")
              cc.label = Polarity::Positive;
            else if (value == "negative")
              cc.label = Polarity::Negative;
            else
              at.fail("key \"label\": expected positive or negative, got \"" +
                      value + "\"");
          } else {
            at.fail("unknown key \"" + key + "\" for kind constant");
          }
        }
        break;
      }
    }
  }

  // --- semantic validation ---
  auto fail = [&](const std::string& msg) { throw ConfigError(filename + ": " + msg); };

  if (config.datasets.empty()) fail("no [dataset ...] sections");
  if (config.vectorizers.empty()) fail("no [vectorizer ...] sections");
  if (config.classifiers.empty()) fail("no [classifier ...] sections");

  auto has_vectorizer = [&](const std::string& n) {
    for (const auto& v : config.vectorizers)
      if (v.name == n) return true;
    return false;
  };
  auto has_classifier = [&](const std::string& n) {
    for (const auto& c : config.classifiers)
      if (c.name == n) return true;
    return false;
  };

  for (const auto& d : config.datasets) {
    std::string where = "[dataset " + d.name + "]: ";
    if (d.format == DatasetSpec::Format::TabLabeled) {
      if (d.path.empty()) fail(where + "key \"path\" is required");
      if (!std::filesystem::exists(d.path))
        fail(where + "key \"path\": no such file: " + d.path.string());
    } else {
      if (d.pos.empty() || d.neg.empty())
        fail(where + "keys \"pos\" and \"neg\" are required");
      if (!std::filesystem::exists(d.pos))
        fail(where + "key \"pos\": no such path: " + d.pos.string());
      if (!std::filesystem::exists(d.neg))
        fail(where + "key \"neg\": no such path: " + d.neg.string());
    }
    if (d.split.kind == SplitSpec::Kind::HoldOut &&
        d.split.train_count + d.split.test_count == 0)
      fail(where + "holdout split needs \"train\" and/or \"test\" counts");
    if (d.split.kind == SplitSpec::Kind::KFold && d.split.k < 2)
      fail(where + "key \"k\" must be >= 2");
    for (const auto& v : d.vectorizers)
      if (!has_vectorizer(v))
        fail(where + "key \"vectorizers\": unknown vectorizer \"" + v + "\"");
    for (const auto& c : d.classifiers)
      if (!has_classifier(c))
        fail(where + "key \"classifiers\": unknown classifier \"" + c + "\"");
  }
  return config;
}

inline RunConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  return parse_config(in, path.string());
}

// Canonical text form; parse_config(serialize_config(c)) reconstructs c.
inline std::string serialize_config(const RunConfig& config) {
  using namespace config_detail;
  std::ostringstream out;
  out << "seed = " << config.master_seed << "\n";
  if (!config.out.empty()) out << "out = " << config.out << "\n";
  out << "format = " << (config.format == RunConfig::Format::Csv ? "csv" : "json")
      << "\n";
  out << "jobs = " << config.jobs << "\n";

  auto emit_split = [&](const SplitSpec& s) {
    if (s.kind == SplitSpec::Kind::KFold) {
      out << "kind = kfold\n";
      out << "k = " << s.k << "\n";
    } else {
      out << "kind = holdout\n";
      out << "train = " << s.train_count << "\n";
      out << "test = " << s.test_count << "\n";
    }
    if (s.kind == SplitSpec::Kind::HoldOut && s.k != 10)
      out << "k = " << s.k << "\n";  // preserved for equality round-trips
    if (s.kind == SplitSpec::Kind::KFold &&
        (s.train_count != 0 || s.test_count != 0)) {
      out << "train = " << s.train_count << "\n";
      out << "test = " << s.test_count << "\n";
    }
    if (s.seed) out << "split_seed = " << *s.seed << "\n";
  };

  out << "\n[split]\n";
  emit_split(config.default_split);

  for (const auto& d : config.datasets) {
    out << "\n[dataset " << d.name << "]\n";
    switch (d.format) {
      case DatasetSpec::Format::TabLabeled:
        out << "format = tab_labeled\n";
        out << "path = " << d.path.string() << "\n";
        break;
      case DatasetSpec::Format::DirPair:
        out << "format = dir_pair\n";
        break;
      case DatasetSpec::Format::LinePair:
        out << "format = line_pair\n";
        break;
    }
    if (d.format != DatasetSpec::Format::TabLabeled) {
      out << "pos = " << d.pos.string() << "\n";
      out << "neg = " << d.neg.string() << "\n";
    }
    emit_split(d.split);
    auto emit_list = [&](const char* key, const std::vector<std::string>& names) {
      if (names.empty()) return;
      out << key << " = ";
      for (std::size_t i = 0; i < names.size(); ++i)
        out << (i ? ", " : "") << names[i];
      out << "\n";
    };
    emit_list("vectorizers", d.vectorizers);
    emit_list("classifiers", d.classifiers);
  }

  for (const auto& v : config.vectorizers) {
    out << "\n[vectorizer " << v.name << "]\n";
    if (const auto* tf = std::get_if<TfidfVectorizerConfig>(&v.config)) {
      out << "kind = tfidf\n";
      out << "min_df = " << tf->tfidf.min_df << "\n";
      out << "max_df = " << format_f64(tf->tfidf.max_df) << "\n";
      out << "sublinear_tf = " << (tf->tfidf.sublinear_tf ? "true" : "false")
          << "\n";
      out << "use_idf = " << (tf->tfidf.use_idf ? "true" : "false") << "\n";
      out << "l2_normalize = " << (tf->tfidf.l2_normalize ? "true" : "false")
          << "\n";
      out << "stop_words = " << (tf->remove_stopwords ? "english" : "none") << "\n";
    } else {
      const auto& dv = std::get<Doc2VecVectorizerConfig>(v.config);
      out << "kind = doc2vec\n";
      out << "min_count = " << dv.d2v.min_count << "\n";
      out << "window = " << dv.d2v.window << "\n";
      out << "vector_size = " << dv.d2v.vector_size << "\n";
      out << "sample = " << format_f64(dv.d2v.sample) << "\n";
      out << "negative = " << dv.d2v.negative << "\n";
      out << "workers = " << dv.d2v.workers << "\n";
      out << "dm = " << (dv.d2v.dm ? "1" : "0") << "\n";
      out << "epochs = " << dv.d2v.epochs << "\n";
      out << "learning_rate = " << format_f64(dv.d2v.learning_rate) << "\n";
      out << "min_learning_rate = " << format_f64(dv.d2v.min_learning_rate)
          << "\n";
      out << "dynamic_window = " << (dv.d2v.dynamic_window ? "true" : "false")
          << "\n";
      if (dv.infer_steps > 0) out << "infer_steps = " << dv.infer_steps << "\n";
      out << "stop_words = " << (dv.remove_stopwords ? "english" : "none") << "\n";
    }
  }

  for (const auto& c : config.classifiers) {
    out << "\n[classifier " << c.name << "]\n";
    if (const auto* lr = std::get_if<LogisticConfig>(&c.config)) {
      out << "kind = logistic\n";
      out << "lambda = " << format_f64(lr->reg_lambda) << "\n";
      out << "learning_rate = " << format_f64(lr->learning_rate) << "\n";
      out << "iterations = " << lr->iterations << "\n";
    } else if (const auto* knn = std::get_if<KnnConfig>(&c.config)) {
      out << "kind = knn\n";
      out << "k = " << knn->k << "\n";
    } else if (const auto* nb = std::get_if<BernoulliNbConfig>(&c.config)) {
      out << "kind = bernoulli_nb\n";
      out << "alpha = " << format_f64(nb->alpha) << "\n";
    } else if (const auto* svm = std::get_if<SvmConfig>(&c.config)) {
      if (const auto* rbf = std::get_if<RbfKernel>(&svm->kernel)) {
        out << "kind = svm_rbf\n";
        out << "gamma = " << format_f64(rbf->gamma) << "\n";
      } else {
        out << "kind = svm_linear\n";
      }
      out << "C = " << format_f64(svm->C) << "\n";
      out << "tol = " << format_f64(svm->tol) << "\n";
      out << "max_passes = " << svm->max_passes << "\n";
    } else if (const auto* dt = std::get_if<DecisionTreeConfig>(&c.config)) {
      out << "kind = decision_tree\n";
      out << "max_depth = " << dt->max_depth << "\n";
      out << "min_leaf = " << dt->min_leaf << "\n";
    } else {
      const auto& cc = std::get<ConstantConfig>(c.config);
      out << "kind = constant\n";
      out << "label = "
          << (cc.label == Polarity::Positive ? "positive" : "negative") << "\n";
    }
  }
  return out.str();
}

// The cross product of each dataset with its vectorizers and classifiers, in
// config order, after optional name filters from the command line.
inline std::vector<ExperimentSpec> build_grid(
    const RunConfig& config, const std::vector<std::string>& dataset_filter = {},
    const std::vector<std::string>& vectorizer_filter = {},
    const std::vector<std::string>& classifier_filter = {}) {
  auto selected = [](const std::vector<std::string>& filter,
                     const std::string& name) {
    if (filter.empty()) return true;
    for (const auto& f : filter)
      if (f == name) return true;
    return false;
  };

  std::vector<ExperimentSpec> grid;
  for (const auto& d : config.datasets) {
    if (!selected(dataset_filter, d.name)) continue;
    SplitPlan plan = d.split.materialize(
        mix_seed(config.master_seed, fnv1a(d.name.data(), d.name.size())));

    auto vec_active = [&](const std::string& name) {
      return (d.vectorizers.empty() || selected(d.vectorizers, name)) &&
             selected(vectorizer_filter, name);
    };
    auto clf_active = [&](const std::string& name) {
      return (d.classifiers.empty() || selected(d.classifiers, name)) &&
             selected(classifier_filter, name);
    };

    for (const auto& v : config.vectorizers) {
      if (!vec_active(v.name)) continue;
      for (const auto& c : config.classifiers) {
        if (!clf_active(c.name)) continue;
        grid.push_back(
            ExperimentSpec{d.name, v.name, c.name, plan, v.config, c.config});
      }
    }
  }
  return grid;
}

}  // namespace sentivec
