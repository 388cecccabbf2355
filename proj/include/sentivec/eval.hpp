#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "sentivec/classifiers/classifiers.hpp"
#include "sentivec/corpus.hpp"
#include "sentivec/doc2vec.hpp"
#include "sentivec/errors.hpp"
#include "sentivec/preprocess.hpp"
#include "sentivec/tfidf.hpp"

namespace sentivec {

// TP/FN/FP/TN counts; every evaluated document lands in exactly one cell.
struct ContingencyMatrix {
  std::size_t tp = 0;
  std::size_t fn = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;

  std::size_t total() const { return tp + fn + fp + tn; }

  void add(Polarity actual, Polarity predicted) {
    if (actual == Polarity::Positive)
      predicted == Polarity::Positive ? ++tp : ++fn;
    else
      predicted == Polarity::Positive ? ++fp : ++tn;
  }

  bool operator==(const ContingencyMatrix&) const = default;
};

// Percent of correctly predicted documents.
inline double accuracy(const ContingencyMatrix& cm) {
  if (cm.total() == 0)
    throw ComputeError("accuracy: undefined for an empty contingency matrix");
  return 100.0 * static_cast<double>(cm.tp + cm.tn) /
         static_cast<double>(cm.total());
}

// --- experiment configuration ---

struct TfidfVectorizerConfig {
  TfidfConfig tfidf;
  bool remove_stopwords = true;

  bool operator==(const TfidfVectorizerConfig&) const = default;
};

struct Doc2VecVectorizerConfig {
  Doc2VecConfig d2v;
  bool remove_stopwords = false;
  std::size_t infer_steps = 0;  // 0: reuse d2v.epochs

  bool operator==(const Doc2VecVectorizerConfig&) const = default;
};

using VectorizerConfig = std::variant<TfidfVectorizerConfig, Doc2VecVectorizerConfig>;

// Fixed-prediction baseline; useful as a sanity floor in grids.
struct ConstantConfig {
  Polarity label = Polarity::Positive;

  bool operator==(const ConstantConfig&) const = default;
};

using ClassifierConfig = std::variant<LogisticConfig, KnnConfig, BernoulliNbConfig,
                                      SvmConfig, DecisionTreeConfig, ConstantConfig>;

inline const char* vectorizer_kind_name(const VectorizerConfig& v) {
  return std::holds_alternative<TfidfVectorizerConfig>(v) ? "tfidf" : "doc2vec";
}

inline const char* classifier_kind_name(const ClassifierConfig& c) {
  struct Namer {
    const char* operator()(const LogisticConfig&) const { return "logistic"; }
    const char* operator()(const KnnConfig&) const { return "knn"; }
    const char* operator()(const BernoulliNbConfig&) const { return "bernoulli_nb"; }
    const char* operator()(const SvmConfig& s) const {
      return std::holds_alternative<RbfKernel>(s.kernel) ? "svm_rbf" : "svm_linear";
    }
    const char* operator()(const DecisionTreeConfig&) const { return "decision_tree"; }
    const char* operator()(const ConstantConfig&) const { return "constant"; }
  };
  return std::visit(Namer{}, c);
}

inline std::string plan_to_string(const SplitPlan& plan) {
  if (const auto* h = std::get_if<HoldOut>(&plan))
    return "holdout(train=" + std::to_string(h->train_count) +
           ",test=" + std::to_string(h->test_count) +
           ",seed=" + std::to_string(h->seed) + ")";
  const auto& k = std::get<KFoldCV>(plan);
  return "kfold(k=" + std::to_string(k.k) + ",seed=" + std::to_string(k.seed) + ")";
}

struct PhaseTimings {
  double fit_vectorizer_s = 0.0;
  double transform_s = 0.0;
  double train_classifier_s = 0.0;
  double predict_s = 0.0;
};

struct FoldResult {
  ContingencyMatrix matrix;
  double accuracy_pct = 0.0;
  std::uint64_t vectorizer_fingerprint = 0;
};

struct EvaluationReport {
  std::string dataset;
  std::string vectorizer_id;
  std::string classifier_id;
  std::string plan;
  std::uint64_t seed = 0;
  bool ok = true;
  std::string error;
  std::string notes;
  std::vector<FoldResult> folds;
  double mean_accuracy_pct = 0.0;
  PhaseTimings timings;
};

namespace eval_detail {

class StopWatch {
 public:
  explicit StopWatch(double& acc)
      : acc_(acc), start_(std::chrono::steady_clock::now()) {}
  ~StopWatch() {
    acc_ += std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
                .count();
  }

 private:
  double& acc_;
  std::chrono::steady_clock::time_point start_;
};

template <typename V>
ContingencyMatrix train_and_score(FeatureMatrix<V> train, const std::vector<V>& test_x,
                                  const std::vector<Polarity>& test_y,
                                  const ClassifierConfig& config,
                                  PhaseTimings& timings) {
  std::function<Polarity(const V&)> predict;

  {
    StopWatch watch(timings.train_classifier_s);
    if (const auto* c = std::get_if<LogisticConfig>(&config)) {
      auto model = std::make_shared<LogisticModel>(train_logistic(train, *c));
      predict = [model](const V& x) { return predict_logistic(*model, x).first; };
    } else if (const auto* c = std::get_if<KnnConfig>(&config)) {
      auto model = std::make_shared<KnnModel<V>>(train_knn(std::move(train), *c));
      predict = [model](const V& x) { return knn_predict(*model, x); };
    } else if (const auto* c = std::get_if<BernoulliNbConfig>(&config)) {
      auto model =
          std::make_shared<BernoulliNbModel>(train_bernoulli_nb(train, *c));
      predict = [model](const V& x) { return predict_bernoulli_nb(*model, x); };
    } else if (const auto* c = std::get_if<SvmConfig>(&config)) {
      auto model = std::make_shared<SvmModel<V>>(train_svm(train, *c));
      predict = [model](const V& x) { return predict_svm(*model, x); };
    } else if (const auto* c = std::get_if<DecisionTreeConfig>(&config)) {
      auto model =
          std::make_shared<DecisionTreeModel>(train_decision_tree(train, *c));
      predict = [model](const V& x) { return predict_decision_tree(*model, x); };
    } else {
      Polarity label = std::get<ConstantConfig>(config).label;
      predict = [label](const V&) { return label; };
    }
  }

  ContingencyMatrix cm;
  StopWatch watch(timings.predict_s);
  for (std::size_t i = 0; i < test_x.size(); ++i)
    cm.add(test_y[i], predict(test_x[i]));
  return cm;
}

inline std::vector<Polarity> labels_of(const std::vector<TokenizedDocument>& docs) {
  std::vector<Polarity> out;
  out.reserve(docs.size());
  for (const auto& d : docs) out.push_back(d.label);
  return out;
}

// Runs one (train docs, test docs) evaluation for either vectorizer family.
inline FoldResult evaluate_fold(const std::vector<TokenizedDocument>& train_docs,
                                const std::vector<TokenizedDocument>& test_docs,
                                const VectorizerConfig& vectorizer,
                                const ClassifierConfig& classifier,
                                std::uint64_t fold_seed, PhaseTimings& timings) {
  FoldResult fold;
  if (const auto* tf = std::get_if<TfidfVectorizerConfig>(&vectorizer)) {
    Vocabulary vocab = [&] {
      StopWatch watch(timings.fit_vectorizer_s);
      return fit_vocabulary(train_docs, tf->tfidf);
    }();
    fold.vectorizer_fingerprint = vocab.fingerprint();

    FeatureMatrix<SparseVector> train;
    std::vector<SparseVector> test_x;
    {
      StopWatch watch(timings.transform_s);
      train.rows = transform_corpus(train_docs, vocab, tf->tfidf);
      train.labels = labels_of(train_docs);
      test_x = transform_corpus(test_docs, vocab, tf->tfidf);
    }
    fold.matrix = train_and_score(std::move(train), test_x, labels_of(test_docs),
                                  classifier, timings);
  } else {
    const auto& dv = std::get<Doc2VecVectorizerConfig>(vectorizer);
    Doc2VecConfig d2v = dv.d2v;
    d2v.workers = 1;  // experiments must be reproducible
    d2v.seed = fold_seed;
    EmbeddingModel model = [&] {
      StopWatch watch(timings.fit_vectorizer_s);
      return train(train_docs, d2v);
    }();
    fold.vectorizer_fingerprint = model.fingerprint();

    FeatureMatrix<DenseVector> train_m;
    std::vector<DenseVector> test_x;
    {
      StopWatch watch(timings.transform_s);
      train_m.rows.reserve(train_docs.size());
      for (std::size_t i = 0; i < train_docs.size(); ++i)
        train_m.rows.push_back(model.doc_vectors.row_vector(i));
      train_m.labels = labels_of(train_docs);
      std::size_t steps = dv.infer_steps > 0 ? dv.infer_steps : d2v.epochs;
      test_x.reserve(test_docs.size());
      for (std::size_t i = 0; i < test_docs.size(); ++i)
        test_x.push_back(infer_vector(test_docs[i], model, steps,
                                      mix_seed(fold_seed, 0x7465737400ULL + i))
                             .vector);
    }
    fold.matrix = train_and_score(std::move(train_m), test_x, labels_of(test_docs),
                                  classifier, timings);
  }
  fold.accuracy_pct = accuracy(fold.matrix);
  return fold;
}

}  // namespace eval_detail

// Full protocol for one (corpus, plan, vectorizer, classifier) cell: per
// fold, the vectorizer is fitted on the training portion only, both portions
// are transformed, the classifier is trained and the test portion scored.
// Deterministic for a fixed seed (doc2vec workers are forced to 1).
inline EvaluationReport run_experiment(const Corpus& corpus, const SplitPlan& plan,
                                       const VectorizerConfig& vectorizer,
                                       const ClassifierConfig& classifier,
                                       std::uint64_t seed,
                                       std::string vectorizer_id = {},
                                       std::string classifier_id = {}) {
  EvaluationReport report;
  report.dataset = corpus.name;
  report.vectorizer_id = vectorizer_id.empty() ? vectorizer_kind_name(vectorizer)
                                               : std::move(vectorizer_id);
  report.classifier_id = classifier_id.empty() ? classifier_kind_name(classifier)
                                               : std::move(classifier_id);
  report.plan = plan_to_string(plan);
  report.seed = seed;

  if (const auto* dv = std::get_if<Doc2VecVectorizerConfig>(&vectorizer);
      dv && dv->d2v.negative == 0)
    report.notes = "negative=0: target-only objective (no noise words)";

  bool remove_stops = std::visit([](const auto& v) { return v.remove_stopwords; },
                                 vectorizer);
  std::vector<TokenizedDocument> all_docs =
      preprocess_corpus(corpus, StopwordSet::english(), remove_stops);

  auto slice = [&](const std::vector<std::size_t>& indices) {
    std::vector<TokenizedDocument> out;
    out.reserve(indices.size());
    for (std::size_t idx : indices) out.push_back(all_docs[idx]);
    return out;
  };

  std::vector<FoldIndices> folds;
  if (const auto* h = std::get_if<HoldOut>(&plan))
    folds.push_back(holdout_indices(corpus, *h));
  else
    folds = kfold_splits(corpus, std::get<KFoldCV>(plan));

  double acc_sum = 0.0;
  for (std::size_t f = 0; f < folds.size(); ++f) {
    try {
      FoldResult fold = eval_detail::evaluate_fold(
          slice(folds[f].train), slice(folds[f].test), vectorizer, classifier,
          mix_seed(seed, 0x666f6c64ULL + f), report.timings);
      acc_sum += fold.accuracy_pct;
      report.folds.push_back(std::move(fold));
    } catch (const Error& e) {
      throw ComputeError("fold " + std::to_string(f + 1) + ": " + e.what());
    }
  }
  report.mean_accuracy_pct =
      report.folds.empty() ? 0.0 : acc_sum / static_cast<double>(report.folds.size());
  return report;
}

// --- grid runner ---

struct ExperimentSpec {
  std::string dataset;
  std::string vectorizer_id;
  std::string classifier_id;
  SplitPlan plan;
  VectorizerConfig vectorizer;
  ClassifierConfig classifier;
};

// Loads each named dataset at most once; load failures are remembered so
// every cell of a broken dataset reports the same error.
class CorpusProvider {
 public:
  explicit CorpusProvider(std::function<Corpus(const std::string&)> loader)
      : loader_(std::move(loader)) {}

  // Provider over pre-loaded corpora (keyed by corpus name).
  static CorpusProvider from_corpora(std::vector<Corpus> corpora) {
    auto shared = std::make_shared<std::map<std::string, Corpus>>();
    for (auto& c : corpora) (*shared)[c.name] = std::move(c);
    return CorpusProvider([shared](const std::string& name) -> Corpus {
      auto it = shared->find(name);
      if (it == shared->end()) throw DataError("unknown dataset: " + name);
      return it->second;
    });
  }

  const Corpus& get(const std::string& name) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(name);
    if (it == cache_.end()) {
      try {
        it = cache_.emplace(name, loader_(name)).first;
      } catch (const Error& e) {
        errors_.emplace(name, e.what());
        throw;
      }
    }
    return it->second;
  }

  // Re-raises the memoized failure without retrying the load.
  void check_not_failed(const std::string& name) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = errors_.find(name);
    if (it != errors_.end()) throw DataError(it->second);
  }

 private:
  std::function<Corpus(const std::string&)> loader_;
  std::map<std::string, Corpus> cache_;
  std::map<std::string, std::string> errors_;
  std::mutex mutex_;
};

// Per-cell seed derived from the master seed and the cell identity, so
// duplicate specs evaluate identically wherever they appear in the grid.
inline std::uint64_t derive_cell_seed(std::uint64_t master_seed,
                                      const ExperimentSpec& spec) {
  std::string identity = spec.dataset + "\x1f" + spec.vectorizer_id + "\x1f" +
                         spec.classifier_id + "\x1f" + plan_to_string(spec.plan);
  return mix_seed(master_seed, fnv1a(identity.data(), identity.size()));
}

// Runs every cell; individual failures are recorded in their report and the
// grid continues. Reports come back in request order. Cells are independent,
// so jobs > 1 fans them out across threads without changing any result.
inline std::vector<EvaluationReport> run_grid(
    const std::vector<ExperimentSpec>& experiments, CorpusProvider& corpora,
    std::uint64_t master_seed, std::size_t jobs = 1) {
  std::vector<EvaluationReport> reports(experiments.size());

  auto run_cell = [&](std::size_t i) {
    const ExperimentSpec& spec = experiments[i];
    std::uint64_t cell_seed = derive_cell_seed(master_seed, spec);
    try {
      corpora.check_not_failed(spec.dataset);
      const Corpus& corpus = corpora.get(spec.dataset);
      reports[i] = run_experiment(corpus, spec.plan, spec.vectorizer,
                                  spec.classifier, cell_seed, spec.vectorizer_id,
                                  spec.classifier_id);
      reports[i].dataset = spec.dataset;
    } catch (const Error& e) {
      EvaluationReport& r = reports[i];
      r.dataset = spec.dataset;
      r.vectorizer_id = spec.vectorizer_id.empty()
                            ? vectorizer_kind_name(spec.vectorizer)
                            : spec.vectorizer_id;
      r.classifier_id = spec.classifier_id.empty()
                            ? classifier_kind_name(spec.classifier)
                            : spec.classifier_id;
      r.plan = plan_to_string(spec.plan);
      r.seed = cell_seed;
      r.ok = false;
      r.error = e.what();
    }
  };

  if (jobs <= 1) {
    for (std::size_t i = 0; i < experiments.size(); ++i) run_cell(i);
    return reports;
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= experiments.size()) break;
      run_cell(i);
    }
  };
  std::vector<std::thread> threads;
  for (std::size_t t = 0; t < std::min(jobs, experiments.size()); ++t)
    threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  return reports;
}

}  // namespace sentivec
