#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "sentivec/errors.hpp"
#include "sentivec/preprocess.hpp"
#include "sentivec/rng.hpp"
#include "sentivec/vectors.hpp"

namespace sentivec {

struct Doc2VecConfig {
  std::size_t min_count = 1;    // minimum corpus frequency for a word
  std::size_t window = 10;      // max distance between target and context
  std::size_t vector_size = 100;
  double sample = 1e-4;         // subsampling threshold; 0 disables
  std::size_t negative = 5;     // noise words per positive example
  std::size_t workers = 1;      // >1 trains lock-free over shared matrices
  bool dm = true;               // true: PV-DM, false: PV-DBOW
  std::size_t epochs = 20;
  double learning_rate = 0.025;
  double min_learning_rate = 1e-4;
  double noise_exponent = 0.75;  // unigram distribution power
  bool dynamic_window = false;   // sample effective window in [1, window]
  std::uint64_t seed = 1;

  bool operator==(const Doc2VecConfig&) const = default;
};

// Word vocabulary with raw corpus frequencies; indices are lexicographic.
class D2vVocab {
 public:
  D2vVocab() = default;

  D2vVocab(std::vector<std::pair<std::string, std::size_t>> term_freqs,
           std::size_t total_tokens)
      : total_tokens_(total_tokens) {
    for (auto& [term, freq] : term_freqs) {
      if (!terms_.empty() && term <= terms_.back())
        throw ArgumentError("D2vVocab: terms must be sorted and unique");
      index_.emplace(term, static_cast<std::uint32_t>(terms_.size()));
      terms_.push_back(std::move(term));
      freq_.push_back(freq);
    }
  }

  std::size_t size() const { return terms_.size(); }
  std::size_t total_tokens() const { return total_tokens_; }

  std::optional<std::uint32_t> index_of(std::string_view term) const {
    auto it = index_.find(std::string(term));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  const std::string& term(std::uint32_t index) const { return terms_.at(index); }
  std::size_t frequency(std::uint32_t index) const { return freq_.at(index); }

  // Corpus-relative frequency of the term.
  double relative_frequency(std::uint32_t index) const {
    return static_cast<double>(freq_.at(index)) /
           static_cast<double>(total_tokens_);
  }

  std::uint64_t fingerprint() const {
    std::uint64_t h = fnv1a(&total_tokens_, sizeof(total_tokens_));
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      h = fnv1a(terms_[i].data(), terms_[i].size(), h);
      h = fnv1a(&freq_[i], sizeof(freq_[i]), h);
    }
    return h;
  }

 private:
  std::vector<std::string> terms_;
  std::vector<std::size_t> freq_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::size_t total_tokens_ = 0;
};

// Three-layer network state: input word vectors, per-document vectors, and
// the output (prediction) layer, plus the noise distribution for sampling.
struct EmbeddingModel {
  Doc2VecConfig config;
  D2vVocab vocab;
  std::vector<double> noise_distribution;  // sums to 1
  Matrix word_vectors;                     // |vocab| x vector_size
  Matrix doc_vectors;                      // n_docs x vector_size
  Matrix output_weights;                   // |vocab| x vector_size
  std::vector<double> epoch_losses;        // mean loss per epoch, in order

  std::uint64_t fingerprint() const {
    std::uint64_t h = vocab.fingerprint();
    h = fnv1a(word_vectors.data.data(), word_vectors.data.size() * sizeof(double), h);
    h = fnv1a(doc_vectors.data.data(), doc_vectors.data.size() * sizeof(double), h);
    h = fnv1a(output_weights.data.data(),
              output_weights.data.size() * sizeof(double), h);
    return h;
  }
};

// Keeps words with corpus frequency >= min_count; the noise distribution is
// the retained words' frequency raised to `noise_exponent`, normalized.
inline std::pair<D2vVocab, std::vector<double>> build_d2v_vocab(
    const std::vector<TokenizedDocument>& docs, const Doc2VecConfig& config) {
  if (docs.empty()) throw ArgumentError("build_d2v_vocab: no documents");
  std::map<std::string, std::size_t> freq;
  for (const auto& doc : docs)
    for (const auto& token : doc.tokens) ++freq[token];

  std::vector<std::pair<std::string, std::size_t>> kept;
  std::size_t total = 0;
  for (auto& [term, count] : freq) {
    if (count < config.min_count) continue;
    kept.emplace_back(term, count);
    total += count;
  }
  if (kept.empty())
    throw ComputeError("build_d2v_vocab: vocabulary is empty after min_count=" +
                       std::to_string(config.min_count));

  std::vector<double> noise(kept.size());
  double z = 0.0;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    noise[i] = std::pow(static_cast<double>(kept[i].second), config.noise_exponent);
    z += noise[i];
  }
  for (double& p : noise) p /= z;
  return {D2vVocab(std::move(kept), total), std::move(noise)};
}

// keep_prob = min(1, sqrt(sample/f) + sample/f) with f the corpus-relative
// frequency; sample = 0 disables subsampling.
inline double subsample_keep_probability(std::uint32_t term_index,
                                         const D2vVocab& vocab, double sample) {
  if (sample <= 0.0) return 1.0;
  double f = vocab.relative_frequency(term_index);
  if (f <= 0.0) return 1.0;
  double r = sample / f;
  return std::min(1.0, std::sqrt(r) + r);
}

inline double subsample_keep_probability(std::string_view term,
                                         const D2vVocab& vocab, double sample) {
  auto idx = vocab.index_of(term);
  if (!idx)
    throw ArgumentError("subsample_keep_probability: term not in vocabulary: \"" +
                        std::string(term) + "\"");
  return subsample_keep_probability(*idx, vocab, sample);
}

namespace d2v_detail {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// -ln(sigmoid(x)) = softplus(-x), computed without overflow.
inline double neg_log_sigmoid(double x) {
  if (x >= 0.0) return std::log1p(std::exp(-x));
  return -x + std::log1p(std::exp(x));
}

}  // namespace d2v_detail

struct NsGradients {
  double loss = 0.0;
  DenseVector grad_input;  // dL/dh
  std::vector<std::pair<std::uint32_t, DenseVector>> grad_output_rows;
};

// Negative-sampling objective for one (input, target, noise set) example:
//   L = -ln s(u_target . h) - sum_noise ln s(-u_noise . h)
// with exact analytic gradients for h and every touched output row.
inline NsGradients negative_sampling_loss_and_grads(
    std::span<const double> input, std::uint32_t target,
    std::span<const std::uint32_t> noise, const Matrix& output_weights) {
  const std::size_t dim = output_weights.cols;
  if (input.size() != dim)
    throw ArgumentError("negative_sampling_loss_and_grads: dimension mismatch");

  NsGradients out;
  out.grad_input = DenseVector(dim);
  out.grad_output_rows.reserve(noise.size() + 1);

  auto accumulate = [&](std::uint32_t row_index, double label) {
    auto row = output_weights.row(row_index);
    double z = 0.0;
    for (std::size_t i = 0; i < dim; ++i) z += row[i] * input[i];
    // label 1 for the target, 0 for noise
    out.loss += label > 0.5 ? d2v_detail::neg_log_sigmoid(z)
                            : d2v_detail::neg_log_sigmoid(-z);
    double g = d2v_detail::sigmoid(z) - label;  // dL/dz
    DenseVector grad_row(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      grad_row[i] = g * input[i];
      out.grad_input[i] += g * row[i];
    }
    out.grad_output_rows.emplace_back(row_index, std::move(grad_row));
  };

  accumulate(target, 1.0);
  for (std::uint32_t n : noise) accumulate(n, 0.0);
  return out;
}

namespace d2v_detail {

struct NoiseSampler {
  std::vector<double> cumulative;

  explicit NoiseSampler(const std::vector<double>& distribution) {
    cumulative.reserve(distribution.size());
    double acc = 0.0;
    for (double p : distribution) {
      acc += p;
      cumulative.push_back(acc);
    }
    if (!cumulative.empty()) cumulative.back() = 1.0;
  }

  std::uint32_t draw(Rng& rng) const {
    double u = uniform01(rng);
    auto it = std::lower_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) --it;
    return static_cast<std::uint32_t>(it - cumulative.begin());
  }

  // Draws avoiding `target`; single-word vocabularies yield no noise.
  void draw_avoiding(Rng& rng, std::uint32_t target, std::size_t count,
                     std::vector<std::uint32_t>& out) const {
    out.clear();
    if (cumulative.size() <= 1) return;
    while (out.size() < count) {
      std::uint32_t w = draw(rng);
      if (w == target) continue;
      out.push_back(w);
    }
  }
};

// Tokens mapped to vocab ids with per-token subsampling. One uniform draw is
// consumed per in-vocabulary token regardless of `sample` so the RNG schedule
// depends only on the token multiset.
inline void surviving_token_ids(const TokenizedDocument& doc, const D2vVocab& vocab,
                                double sample, Rng& rng,
                                std::vector<std::uint32_t>& out) {
  out.clear();
  for (const auto& token : doc.tokens) {
    auto idx = vocab.index_of(token);
    if (!idx) continue;
    double u = uniform01(rng);
    if (u < subsample_keep_probability(*idx, vocab, sample)) out.push_back(*idx);
  }
}

struct UpdateScratch {
  std::vector<std::uint32_t> surviving;
  std::vector<std::uint32_t> noise;
  std::vector<double> hidden;
  std::vector<double> grad_h;
  std::vector<double*> context_rows;
};

// Processes one document: for every surviving target, forms the input h
// (PV-DM: mean of doc vector and context word vectors; PV-DBOW: doc vector
// alone), computes the negative-sampling gradients and applies SGD updates.
// `doc_row` may live outside the model (used for inference); when
// `freeze_words` is set only `doc_row` is written.
inline std::pair<double, std::size_t> train_document(
    Matrix& word_vectors, Matrix& output_weights, std::span<double> doc_row,
    const TokenizedDocument& doc, const D2vVocab& vocab,
    const NoiseSampler& sampler, const Doc2VecConfig& config, double alpha,
    bool freeze_words, Rng& rng, UpdateScratch& scratch) {
  const std::size_t dim = config.vector_size;
  surviving_token_ids(doc, vocab, config.sample, rng, scratch.surviving);
  const auto& ids = scratch.surviving;

  double loss_sum = 0.0;
  std::size_t examples = 0;

  for (std::size_t pos = 0; pos < ids.size(); ++pos) {
    std::uint32_t target = ids[pos];

    scratch.context_rows.clear();
    if (config.dm) {
      std::size_t window = config.window;
      if (config.dynamic_window) window = 1 + bounded(rng, config.window);
      std::size_t lo = pos > window ? pos - window : 0;
      std::size_t hi = std::min(ids.size(), pos + window + 1);
      for (std::size_t j = lo; j < hi; ++j) {
        if (j == pos) continue;
        scratch.context_rows.push_back(word_vectors.row(ids[j]).data());
      }
    }

    // h = mean of doc vector and context vectors (DM), or doc vector (DBOW)
    scratch.hidden.assign(doc_row.begin(), doc_row.end());
    for (const double* row : scratch.context_rows)
      for (std::size_t i = 0; i < dim; ++i) scratch.hidden[i] += row[i];
    double inv_inputs = 1.0 / static_cast<double>(1 + scratch.context_rows.size());
    for (std::size_t i = 0; i < dim; ++i) scratch.hidden[i] *= inv_inputs;

    sampler.draw_avoiding(rng, target, config.negative, scratch.noise);

    // Inlined gradient computation; accumulates dL/dh and updates output rows.
    scratch.grad_h.assign(dim, 0.0);
    double loss = 0.0;
    auto example = [&](std::uint32_t row_index, double label) {
      auto row = output_weights.row(row_index);
      double z = 0.0;
      for (std::size_t i = 0; i < dim; ++i) z += row[i] * scratch.hidden[i];
      loss += label > 0.5 ? neg_log_sigmoid(z) : neg_log_sigmoid(-z);
      double g = sigmoid(z) - label;
      for (std::size_t i = 0; i < dim; ++i) {
        scratch.grad_h[i] += g * row[i];
        if (!freeze_words) row[i] -= alpha * g * scratch.hidden[i];
      }
    };
    example(target, 1.0);
    for (std::uint32_t n : scratch.noise) example(n, 0.0);

    // Distribute dL/dh across the contributing input vectors.
    double scale = alpha * inv_inputs;
    for (std::size_t i = 0; i < dim; ++i)
      doc_row[i] -= scale * scratch.grad_h[i];
    if (!freeze_words) {
      for (double* crow : scratch.context_rows)
        for (std::size_t i = 0; i < dim; ++i)
          crow[i] -= scale * scratch.grad_h[i];
    }

    loss_sum += loss;
    ++examples;
  }
  return {loss_sum, examples};
}

inline double epoch_alpha(const Doc2VecConfig& config, std::size_t epoch) {
  if (config.epochs <= 1) return config.learning_rate;
  double t = static_cast<double>(epoch) / static_cast<double>(config.epochs);
  double a = config.learning_rate -
             (config.learning_rate - config.min_learning_rate) * t;
  return std::max(a, config.min_learning_rate);
}

}  // namespace d2v_detail

// Trains word/document embeddings with SGD over the negative-sampling
// objective. Deterministic for workers == 1 and a fixed seed; workers > 1
// updates shared matrices without locks, so results vary run to run but the
// loss/finiteness guarantees still hold.
inline EmbeddingModel train(const std::vector<TokenizedDocument>& docs,
                            const Doc2VecConfig& config) {
  if (config.vector_size < 1) throw ArgumentError("train: vector_size must be >= 1");
  if (config.epochs < 1) throw ArgumentError("train: epochs must be >= 1");
  if (config.dm && config.window < 1)
    throw ArgumentError("train: window must be >= 1");

  EmbeddingModel model;
  model.config = config;
  auto [vocab, noise] = build_d2v_vocab(docs, config);
  model.vocab = std::move(vocab);
  model.noise_distribution = std::move(noise);

  const std::size_t dim = config.vector_size;
  const std::size_t v = model.vocab.size();
  const std::size_t n = docs.size();

  model.word_vectors = Matrix(v, dim);
  model.doc_vectors = Matrix(n, dim);
  model.output_weights = Matrix(v, dim);  // zero init

  // Uniform init in [-0.5/dim, 0.5/dim); with zero output weights the first
  // example's loss is exactly (1 + negative) * ln 2.
  Rng init_rng(mix_seed(config.seed, 0x696e6974));
  double half = 0.5 / static_cast<double>(dim);
  for (double& x : model.word_vectors.data) x = uniform_real(init_rng, -half, half);
  for (double& x : model.doc_vectors.data) x = uniform_real(init_rng, -half, half);

  d2v_detail::NoiseSampler sampler(model.noise_distribution);

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;

  Rng shuffle_rng(mix_seed(config.seed, 0x73687566));
  const std::size_t workers = std::max<std::size_t>(1, config.workers);

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    shuffle_in_place(order, shuffle_rng);
    double alpha = d2v_detail::epoch_alpha(config, epoch);

    double loss_sum = 0.0;
    std::size_t example_count = 0;

    auto run_chunk = [&](std::size_t begin, std::size_t end, std::uint64_t rng_stream,
                         double& chunk_loss, std::size_t& chunk_examples) {
      Rng rng(mix_seed(config.seed, rng_stream));
      d2v_detail::UpdateScratch scratch;
      for (std::size_t i = begin; i < end; ++i) {
        std::size_t doc_index = order[i];
        auto [l, e] = d2v_detail::train_document(
            model.word_vectors, model.output_weights,
            model.doc_vectors.row(doc_index), docs[doc_index], model.vocab, sampler,
            config, alpha, /*freeze_words=*/false, rng, scratch);
        chunk_loss += l;
        chunk_examples += e;
      }
    };

    if (workers == 1) {
      run_chunk(0, n, 0x10000 + epoch, loss_sum, example_count);
    } else {
      std::vector<std::thread> threads;
      std::vector<double> losses(workers, 0.0);
      std::vector<std::size_t> counts(workers, 0);
      std::size_t chunk = (n + workers - 1) / workers;
      for (std::size_t w = 0; w < workers; ++w) {
        std::size_t begin = std::min(n, w * chunk);
        std::size_t end = std::min(n, begin + chunk);
        threads.emplace_back(run_chunk, begin, end,
                             0x20000 + epoch * workers + w, std::ref(losses[w]),
                             std::ref(counts[w]));
      }
      for (auto& t : threads) t.join();
      for (std::size_t w = 0; w < workers; ++w) {
        loss_sum += losses[w];
        example_count += counts[w];
      }
    }

    double mean_loss =
        example_count > 0 ? loss_sum / static_cast<double>(example_count) : 0.0;
    if (!std::isfinite(mean_loss))
      throw ComputeError("doc2vec training diverged at epoch " +
                         std::to_string(epoch + 1) + " (non-finite loss)");
    model.epoch_losses.push_back(mean_loss);
  }

  if (!model.word_vectors.all_finite() || !model.doc_vectors.all_finite() ||
      !model.output_weights.all_finite())
    throw ComputeError("doc2vec training produced non-finite parameters");
  return model;
}

struct InferredVector {
  DenseVector vector;
  bool had_vocab_tokens = true;
};

// Embeds an unseen document: fresh random vector, `steps` SGD passes over the
// document with word and output weights frozen. Never mutates the model.
inline InferredVector infer_vector(const TokenizedDocument& doc,
                                   const EmbeddingModel& model, std::size_t steps,
                                   std::uint64_t seed) {
  const auto& config = model.config;
  const std::size_t dim = config.vector_size;

  bool any_in_vocab = false;
  for (const auto& token : doc.tokens)
    if (model.vocab.index_of(token)) {
      any_in_vocab = true;
      break;
    }
  if (!any_in_vocab) return {DenseVector(dim), false};

  Rng rng(mix_seed(seed, 0x696e666572));
  DenseVector vec(dim);
  double half = 0.5 / static_cast<double>(dim);
  for (double& x : vec.values) x = uniform_real(rng, -half, half);

  d2v_detail::NoiseSampler sampler(model.noise_distribution);
  d2v_detail::UpdateScratch scratch;
  // Word and output matrices are logically frozen; train_document writes only
  // through doc_row when freeze_words is set.
  auto& words = const_cast<Matrix&>(model.word_vectors);
  auto& outputs = const_cast<Matrix&>(model.output_weights);

  for (std::size_t step = 0; step < steps; ++step) {
    double t = steps > 1 ? static_cast<double>(step) / static_cast<double>(steps)
                         : 0.0;
    double alpha = config.learning_rate -
                   (config.learning_rate - config.min_learning_rate) * t;
    alpha = std::max(alpha, config.min_learning_rate);
    d2v_detail::train_document(words, outputs, std::span<double>(vec.values), doc,
                               model.vocab, sampler, config, alpha,
                               /*freeze_words=*/true, rng, scratch);
  }
  return {std::move(vec), true};
}

// --- model serialization (versioned binary format, lossless) ---

namespace d2v_detail {

inline void write_u64(std::ostream& out, std::uint64_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

inline void write_f64(std::ostream& out, double v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

inline std::uint64_t read_u64(std::istream& in) {
  std::uint64_t v = 0;
  in.read(reinterpret_cast<char*>(&v), sizeof(v));
  if (!in) throw DataError("doc2vec model file truncated");
  return v;
}

inline double read_f64(std::istream& in) {
  double v = 0;
  in.read(reinterpret_cast<char*>(&v), sizeof(v));
  if (!in) throw DataError("doc2vec model file truncated");
  return v;
}

inline void write_matrix(std::ostream& out, const Matrix& m) {
  write_u64(out, m.rows);
  write_u64(out, m.cols);
  out.write(reinterpret_cast<const char*>(m.data.data()),
            static_cast<std::streamsize>(m.data.size() * sizeof(double)));
}

inline Matrix read_matrix(std::istream& in) {
  Matrix m;
  m.rows = read_u64(in);
  m.cols = read_u64(in);
  m.data.resize(m.rows * m.cols);
  in.read(reinterpret_cast<char*>(m.data.data()),
          static_cast<std::streamsize>(m.data.size() * sizeof(double)));
  if (!in) throw DataError("doc2vec model file truncated");
  return m;
}

}  // namespace d2v_detail

inline void save_model(const EmbeddingModel& model, std::ostream& out) {
  using namespace d2v_detail;
  out.write("SVD2V001", 8);
  const auto& c = model.config;
  write_u64(out, c.min_count);
  write_u64(out, c.window);
  write_u64(out, c.vector_size);
  write_f64(out, c.sample);
  write_u64(out, c.negative);
  write_u64(out, c.workers);
  write_u64(out, c.dm ? 1 : 0);
  write_u64(out, c.epochs);
  write_f64(out, c.learning_rate);
  write_f64(out, c.min_learning_rate);
  write_f64(out, c.noise_exponent);
  write_u64(out, c.dynamic_window ? 1 : 0);
  write_u64(out, c.seed);

  write_u64(out, model.vocab.size());
  write_u64(out, model.vocab.total_tokens());
  for (std::uint32_t i = 0; i < model.vocab.size(); ++i) {
    const std::string& term = model.vocab.term(i);
    write_u64(out, term.size());
    out.write(term.data(), static_cast<std::streamsize>(term.size()));
    write_u64(out, model.vocab.frequency(i));
  }
  write_u64(out, model.noise_distribution.size());
  for (double p : model.noise_distribution) write_f64(out, p);

  write_matrix(out, model.word_vectors);
  write_matrix(out, model.doc_vectors);
  write_matrix(out, model.output_weights);

  write_u64(out, model.epoch_losses.size());
  for (double l : model.epoch_losses) write_f64(out, l);
}

inline void save_model(const EmbeddingModel& model,
                       const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write doc2vec model file: " + path.string());
  save_model(model, out);
}

inline EmbeddingModel load_model(std::istream& in) {
  using namespace d2v_detail;
  char magic[8];
  in.read(magic, 8);
  if (!in || std::string_view(magic, 8) != "SVD2V001")
    throw DataError("not a SVD2V001 doc2vec model file");

  EmbeddingModel model;
  auto& c = model.config;
  c.min_count = read_u64(in);
  c.window = read_u64(in);
  c.vector_size = read_u64(in);
  c.sample = read_f64(in);
  c.negative = read_u64(in);
  c.workers = read_u64(in);
  c.dm = read_u64(in) != 0;
  c.epochs = read_u64(in);
  c.learning_rate = read_f64(in);
  c.min_learning_rate = read_f64(in);
  c.noise_exponent = read_f64(in);
  c.dynamic_window = read_u64(in) != 0;
  c.seed = read_u64(in);

  std::size_t v = read_u64(in);
  std::size_t total = read_u64(in);
  std::vector<std::pair<std::string, std::size_t>> term_freqs;
  term_freqs.reserve(v);
  for (std::size_t i = 0; i < v; ++i) {
    std::size_t len = read_u64(in);
    std::string term(len, '\0');
    in.read(term.data(), static_cast<std::streamsize>(len));
    if (!in) throw DataError("doc2vec model file truncated");
    std::size_t freq = read_u64(in);
    term_freqs.emplace_back(std::move(term), freq);
  }
  model.vocab = D2vVocab(std::move(term_freqs), total);

  std::size_t nd = read_u64(in);
  model.noise_distribution.resize(nd);
  for (double& p : model.noise_distribution) p = read_f64(in);

  model.word_vectors = read_matrix(in);
  model.doc_vectors = read_matrix(in);
  model.output_weights = read_matrix(in);

  std::size_t nl = read_u64(in);
  model.epoch_losses.resize(nl);
  for (double& l : model.epoch_losses) l = read_f64(in);
  return model;
}

inline EmbeddingModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open doc2vec model file: " + path.string());
  return load_model(in);
}

}  // namespace sentivec
