#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sentivec/doc2vec.hpp"
#include "synthetic.hpp"
#include "test_helpers.hpp"

using namespace sentivec;
using testsup::tokdoc;

TEST_CASE("build_d2v_vocab retains by min_count") {
  std::vector<TokenizedDocument> docs = {
      tokdoc({"a", "a", "a", "b"}, Polarity::Positive, 0)};

  Doc2VecConfig config;
  config.min_count = 1;
  auto [vocab_all, noise_all] = build_d2v_vocab(docs, config);
  CHECK(vocab_all.size() == 2);  // every distinct token retained

  config.min_count = 2;
  auto [vocab_cut, noise_cut] = build_d2v_vocab(docs, config);
  CHECK(vocab_cut.size() == 1);
  CHECK(vocab_cut.index_of("a").has_value());
  CHECK_FALSE(vocab_cut.index_of("b").has_value());

  config.min_count = 10;
  CHECK_THROWS_AS(build_d2v_vocab(docs, config), ComputeError);
  CHECK_THROWS_AS(build_d2v_vocab({}, config), ArgumentError);
}

TEST_CASE("noise distribution follows frequency to the 0.75") {
  // freqs {a: 16, b: 1}: 16^0.75 = 8, so p(a) = 8/9, p(b) = 1/9.
  std::vector<TokenizedDocument> docs;
  std::vector<Token> tokens(16, "a");
  tokens.push_back("b");
  docs.push_back(tokdoc(tokens, Polarity::Positive, 0));

  Doc2VecConfig config;
  auto [vocab, noise] = build_d2v_vocab(docs, config);
  REQUIRE(noise.size() == 2);
  std::uint32_t a = *vocab.index_of("a");
  std::uint32_t b = *vocab.index_of("b");
  CHECK(noise[a] == Catch::Approx(8.0 / 9.0).epsilon(1e-12));
  CHECK(noise[b] == Catch::Approx(1.0 / 9.0).epsilon(1e-12));

  double sum = 0.0;
  for (double p : noise) sum += p;
  CHECK(std::abs(sum - 1.0) < 1e-9);
}

TEST_CASE("subsample_keep_probability") {
  // One doc, f("a") = 1/2.
  auto docs =
      std::vector<TokenizedDocument>{tokdoc({"a", "b"}, Polarity::Positive, 0)};
  Doc2VecConfig config;
  auto [vocab, noise] = build_d2v_vocab(docs, config);

  CHECK(subsample_keep_probability("a", vocab, 0.0) == 1.0);  // disabled
  CHECK(subsample_keep_probability("a", vocab, 0.5) == 1.0);  // f == sample
  // f = 100 * sample: sqrt(0.01) + 0.01 = 0.11
  CHECK(subsample_keep_probability("a", vocab, 0.005) ==
        Catch::Approx(0.11).epsilon(1e-12));
  CHECK_THROWS_AS(subsample_keep_probability("zz", vocab, 0.1), ArgumentError);
}

TEST_CASE("negative sampling loss at h = 0 is (1 + noise) ln 2") {
  Matrix output(4, 3);
  for (std::size_t i = 0; i < output.data.size(); ++i)
    output.data[i] = 0.1 * static_cast<double>(i);  // arbitrary; z stays 0

  std::vector<double> h(3, 0.0);
  std::vector<std::uint32_t> noise = {1, 2};
  auto grads = negative_sampling_loss_and_grads(h, 0, noise, output);
  CHECK(grads.loss == Catch::Approx(3.0 * std::log(2.0)).epsilon(1e-12));

  auto target_only =
      negative_sampling_loss_and_grads(h, 0, std::span<const std::uint32_t>{}, output);
  CHECK(target_only.loss == Catch::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(target_only.grad_output_rows.size() == 1);
}

TEST_CASE("analytic gradients match central finite differences") {
  Rng rng(555);
  const double eps = 1e-5;
  const std::size_t dim = 5;

  auto loss_of = [](std::span<const double> h, std::uint32_t target,
                    std::span<const std::uint32_t> noise, const Matrix& w) {
    return negative_sampling_loss_and_grads(h, target, noise, w).loss;
  };

  for (int instance = 0; instance < 120; ++instance) {
    Matrix output(6, dim);
    for (double& x : output.data) x = uniform_real(rng, -1.0, 1.0);
    std::vector<double> h(dim);
    for (double& x : h) x = uniform_real(rng, -1.0, 1.0);

    auto target = static_cast<std::uint32_t>(bounded(rng, 6));
    std::vector<std::uint32_t> noise;
    for (std::uint32_t c = 0; c < 6 && noise.size() < 3; ++c)
      if (c != target && bounded(rng, 2) == 0) noise.push_back(c);

    auto grads = negative_sampling_loss_and_grads(h, target, noise, output);
    CHECK(grads.loss >= 0.0);
    CHECK(std::isfinite(grads.loss));

    auto rel_err = [](double analytic, double numeric) {
      return std::abs(analytic - numeric) /
             std::max({1.0, std::abs(analytic), std::abs(numeric)});
    };

    // d loss / d h
    for (std::size_t i = 0; i < dim; ++i) {
      std::vector<double> hp = h, hm = h;
      hp[i] += eps;
      hm[i] -= eps;
      double numeric =
          (loss_of(hp, target, noise, output) - loss_of(hm, target, noise, output)) /
          (2.0 * eps);
      CHECK(rel_err(grads.grad_input[i], numeric) < 1e-5);
    }

    // d loss / d output rows (target and noise rows)
    for (const auto& [row, grad] : grads.grad_output_rows) {
      for (std::size_t i = 0; i < dim; ++i) {
        Matrix wp = output, wm = output;
        wp.row(row)[i] += eps;
        wm.row(row)[i] -= eps;
        double numeric =
            (loss_of(h, target, noise, wp) - loss_of(h, target, noise, wm)) /
            (2.0 * eps);
        CHECK(rel_err(grad[i], numeric) < 1e-5);
      }
    }
  }
}

namespace {

Doc2VecConfig tiny_config(bool dm) {
  Doc2VecConfig config;
  config.min_count = 1;
  config.window = 4;
  config.vector_size = 16;
  config.sample = 0.0;
  config.negative = 5;
  config.workers = 1;
  config.dm = dm;
  config.epochs = 50;
  config.learning_rate = 0.05;
  config.seed = 12345;
  return config;
}

}  // namespace

TEST_CASE("training loss decreases on the tiny separable corpus") {
  auto corpus = testsup::make_tiny_two_vocab_corpus();
  for (bool dm : {false, true}) {
    INFO("dm = " << dm);
    EmbeddingModel model = train(corpus.train, tiny_config(dm));
    REQUIRE(model.epoch_losses.size() == 50);
    for (std::size_t e = 1; e < 5; ++e) {
      INFO("epoch " << e);
      CHECK(model.epoch_losses[e] < model.epoch_losses[e - 1]);
    }
    for (double loss : model.epoch_losses) {
      CHECK(loss >= 0.0);
      CHECK(std::isfinite(loss));
    }
  }
}

TEST_CASE("training is bitwise deterministic with workers = 1") {
  auto corpus = testsup::make_tiny_two_vocab_corpus();
  EmbeddingModel a = train(corpus.train, tiny_config(true));
  EmbeddingModel b = train(corpus.train, tiny_config(true));
  CHECK(a.doc_vectors.data == b.doc_vectors.data);
  CHECK(a.word_vectors.data == b.word_vectors.data);
  CHECK(a.output_weights.data == b.output_weights.data);
  CHECK(a.epoch_losses == b.epoch_losses);

  auto different_seed = tiny_config(true);
  different_seed.seed = 999;
  EmbeddingModel c = train(corpus.train, different_seed);
  CHECK(a.doc_vectors.data != c.doc_vectors.data);
}

TEST_CASE("doc vector matrix has the configured shape") {
  auto corpus = testsup::make_tiny_two_vocab_corpus();
  auto config = tiny_config(false);
  config.vector_size = 100;
  config.epochs = 2;
  EmbeddingModel model = train(corpus.train, config);
  CHECK(model.doc_vectors.rows == corpus.train.size());
  CHECK(model.doc_vectors.cols == 100);
  CHECK(model.word_vectors.cols == 100);
  CHECK(model.output_weights.rows == model.vocab.size());
}

TEST_CASE("hogwild training keeps the loss invariants") {
  auto corpus = testsup::make_tiny_two_vocab_corpus();
  auto config = tiny_config(true);
  config.workers = 3;
  config.epochs = 10;
  EmbeddingModel model = train(corpus.train, config);
  REQUIRE(model.epoch_losses.size() == 10);
  for (double loss : model.epoch_losses) {
    CHECK(loss >= 0.0);
    CHECK(std::isfinite(loss));
  }
  CHECK(model.doc_vectors.all_finite());
}

TEST_CASE("training diverges loudly on an absurd learning rate") {
  auto corpus = testsup::make_tiny_two_vocab_corpus();
  auto config = tiny_config(true);
  config.learning_rate = 1e200;
  config.min_learning_rate = 1e200;
  config.epochs = 5;
  CHECK_THROWS_WITH(train(corpus.train, config),
                    Catch::Matchers::ContainsSubstring("epoch"));
}

TEST_CASE("infer_vector is deterministic and leaves the model alone") {
  auto corpus = testsup::make_tiny_two_vocab_corpus();
  EmbeddingModel model = train(corpus.train, tiny_config(false));
  std::uint64_t before = model.fingerprint();

  auto a = infer_vector(corpus.held_out[0], model, 20, 7);
  auto b = infer_vector(corpus.held_out[0], model, 20, 7);
  CHECK(a.had_vocab_tokens);
  CHECK(a.vector == b.vector);
  CHECK(model.fingerprint() == before);

  auto c = infer_vector(corpus.held_out[0], model, 20, 8);
  CHECK(a.vector != c.vector);
}

TEST_CASE("infer_vector with zero steps returns the random initialization") {
  auto corpus = testsup::make_tiny_two_vocab_corpus();
  auto config = tiny_config(false);
  config.epochs = 2;
  EmbeddingModel model = train(corpus.train, config);

  auto init = infer_vector(corpus.held_out[0], model, 0, 3);
  CHECK(init.had_vocab_tokens);
  double half = 0.5 / static_cast<double>(config.vector_size);
  bool any_nonzero = false;
  for (double v : init.vector.values) {
    CHECK(std::abs(v) <= half);
    if (v != 0.0) any_nonzero = true;
  }
  CHECK(any_nonzero);
  CHECK(infer_vector(corpus.held_out[0], model, 0, 3).vector == init.vector);
}

TEST_CASE("infer_vector flags documents with no vocabulary tokens") {
  auto corpus = testsup::make_tiny_two_vocab_corpus();
  auto config = tiny_config(false);
  config.epochs = 2;
  EmbeddingModel model = train(corpus.train, config);

  auto oov = infer_vector(tokdoc({"zebra", "quark"}), model, 20, 5);
  CHECK_FALSE(oov.had_vocab_tokens);
  for (double v : oov.vector.values) CHECK(v == 0.0);
}

TEST_CASE("re-inferring a training document lands near its trained vector") {
  auto corpus = testsup::make_tiny_two_vocab_corpus();
  EmbeddingModel model = train(corpus.train, tiny_config(false));

  // Mean trained vector of the opposite (Negative) class.
  DenseVector opposite_mean(model.config.vector_size);
  std::size_t count = 0;
  for (std::size_t i = 0; i < corpus.train.size(); ++i) {
    if (corpus.train[i].label != Polarity::Negative) continue;
    auto row = model.doc_vectors.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) opposite_mean[j] += row[j];
    ++count;
  }
  for (double& v : opposite_mean.values) v /= static_cast<double>(count);

  // Document 0 is Positive and appears verbatim in training.
  auto inferred = infer_vector(corpus.train[0], model, 50, 11);
  DenseVector trained = model.doc_vectors.row_vector(0);
  CHECK(cosine_similarity(inferred.vector, trained) >
        cosine_similarity(inferred.vector, opposite_mean));
}

TEST_CASE("PV-DBOW updates ignore token positions") {
  auto corpus = testsup::make_tiny_two_vocab_corpus();
  auto config = tiny_config(false);
  config.epochs = 2;
  EmbeddingModel model = train(corpus.train, config);

  // With parameters frozen and no noise words, the per-position update for a
  // target is a pure function of the target id, so a permuted document
  // produces an identical multiset of (loss, gradient) updates.
  std::vector<Token> tokens = {"apple", "banana", "cherry", "apple", "fig"};
  std::vector<Token> permuted = {"fig", "apple", "cherry", "banana", "apple"};

  auto updates_of = [&](const std::vector<Token>& sequence) {
    std::vector<std::pair<std::uint32_t, NsGradients>> updates;
    DenseVector h = model.doc_vectors.row_vector(0);
    for (const auto& token : sequence) {
      auto idx = model.vocab.index_of(token);
      REQUIRE(idx.has_value());
      updates.emplace_back(
          *idx, negative_sampling_loss_and_grads(
                    h.values, *idx, std::span<const std::uint32_t>{},
                    model.output_weights));
    }
    std::sort(updates.begin(), updates.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return updates;
  };

  auto a = updates_of(tokens);
  auto b = updates_of(permuted);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].first == b[i].first);
    CHECK(a[i].second.loss == b[i].second.loss);  // bitwise: same pure function
    CHECK(a[i].second.grad_input.values == b[i].second.grad_input.values);
  }
}

TEST_CASE("embedding model serialization round-trips losslessly") {
  auto corpus = testsup::make_tiny_two_vocab_corpus();
  auto config = tiny_config(true);
  config.epochs = 5;
  EmbeddingModel model = train(corpus.train, config);

  std::stringstream buffer;
  save_model(model, buffer);
  EmbeddingModel loaded = load_model(buffer);

  CHECK(loaded.fingerprint() == model.fingerprint());
  CHECK(loaded.word_vectors.data == model.word_vectors.data);
  CHECK(loaded.doc_vectors.data == model.doc_vectors.data);
  CHECK(loaded.output_weights.data == model.output_weights.data);
  CHECK(loaded.epoch_losses == model.epoch_losses);
  CHECK(loaded.noise_distribution == model.noise_distribution);
  CHECK(loaded.config == model.config);
  CHECK(loaded.vocab.size() == model.vocab.size());
  CHECK(loaded.vocab.total_tokens() == model.vocab.total_tokens());

  // Inference through the loaded model reproduces the original bit for bit.
  auto a = infer_vector(corpus.held_out[1], model, 10, 21);
  auto b = infer_vector(corpus.held_out[1], loaded, 10, 21);
  CHECK(a.vector == b.vector);

  std::stringstream garbage("BADMAGIC");
  CHECK_THROWS_AS(load_model(garbage), DataError);
}
