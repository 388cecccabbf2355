#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "sentivec/tfidf.hpp"
#include "oracles.hpp"
#include "test_helpers.hpp"

using namespace sentivec;
using testsup::tokdoc;

namespace {

// {"a b", "a c", "a d"}
std::vector<TokenizedDocument> toy_corpus() {
  return {tokdoc({"a", "b"}, Polarity::Positive, 0),
          tokdoc({"a", "c"}, Polarity::Negative, 1),
          tokdoc({"a", "d"}, Polarity::Positive, 2)};
}

TfidfConfig open_config() {
  TfidfConfig config;
  config.min_df = 1;
  config.max_df = 1.0;
  config.sublinear_tf = false;
  config.use_idf = true;
  config.l2_normalize = false;
  return config;
}

}  // namespace

TEST_CASE("fit_vocabulary prunes by document frequency") {
  // 10 docs; "rare" appears in 4, "common" in 9, "mid" in 6.
  std::vector<TokenizedDocument> docs;
  for (int i = 0; i < 10; ++i) {
    std::vector<Token> tokens = {"base"};
    if (i < 4) tokens.push_back("rare");
    if (i < 9) tokens.push_back("common");
    if (i < 6) tokens.push_back("mid");
    docs.push_back(tokdoc(tokens, Polarity::Positive, i));
  }

  TfidfConfig config;
  config.min_df = 5;
  config.max_df = 0.8;  // floor(0.8 * 10) = 8
  Vocabulary vocab = fit_vocabulary(docs, config);

  CHECK_FALSE(vocab.index_of("rare").has_value());    // 4 < 5
  CHECK_FALSE(vocab.index_of("common").has_value());  // 9 > 8
  CHECK_FALSE(vocab.index_of("base").has_value());    // 10 > 8
  CHECK(vocab.index_of("mid").has_value());
  CHECK(vocab.size() == 1);
}

TEST_CASE("fit_vocabulary keeps max_df ties") {
  // floor(0.8 * 10) = 8; a term in exactly 8 docs stays.
  std::vector<TokenizedDocument> docs;
  for (int i = 0; i < 10; ++i) {
    std::vector<Token> tokens = {"anchor", "pad" + std::to_string(i)};
    if (i < 8) tokens.push_back("edge");
    docs.push_back(tokdoc(tokens, Polarity::Positive, i));
  }
  TfidfConfig config;
  config.min_df = 1;
  config.max_df = 0.8;
  Vocabulary vocab = fit_vocabulary(docs, config);
  CHECK(vocab.index_of("edge").has_value());
  CHECK_FALSE(vocab.index_of("anchor").has_value());  // df 10 > 8
}

TEST_CASE("fit_vocabulary on the toy corpus") {
  Vocabulary vocab = fit_vocabulary(toy_corpus(), open_config());
  REQUIRE(vocab.size() == 4);
  // Lexicographic indices.
  CHECK(vocab.index_of("a") == 0);
  CHECK(vocab.index_of("b") == 1);
  CHECK(vocab.index_of("c") == 2);
  CHECK(vocab.index_of("d") == 3);
  CHECK(vocab.doc_freq(0) == 3);
  CHECK(vocab.doc_freq(1) == 1);
  CHECK(vocab.n_docs() == 3);
}

TEST_CASE("fit_vocabulary errors when everything is pruned") {
  auto docs = toy_corpus();
  TfidfConfig config;
  config.min_df = 5;  // nothing reaches df 5 in 3 docs
  CHECK_THROWS_AS(fit_vocabulary(docs, config), ComputeError);
  CHECK_THROWS_AS(fit_vocabulary({}, config), ArgumentError);
}

TEST_CASE("term_frequency implements the count ratio") {
  auto doc = tokdoc({"a", "b", "a"});
  CHECK(term_frequency("a", doc) == Catch::Approx(2.0 / 3.0));
  CHECK(term_frequency("z", doc) == 0.0);
  CHECK(term_frequency("a", tokdoc({"a"})) == 1.0);
  CHECK(term_frequency("a", tokdoc({})) == 0.0);  // empty document
}

TEST_CASE("term_frequency sums to one over the document's terms") {
  auto doc = tokdoc({"x", "y", "x", "z", "x", "y"});
  double sum = term_frequency("x", doc) + term_frequency("y", doc) +
               term_frequency("z", doc);
  CHECK(sum == Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("inverse_document_frequency matches the log ratio") {
  Vocabulary vocab(100, {{"five", 5}, {"full", 100}, {"half", 50}});
  CHECK(inverse_document_frequency("full", vocab) == 0.0);  // exactly ln(1)
  CHECK(inverse_document_frequency("five", vocab) ==
        Catch::Approx(std::log(20.0)).epsilon(1e-12));  // ~2.9957
  Vocabulary two(2, {{"once", 1}});
  CHECK(inverse_document_frequency("once", two) ==
        Catch::Approx(std::log(2.0)).epsilon(1e-12));  // ~0.6931
  CHECK_THROWS_AS(inverse_document_frequency("absent", vocab), ArgumentError);
}

TEST_CASE("idf is strictly decreasing in document frequency") {
  Rng rng(4242);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n_docs = 2 + bounded(rng, 100000);
    std::size_t df_low = 1 + bounded(rng, n_docs - 1);
    std::size_t df_high = df_low + 1 + bounded(rng, n_docs - df_low);
    CHECK(idf_from_counts(n_docs, df_low) > idf_from_counts(n_docs, df_high));
  }
}

TEST_CASE("transform weights match the hand-computed toy example") {
  auto docs = toy_corpus();
  TfidfConfig config = open_config();  // sublinear off, idf on, no normalize
  Vocabulary vocab = fit_vocabulary(docs, config);

  SparseVector vec = transform(docs[0], vocab, config);  // "a b"
  REQUIRE(vec.dim == 4);
  // term b: TF = 1/2, IDF = ln 3 -> 0.5493
  CHECK(vec.value_at(1) == Catch::Approx(0.5 * std::log(3.0)).epsilon(1e-12));
  CHECK(vec.value_at(1) == Catch::Approx(0.5493).margin(1e-4));
  // term a appears in all docs: IDF = 0, weight dropped as an exact zero
  CHECK(vec.value_at(0) == 0.0);
}

TEST_CASE("transform with idf off and sublinear off yields Eq-1 frequencies") {
  auto docs = toy_corpus();
  TfidfConfig config = open_config();
  config.use_idf = false;
  Vocabulary vocab = fit_vocabulary(docs, config);
  SparseVector vec = transform(docs[1], vocab, config);  // "a c"
  CHECK(vec.value_at(0) == 0.5);
  CHECK(vec.value_at(2) == 0.5);
  CHECK(vec.value_at(1) == 0.0);
}

TEST_CASE("transform ignores out-of-vocabulary tokens") {
  auto docs = toy_corpus();
  TfidfConfig config = open_config();
  Vocabulary vocab = fit_vocabulary(docs, config);
  SparseVector vec = transform(tokdoc({"zz", "qq"}), vocab, config);
  CHECK(vec.entries.empty());
  CHECK(vec.dim == 4);
}

TEST_CASE("transform normalizes to unit length when configured") {
  auto docs = toy_corpus();
  TfidfConfig config = open_config();
  config.l2_normalize = true;
  config.sublinear_tf = true;
  Vocabulary vocab = fit_vocabulary(docs, config);
  for (const auto& doc : docs) {
    SparseVector vec = transform(doc, vocab, config);
    if (vec.entries.empty()) continue;
    CHECK(std::abs(vec.squared_norm() - 1.0) < 1e-9);
  }
}

TEST_CASE("transform_corpus is elementwise and stable") {
  auto docs = toy_corpus();
  TfidfConfig config = open_config();
  Vocabulary vocab = fit_vocabulary(docs, config);
  auto vecs = transform_corpus(docs, vocab, config);
  REQUIRE(vecs.size() == 3);
  for (std::size_t i = 0; i < docs.size(); ++i) {
    CHECK(vecs[i].dim == vocab.size());
    CHECK(vecs[i] == transform(docs[i], vocab, config));
  }
  CHECK(transform_corpus({}, vocab, config).empty());
  CHECK(transform_corpus({docs[0], docs[0]}, vocab, config)[0] ==
        transform_corpus({docs[0], docs[0]}, vocab, config)[1]);
}

TEST_CASE("transform agrees with the dense brute-force recomputation") {
  Rng rng(20240809);
  for (int trial = 0; trial < 30; ++trial) {
    // Up to 10 docs over up to 30 distinct terms.
    std::size_t n_docs = 2 + bounded(rng, 9);
    std::size_t n_terms = 3 + bounded(rng, 28);
    std::vector<TokenizedDocument> docs;
    for (std::size_t d = 0; d < n_docs; ++d) {
      std::vector<Token> tokens;
      std::size_t len = 1 + bounded(rng, 12);
      for (std::size_t t = 0; t < len; ++t)
        tokens.push_back("t" + std::to_string(bounded(rng, n_terms)));
      docs.push_back(tokdoc(tokens, Polarity::Positive, static_cast<int>(d)));
    }

    TfidfConfig config;
    config.min_df = 1 + bounded(rng, 2);
    config.max_df = 0.7 + 0.3 * uniform01(rng);
    config.sublinear_tf = bounded(rng, 2) == 0;
    config.use_idf = bounded(rng, 2) == 0;
    config.l2_normalize = bounded(rng, 2) == 0;

    Vocabulary vocab;
    try {
      vocab = fit_vocabulary(docs, config);
    } catch (const ComputeError&) {
      continue;  // everything pruned; nothing to compare this round
    }
    auto oracle = testsup::brute_force_tfidf(docs, docs, config);
    REQUIRE(oracle.terms.size() == vocab.size());

    auto vecs = transform_corpus(docs, vocab, config);
    for (std::size_t d = 0; d < docs.size(); ++d) {
      for (std::size_t j = 0; j < oracle.terms.size(); ++j) {
        INFO("trial " << trial << " doc " << d << " term " << oracle.terms[j]);
        CHECK(std::abs(vecs[d].value_at(static_cast<std::uint32_t>(j)) -
                       oracle.weights[d][j]) < 1e-12);
      }
    }
  }
}

TEST_CASE("vocabulary serialization round-trips") {
  auto docs = toy_corpus();
  TfidfConfig config = open_config();
  config.max_df = 0.97;
  Vocabulary vocab = fit_vocabulary(docs, config);

  std::stringstream buffer;
  save_vocabulary(vocab, config, buffer);
  auto [loaded, loaded_config] = load_vocabulary(buffer);

  CHECK(loaded_config == config);
  CHECK(loaded.fingerprint() == vocab.fingerprint());
  CHECK(loaded.size() == vocab.size());
  CHECK(loaded.n_docs() == vocab.n_docs());
  for (std::uint32_t i = 0; i < vocab.size(); ++i) {
    CHECK(loaded.term(i) == vocab.term(i));
    CHECK(loaded.doc_freq(i) == vocab.doc_freq(i));
  }

  std::stringstream garbage("not a vocab\n");
  CHECK_THROWS_AS(load_vocabulary(garbage), DataError);
}

TEST_CASE("vocabulary fingerprint reacts to content changes") {
  Vocabulary a(10, {{"x", 2}, {"y", 3}});
  Vocabulary b(10, {{"x", 2}, {"y", 4}});
  Vocabulary c(11, {{"x", 2}, {"y", 3}});
  CHECK(a.fingerprint() != b.fingerprint());
  CHECK(a.fingerprint() != c.fingerprint());
  CHECK(a.fingerprint() == Vocabulary(10, {{"x", 2}, {"y", 3}}).fingerprint());
}
