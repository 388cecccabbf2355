#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>
#include <sstream>

#include "sentivec/corpus.hpp"
#include "test_helpers.hpp"

using namespace sentivec;
using testsup::TempDir;

TEST_CASE("load_tab_labeled parses the UCI format") {
  TempDir dir;
  auto path = dir.file("reviews.txt",
                       "Great phone.\t1\n"
                       "Total waste of money.\t0\n"
                       "\n"
                       "Loved it\t1\n");
  LoadWarnings warnings;
  Corpus corpus = load_tab_labeled(path, &warnings);

  REQUIRE(corpus.size() == 3);
  CHECK(corpus.documents[0].text == "Great phone.");
  CHECK(corpus.documents[0].label == Polarity::Positive);
  CHECK(corpus.documents[1].text == "Total waste of money.");
  CHECK(corpus.documents[1].label == Polarity::Negative);
  CHECK(corpus.documents[2].id == 2);
  CHECK(warnings.blank_lines == 1);
}

TEST_CASE("load_tab_labeled handles a full-size file") {
  TempDir dir;
  std::ostringstream content;
  for (int i = 0; i < 2000; ++i)
    content << "review number " << i << " text\t" << (i % 2) << "\n";
  Corpus corpus = load_tab_labeled(dir.file("large.txt", content.str()));
  CHECK(corpus.size() == 2000);
  CHECK(corpus.count(Polarity::Positive) == 1000);
}

TEST_CASE("load_tab_labeled rejects malformed lines with line numbers") {
  TempDir dir;
  CHECK_THROWS_WITH(load_tab_labeled(dir.file("bad1.txt", "bad\tX\n")),
                    Catch::Matchers::ContainsSubstring("line 1") &&
                        Catch::Matchers::ContainsSubstring("label"));
  CHECK_THROWS_WITH(load_tab_labeled(dir.file("bad2.txt", "ok\t1\nno tab here\n")),
                    Catch::Matchers::ContainsSubstring("line 2"));
  CHECK_THROWS_AS(load_tab_labeled(dir.path() / "missing.txt"), DataError);
}

TEST_CASE("load_tab_labeled skips undecodable lines with a counted warning") {
  TempDir dir;
  std::string content = "fine\t1\n";
  content += "broken \xFF\xFE byte soup\t0\n";
  content += "also fine\t0\n";
  LoadWarnings warnings;
  Corpus corpus = load_tab_labeled(dir.file("mixed.txt", content), &warnings);
  CHECK(corpus.size() == 2);
  CHECK(warnings.undecodable == 1);
  REQUIRE(warnings.messages.size() == 1);
  CHECK(warnings.messages[0].find("line 2") != std::string::npos);
}

TEST_CASE("load_directory_pair labels by directory in sorted file order") {
  TempDir dir;
  dir.file("pos/b.txt", "second positive review");
  dir.file("pos/a.txt", "first positive review");
  dir.file("neg/only.txt", "a negative review");

  Corpus corpus = load_directory_pair(dir.path() / "pos", dir.path() / "neg");
  REQUIRE(corpus.size() == 3);
  CHECK(corpus.documents[0].text == "first positive review");
  CHECK(corpus.documents[1].text == "second positive review");
  CHECK(corpus.documents[0].label == Polarity::Positive);
  CHECK(corpus.documents[2].label == Polarity::Negative);
  CHECK(corpus.count(Polarity::Positive) == 2);
}

TEST_CASE("load_directory_pair rejects an empty class directory") {
  TempDir dir;
  dir.file("pos/a.txt", "text");
  std::filesystem::create_directories(dir.path() / "neg");
  CHECK_THROWS_AS(load_directory_pair(dir.path() / "pos", dir.path() / "neg"),
                  DataError);
  CHECK_THROWS_AS(load_directory_pair(dir.path() / "nope", dir.path() / "pos"),
                  DataError);
}

TEST_CASE("load_directory_pair skips undecodable files but keeps counting") {
  TempDir dir;
  dir.file("pos/good.txt", "readable");
  dir.file("pos/bad.txt", std::string("\xC0\x80 overlong", 11));
  dir.file("neg/n.txt", "negative");
  LoadWarnings warnings;
  Corpus corpus =
      load_directory_pair(dir.path() / "pos", dir.path() / "neg", &warnings);
  CHECK(corpus.size() == 2);
  CHECK(warnings.undecodable == 1);
}

TEST_CASE("load_line_pair reads one sentence per line") {
  TempDir dir;
  auto pos = dir.file("rt.pos", "good one\nanother good\n\nthird good\n");
  auto neg = dir.file("rt.neg", "bad one\nanother bad\n");
  LoadWarnings warnings;
  Corpus corpus = load_line_pair(pos, neg, &warnings);
  REQUIRE(corpus.size() == 5);
  CHECK(corpus.count(Polarity::Positive) == 3);
  CHECK(corpus.count(Polarity::Negative) == 2);
  CHECK(warnings.blank_lines == 1);
  CHECK_THROWS_AS(load_line_pair(pos, dir.path() / "missing.neg"), DataError);
}

TEST_CASE("loaders are pure functions of the file bytes") {
  TempDir dir;
  auto path = dir.file("r.txt", "alpha\t1\nbeta\t0\ngamma\t1\n");
  Corpus a = load_tab_labeled(path);
  Corpus b = load_tab_labeled(path);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a.documents[i].text == b.documents[i].text);
    CHECK(a.documents[i].label == b.documents[i].label);
    CHECK(a.documents[i].id == b.documents[i].id);
  }
}

namespace {

Corpus balanced_corpus(std::size_t n_pos, std::size_t n_neg) {
  std::vector<std::pair<std::string, Polarity>> docs;
  for (std::size_t i = 0; i < n_pos; ++i)
    docs.emplace_back("pos doc " + std::to_string(i), Polarity::Positive);
  for (std::size_t i = 0; i < n_neg; ++i)
    docs.emplace_back("neg doc " + std::to_string(i), Polarity::Negative);
  return testsup::make_corpus(docs);
}

}  // namespace

TEST_CASE("holdout_split honors the requested counts") {
  Corpus corpus = balanced_corpus(700, 800);  // 1500 docs
  auto [train, test] = holdout_split(corpus, HoldOut{800, 700, 13});
  CHECK(train.size() == 800);
  CHECK(test.size() == 700);

  // Stratified: class shares match the corpus up to rounding.
  double pos_share = 700.0 / 1500.0;
  CHECK(std::abs(static_cast<double>(train.count(Polarity::Positive)) -
                 800 * pos_share) <= 1.0);
  CHECK(std::abs(static_cast<double>(test.count(Polarity::Positive)) -
                 700 * pos_share) <= 1.0);
}

TEST_CASE("holdout_split keeps train and test disjoint") {
  Corpus corpus = balanced_corpus(50, 50);
  FoldIndices idx = holdout_indices(corpus, HoldOut{60, 40, 3});
  std::set<std::size_t> train(idx.train.begin(), idx.train.end());
  for (std::size_t t : idx.test) CHECK(train.count(t) == 0);
  CHECK(idx.train.size() == 60);
  CHECK(idx.test.size() == 40);
}

TEST_CASE("holdout_split edge cases") {
  Corpus corpus = balanced_corpus(10, 10);
  auto [train, test] = holdout_split(corpus, HoldOut{20, 0, 1});
  CHECK(train.size() == 20);
  CHECK(test.size() == 0);
  CHECK_THROWS_AS(holdout_split(corpus, HoldOut{15, 6, 1}), ArgumentError);
}

TEST_CASE("holdout_split is deterministic for a fixed seed") {
  Corpus corpus = balanced_corpus(40, 60);
  FoldIndices a = holdout_indices(corpus, HoldOut{50, 50, 42});
  FoldIndices b = holdout_indices(corpus, HoldOut{50, 50, 42});
  CHECK(a.train == b.train);
  CHECK(a.test == b.test);
  FoldIndices c = holdout_indices(corpus, HoldOut{50, 50, 43});
  CHECK(a.train != c.train);
}

TEST_CASE("kfold_splits partitions the corpus into near-equal folds") {
  Corpus corpus = balanced_corpus(1000, 1000);
  auto folds = kfold_splits(corpus, KFoldCV{10, 5});
  REQUIRE(folds.size() == 10);

  std::set<std::size_t> all_test;
  for (const auto& fold : folds) {
    CHECK(fold.test.size() == 200);  // 2000 / 10
    CHECK(fold.train.size() == 1800);
    for (std::size_t t : fold.test) {
      CHECK(all_test.insert(t).second);  // no overlap between test folds
    }
    std::set<std::size_t> train(fold.train.begin(), fold.train.end());
    for (std::size_t t : fold.test) CHECK(train.count(t) == 0);
  }
  CHECK(all_test.size() == corpus.size());
}

TEST_CASE("kfold_splits leave-one-out when k equals corpus size") {
  Corpus corpus = balanced_corpus(5, 5);
  auto folds = kfold_splits(corpus, KFoldCV{10, 1});
  REQUIRE(folds.size() == 10);
  for (const auto& fold : folds) {
    CHECK(fold.test.size() == 1);
    CHECK(fold.train.size() == 9);
  }
}

TEST_CASE("kfold_splits rejects invalid k") {
  Corpus corpus = balanced_corpus(3, 3);
  CHECK_THROWS_AS(kfold_splits(corpus, KFoldCV{7, 1}), ArgumentError);
  CHECK_THROWS_AS(kfold_splits(corpus, KFoldCV{1, 1}), ArgumentError);
}

TEST_CASE("kfold_splits fold sizes stay within one of each other") {
  // Awkward sizes, including imbalance and remainders.
  struct Case {
    std::size_t pos, neg, k;
  };
  for (Case c : {Case{17, 30, 10}, Case{33, 21, 7}, Case{101, 99, 10},
                 Case{12, 5, 4}, Case{250, 250, 9}}) {
    Corpus corpus = balanced_corpus(c.pos, c.neg);
    auto folds = kfold_splits(corpus, KFoldCV{c.k, 77});
    std::size_t min_size = corpus.size(), max_size = 0, union_size = 0;
    for (const auto& fold : folds) {
      min_size = std::min(min_size, fold.test.size());
      max_size = std::max(max_size, fold.test.size());
      union_size += fold.test.size();

      // Per-class share within one of perfect proportion.
      std::size_t fold_pos = 0;
      for (std::size_t t : fold.test)
        if (corpus.documents[t].label == Polarity::Positive) ++fold_pos;
      double perfect = static_cast<double>(c.pos) / static_cast<double>(c.k);
      CHECK(std::abs(static_cast<double>(fold_pos) - perfect) <= 1.0);
    }
    CHECK(max_size - min_size <= 1);
    CHECK(union_size == corpus.size());
  }
}

TEST_CASE("kfold_splits is deterministic for a fixed seed") {
  Corpus corpus = balanced_corpus(20, 20);
  auto a = kfold_splits(corpus, KFoldCV{5, 9});
  auto b = kfold_splits(corpus, KFoldCV{5, 9});
  for (std::size_t f = 0; f < a.size(); ++f) {
    CHECK(a[f].test == b[f].test);
    CHECK(a[f].train == b[f].train);
  }
}

TEST_CASE("subset re-densifies document ids") {
  Corpus corpus = balanced_corpus(3, 3);
  Corpus sub = subset(corpus, {1, 4, 5});
  REQUIRE(sub.size() == 3);
  CHECK(sub.documents[0].id == 0);
  CHECK(sub.documents[2].id == 2);
  CHECK(sub.documents[1].label == Polarity::Negative);
}
