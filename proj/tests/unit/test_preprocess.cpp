#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <numeric>

#include "sentivec/preprocess.hpp"
#include "test_helpers.hpp"

using namespace sentivec;

TEST_CASE("tokenize lowercases and splits on non-word characters") {
  CHECK(tokenize("The movie was GREAT!") ==
        std::vector<Token>{"the", "movie", "was", "great"});
  CHECK(tokenize("").empty());
  CHECK(tokenize("don't stop, won't stop") ==
        std::vector<Token>{"don't", "stop", "won't", "stop"});
}

TEST_CASE("tokenize drops tokens shorter than two characters") {
  CHECK(tokenize("a B cc") == std::vector<Token>{"cc"});
  CHECK(tokenize("I x 42 ...") == std::vector<Token>{"42"});
}

TEST_CASE("tokenize keeps digits and apostrophes inside tokens") {
  CHECK(tokenize("rated 10/10, 4k HDR") ==
        std::vector<Token>{"rated", "10", "10", "4k", "hdr"});
  // Curly apostrophe folds onto the ASCII one.
  CHECK(tokenize("don\xE2\x80\x99t") == std::vector<Token>{"don't"});
}

TEST_CASE("tokenize treats accented letters as word characters") {
  auto tokens = tokenize("Caf\xC3\xA9 cr\xC3\x88me \xC2\xA1no!");
  REQUIRE(tokens.size() == 3);
  CHECK(tokens[0] == "caf\xC3\xA9");
  CHECK(tokens[1] == "cr\xC3\xA8me");  // E-grave lowercased
  CHECK(tokens[2] == "no");            // inverted bang splits
}

TEST_CASE("tokenize is idempotent over its own joined output") {
  for (const char* text :
       {"The movie was GREAT!", "don't stop, won't stop", "a B cc 42",
        "Caf\xC3\xA9 cr\xC3\x88me", "weird   spacing\tand\nnewlines"}) {
    auto once = tokenize(text);
    std::string joined = std::accumulate(
        once.begin(), once.end(), std::string(),
        [](std::string acc, const Token& t) {
          return acc.empty() ? t : std::move(acc) + " " + t;
        });
    CHECK(tokenize(joined) == once);
  }
}

TEST_CASE("remove_stopwords filters in order") {
  const auto& stops = StopwordSet::english();
  CHECK(remove_stopwords({"the", "movie", "was", "great"}, stops) ==
        std::vector<Token>{"movie", "great"});
  CHECK(remove_stopwords({"the", "was", "of"}, stops).empty());
  CHECK(remove_stopwords({"movie", "great"}, StopwordSet::none()) ==
        std::vector<Token>{"movie", "great"});
}

TEST_CASE("remove_stopwords is idempotent") {
  const auto& stops = StopwordSet::english();
  std::vector<Token> tokens = {"the", "film", "and", "its", "score", "were", "fine"};
  auto once = remove_stopwords(tokens, stops);
  CHECK(remove_stopwords(once, stops) == once);
}

TEST_CASE("bundled stopword list matches the shipped resource file") {
  // The resource is the documented copy of the embedded list.
  std::filesystem::path resource = "data/stopwords_english.txt";
  if (!std::filesystem::exists(resource))
    resource = std::filesystem::path("..") / "data" / "stopwords_english.txt";
  if (!std::filesystem::exists(resource)) {
    SKIP("stopword resource not found from test working directory");
  }
  StopwordSet from_file = StopwordSet::from_file(resource);
  const StopwordSet& embedded = StopwordSet::english();
  CHECK(from_file.size() == embedded.size());
  CHECK(from_file.size() == kEnglishStopwords.size());
  for (auto word : kEnglishStopwords) CHECK(from_file.contains(word));
}

TEST_CASE("preprocess_corpus keeps ids, labels and corpus size") {
  Corpus corpus = testsup::make_corpus({
      {"The movie was great", Polarity::Positive},
      {"the of and", Polarity::Negative},  // all stopwords
      {"Bad acting throughout", Polarity::Negative},
  });
  auto docs = preprocess_corpus(corpus, StopwordSet::english(), true);
  REQUIRE(docs.size() == corpus.size());
  CHECK(docs[0].id == 0);
  CHECK(docs[0].label == Polarity::Positive);
  CHECK(docs[0].tokens == std::vector<Token>{"movie", "great"});
  CHECK(docs[1].tokens.empty());  // retained as an empty document
  CHECK(docs[2].id == 2);

  auto raw = preprocess_corpus(corpus, StopwordSet::english(), false);
  CHECK(raw[1].tokens == std::vector<Token>{"the", "of", "and"});
  CHECK(raw[0].tokens == tokenize(corpus.documents[0].text));
}

TEST_CASE("StopwordSet::from_file lowercases and skips comments") {
  testsup::TempDir dir;
  auto path = dir.file("stops.txt", "# comment\nThe\n\nAND\nof\n");
  StopwordSet stops = StopwordSet::from_file(path);
  CHECK(stops.size() == 3);
  CHECK(stops.contains("the"));
  CHECK(stops.contains("and"));
  CHECK_FALSE(stops.contains("#"));
  CHECK_THROWS_AS(StopwordSet::from_file(dir.path() / "none.txt"), DataError);
}
