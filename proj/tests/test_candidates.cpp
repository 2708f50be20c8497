#include <map>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "test_support.hpp"
#include "webspell/candidates.hpp"
#include "webspell/errors.hpp"

using namespace webspell;

namespace {

NGramIndex unigrams(const std::map<std::string, Count>& counts) {
  NGramIndexBuilder b;
  for (const auto& [w, c] : counts) b.add(std::vector<std::string>{w}, c);
  return std::move(b).build();
}

std::vector<std::string> words_of(const std::vector<Candidate>& cs) {
  std::vector<std::string> out;
  for (const auto& c : cs) out.push_back(c.word);
  return out;
}

}  // namespace

TEST_CASE("char_bigrams") {
  CHECK(char_bigrams("sangle") == std::vector<std::string>{"sa", "an", "ng", "gl", "le"});
  CHECK(char_bigrams("ab") == std::vector<std::string>{"ab"});
  CHECK(char_bigrams("a").empty());
  CHECK(char_bigrams("").empty());
  CHECK(char_bigrams("banana") == std::vector<std::string>{"ba", "an", "na"});
}

TEST_CASE("sangle over the 19-word sample vocabulary") {
  const auto index = test::sample_vocabulary_index();
  const auto postings = build_bigram_postings(index);
  const auto cands = generate_candidates("sangle", index, postings, 10);
  REQUIRE(cands.size() == 10);

  // Exact substring overlap, all counts equal, so ties fall to length gap then spelling.
  const std::vector<std::pair<std::string, std::size_t>> expected = {
      {"tangle", 4}, {"angle", 4},   {"single", 3},  {"tingle", 3},  {"beagle", 2},
      {"singly", 2}, {"disable", 2}, {"english", 2}, {"sandbox", 2}, {"sale", 2}};
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(cands[i].word == expected[i].first);
    CHECK(cands[i].overlap == expected[i].second);
    CHECK(cands[i].rank == i);
  }
  CHECK(cands[0].len_diff == 0);
  CHECK(cands[1].len_diff == 1);
}

TEST_CASE("ranking over truncated posting lists") {
  // Hand-written lists that leave out singly, disable and sale.
  const auto index = test::sample_vocabulary_index();
  const std::map<std::string, std::vector<std::string>> lists = {
      {"sa", {"salute", "sandbox", "sand", "sale", "sandwich", "salt", "sanitary"}},
      {"an", {"tangle", "sanitary", "sandbox", "sand", "sandwich", "man", "angle"}},
      {"ng", {"tangle", "single", "english", "angle", "tingle", "fringe", "ring"}},
      {"gl", {"single", "singly", "tingle", "angle", "beagle", "tangle", "english"}},
      {"le", {"single", "angle", "beagle", "unable", "tingle", "tangle", "disable"}},
  };
  CharBigramPostings postings;
  for (const auto& [bigram, words] : lists) {
    for (const auto& w : words) postings.insert(bigram, *index.find_word(w));
  }
  const auto cands = generate_candidates("sangle", index, postings, 10);
  std::map<std::string, std::size_t> got;
  for (const auto& c : cands) got[c.word] = c.overlap;
  const std::map<std::string, std::size_t> expected = {{"tangle", 4},  {"angle", 4},    {"single", 3},  {"tingle", 3},
                                                    {"beagle", 2},  {"sand", 2},     {"sandbox", 2}, {"english", 2},
                                                    {"sanitary", 2}, {"sandwich", 2}};
  CHECK(got == expected);
  CHECK(words_of(cands)[0] == "tangle");
  CHECK(words_of(cands)[1] == "angle");
}

TEST_CASE("generate_candidates small cases") {
  SUBCASE("caat") {
    const auto index = unigrams({{"cat", 1}, {"cot", 1}, {"dog", 1}});
    const auto cands = generate_candidates("caat", index, build_bigram_postings(index));
    REQUIRE(cands.size() == 1);
    CHECK(cands[0].word == "cat");
    CHECK(cands[0].overlap == 2);
    CHECK(cands[0].len_diff == 1);
  }
  SUBCASE("no shared bigram") {
    const auto index = test::sample_vocabulary_index();
    CHECK(generate_candidates("zq", index, build_bigram_postings(index)).empty());
  }
  SUBCASE("k truncation and exclusion") {
    const auto index = test::sample_vocabulary_index();
    const auto postings = build_bigram_postings(index);
    CHECK(generate_candidates("sangle", index, postings, 3).size() == 3);
    CHECK(generate_candidates("sangle", index, postings, 100).size() == 19);
    const auto without = generate_candidates("tangle", index, postings, 100, "tangle");
    for (const auto& c : without) CHECK(c.word != "tangle");
    CHECK_THROWS_AS(generate_candidates("sangle", index, postings, 0), ContractViolation);
  }
  SUBCASE("unigram count breaks remaining ties") {
    const auto index = unigrams({{"abx", 5}, {"aby", 9}, {"abz", 9}});
    const auto cands = generate_candidates("abq", index, build_bigram_postings(index));
    CHECK(words_of(cands) == std::vector<std::string>{"aby", "abz", "abx"});
  }
  SUBCASE("case of the error does not matter") {
    const auto index = test::sample_vocabulary_index();
    const auto postings = build_bigram_postings(index);
    CHECK(generate_candidates("SANGLE", index, postings) == generate_candidates("sangle", index, postings));
  }
}

TEST_CASE("single-character errors fall back to edit distance one") {
  const auto index = unigrams({{"a", 50}, {"i", 70}, {"b", 3}, {"an", 40}, {"xy", 1}, {"ox", 2}});
  const auto postings = build_bigram_postings(index);
  auto cands = generate_candidates("x", index, postings);
  CHECK(words_of(cands) == std::vector<std::string>{"i", "a", "b", "ox", "xy"});
  for (const auto& c : cands) CHECK(c.overlap == 0);
  cands = generate_candidates("x", index, postings, 2);
  CHECK(words_of(cands) == std::vector<std::string>{"i", "a"});
}

TEST_CASE("generate_candidates matches a brute-force scorer") {
  std::mt19937_64 rng(2024);
  for (int round = 0; round < 120; ++round) {
    const std::size_t vocab_size = 1 + rng() % (round % 10 == 0 ? 10000 : 400);
    std::map<std::string, Count> vocab;
    while (vocab.size() < vocab_size) vocab[oracle::random_word(rng, 1, 8, "abcdefgh")] = 1 + rng() % 20;
    const auto index = unigrams(vocab);
    const auto postings = build_bigram_postings(index);
    for (int q = 0; q < 5; ++q) {
      const std::string error = oracle::random_word(rng, 2, 9, "abcdefghij");
      const std::size_t k = 1 + rng() % 15;
      const auto got = generate_candidates(error, index, postings, k);
      std::map<std::string, std::uint64_t> plain(vocab.begin(), vocab.end());
      const auto want = oracle::rank_vocabulary(error, plain, k);
      REQUIRE(got.size() == want.size());
      for (std::size_t i = 0; i < got.size(); ++i) {
        REQUIRE(got[i].word == want[i].word);
        REQUIRE(got[i].overlap == want[i].overlap);
        REQUIRE(got[i].len_diff == want[i].len_diff);
        REQUIRE(got[i].unigram_count == want[i].count);
        if (i > 0) REQUIRE_FALSE(ranks_before(got[i], got[i - 1]));
      }
    }
  }
}
