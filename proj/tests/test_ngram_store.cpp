#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "test_support.hpp"
#include "webspell/detector.hpp"
#include "webspell/errors.hpp"
#include "webspell/ngram_store.hpp"

using namespace webspell;
namespace fs = std::filesystem;

TEST_CASE("parse_count_line reads the canonical TAB form") {
  auto e = parse_count_line("ceramics collectables collectibles\t55");
  CHECK(e.tokens == std::vector<std::string>{"ceramics", "collectables", "collectibles"});
  CHECK(e.count == 55);

  e = parse_count_line("serve as the index\t223");
  CHECK(e.tokens.size() == 4);
  CHECK(e.count == 223);

  e = parse_count_line("hello\t1");
  CHECK(e.tokens == std::vector<std::string>{"hello"});
  CHECK(e.count == 1);

  e = parse_count_line("windows line\t7\r");
  CHECK(e.count == 7);
}

TEST_CASE("parse_count_line rejects malformed lines") {
  CHECK_THROWS_AS(parse_count_line("no count here"), ParseError);
  CHECK_THROWS_AS(parse_count_line("word\t"), ParseError);
  CHECK_THROWS_AS(parse_count_line("word\t-3"), ParseError);
  CHECK_THROWS_AS(parse_count_line("word\t+3"), ParseError);
  CHECK_THROWS_AS(parse_count_line("word\t3x"), ParseError);
  CHECK_THROWS_AS(parse_count_line("a b c d e f\t3"), ParseError);
  CHECK_THROWS_AS(parse_count_line("a  b\t3"), ParseError);
  CHECK_THROWS_AS(parse_count_line("\t3"), ParseError);
  CHECK_THROWS_AS(parse_count_line("a\t1\t2"), ParseError);
  CHECK_THROWS_AS(parse_count_line(""), ParseError);
  CHECK_THROWS_AS(parse_count_line("a\t99999999999999999999999"), ParseError);

  try {
    parse_count_line("broken line");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("broken line") != std::string::npos);
  }
}

TEST_CASE("tolerant mode accepts the parenthesized display form") {
  CHECK_THROWS_AS(parse_count_line("serve as the index (223)"), ParseError);
  auto e = parse_count_line("serve as the index (223)", LineFormat::kTolerant);
  CHECK(e.tokens == std::vector<std::string>{"serve", "as", "the", "index"});
  CHECK(e.count == 223);
  e = parse_count_line("hello\t4", LineFormat::kTolerant);
  CHECK(e.count == 4);
  CHECK_THROWS_AS(parse_count_line("(12)", LineFormat::kTolerant), ParseError);
  CHECK_THROWS_AS(parse_count_line("a b (x)", LineFormat::kTolerant), ParseError);
}

TEST_CASE("ingest_count_files loads the reference 3- and 4-gram counts") {
  const auto index = test::reference_index();
  for (const auto& [line, count] : test::kReferenceNGrams) {
    const auto entry = parse_count_line(std::string(line) + "\t0");
    CHECK_MESSAGE(index.lookup(std::span<const std::string>(entry.tokens)) == count, line);
  }
  CHECK(index.lookup({"serve", "as", "the", "indicator"}) == 120);
  CHECK(index.lookup({"ceramics", "collectables", "fine"}) == 130);
  CHECK(index.lookup({"serve", "as", "the", "independent"}) == 794);
  CHECK(index.size(3) == 5);
  CHECK(index.size(4) == 6);
  CHECK(index.size(1) == 0);

  const std::vector<fs::path> display{test::fixture("reference_ngrams_display.txt")};
  CHECK(ingest_count_files(display, LineFormat::kTolerant) == index);
  CHECK_THROWS_AS(ingest_count_files(display), ParseError);
}

TEST_CASE("ingest_count_files edge cases") {
  SUBCASE("no files") {
    const auto index = ingest_count_files({});
    CHECK(index.empty());
    CHECK(index.lookup({"anything"}) == 0);
    CHECK(index.total_unigram_tokens() == 0);
  }
  SUBCASE("duplicates merge by summing") {
    test::TempDir dir;
    const auto a = dir.write("a.tsv", "a\t3\n");
    const auto b = dir.write("b.tsv", "a\t3\n\nb c\t2\nB C\t5\n");
    const std::vector<fs::path> paths{a, b};
    const auto index = ingest_count_files(paths);
    CHECK(index.lookup({"a"}) == 6);
    CHECK(index.lookup({"b", "c"}) == 7);
    CHECK(index.total_unigram_tokens() == 6);
  }
  SUBCASE("zero counts are not stored") {
    test::TempDir dir;
    const std::vector<fs::path> paths{dir.write("z.tsv", "ghost\t0\nreal\t2\n")};
    const auto index = ingest_count_files(paths);
    CHECK_FALSE(index.contains_unigram("ghost"));
    CHECK(index.vocabulary_size() == 1);
  }
  SUBCASE("parse errors name file and line") {
    test::TempDir dir;
    const std::vector<fs::path> paths{dir.write("bad.tsv", "a\t1\nb\tx\n")};
    try {
      (void)ingest_count_files(paths);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("bad.tsv:2") != std::string::npos);
    }
  }
  SUBCASE("unreadable file") {
    const std::vector<fs::path> paths{"/nonexistent/counts.tsv"};
    CHECK_THROWS_AS(ingest_count_files(paths), std::runtime_error);
  }
}

TEST_CASE("lookup contract") {
  const auto index = test::reference_index();
  CHECK(index.lookup({"serve", "as", "the", "indigo"}) == 0);
  CHECK(index.lookup({"SERVE", "As", "the", "index"}) == 223);
  CHECK_THROWS_AS(index.lookup(std::span<const std::string>{}), ContractViolation);
  const std::vector<std::string> six(6, "a");
  CHECK_THROWS_AS(index.lookup(std::span<const std::string>(six)), ContractViolation);
}

TEST_CASE("contains_unigram on the sample vocabulary") {
  const auto index = test::sample_vocabulary_index();
  CHECK(index.contains_unigram("single"));
  CHECK(index.contains_unigram("English"));
  CHECK_FALSE(index.contains_unigram("sangle"));
  CHECK_FALSE(index.contains_unigram(""));
  CHECK(index.vocabulary_size() == 19);
}

TEST_CASE("build_from_corpus counts within-sentence windows") {
  auto index = build_from_corpus("a b a b", 2, 1);
  CHECK(index.lookup({"a"}) == 2);
  CHECK(index.lookup({"a", "b"}) == 2);
  CHECK(index.lookup({"b", "a"}) == 1);
  CHECK(index.lookup({"<s>", "a"}) == 1);
  CHECK(index.total_unigram_tokens() == 5);

  index = build_from_corpus("a b a b", 2, 2);
  CHECK(index.lookup({"b", "a"}) == 0);
  CHECK(index.lookup({"a", "b"}) == 2);

  index = build_from_corpus("a b a b", 1, 1);
  CHECK(index.size(1) == 3);
  for (int order = 2; order <= 5; ++order) CHECK(index.size(order) == 0);

  // No window crosses a sentence boundary.
  index = build_from_corpus("one two. Three four!", 5, 1);
  CHECK(index.lookup({"two", "three"}) == 0);
  CHECK(index.lookup({"<s>", "three", "four"}) == 1);

  CHECK_THROWS_AS(build_from_corpus("", 5, 1), EmptyCorpus);
  CHECK_THROWS_AS(build_from_corpus("... 1999 !!", 5, 1), EmptyCorpus);
  CHECK_THROWS_AS(build_from_corpus("a b", 6, 1), ContractViolation);
  CHECK_THROWS_AS(build_from_corpus("a b", 2, 0), ContractViolation);
}

TEST_CASE("build_from_corpus agrees with a naive sliding-window count") {
  std::mt19937_64 rng(11);
  const std::vector<std::string> words = {"the", "cat", "sat", "on", "mat", "a", "dog", "ran"};
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
  std::uniform_int_distribution<int> len(0, 9);
  for (int round = 0; round < 200; ++round) {
    std::vector<std::vector<std::string>> sentences;
    std::string corpus;
    const int n_sentences = 1 + round % 4;
    for (int s = 0; s < n_sentences; ++s) {
      std::vector<std::string> sentence;
      const int n = 1 + len(rng);
      for (int i = 0; i < n; ++i) {
        sentence.push_back(words[pick(rng)]);
        std::string surface = sentence.back();
        if (i == 0 && (rng() & 1) != 0) surface[0] = static_cast<char>(surface[0] - 'a' + 'A');
        corpus += surface;
        corpus += i + 1 < n ? " " : ". ";
      }
      sentences.push_back(sentence);
    }
    const std::size_t max_order = 1 + round % 5;
    const Count min_count = 1 + round % 2;
    const auto index = build_from_corpus(corpus, static_cast<int>(max_order), min_count);
    const auto expected = oracle::window_counts(sentences, max_order);

    std::size_t stored = 0;
    for (const auto& [key, count] : expected) {
      const Count want = count >= min_count ? count : 0;
      REQUIRE(index.lookup(std::span<const std::string>(key)) == want);
      stored += want > 0 ? 1 : 0;
    }
    std::size_t total = 0;
    for (int order = 1; order <= 5; ++order) total += index.size(order);
    CHECK(total == stored);
  }
}

TEST_CASE("order tables are strictly sorted") {
  const auto index = build_from_corpus(test::small_corpus(), 5, 1);
  for (int order = 1; order <= 5; ++order) {
    const auto entries = index.entries(order);
    for (std::size_t i = 1; i < entries.size(); ++i) CHECK(entries[i - 1].tokens < entries[i].tokens);
    for (const auto& e : entries) CHECK(e.count >= 1);
  }
  Count sum = 0;
  for (const auto& e : index.entries(1)) sum += e.count;
  CHECK(sum == index.total_unigram_tokens());
}

TEST_CASE("every ingested entry is found with at least its count") {
  std::mt19937_64 rng(5);
  std::vector<NGramEntry> lines;
  NGramIndexBuilder builder;
  for (int i = 0; i < 500; ++i) {
    NGramEntry e;
    const std::size_t n = 1 + rng() % 5;
    for (std::size_t t = 0; t < n; ++t) e.tokens.push_back(oracle::random_word(rng, 1, 3, "abc"));
    e.count = 1 + rng() % 50;
    builder.add(e);
    lines.push_back(e);
  }
  const auto index = std::move(builder).build();
  for (const auto& e : lines) CHECK(index.lookup(std::span<const std::string>(e.tokens)) >= e.count);
}

TEST_CASE("character bigram postings") {
  const auto index = test::sample_vocabulary_index();
  const auto postings = build_bigram_postings(index);
  auto words_of = [&](std::string_view bigram) {
    std::set<std::string> out;
    for (VocabId id : postings.ids(bigram)) out.emplace(index.word(id));
    return out;
  };
  // "disable" contains "sa", so it belongs on that list.
  CHECK(words_of("sa") ==
        std::set<std::string>{"salute", "sandbox", "sand", "sale", "sandwich", "salt", "sanitary", "disable"});
  CHECK(words_of("gl") == std::set<std::string>{"single", "singly", "tingle", "angle", "beagle", "tangle", "english"});
  CHECK(postings.ids("s").empty());
  CHECK(postings.ids("sal").empty());

  NGramIndexBuilder one;
  one.add(std::vector<std::string>{"a"}, 4);
  const auto tiny = std::move(one).build();
  CHECK(build_bigram_postings(tiny).list_count() == 0);
}

TEST_CASE("postings are sound and complete against brute force") {
  std::mt19937_64 rng(99);
  for (std::size_t vocab_size : {10, 300, 10000}) {
    NGramIndexBuilder builder;
    for (std::size_t i = 0; i < vocab_size; ++i) {
      builder.add(std::vector<std::string>{oracle::random_word(rng, 1, 9, "abcdefghij")}, 1 + rng() % 10);
    }
    const auto index = std::move(builder).build();
    const auto postings = build_bigram_postings(index);
    std::map<std::string, std::set<VocabId>> expected;
    for (VocabId id = 0; id < index.vocabulary_size(); ++id) {
      const std::string w(index.word(id));
      for (std::size_t i = 0; i + 1 < w.size(); ++i) expected[w.substr(i, 2)].insert(id);
    }
    std::size_t non_empty = 0;
    for (char a = 'a'; a <= 'j'; ++a) {
      for (char b = 'a'; b <= 'j'; ++b) {
        const std::string bigram{a, b};
        const auto ids = postings.ids(bigram);
        const std::set<VocabId> got(ids.begin(), ids.end());
        REQUIRE(got == expected[bigram]);
        for (VocabId id : ids) REQUIRE(index.word(id).find(bigram) != std::string_view::npos);
        non_empty += ids.empty() ? 0 : 1;
      }
    }
    CHECK(postings.list_count() == non_empty);
  }
}

TEST_CASE("save and load round-trip") {
  test::TempDir dir;
  SUBCASE("reference fixture") {
    const auto index = test::reference_index();
    const auto path = dir.path() / "reference.idx";
    save_index(index, path);
    const auto loaded = load_index(path);
    CHECK(loaded == index);
    for (const auto& [line, count] : test::kReferenceNGrams) {
      const auto entry = parse_count_line(std::string(line) + "\t0");
      CHECK(loaded.lookup(std::span<const std::string>(entry.tokens)) == count);
    }
  }
  SUBCASE("empty index") {
    const auto path = dir.path() / "empty.idx";
    save_index(NGramIndex{}, path);
    const auto loaded = load_index(path);
    CHECK(loaded.empty());
    CHECK(loaded.lookup({"a"}) == 0);
  }
  SUBCASE("damaged artifacts") {
    const std::string bytes = serialize_index(test::reference_index());
    CHECK_THROWS_AS(deserialize_index(std::string_view(bytes).substr(0, bytes.size() - 1)), CorruptIndex);
    CHECK_THROWS_AS(deserialize_index(std::string_view(bytes).substr(0, 20)), CorruptIndex);

    std::string flipped = bytes;
    flipped[flipped.size() / 2] ^= 0x40;
    CHECK_THROWS_AS(deserialize_index(flipped), CorruptIndex);

    std::string versioned = bytes;
    versioned[8] = 9;
    CHECK_THROWS_AS(deserialize_index(versioned), VersionMismatch);

    std::string alien = bytes;
    alien[0] = 'X';
    CHECK_THROWS_AS(deserialize_index(alien), CorruptIndex);

    const auto path = dir.path() / "cut.idx";
    std::ofstream(path, std::ios::binary) << bytes.substr(0, bytes.size() - 1);
    CHECK_THROWS_AS(load_index(path), CorruptIndex);
  }
  SUBCASE("serialization is deterministic") {
    CHECK(serialize_index(build_from_corpus(test::small_corpus())) ==
          serialize_index(build_from_corpus(test::small_corpus())));
  }
}
