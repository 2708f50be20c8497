#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "webspell/ngram_store.hpp"

namespace webspell {

inline constexpr std::size_t kDefaultCandidates = 10;

struct Candidate {
  std::string word;
  std::size_t overlap = 0;   // distinct error bigrams found in word
  std::size_t len_diff = 0;  // |len(word) - len(error)|
  Count unigram_count = 0;
  std::size_t rank = 0;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

/// Adjacent byte pairs of `word` in order, duplicates removed (first
/// occurrence kept). Empty for words shorter than two bytes.
std::vector<std::string> char_bigrams(std::string_view word);

/// Ranking order: overlap desc, len_diff asc, unigram_count desc, word asc.
bool ranks_before(const Candidate& a, const Candidate& b);

/// Top-k vocabulary words sharing at least one character bigram with
/// `error`, ordered by ranks_before. The error is normalized first; the
/// word `exclude` (if non-empty) is never proposed.
///
/// Errors with fewer than two characters have no bigrams; for those the
/// words at edit distance 1 are returned instead, by unigram count, with
/// overlap 0.
std::vector<Candidate> generate_candidates(std::string_view error, const NGramIndex& index,
                                           const CharBigramPostings& postings,
                                           std::size_t k = kDefaultCandidates,
                                           std::string_view exclude = {});

}  // namespace webspell
