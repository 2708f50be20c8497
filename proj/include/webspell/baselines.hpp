#pragma once

// Comparator models: edit distances, the noisy-channel ranker and the
// bigram chain probability. Strings are compared byte by byte.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "webspell/ngram_store.hpp"

namespace webspell {

std::size_t levenshtein(std::string_view x, std::string_view y);

/// Throws std::invalid_argument when the lengths differ.
std::size_t hamming(std::string_view x, std::string_view y);

/// Levenshtein plus adjacent transposition (optimal string alignment).
std::size_t damerau_levenshtein(std::string_view x, std::string_view y);

struct LcsResult {
  std::size_t length = 0;
  std::string witness;
};

/// Longest common subsequence. The witness is traced back through the DP
/// table preferring a match, then the cell above, then the cell to the left.
LcsResult lcs(std::string_view x, std::string_view y);

struct PriorModel {
  Count total = 0;  // N
  const NGramIndex* index = nullptr;

  static PriorModel from_index(const NGramIndex& index) { return {index.total_unigram_tokens(), &index}; }
};

/// (C(w) + 0.5) / (N + 0.5). Throws ContractViolation when N is 0.
double prior(Count word_count, Count total);
double prior(const PriorModel& model, std::string_view word);

struct ChannelParams {
  double delta = 0.05;  // per-edit decay, 0 < delta < 1
};

/// delta ^ damerau_levenshtein(observed, word).
double likelihood(std::string_view observed, std::string_view word, const ChannelParams& params = {});

/// argmax over candidates of likelihood * prior; equal products go to the
/// lexicographically smaller word. Throws ContractViolation on an empty set.
std::string noisy_channel_rank(std::string_view observed, const std::vector<std::string>& candidates,
                               const PriorModel& model, const ChannelParams& params = {});

/// Product of count(w[k-1] w[k]) / count(w[k-1]) with w[0] the sentence
/// start marker. Any zero count makes the whole product 0.
double bigram_chain_prob(const std::vector<std::string>& tokens, const NGramIndex& index);

}  // namespace webspell
