#include "webspell/candidates.hpp"

#include <algorithm>

#include "webspell/baselines.hpp"
#include "webspell/errors.hpp"

namespace webspell {

namespace {

std::size_t abs_diff(std::size_t a, std::size_t b) { return a > b ? a - b : b - a; }

std::vector<Candidate> take_top(std::vector<Candidate> pool, std::size_t k,
                                bool (*less)(const Candidate&, const Candidate&)) {
  const std::size_t n = std::min(k, pool.size());
  std::partial_sort(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n), pool.end(), less);
  pool.resize(n);
  for (std::size_t i = 0; i < pool.size(); ++i) pool[i].rank = i;
  return pool;
}

bool by_count_then_word(const Candidate& a, const Candidate& b) {
  if (a.unigram_count != b.unigram_count) return a.unigram_count > b.unigram_count;
  return a.word < b.word;
}

// Errors without any character bigram: words one edit away.
std::vector<Candidate> short_error_candidates(const std::string& error, const NGramIndex& index, std::size_t k,
                                              std::string_view exclude) {
  std::vector<Candidate> pool;
  for (VocabId id = 0; id < index.vocabulary_size(); ++id) {
    const std::string_view w = index.word(id);
    if (w.size() > error.size() + 1 || w == exclude) continue;
    if (levenshtein(error, w) != 1) continue;
    pool.push_back({std::string(w), 0, abs_diff(w.size(), error.size()), index.word_count(id), 0});
  }
  return take_top(std::move(pool), k, by_count_then_word);
}

}  // namespace

std::vector<std::string> char_bigrams(std::string_view word) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i + 1 < word.size(); ++i) {
    std::string bigram(word.substr(i, 2));
    if (std::find(out.begin(), out.end(), bigram) == out.end()) out.push_back(std::move(bigram));
  }
  return out;
}

bool ranks_before(const Candidate& a, const Candidate& b) {
  if (a.overlap != b.overlap) return a.overlap > b.overlap;
  if (a.len_diff != b.len_diff) return a.len_diff < b.len_diff;
  if (a.unigram_count != b.unigram_count) return a.unigram_count > b.unigram_count;
  return a.word < b.word;
}

std::vector<Candidate> generate_candidates(std::string_view error, const NGramIndex& index,
                                           const CharBigramPostings& postings, std::size_t k,
                                           std::string_view exclude) {
  if (k < 1) throw ContractViolation("candidate list size k must be at least 1");
  const std::string normalized = normalize_token(error);
  const std::string excluded = normalize_token(exclude);
  const std::vector<std::string> bigrams = char_bigrams(normalized);
  if (bigrams.empty()) return short_error_candidates(normalized, index, k, excluded);

  std::vector<std::uint32_t> overlap(index.vocabulary_size(), 0);
  std::vector<VocabId> touched;
  for (const auto& bigram : bigrams) {
    for (VocabId id : postings.ids(bigram)) {
      if (id >= overlap.size()) throw ContractViolation("postings do not belong to this index");
      if (overlap[id]++ == 0) touched.push_back(id);
    }
  }

  std::vector<Candidate> pool;
  pool.reserve(touched.size());
  for (VocabId id : touched) {
    const std::string_view w = index.word(id);
    if (!excluded.empty() && w == excluded) continue;
    pool.push_back({std::string(w), overlap[id], abs_diff(w.size(), normalized.size()), index.word_count(id), 0});
  }
  return take_top(std::move(pool), k, ranks_before);
}

}  // namespace webspell
