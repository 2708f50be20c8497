#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "webspell/candidates.hpp"
#include "webspell/detector.hpp"
#include "webspell/ngram_store.hpp"

namespace webspell {

/// Up to four preceding words followed by one candidate.
struct ContextQuery {
  std::vector<std::string> tokens;

  std::size_t order() const { return tokens.size(); }
  std::string_view candidate() const { return tokens.back(); }
};

struct Correction {
  Misspelling error;
  std::optional<std::string> chosen;
  int backoff_order = 1;  // n-gram order that decided, 5..1
  Count winning_count = 0;
  bool applied = false;
};

struct CorrectorConfig {
  std::size_t k = kDefaultCandidates;
  std::size_t window = 4;  // preceding words, 0..4
  bool real_word_pass = false;
  double gamma = 10.0;  // real-word replacement margin, > 1
  bool case_restore = true;

  /// Throws ContractViolation on out-of-range fields.
  void validate() const;
};

/// One query per candidate. The context is the nearest min(window, available)
/// word tokens before `error_index` in the same sentence, read from their
/// normalized form.
std::vector<ContextQuery> build_context_queries(const std::vector<Token>& tokens, std::size_t error_index,
                                                const std::vector<Candidate>& candidates, std::size_t window);

/// Picks the candidate whose query has the highest count, backing off by
/// dropping the leftmost context word until some count is non-zero. With
/// nothing found at order 2, the highest unigram count wins. Ties go to the
/// earlier candidate. `queries` and `candidates` are parallel lists.
Correction select_correction(const std::vector<ContextQuery>& queries, const std::vector<Candidate>& candidates,
                             const NGramIndex& index);

/// Mirrors the casing of `surface` onto `replacement`: all-caps, leading
/// capital, or left lowercase.
std::string restore_case(std::string_view surface, std::string_view replacement);

struct CorrectionResult {
  std::string text;
  std::vector<Correction> corrections;  // in token order
};

/// Detects non-word errors and replaces each, left to right, so that
/// earlier replacements become context for later ones. With
/// config.real_word_pass set, suspicious in-vocabulary words are then
/// checked by real_word_pass on the corrected token stream.
CorrectionResult correct_text(std::string_view text, const NGramIndex& index, const CharBigramPostings& postings,
                              const CorrectorConfig& config = {});

/// Flags an in-vocabulary word with at least `window` preceding words when
/// some other candidate's context count c_best satisfies
/// c_best >= gamma * (c_orig + 1), c_orig being the word's own count at the
/// same order. Flagged tokens are rewritten in `tokens` (normalized form).
std::vector<Correction> real_word_pass(std::vector<Token>& tokens, const NGramIndex& index,
                                       const CharBigramPostings& postings, const CorrectorConfig& config);

/// The margin test used by real_word_pass.
bool real_word_margin_met(Count c_best, Count c_orig, double gamma);

}  // namespace webspell
