#pragma once

// Error induction and scoring in a three-band results layout:
// total / non-word / real-word bands, each split into corrected and
// not-or-falsely corrected.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "webspell/corrector.hpp"
#include "webspell/detector.hpp"
#include "webspell/ngram_store.hpp"

namespace webspell {

enum class EditOp { kInsertion, kDeletion, kSubstitution, kTransposition };

std::string_view to_string(EditOp op);

struct InducedError {
  std::size_t token_index = 0;
  std::string original;   // normalized
  std::string corrupted;  // normalized
  EditOp op = EditOp::kSubstitution;
  ErrorKind kind = ErrorKind::kNonWord;

  friend bool operator==(const InducedError&, const InducedError&) = default;
};

struct InductionConfig {
  double rate = 0.01;
  double realword_share = 0.20;
  std::uint64_t seed = 0;
  int max_attempts = 100;  // edits tried per target before moving on
};

struct InductionResult {
  std::string text;
  std::vector<InducedError> errors;  // ordered by token_index
};

/// Corrupts round(rate * word_count) distinct purely alphabetic,
/// in-vocabulary word tokens with one single-character edit each.
/// round(share * total) of them are steered into other vocabulary words
/// by rejection sampling; the rest must fall outside the vocabulary.
/// Throws InsufficientText when fewer than one error would be induced.
InductionResult induce_errors(std::string_view text, const NGramIndex& index, const InductionConfig& config);

/// Applies `op` at `position` (using `letter` for insertion/substitution).
/// Returns std::nullopt when the edit is impossible or a no-op.
std::optional<std::string> apply_edit(std::string_view word, EditOp op, std::size_t position, char letter);

struct ClassScore {
  std::size_t total = 0;
  std::size_t corrected = 0;
  std::size_t not_or_falsely_corrected = 0;

  double rate() const { return total == 0 ? 0.0 : static_cast<double>(corrected) / static_cast<double>(total); }
  friend bool operator==(const ClassScore&, const ClassScore&) = default;
};

struct EvalReport {
  std::size_t total_words = 0;
  ClassScore nonword;
  ClassScore realword;
  std::optional<std::uint64_t> seed;

  std::size_t total_errors() const { return nonword.total + realword.total; }
  ClassScore overall() const;

  /// From raw class counts.
  static EvalReport from_counts(std::size_t total_words, std::size_t nonword_total, std::size_t nonword_corrected,
                                std::size_t realword_total, std::size_t realword_corrected);

  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

enum class Outcome { kCorrected, kNotCorrected, kFalselyCorrected };

std::string_view to_string(Outcome outcome);

/// Outcome of one induced error: corrected iff an applied replacement at
/// its token equals the original word, case-insensitively.
Outcome classify(const InducedError& gold, const std::vector<Correction>& corrections);

/// Throws ContractViolation when a gold or correction index falls outside
/// `tokens` or a gold entry does not match the token at its index.
EvalReport evaluate(const std::vector<InducedError>& gold, const std::vector<Correction>& corrections,
                    const std::vector<Token>& tokens);

enum class ReportFormat { kJson, kCsv, kTable };

std::string emit_report(const EvalReport& report, ReportFormat format);
EvalReport report_from_json(std::string_view json);

/// One CSV row per induced error with its outcome.
std::string emit_error_log_csv(const std::vector<InducedError>& gold, const std::vector<Correction>& corrections);

/// Rounds a ratio to a whole percent, halves away from zero.
long percent(std::size_t part, std::size_t whole);

}  // namespace webspell
