#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "webspell/ngram_store.hpp"

namespace webspell {

struct Token {
  std::string surface;     // exact slice of the source
  std::string normalized;  // lowercased surface
  std::size_t begin = 0;   // byte offsets into the source, [begin, end)
  std::size_t end = 0;
  std::size_t index = 0;     // ordinal in the token sequence
  std::size_t sentence = 0;  // ordinal of the enclosing sentence
  bool is_word = false;      // false for punctuation and pure numbers
};

struct TokenizedText {
  std::vector<Token> tokens;
  /// Token index at which each sentence starts; sentence_starts[0] == 0
  /// whenever tokens is non-empty.
  std::vector<std::size_t> sentence_starts;
};

/// Splits on whitespace, then peels leading and trailing ASCII punctuation
/// off each chunk into their own tokens. Inner punctuation ("don't",
/// "well-known") stays in the word. A sentence ends at a token containing
/// '.', '!' or '?' that is followed by whitespace or the end of the text.
TokenizedText tokenize(std::string_view text);

/// Surface text rebuilt from the tokens and the gaps between them.
std::string reconstruct(std::string_view source, const std::vector<Token>& tokens);

enum class ErrorKind { kNonWord, kRealWord };

std::string_view to_string(ErrorKind kind);

struct Misspelling {
  std::size_t token_index = 0;
  std::string surface;
  ErrorKind kind = ErrorKind::kNonWord;
};

/// Word tokens whose normalized form is not a unigram of `index`, in text order.
std::vector<Misspelling> detect_nonword_errors(const std::vector<Token>& tokens, const NGramIndex& index);

}  // namespace webspell
