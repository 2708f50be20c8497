#include "webspell/detector.hpp"

#include <cctype>

namespace webspell {

namespace {

bool is_space(unsigned char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

bool is_punct(unsigned char c) { return c < 0x80 && std::ispunct(c) != 0; }

// Word tokens need at least one letter; bytes of multi-byte UTF-8
// sequences count as letters.
bool has_letter(std::string_view s) {
  for (unsigned char c : s) {
    if (c >= 0x80 || std::isalpha(c) != 0) return true;
  }
  return false;
}

bool ends_sentence(std::string_view punct) { return punct.find_first_of(".!?") != std::string_view::npos; }

}  // namespace

TokenizedText tokenize(std::string_view text) {
  TokenizedText out;
  std::size_t sentence = 0;
  bool sentence_open = false;

  auto emit = [&](std::size_t begin, std::size_t end, bool word) {
    Token t;
    t.surface = std::string(text.substr(begin, end - begin));
    t.normalized = normalize_token(t.surface);
    t.begin = begin;
    t.end = end;
    t.index = out.tokens.size();
    t.is_word = word;
    if (!sentence_open) {
      out.sentence_starts.push_back(t.index);
      sentence_open = true;
    }
    t.sentence = sentence;
    out.tokens.push_back(std::move(t));
  };
  auto close_sentence = [&] {
    if (sentence_open) {
      ++sentence;
      sentence_open = false;
    }
  };

  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(static_cast<unsigned char>(text[i]))) ++i;
    if (i == text.size()) break;
    const std::size_t begin = i;
    while (i < text.size() && !is_space(static_cast<unsigned char>(text[i]))) ++i;
    const std::size_t end = i;

    std::size_t lead = begin;
    while (lead < end && is_punct(static_cast<unsigned char>(text[lead]))) ++lead;
    if (lead == end) {
      emit(begin, end, false);
      if (ends_sentence(text.substr(begin, end - begin))) close_sentence();
      continue;
    }
    std::size_t trail = end;
    while (trail > lead && is_punct(static_cast<unsigned char>(text[trail - 1]))) --trail;

    if (lead > begin) emit(begin, lead, false);
    emit(lead, trail, has_letter(text.substr(lead, trail - lead)));
    if (trail < end) {
      emit(trail, end, false);
      if (ends_sentence(text.substr(trail, end - trail))) close_sentence();
    }
  }
  return out;
}

std::string reconstruct(std::string_view source, const std::vector<Token>& tokens) {
  std::string out;
  out.reserve(source.size());
  std::size_t at = 0;
  for (const Token& t : tokens) {
    out.append(source.substr(at, t.begin - at));
    out.append(t.surface);
    at = t.end;
  }
  out.append(source.substr(at));
  return out;
}

std::string_view to_string(ErrorKind kind) { return kind == ErrorKind::kNonWord ? "non-word" : "real-word"; }

std::vector<Misspelling> detect_nonword_errors(const std::vector<Token>& tokens, const NGramIndex& index) {
  std::vector<Misspelling> out;
  for (const Token& t : tokens) {
    if (t.is_word && !index.contains_unigram(t.normalized)) {
      out.push_back({t.index, t.surface, ErrorKind::kNonWord});
    }
  }
  return out;
}

}  // namespace webspell
