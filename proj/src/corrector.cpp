#include "webspell/corrector.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "webspell/errors.hpp"

namespace webspell {

void CorrectorConfig::validate() const {
  if (k < 1) throw ContractViolation("k must be at least 1");
  if (window > 4) throw ContractViolation("window must be in 0..4");
  if (!(gamma > 1.0)) throw ContractViolation("gamma must be greater than 1");
}

namespace {

// Normalized forms of the nearest `window` word tokens before `at`, within
// its sentence, in text order.
std::vector<std::string> preceding_words(const std::vector<Token>& tokens, std::size_t at, std::size_t window) {
  std::vector<std::string> context;
  const std::size_t sentence = tokens.at(at).sentence;
  for (std::size_t i = at; i > 0 && context.size() < window;) {
    --i;
    if (tokens[i].sentence != sentence) break;
    if (tokens[i].is_word) context.push_back(tokens[i].normalized);
  }
  std::reverse(context.begin(), context.end());
  return context;
}

Count suffix_count(const ContextQuery& query, std::size_t order, const NGramIndex& index) {
  const std::size_t skip = query.tokens.size() - order;
  return index.lookup(std::span<const std::string>(query.tokens.data() + skip, order));
}

std::vector<Correction> real_word_pass_impl(std::vector<Token>& tokens, const NGramIndex& index,
                                            const CharBigramPostings& postings, const CorrectorConfig& config,
                                            const std::vector<bool>& skip) {
  config.validate();
  std::vector<Correction> out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const Token& token = tokens[i];
    if (!token.is_word || (i < skip.size() && skip[i])) continue;
    if (!index.contains_unigram(token.normalized)) continue;

    std::vector<std::string> own = preceding_words(tokens, i, config.window);
    if (own.size() < config.window) continue;
    own.push_back(token.normalized);
    const Count c_orig = index.lookup(std::span<const std::string>(own));

    const auto candidates = generate_candidates(token.normalized, index, postings, config.k, token.normalized);
    if (candidates.empty()) continue;
    const auto queries = build_context_queries(tokens, i, candidates, config.window);

    std::size_t best = 0;
    Count c_best = 0;
    for (std::size_t c = 0; c < queries.size(); ++c) {
      const Count n = index.lookup(std::span<const std::string>(queries[c].tokens));
      if (n > c_best) {
        c_best = n;
        best = c;
      }
    }
    if (!real_word_margin_met(c_best, c_orig, config.gamma)) continue;

    Correction corr;
    corr.error = {i, token.surface, ErrorKind::kRealWord};
    corr.chosen = candidates[best].word;
    corr.backoff_order = static_cast<int>(queries[best].order());
    corr.winning_count = c_best;
    corr.applied = true;
    tokens[i].normalized = candidates[best].word;
    out.push_back(std::move(corr));
  }
  return out;
}

}  // namespace

std::vector<ContextQuery> build_context_queries(const std::vector<Token>& tokens, std::size_t error_index,
                                                const std::vector<Candidate>& candidates, std::size_t window) {
  if (window > 4) throw ContractViolation("window must be in 0..4");
  const std::vector<std::string> context = preceding_words(tokens, error_index, window);
  std::vector<ContextQuery> queries;
  queries.reserve(candidates.size());
  for (const auto& c : candidates) {
    ContextQuery q{context};
    q.tokens.push_back(c.word);
    queries.push_back(std::move(q));
  }
  return queries;
}

Correction select_correction(const std::vector<ContextQuery>& queries, const std::vector<Candidate>& candidates,
                             const NGramIndex& index) {
  Correction result;
  if (candidates.empty()) return result;
  if (queries.size() != candidates.size()) {
    throw ContractViolation("queries and candidates must be parallel lists");
  }

  std::size_t full = 0;
  for (const auto& q : queries) {
    if (q.tokens.empty() || q.tokens.back() != candidates[&q - queries.data()].word) {
      throw ContractViolation("each query must end with its candidate");
    }
    full = std::max(full, q.order());
  }

  for (std::size_t order = full; order >= 2; --order) {
    std::size_t best = 0;
    Count best_count = 0;
    for (std::size_t i = 0; i < queries.size(); ++i) {
      if (queries[i].order() < order) continue;
      const Count n = suffix_count(queries[i], order, index);
      if (n > best_count) {
        best_count = n;
        best = i;
      }
    }
    if (best_count > 0) {
      result.chosen = candidates[best].word;
      result.backoff_order = static_cast<int>(order);
      result.winning_count = best_count;
      result.applied = true;
      return result;
    }
  }

  std::size_t best = 0;
  Count best_count = index.lookup({std::string_view(candidates[0].word)});
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const Count n = index.lookup({std::string_view(candidates[i].word)});
    if (n > best_count) {
      best_count = n;
      best = i;
    }
  }
  result.chosen = candidates[best].word;
  result.backoff_order = 1;
  result.winning_count = best_count;
  result.applied = true;
  return result;
}

std::string restore_case(std::string_view surface, std::string_view replacement) {
  std::size_t letters = 0;
  std::size_t upper = 0;
  for (unsigned char c : surface) {
    if (std::isalpha(c) != 0) {
      ++letters;
      if (std::isupper(c) != 0) ++upper;
    }
  }
  std::string out(replacement);
  if (letters >= 2 && upper == letters) {
    for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  } else if (!surface.empty() && std::isupper(static_cast<unsigned char>(surface.front())) != 0 && !out.empty()) {
    out.front() = static_cast<char>(std::toupper(static_cast<unsigned char>(out.front())));
  }
  return out;
}

bool real_word_margin_met(Count c_best, Count c_orig, double gamma) {
  return static_cast<double>(c_best) >= gamma * (static_cast<double>(c_orig) + 1.0);
}

std::vector<Correction> real_word_pass(std::vector<Token>& tokens, const NGramIndex& index,
                                       const CharBigramPostings& postings, const CorrectorConfig& config) {
  return real_word_pass_impl(tokens, index, postings, config, {});
}

CorrectionResult correct_text(std::string_view text, const NGramIndex& index, const CharBigramPostings& postings,
                              const CorrectorConfig& config) {
  config.validate();
  TokenizedText tokenized = tokenize(text);
  std::vector<Token>& tokens = tokenized.tokens;
  const std::vector<Misspelling> errors = detect_nonword_errors(tokens, index);

  std::map<std::size_t, Correction> by_token;
  std::vector<bool> handled(tokens.size(), false);
  for (const Misspelling& error : errors) {
    const auto candidates = generate_candidates(tokens[error.token_index].normalized, index, postings, config.k);
    const auto queries = build_context_queries(tokens, error.token_index, candidates, config.window);
    Correction corr = select_correction(queries, candidates, index);
    corr.error = error;
    if (corr.applied) tokens[error.token_index].normalized = *corr.chosen;
    handled[error.token_index] = true;
    by_token.emplace(error.token_index, std::move(corr));
  }

  if (config.real_word_pass) {
    for (auto& corr : real_word_pass_impl(tokens, index, postings, config, handled)) {
      by_token.emplace(corr.error.token_index, std::move(corr));
    }
  }

  CorrectionResult result;
  result.text.reserve(text.size());
  std::size_t at = 0;
  for (auto& [token_index, corr] : by_token) {
    if (corr.applied) {
      const Token& t = tokens[token_index];
      result.text.append(text.substr(at, t.begin - at));
      result.text.append(config.case_restore ? restore_case(t.surface, *corr.chosen) : *corr.chosen);
      at = t.end;
    }
    result.corrections.push_back(std::move(corr));
  }
  result.text.append(text.substr(at));
  return result;
}

}  // namespace webspell
