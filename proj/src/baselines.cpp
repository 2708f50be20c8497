#include "webspell/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "webspell/errors.hpp"

namespace webspell {

std::size_t levenshtein(std::string_view x, std::string_view y) {
  std::vector<std::size_t> prev(y.size() + 1);
  std::vector<std::size_t> cur(y.size() + 1);
  std::iota(prev.begin(), prev.end(), std::size_t{0});
  for (std::size_t i = 1; i <= x.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= y.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (x[i - 1] == y[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[y.size()];
}

std::size_t hamming(std::string_view x, std::string_view y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("hamming distance needs strings of the same length (" + std::to_string(x.size()) +
                                " vs " + std::to_string(y.size()) + ")");
  }
  std::size_t d = 0;
  for (std::size_t i = 0; i < x.size(); ++i) d += x[i] != y[i] ? 1 : 0;
  return d;
}

std::size_t damerau_levenshtein(std::string_view x, std::string_view y) {
  const std::size_t m = x.size();
  const std::size_t n = y.size();
  std::vector<std::size_t> d((m + 1) * (n + 1));
  auto at = [n](std::size_t i, std::size_t j) { return i * (n + 1) + j; };
  for (std::size_t i = 0; i <= m; ++i) d[at(i, 0)] = i;
  for (std::size_t j = 0; j <= n; ++j) d[at(0, j)] = j;
  for (std::size_t i = 1; i <= m; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      const std::size_t cost = x[i - 1] == y[j - 1] ? 0 : 1;
      std::size_t best = std::min({d[at(i - 1, j)] + 1, d[at(i, j - 1)] + 1, d[at(i - 1, j - 1)] + cost});
      if (i > 1 && j > 1 && x[i - 1] == y[j - 2] && x[i - 2] == y[j - 1]) {
        best = std::min(best, d[at(i - 2, j - 2)] + 1);
      }
      d[at(i, j)] = best;
    }
  }
  return d[at(m, n)];
}

LcsResult lcs(std::string_view x, std::string_view y) {
  const std::size_t m = x.size();
  const std::size_t n = y.size();
  std::vector<std::size_t> table((m + 1) * (n + 1), 0);
  auto at = [n](std::size_t i, std::size_t j) { return i * (n + 1) + j; };
  for (std::size_t i = 1; i <= m; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      table[at(i, j)] = x[i - 1] == y[j - 1] ? table[at(i - 1, j - 1)] + 1
                                             : std::max(table[at(i - 1, j)], table[at(i, j - 1)]);
    }
  }

  LcsResult result{table[at(m, n)], {}};
  std::size_t i = m;
  std::size_t j = n;
  while (i > 0 && j > 0) {
    if (x[i - 1] == y[j - 1]) {
      result.witness.push_back(x[i - 1]);
      --i;
      --j;
    } else if (table[at(i - 1, j)] >= table[at(i, j - 1)]) {
      --i;
    } else {
      --j;
    }
  }
  std::reverse(result.witness.begin(), result.witness.end());
  return result;
}

double prior(Count word_count, Count total) {
  if (total == 0) throw ContractViolation("prior needs a positive corpus size N");
  return (static_cast<double>(word_count) + 0.5) / (static_cast<double>(total) + 0.5);
}

double prior(const PriorModel& model, std::string_view word) {
  Count c = 0;
  if (model.index != nullptr) {
    if (auto id = model.index->find_word(word)) c = model.index->word_count(*id);
  }
  return prior(c, model.total);
}

double likelihood(std::string_view observed, std::string_view word, const ChannelParams& params) {
  if (!(params.delta > 0.0 && params.delta < 1.0)) throw ContractViolation("channel decay must lie in (0, 1)");
  const auto d = damerau_levenshtein(observed, word);
  return std::pow(params.delta, static_cast<double>(d));
}

std::string noisy_channel_rank(std::string_view observed, const std::vector<std::string>& candidates,
                               const PriorModel& model, const ChannelParams& params) {
  if (candidates.empty()) throw ContractViolation("noisy channel ranking needs at least one candidate");
  const std::string* best = nullptr;
  double best_score = -1.0;
  for (const auto& w : candidates) {
    const double score = likelihood(observed, w, params) * prior(model, w);
    if (best == nullptr || score > best_score || (score == best_score && w < *best)) {
      best = &w;
      best_score = score;
    }
  }
  return *best;
}

double bigram_chain_prob(const std::vector<std::string>& tokens, const NGramIndex& index) {
  double p = 1.0;
  std::string_view prev = kSentenceStart;
  for (const auto& w : tokens) {
    const Count history = index.lookup({prev});
    const Count pair = index.lookup({prev, std::string_view(w)});
    if (history == 0 || pair == 0) return 0.0;
    // Hand-made count files need not satisfy count(a b) <= count(a).
    p *= std::min(1.0, static_cast<double>(pair) / static_cast<double>(history));
    prev = w;
  }
  return p;
}

}  // namespace webspell
