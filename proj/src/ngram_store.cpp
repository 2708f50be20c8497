#include "webspell/ngram_store.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <string>

#include "webspell/detector.hpp"
#include "webspell/errors.hpp"

namespace webspell {

std::string normalize_token(std::string_view token) {
  std::string out(token);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

namespace {

void check_order(std::size_t order) {
  if (order < 1 || order > kMaxOrder) {
    throw ContractViolation("n-gram order must be in 1..5, got " + std::to_string(order));
  }
}

// Compares row `row` of a row-major table of width `order` with `key`.
int compare_row(std::span<const std::uint32_t> ids, std::size_t order, std::size_t row,
                std::span<const std::uint32_t> key) {
  const std::uint32_t* r = ids.data() + row * order;
  for (std::size_t i = 0; i < order; ++i) {
    if (r[i] < key[i]) return -1;
    if (r[i] > key[i]) return 1;
  }
  return 0;
}

}  // namespace

std::optional<std::uint32_t> NGramIndex::token_id(std::string_view normalized) const {
  auto it = std::lower_bound(tokens_.begin(), tokens_.end(), normalized,
                             [](const std::string& a, std::string_view b) { return std::string_view(a) < b; });
  if (it == tokens_.end() || *it != normalized) return std::nullopt;
  return static_cast<std::uint32_t>(it - tokens_.begin());
}

Count NGramIndex::lookup_ids(std::span<const std::uint32_t> key) const {
  const std::size_t order = key.size();
  const Table& table = tables_[order - 1];
  std::size_t lo = 0;
  std::size_t hi = table.counts.size();
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    const int cmp = compare_row(table.ids, order, mid, key);
    if (cmp == 0) return table.counts[mid];
    if (cmp < 0) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return 0;
}

template <typename Str>
Count NGramIndex::lookup_impl(std::span<const Str> tokens) const {
  check_order(tokens.size());
  std::array<std::uint32_t, kMaxOrder> key{};
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto id = token_id(normalize_token(tokens[i]));
    if (!id) return 0;
    key[i] = *id;
  }
  return lookup_ids(std::span<const std::uint32_t>(key.data(), tokens.size()));
}

Count NGramIndex::lookup(std::span<const std::string> tokens) const { return lookup_impl(tokens); }

Count NGramIndex::lookup(std::span<const std::string_view> tokens) const { return lookup_impl(tokens); }

Count NGramIndex::lookup(std::initializer_list<std::string_view> tokens) const {
  return lookup_impl(std::span<const std::string_view>(tokens.begin(), tokens.size()));
}

bool NGramIndex::contains_unigram(std::string_view word) const {
  if (word.empty()) return false;
  return find_word(word).has_value();
}

std::size_t NGramIndex::size(int order) const {
  check_order(static_cast<std::size_t>(order));
  return tables_[order - 1].counts.size();
}

bool NGramIndex::empty() const {
  return std::all_of(tables_.begin(), tables_.end(), [](const Table& t) { return t.counts.empty(); });
}

std::string_view NGramIndex::word(VocabId id) const { return tokens_.at(tables_[0].ids.at(id)); }

Count NGramIndex::word_count(VocabId id) const { return tables_[0].counts.at(id); }

std::optional<VocabId> NGramIndex::find_word(std::string_view word) const {
  const auto id = token_id(normalize_token(word));
  if (!id) return std::nullopt;
  const auto& ids = tables_[0].ids;
  auto it = std::lower_bound(ids.begin(), ids.end(), *id);
  if (it == ids.end() || *it != *id) return std::nullopt;
  return static_cast<VocabId>(it - ids.begin());
}

std::vector<VocabularyEntry> NGramIndex::vocabulary() const {
  std::vector<VocabularyEntry> out;
  out.reserve(vocabulary_size());
  for (VocabId id = 0; id < vocabulary_size(); ++id) {
    out.push_back({std::string(word(id)), id, word_count(id)});
  }
  return out;
}

NGramEntry NGramIndex::entry(int order, std::size_t row) const {
  check_order(static_cast<std::size_t>(order));
  const Table& table = tables_[order - 1];
  NGramEntry e;
  e.count = table.counts.at(row);
  for (int i = 0; i < order; ++i) e.tokens.push_back(tokens_[table.ids[row * order + i]]);
  return e;
}

std::vector<NGramEntry> NGramIndex::entries(int order) const {
  std::vector<NGramEntry> out;
  const std::size_t n = size(order);
  out.reserve(n);
  for (std::size_t row = 0; row < n; ++row) out.push_back(entry(order, row));
  return out;
}

// ---------------------------------------------------------------------------

std::uint32_t NGramIndexBuilder::intern(std::string token) {
  auto [it, inserted] = ids_.try_emplace(std::move(token), static_cast<std::uint32_t>(names_.size()));
  if (inserted) names_.push_back(it->first);
  return it->second;
}

void NGramIndexBuilder::add(std::span<const std::string_view> tokens, Count count) {
  check_order(tokens.size());
  std::array<std::uint32_t, kMaxOrder> key{};
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].empty()) throw ContractViolation("n-gram tokens must be non-empty");
    key[i] = intern(normalize_token(tokens[i]));
  }
  auto& keys = keys_[tokens.size() - 1];
  keys.insert(keys.end(), key.begin(), key.begin() + static_cast<std::ptrdiff_t>(tokens.size()));
  counts_[tokens.size() - 1].push_back(count);
}

void NGramIndexBuilder::add(std::span<const std::string> tokens, Count count) {
  std::array<std::string_view, kMaxOrder> views{};
  check_order(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) views[i] = tokens[i];
  add(std::span<const std::string_view>(views.data(), tokens.size()), count);
}

NGramIndex NGramIndexBuilder::build(Count min_count) && {
  if (min_count < 1) min_count = 1;

  // Re-number interned tokens by lexicographic rank.
  std::vector<std::uint32_t> by_name(names_.size());
  std::iota(by_name.begin(), by_name.end(), 0U);
  std::sort(by_name.begin(), by_name.end(), [&](std::uint32_t a, std::uint32_t b) { return names_[a] < names_[b]; });
  std::vector<std::uint32_t> rank(names_.size());
  for (std::uint32_t r = 0; r < by_name.size(); ++r) rank[by_name[r]] = r;

  std::array<NGramIndex::Table, kMaxOrder> tables;
  std::vector<bool> used(names_.size(), false);

  for (std::size_t order = 1; order <= kMaxOrder; ++order) {
    auto& keys = keys_[order - 1];
    auto& counts = counts_[order - 1];
    for (auto& id : keys) id = rank[id];

    std::vector<std::size_t> rows(counts.size());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    auto key_less = [&](std::size_t a, std::size_t b) {
      return std::lexicographical_compare(keys.begin() + a * order, keys.begin() + (a + 1) * order,
                                          keys.begin() + b * order, keys.begin() + (b + 1) * order);
    };
    std::sort(rows.begin(), rows.end(), key_less);

    NGramIndex::Table& table = tables[order - 1];
    for (std::size_t i = 0; i < rows.size();) {
      Count total = 0;
      std::size_t j = i;
      while (j < rows.size() && !key_less(rows[i], rows[j])) total += counts[rows[j++]];
      if (total >= min_count) {
        for (std::size_t p = 0; p < order; ++p) {
          const std::uint32_t id = keys[rows[i] * order + p];
          table.ids.push_back(id);
          used[id] = true;
        }
        table.counts.push_back(total);
      }
      i = j;
    }
    keys.clear();
    keys.shrink_to_fit();
    counts.clear();
    counts.shrink_to_fit();
  }

  // Drop tokens that only occurred in filtered entries; the remap is
  // monotone so every table stays sorted.
  NGramIndex index;
  std::vector<std::uint32_t> compact(names_.size(), 0);
  for (std::uint32_t r = 0; r < by_name.size(); ++r) {
    if (!used[r]) continue;
    compact[r] = static_cast<std::uint32_t>(index.tokens_.size());
    index.tokens_.push_back(std::move(names_[by_name[r]]));
  }
  for (std::size_t order = 1; order <= kMaxOrder; ++order) {
    for (auto& id : tables[order - 1].ids) id = compact[id];
  }
  index.tables_ = std::move(tables);
  for (Count c : index.tables_[0].counts) index.total_unigram_tokens_ += c;

  ids_.clear();
  names_.clear();
  return index;
}

// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void malformed(std::string_view line, std::string_view why) {
  throw ParseError("malformed count line '" + std::string(line) + "': " + std::string(why));
}

Count parse_count(std::string_view line, std::string_view digits) {
  if (digits.empty()) malformed(line, "missing count");
  Count value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc{} || ptr != digits.data() + digits.size() || digits.front() == '+' || digits.front() == '-') {
    malformed(line, "count is not a non-negative integer");
  }
  return value;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

}  // namespace

NGramEntry parse_count_line(std::string_view line, LineFormat format) {
  const std::string_view original = line;
  while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.remove_suffix(1);
  if (line.empty()) throw ParseError("empty count line");

  NGramEntry entry;
  const auto tab = line.find('\t');
  if (tab != std::string_view::npos) {
    if (line.find('\t', tab + 1) != std::string_view::npos) malformed(original, "more than one TAB");
    std::string_view words = line.substr(0, tab);
    entry.count = parse_count(original, line.substr(tab + 1));
    if (words.empty()) malformed(original, "no tokens");
    std::size_t start = 0;
    while (true) {
      const auto space = words.find(' ', start);
      const auto tok = words.substr(start, space == std::string_view::npos ? std::string_view::npos : space - start);
      if (tok.empty()) malformed(original, "tokens must be separated by single spaces");
      if (std::any_of(tok.begin(), tok.end(), is_space)) malformed(original, "token contains whitespace");
      entry.tokens.emplace_back(tok);
      if (space == std::string_view::npos) break;
      start = space + 1;
    }
  } else if (format == LineFormat::kTolerant && line.back() == ')') {
    const auto open = line.rfind('(');
    if (open == std::string_view::npos) malformed(original, "unbalanced parenthesis");
    entry.count = parse_count(original, line.substr(open + 1, line.size() - open - 2));
    std::string_view words = line.substr(0, open);
    std::size_t i = 0;
    while (i < words.size()) {
      while (i < words.size() && is_space(words[i])) ++i;
      std::size_t j = i;
      while (j < words.size() && !is_space(words[j])) ++j;
      if (j > i) entry.tokens.emplace_back(words.substr(i, j - i));
      i = j;
    }
    if (entry.tokens.empty()) malformed(original, "no tokens");
  } else {
    malformed(original, "no TAB-separated count");
  }

  if (entry.tokens.size() > kMaxOrder) malformed(original, "more than 5 tokens");
  return entry;
}

NGramIndex ingest_count_files(std::span<const std::filesystem::path> paths, LineFormat format) {
  NGramIndexBuilder builder;
  for (const auto& path : paths) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read count file " + path.string());
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      NGramEntry entry;
      try {
        entry = parse_count_line(line, format);
      } catch (const ParseError& e) {
        throw ParseError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
      }
      if (entry.count > 0) builder.add(entry);
    }
    if (in.bad()) throw std::runtime_error("error while reading " + path.string());
  }
  return std::move(builder).build();
}

NGramIndex build_from_corpus(std::string_view corpus, int max_order, Count min_count) {
  check_order(static_cast<std::size_t>(max_order));
  if (min_count < 1) throw ContractViolation("min_count must be at least 1");

  const TokenizedText tokenized = tokenize(corpus);
  NGramIndexBuilder builder;
  std::vector<std::string_view> sentence;
  std::size_t words = 0;

  auto flush = [&] {
    if (sentence.size() <= 1) {
      sentence.clear();
      return;
    }
    words += sentence.size() - 1;
    for (std::size_t start = 0; start < sentence.size(); ++start) {
      for (std::size_t n = 1; n <= static_cast<std::size_t>(max_order) && start + n <= sentence.size(); ++n) {
        builder.add(std::span<const std::string_view>(sentence.data() + start, n), 1);
      }
    }
    sentence.clear();
  };

  std::size_t current = 0;
  for (const Token& token : tokenized.tokens) {
    if (token.sentence != current) {
      flush();
      current = token.sentence;
    }
    if (!token.is_word) continue;
    if (sentence.empty()) sentence.push_back(kSentenceStart);
    sentence.push_back(token.normalized);
  }
  flush();

  if (words == 0) throw EmptyCorpus("corpus contains no word tokens");
  return std::move(builder).build(min_count);
}

// ---------------------------------------------------------------------------

CharBigramPostings::CharBigramPostings() : lists_(1U << 16) {}

std::span<const VocabId> CharBigramPostings::ids(std::string_view bigram) const {
  if (bigram.size() != 2) return {};
  return lists_[slot(static_cast<unsigned char>(bigram[0]), static_cast<unsigned char>(bigram[1]))];
}

void CharBigramPostings::insert(std::string_view bigram, VocabId id) {
  if (bigram.size() != 2) throw ContractViolation("character bigram must be two bytes");
  auto& list = lists_[slot(static_cast<unsigned char>(bigram[0]), static_cast<unsigned char>(bigram[1]))];
  auto it = std::lower_bound(list.begin(), list.end(), id);
  if (it == list.end() || *it != id) list.insert(it, id);
}

std::size_t CharBigramPostings::list_count() const {
  return static_cast<std::size_t>(
      std::count_if(lists_.begin(), lists_.end(), [](const auto& list) { return !list.empty(); }));
}

CharBigramPostings build_bigram_postings(const NGramIndex& index) {
  CharBigramPostings postings;
  for (VocabId id = 0; id < index.vocabulary_size(); ++id) {
    const std::string_view w = index.word(id);
    for (std::size_t i = 0; i + 1 < w.size(); ++i) postings.insert(w.substr(i, 2), id);
  }
  return postings;
}

}  // namespace webspell
