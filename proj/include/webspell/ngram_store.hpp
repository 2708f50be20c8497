#pragma once

// N-gram count store in the Web 1T layout: one immutable, sorted table per
// order (1..5) mapping token sequences to occurrence counts, plus the
// character-bigram inverted index used for candidate retrieval.

#include <array>
#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace webspell {

inline constexpr int kMaxOrder = 5;

/// Sentence-start marker added in front of every sentence by corpus builds.
/// Web 1T writes it as "<S>", which normalizes to the same string.
inline constexpr std::string_view kSentenceStart = "<s>";

using Count = std::uint64_t;
using VocabId = std::uint32_t;

struct NGramEntry {
  std::vector<std::string> tokens;
  Count count = 0;

  friend bool operator==(const NGramEntry&, const NGramEntry&) = default;
};

struct VocabularyEntry {
  std::string word;
  VocabId id = 0;
  Count count = 0;
};

/// Lowercases ASCII letters; other bytes are kept as they are.
std::string normalize_token(std::string_view token);

class NGramIndex {
 public:
  NGramIndex() = default;

  /// Exact stored count, 0 when absent. Tokens are normalized before the
  /// search. Throws ContractViolation unless 1 <= tokens.size() <= 5.
  Count lookup(std::span<const std::string> tokens) const;
  Count lookup(std::span<const std::string_view> tokens) const;
  Count lookup(std::initializer_list<std::string_view> tokens) const;

  bool contains_unigram(std::string_view word) const;

  /// Sum of all order-1 counts.
  Count total_unigram_tokens() const { return total_unigram_tokens_; }

  /// Number of entries in the table for `order` (1..5).
  std::size_t size(int order) const;
  bool empty() const;

  /// The unigram table doubles as the vocabulary; ids are row numbers.
  std::size_t vocabulary_size() const { return size(1); }
  std::string_view word(VocabId id) const;
  Count word_count(VocabId id) const;
  std::optional<VocabId> find_word(std::string_view word) const;
  std::vector<VocabularyEntry> vocabulary() const;

  /// Entry `row` of the table for `order`, in key order.
  NGramEntry entry(int order, std::size_t row) const;
  std::vector<NGramEntry> entries(int order) const;

  friend bool operator==(const NGramIndex&, const NGramIndex&) = default;

 private:
  friend class NGramIndexBuilder;
  friend struct IndexCodec;

  struct Table {
    std::vector<std::uint32_t> ids;  // row-major, order ids per row
    std::vector<Count> counts;
    friend bool operator==(const Table&, const Table&) = default;
  };

  std::optional<std::uint32_t> token_id(std::string_view normalized) const;
  Count lookup_ids(std::span<const std::uint32_t> ids) const;
  template <typename Str>
  Count lookup_impl(std::span<const Str> tokens) const;

  // Sorted, unique; a token's id is its rank, so comparing id sequences
  // orders rows exactly like comparing token sequences.
  std::vector<std::string> tokens_;
  std::array<Table, kMaxOrder> tables_;
  Count total_unigram_tokens_ = 0;
};

/// Accumulates n-gram counts and freezes them into an NGramIndex.
/// Duplicate keys are merged by summing.
class NGramIndexBuilder {
 public:
  /// Tokens are normalized; empty token lists, lists longer than five and
  /// empty tokens are rejected with ContractViolation.
  void add(std::span<const std::string_view> tokens, Count count);
  void add(std::span<const std::string> tokens, Count count);
  void add(const NGramEntry& entry) { add(std::span<const std::string>(entry.tokens), entry.count); }

  /// Entries whose merged count is below `min_count` are dropped.
  NGramIndex build(Count min_count = 1) &&;

 private:
  std::uint32_t intern(std::string token);

  std::unordered_map<std::string, std::uint32_t> ids_;
  std::vector<std::string> names_;
  std::array<std::vector<std::uint32_t>, kMaxOrder> keys_;
  std::array<std::vector<Count>, kMaxOrder> counts_;
};

enum class LineFormat {
  kStrict,    // "tok1 tok2<TAB>count"
  kTolerant,  // also accepts the display form "tok1 tok2 (count)"
};

/// Parses one count line. Tokens are returned as written (not normalized).
NGramEntry parse_count_line(std::string_view line, LineFormat format = LineFormat::kStrict);

/// Builds an index from Web-1T-style count files. Blank lines are skipped;
/// entries with count 0 are not stored. Parse errors carry file:line.
NGramIndex ingest_count_files(std::span<const std::filesystem::path> paths,
                              LineFormat format = LineFormat::kStrict);

/// Counts every within-sentence window of 1..max_order word tokens, with
/// kSentenceStart prepended to each sentence. Throws EmptyCorpus when the
/// text has no word tokens.
NGramIndex build_from_corpus(std::string_view corpus, int max_order = kMaxOrder, Count min_count = 1);

/// Inverted index from two-byte sequences to the vocabulary ids of the
/// words containing them.
class CharBigramPostings {
 public:
  CharBigramPostings();

  /// Ids (ascending) of words containing `bigram`. Empty unless
  /// bigram.size() == 2.
  std::span<const VocabId> ids(std::string_view bigram) const;

  /// Adds `id` to the list for `bigram`, keeping the list sorted and unique.
  void insert(std::string_view bigram, VocabId id);

  /// Number of non-empty lists.
  std::size_t list_count() const;

 private:
  static std::size_t slot(unsigned char a, unsigned char b) { return (std::size_t{a} << 8) | b; }
  std::vector<std::vector<VocabId>> lists_;
};

CharBigramPostings build_bigram_postings(const NGramIndex& index);

/// On-disk format version written by save_index.
inline constexpr std::uint32_t kIndexFormatVersion = 1;

void save_index(const NGramIndex& index, const std::filesystem::path& location);
NGramIndex load_index(const std::filesystem::path& location);

/// In-memory forms of the same artifact.
std::string serialize_index(const NGramIndex& index);
NGramIndex deserialize_index(std::string_view bytes);

}  // namespace webspell
