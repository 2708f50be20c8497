// Binary index artifact. All integers little-endian.
//
//   offset  size  field
//   0       8     magic "WSNGRAM1"
//   8       4     format version
//   12      4     max order (5)
//   16      8     total artifact length in bytes, trailer included
//   24      8     token count T
//   32      80    directory: per order 1..5, {entry count u64, table offset u64}
//   112     ...   token block: T x {length u32, bytes}, sorted ascending
//   ...     ...   tables: per order n, rows of {n x token id u32, count u64}
//   end-4   4     CRC-32 of every preceding byte

#include <zlib.h>

#include <algorithm>
#include <array>
#include <cstring>
#include <fstream>
#include <iterator>

#include "webspell/errors.hpp"
#include "webspell/ngram_store.hpp"

namespace webspell {

namespace {

constexpr std::array<char, 8> kMagic = {'W', 'S', 'N', 'G', 'R', 'A', 'M', '1'};
constexpr std::size_t kHeaderSize = 32;
constexpr std::size_t kDirectorySize = kMaxOrder * 16;
constexpr std::size_t kTrailerSize = 4;

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFFU));
}

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFFU));
}

void patch_u64(std::string& out, std::size_t at, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out[at + i] = static_cast<char>((v >> (8 * i)) & 0xFFU);
}

std::uint32_t crc_of(std::string_view bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed in chunks.
  std::size_t done = 0;
  while (done < bytes.size()) {
    const std::size_t chunk = std::min<std::size_t>(bytes.size() - done, 1U << 30);
    crc = crc32(crc, reinterpret_cast<const Bytef*>(bytes.data() + done), static_cast<uInt>(chunk));
    done += chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  void seek(std::uint64_t pos) {
    if (pos > bytes_.size()) throw CorruptIndex("index offset out of range");
    pos_ = static_cast<std::size_t>(pos);
  }
  std::size_t pos() const { return pos_; }

  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t{static_cast<unsigned char>(bytes_[pos_ + i])} << (8 * i);
    pos_ += 4;
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t{static_cast<unsigned char>(bytes_[pos_ + i])} << (8 * i);
    pos_ += 8;
    return v;
  }
  std::string_view bytes(std::size_t n) {
    need(n);
    auto out = bytes_.substr(pos_, n);
    pos_ += n;
    return out;
  }

 private:
  void need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) throw CorruptIndex("index artifact is truncated");
  }

  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

struct IndexCodec {
  static std::string encode(const NGramIndex& index) {
    std::string out;
    out.append(kMagic.data(), kMagic.size());
    put_u32(out, kIndexFormatVersion);
    put_u32(out, kMaxOrder);
    put_u64(out, 0);  // length, patched below
    put_u64(out, index.tokens_.size());

    const std::size_t directory_at = out.size();
    out.append(kDirectorySize, '\0');

    for (const auto& token : index.tokens_) {
      put_u32(out, static_cast<std::uint32_t>(token.size()));
      out.append(token);
    }

    for (std::size_t order = 1; order <= kMaxOrder; ++order) {
      const auto& table = index.tables_[order - 1];
      patch_u64(out, directory_at + (order - 1) * 16, table.counts.size());
      patch_u64(out, directory_at + (order - 1) * 16 + 8, out.size());
      for (std::size_t row = 0; row < table.counts.size(); ++row) {
        for (std::size_t i = 0; i < order; ++i) put_u32(out, table.ids[row * order + i]);
        put_u64(out, table.counts[row]);
      }
    }

    patch_u64(out, 16, out.size() + kTrailerSize);
    put_u32(out, crc_of(out));
    return out;
  }

  static NGramIndex decode(std::string_view bytes) {
    if (bytes.size() < kHeaderSize + kDirectorySize + kTrailerSize) {
      throw CorruptIndex("index artifact is truncated");
    }
    if (!std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) throw CorruptIndex("not a webspell index artifact");

    Reader r(bytes);
    r.seek(kMagic.size());
    const std::uint32_t version = r.u32();
    if (version != kIndexFormatVersion) {
      throw VersionMismatch("index format version " + std::to_string(version) + ", expected " +
                            std::to_string(kIndexFormatVersion));
    }
    if (r.u32() != kMaxOrder) throw CorruptIndex("unexpected max order in index header");
    if (r.u64() != bytes.size()) throw CorruptIndex("index artifact length does not match its header");

    const std::string_view body = bytes.substr(0, bytes.size() - kTrailerSize);
    Reader trailer(bytes.substr(body.size()));
    if (trailer.u32() != crc_of(body)) throw CorruptIndex("index checksum mismatch");

    NGramIndex index;
    const std::uint64_t token_count = r.u64();
    std::array<std::uint64_t, kMaxOrder> entries{};
    std::array<std::uint64_t, kMaxOrder> offsets{};
    for (std::size_t i = 0; i < kMaxOrder; ++i) {
      entries[i] = r.u64();
      offsets[i] = r.u64();
    }
    if (token_count > body.size()) throw CorruptIndex("token count exceeds artifact size");

    index.tokens_.reserve(static_cast<std::size_t>(token_count));
    for (std::uint64_t t = 0; t < token_count; ++t) {
      const std::uint32_t len = r.u32();
      index.tokens_.emplace_back(r.bytes(len));
      if (index.tokens_.back().empty()) throw CorruptIndex("empty token in index");
      if (t > 0 && !(index.tokens_[t - 1] < index.tokens_[t])) throw CorruptIndex("token block is not sorted");
    }

    Reader tables(body);
    for (std::size_t order = 1; order <= kMaxOrder; ++order) {
      auto& table = index.tables_[order - 1];
      const std::uint64_t rows = entries[order - 1];
      if (rows > body.size() / (order * 4 + 8)) throw CorruptIndex("entry count exceeds artifact size");
      tables.seek(offsets[order - 1]);
      table.ids.reserve(static_cast<std::size_t>(rows * order));
      table.counts.reserve(static_cast<std::size_t>(rows));
      for (std::uint64_t row = 0; row < rows; ++row) {
        for (std::size_t i = 0; i < order; ++i) {
          const std::uint32_t id = tables.u32();
          if (id >= token_count) throw CorruptIndex("token id out of range");
          table.ids.push_back(id);
        }
        const Count count = tables.u64();
        if (count == 0) throw CorruptIndex("stored entry with zero count");
        table.counts.push_back(count);
        if (row > 0) {
          const auto prev = table.ids.begin() + static_cast<std::ptrdiff_t>((row - 1) * order);
          const auto cur = prev + static_cast<std::ptrdiff_t>(order);
          if (!std::lexicographical_compare(prev, cur, cur, cur + static_cast<std::ptrdiff_t>(order))) {
            throw CorruptIndex("order-" + std::to_string(order) + " table is not strictly sorted");
          }
        }
      }
    }
    for (Count c : index.tables_[0].counts) index.total_unigram_tokens_ += c;
    return index;
  }
};

std::string serialize_index(const NGramIndex& index) { return IndexCodec::encode(index); }

NGramIndex deserialize_index(std::string_view bytes) { return IndexCodec::decode(bytes); }

void save_index(const NGramIndex& index, const std::filesystem::path& location) {
  const std::string bytes = serialize_index(index);
  std::ofstream out(location, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write index to " + location.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("failed writing index to " + location.string());
}

NGramIndex load_index(const std::filesystem::path& location) {
  std::ifstream in(location, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open index " + location.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return deserialize_index(bytes);
}

}  // namespace webspell
