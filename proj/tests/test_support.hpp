#pragma once

#include <array>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <unistd.h>

#include "webspell/ngram_store.hpp"

#ifndef WEBSPELL_FIXTURE_DIR
#error "WEBSPELL_FIXTURE_DIR must point at tests/fixtures"
#endif

namespace test {

namespace fs = std::filesystem;

inline fs::path fixture(std::string_view name) { return fs::path(WEBSPELL_FIXTURE_DIR) / name; }

/// Eleven reference 3- and 4-gram counts.
inline constexpr std::array<std::pair<std::string_view, webspell::Count>, 11> kReferenceNGrams = {{
    {"ceramics collectables collectibles", 55},
    {"ceramics collectables fine", 130},
    {"ceramics collected by", 52},
    {"ceramics collectible pottery", 50},
    {"ceramics collectibles cooking", 45},
    {"serve as the incoming", 92},
    {"serve as the incubator", 99},
    {"serve as the independent", 794},
    {"serve as the index", 223},
    {"serve as the indication", 72},
    {"serve as the indicator", 120},
}};

/// The 19-word unigram sample used by the "sangle" cases.
inline const std::vector<std::string>& sample_vocabulary() {
  static const std::vector<std::string> words = {
      "salute", "sandbox", "sand",    "sale",  "sandwich", "salt",   "sanitary", "tangle",  "man",    "angle",
      "single", "English", "tingle",  "fringe", "ring",    "singly", "beagle",   "unable",  "disable"};
  return words;
}

inline webspell::NGramIndex reference_index() {
  const std::vector<fs::path> paths{fixture("reference_ngrams.tsv")};
  return webspell::ingest_count_files(paths);
}

inline webspell::NGramIndex sample_vocabulary_index() {
  const std::vector<fs::path> paths{fixture("sample_unigrams.tsv")};
  return webspell::ingest_count_files(paths);
}

inline std::string small_corpus() {
  return "Case where only one single element is allowed to be stored. "
         "We would like to ask you to voice your support for this bill. "
         "You should constantly backup your computer files! "
         "Is only one single element allowed? Only one single copy is stored.";
}

class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    dir_ = fs::temp_directory_path() /
           ("webspell-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::create_directories(dir_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(dir_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return dir_; }

  fs::path write(std::string_view name, std::string_view content) const {
    const fs::path p = dir_ / name;
    std::ofstream(p, std::ios::binary) << content;
    return p;
  }

 private:
  fs::path dir_;
};

}  // namespace test
