// webspell: build n-gram indexes, check and correct text, run evaluations.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "webspell/candidates.hpp"
#include "webspell/corrector.hpp"
#include "webspell/detector.hpp"
#include "webspell/errors.hpp"
#include "webspell/eval.hpp"
#include "webspell/ngram_store.hpp"

namespace fs = std::filesystem;
using namespace webspell;

namespace {

struct RunConfig {
  std::string index_path;
  std::size_t k = kDefaultCandidates;
  std::size_t window = 4;
  bool real_word = false;
  double gamma = 10.0;
  bool no_case_restore = false;
  double rate = 0.01;
  double realword_share = 0.20;
  std::uint64_t seed = 0;
  std::string format = "table";
  Count min_count = 1;
  int max_order = kMaxOrder;

  CorrectorConfig corrector() const {
    CorrectorConfig c;
    c.k = k;
    c.window = window;
    c.real_word_pass = real_word;
    c.gamma = gamma;
    c.case_restore = !no_case_restore;
    return c;
  }
};

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_output(const std::string& path, const std::string& data) {
  if (path.empty() || path == "-") {
    std::cout << data;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << data;
}

NGramIndex open_index(const std::string& path) {
  if (path.empty() || !fs::exists(path)) {
    throw std::runtime_error("index '" + path +
                             "' not found; create one with `webspell build --out <index> <inputs...>` "
                             "and pass it with --index");
  }
  return load_index(path);
}

void print_summary(const NGramIndex& index) {
  static const char* const kNames[] = {"unigrams", "bigrams", "trigrams", "4-grams", "5-grams"};
  std::cout << "Number of tokens\t" << index.total_unigram_tokens() << '\n';
  for (int order = 1; order <= kMaxOrder; ++order) {
    std::cout << "Number of " << kNames[order - 1] << '\t' << index.size(order) << '\n';
  }
}

std::string log_line(const Correction& c) {
  std::ostringstream out;
  out << '[' << to_string(c.error.kind) << "; " << (c.applied && c.chosen ? *c.chosen : "-") << "; "
      << c.error.surface << ']';
  if (!c.applied) out << " unapplied";
  return out.str();
}

int cmd_build(const std::vector<std::string>& inputs, const std::string& mode, const std::string& out,
              bool tolerant, const RunConfig& cfg) {
  NGramIndex index;
  if (mode == "web1t") {
    std::vector<fs::path> paths(inputs.begin(), inputs.end());
    index = ingest_count_files(paths, tolerant ? LineFormat::kTolerant : LineFormat::kStrict);
  } else {
    std::string corpus;
    for (const auto& path : inputs) {
      corpus += read_input(path);
      corpus += "\n\n";
    }
    index = build_from_corpus(corpus, cfg.max_order, cfg.min_count);
  }
  save_index(index, out);
  print_summary(index);
  return 0;
}

int cmd_check(const std::string& file, const RunConfig& cfg) {
  const NGramIndex index = open_index(cfg.index_path);
  const CharBigramPostings postings = build_bigram_postings(index);
  const std::string text = read_input(file);
  const TokenizedText tokenized = tokenize(text);
  for (const Misspelling& m : detect_nonword_errors(tokenized.tokens, index)) {
    const Token& t = tokenized.tokens[m.token_index];
    std::cout << m.token_index << '\t' << t.begin << '\t' << m.surface << '\t' << to_string(m.kind) << '\t';
    const auto candidates = generate_candidates(t.normalized, index, postings, cfg.k);
    for (std::size_t i = 0; i < candidates.size(); ++i) std::cout << (i ? "," : "") << candidates[i].word;
    std::cout << '\n';
  }
  return 0;
}

int cmd_correct(const std::string& file, const std::string& output, const std::string& log_path,
                const RunConfig& cfg) {
  const NGramIndex index = open_index(cfg.index_path);
  const CharBigramPostings postings = build_bigram_postings(index);
  const CorrectionResult result = correct_text(read_input(file), index, postings, cfg.corrector());
  write_output(output, result.text);

  std::ostringstream log;
  for (const auto& c : result.corrections) log << log_line(c) << '\n';
  if (log_path.empty()) {
    std::cerr << log.str();
  } else {
    write_output(log_path, log.str());
  }
  return 0;
}

int cmd_eval(const std::string& corpus_path, const std::string& errors_csv, const RunConfig& cfg) {
  const NGramIndex index = open_index(cfg.index_path);
  const CharBigramPostings postings = build_bigram_postings(index);
  const std::string text = read_input(corpus_path);

  InductionConfig induction;
  induction.rate = cfg.rate;
  induction.realword_share = cfg.realword_share;
  induction.seed = cfg.seed;
  const InductionResult induced = induce_errors(text, index, induction);
  const CorrectionResult corrected = correct_text(induced.text, index, postings, cfg.corrector());
  EvalReport report = evaluate(induced.errors, corrected.corrections, tokenize(induced.text).tokens);
  report.seed = cfg.seed;

  const ReportFormat format = cfg.format == "json" ? ReportFormat::kJson
                              : cfg.format == "csv" ? ReportFormat::kCsv
                                                    : ReportFormat::kTable;
  std::cout << emit_report(report, format);
  if (!errors_csv.empty()) write_output(errors_csv, emit_error_log_csv(induced.errors, corrected.corrections));
  return 0;
}

int cmd_lookup(const std::vector<std::string>& tokens, const RunConfig& cfg) {
  const NGramIndex index = open_index(cfg.index_path);
  std::vector<std::string> words;
  for (const auto& t : tokens) {
    std::istringstream split(t);
    for (std::string w; split >> w;) words.push_back(w);
  }
  std::cout << index.lookup(std::span<const std::string>(words)) << '\n';
  return 0;
}

void add_index_option(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--index", cfg.index_path, "Index artifact written by `build`")->required();
}

void add_corrector_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--k", cfg.k, "Candidates per error")->check(CLI::Range(std::size_t{1}, std::size_t{1000}));
  cmd->add_option("--window", cfg.window, "Preceding context words (0..4)")
      ->check(CLI::Range(std::size_t{0}, std::size_t{4}));
  cmd->add_flag("--real-word", cfg.real_word, "Also look for real-word errors");
  cmd->add_option("--gamma", cfg.gamma, "Real-word replacement margin (> 1)")
      ->check(CLI::Validator(
          [](std::string& s) { return std::stod(s) > 1.0 ? std::string() : std::string("gamma must be > 1"); },
          "> 1"));
  cmd->add_flag("--no-case-restore", cfg.no_case_restore, "Write replacements in lowercase");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Context-sensitive spelling correction over n-gram counts"};
  app.set_config("--config", "", "Optional INI/TOML file with default flag values");
  app.require_subcommand(1);
  RunConfig cfg;

  std::vector<std::string> build_inputs;
  std::string build_mode = "web1t";
  std::string build_out;
  bool tolerant = false;
  auto* build = app.add_subcommand("build", "Build an index from count files or raw text");
  build->add_option("inputs", build_inputs, "Count files (web1t) or text files (corpus)")->required();
  build->add_option("--mode", build_mode, "Input kind")->check(CLI::IsMember({"web1t", "corpus"}));
  build->add_option("--out", build_out, "Where to write the index")->required();
  build->add_option("--min-count", cfg.min_count, "Drop corpus n-grams seen fewer times")
      ->check(CLI::Range(Count{1}, std::numeric_limits<Count>::max()));
  build->add_option("--max-order", cfg.max_order, "Longest n-gram counted in corpus mode")->check(CLI::Range(1, 5));
  build->add_flag("--tolerant", tolerant, "Also accept 'tok tok (count)' lines");

  std::string input_file;
  auto* check = app.add_subcommand("check", "List non-word errors with their candidates");
  add_index_option(check, cfg);
  check->add_option("file", input_file, "Text to check (default: standard input)");
  check->add_option("--k", cfg.k, "Candidates per error")->check(CLI::Range(std::size_t{1}, std::size_t{1000}));

  std::string output_file;
  std::string log_file;
  auto* correct = app.add_subcommand("correct", "Correct a text file");
  add_index_option(correct, cfg);
  add_corrector_options(correct, cfg);
  correct->add_option("file", input_file, "Text to correct (default: standard input)");
  correct->add_option("-o,--output", output_file, "Corrected text (default: standard output)");
  correct->add_option("--log", log_file, "Correction log (default: standard error)");

  std::string eval_corpus;
  std::string errors_csv;
  auto* eval = app.add_subcommand("eval", "Induce errors into clean text, correct it, and score the result");
  add_index_option(eval, cfg);
  add_corrector_options(eval, cfg);
  eval->add_option("corpus", eval_corpus, "Clean held-out text")->required();
  eval->add_option("--rate", cfg.rate, "Fraction of words to corrupt")
      ->check(CLI::Range(std::numeric_limits<double>::min(), 1.0));
  eval->add_option("--realword-share", cfg.realword_share, "Fraction of errors that land on real words")
      ->check(CLI::Range(0.0, 1.0));
  eval->add_option("--seed", cfg.seed, "Random seed for error induction");
  eval->add_option("--format", cfg.format, "Report format")->check(CLI::IsMember({"json", "csv", "table"}));
  eval->add_option("--errors-csv", errors_csv, "Write one row per induced error here");

  std::vector<std::string> lookup_tokens;
  auto* lookup = app.add_subcommand("lookup", "Print the stored count of an n-gram");
  add_index_option(lookup, cfg);
  lookup->add_option("tokens", lookup_tokens, "One to five tokens")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*build) return cmd_build(build_inputs, build_mode, build_out, tolerant, cfg);
    if (*check) return cmd_check(input_file, cfg);
    if (*correct) return cmd_correct(input_file, output_file, log_file, cfg);
    if (*eval) return cmd_eval(eval_corpus, errors_csv, cfg);
    if (*lookup) return cmd_lookup(lookup_tokens, cfg);
  } catch (const std::exception& e) {
    std::cerr << "webspell: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
