#include "webspell/eval.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "webspell/errors.hpp"

namespace webspell {

std::string_view to_string(EditOp op) {
  switch (op) {
    case EditOp::kInsertion:
      return "insertion";
    case EditOp::kDeletion:
      return "deletion";
    case EditOp::kSubstitution:
      return "substitution";
    case EditOp::kTransposition:
      return "transposition";
  }
  return "unknown";
}

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::kCorrected:
      return "corrected";
    case Outcome::kNotCorrected:
      return "not_corrected";
    case Outcome::kFalselyCorrected:
      return "falsely_corrected";
  }
  return "unknown";
}

std::optional<std::string> apply_edit(std::string_view word, EditOp op, std::size_t position, char letter) {
  std::string out(word);
  switch (op) {
    case EditOp::kInsertion:
      if (position > out.size()) return std::nullopt;
      out.insert(out.begin() + static_cast<std::ptrdiff_t>(position), letter);
      return out;
    case EditOp::kDeletion:
      if (out.size() < 2 || position >= out.size()) return std::nullopt;
      out.erase(position, 1);
      return out;
    case EditOp::kSubstitution:
      if (position >= out.size() || out[position] == letter) return std::nullopt;
      out[position] = letter;
      return out;
    case EditOp::kTransposition:
      if (position + 1 >= out.size() || out[position] == out[position + 1]) return std::nullopt;
      std::swap(out[position], out[position + 1]);
      return out;
  }
  return std::nullopt;
}

namespace {

bool is_lower_alpha(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= 'a' && c <= 'z'; });
}

std::vector<char> vocabulary_alphabet(const NGramIndex& index) {
  std::array<bool, 26> seen{};
  for (VocabId id = 0; id < index.vocabulary_size(); ++id) {
    for (char c : index.word(id)) {
      if (c >= 'a' && c <= 'z') seen[c - 'a'] = true;
    }
  }
  std::vector<char> out;
  for (int i = 0; i < 26; ++i) {
    if (seen[i]) out.push_back(static_cast<char>('a' + i));
  }
  if (out.empty()) {
    for (char c = 'a'; c <= 'z'; ++c) out.push_back(c);
  }
  return out;
}

class EditSampler {
 public:
  EditSampler(std::uint64_t seed, std::vector<char> alphabet) : rng_(seed), alphabet_(std::move(alphabet)) {}

  // One random single-character edit of `word`, or nullopt when the drawn
  // edit is a no-op.
  std::optional<std::pair<std::string, EditOp>> draw(std::string_view word) {
    const auto op = static_cast<EditOp>(below(4));
    const std::size_t positions = op == EditOp::kInsertion       ? word.size() + 1
                                  : op == EditOp::kTransposition ? word.size() - 1
                                                                 : word.size();
    const std::size_t pos = below(positions);
    const char letter = alphabet_[below(alphabet_.size())];
    auto edited = apply_edit(word, op, pos, letter);
    if (!edited) return std::nullopt;
    return std::make_pair(std::move(*edited), op);
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

  std::mt19937_64 rng_;
  std::vector<char> alphabet_;
};

}  // namespace

InductionResult induce_errors(std::string_view text, const NGramIndex& index, const InductionConfig& config) {
  if (!(config.rate > 0.0 && config.rate <= 1.0)) throw ContractViolation("error rate must lie in (0, 1]");
  if (!(config.realword_share >= 0.0 && config.realword_share <= 1.0)) {
    throw ContractViolation("real-word share must lie in [0, 1]");
  }
  if (config.max_attempts < 1) throw ContractViolation("max_attempts must be at least 1");

  const TokenizedText tokenized = tokenize(text);
  const auto& tokens = tokenized.tokens;
  const auto words = static_cast<std::size_t>(std::count_if(tokens.begin(), tokens.end(), [](const Token& t) { return t.is_word; }));
  const auto wanted = static_cast<std::size_t>(std::llround(config.rate * static_cast<double>(words)));
  if (wanted < 1) {
    throw InsufficientText("text has " + std::to_string(words) + " words; too short for error rate " +
                           std::to_string(config.rate));
  }

  std::vector<std::size_t> targets;
  for (const Token& t : tokens) {
    if (t.is_word && t.normalized.size() >= 2 && is_lower_alpha(t.normalized) && index.contains_unigram(t.normalized)) {
      targets.push_back(t.index);
    }
  }
  if (targets.size() < wanted) {
    throw InsufficientText("only " + std::to_string(targets.size()) + " eligible words for " +
                           std::to_string(wanted) + " errors");
  }

  EditSampler sampler(config.seed, vocabulary_alphabet(index));
  std::shuffle(targets.begin(), targets.end(), sampler.engine());

  const auto real_wanted = static_cast<std::size_t>(std::llround(config.realword_share * static_cast<double>(wanted)));
  std::vector<bool> used(targets.size(), false);
  std::vector<InducedError> errors;

  auto fill = [&](std::size_t quota, bool real_word) {
    std::size_t made = 0;
    for (std::size_t t = 0; t < targets.size() && made < quota; ++t) {
      if (used[t]) continue;
      const std::string& original = tokens[targets[t]].normalized;
      for (int attempt = 0; attempt < config.max_attempts; ++attempt) {
        auto edit = sampler.draw(original);
        if (!edit || index.contains_unigram(edit->first) != real_word) continue;
        errors.push_back({targets[t], original, std::move(edit->first), edit->second,
                          real_word ? ErrorKind::kRealWord : ErrorKind::kNonWord});
        used[t] = true;
        ++made;
        break;
      }
    }
    return made;
  };

  const std::size_t real_made = fill(real_wanted, true);
  fill(wanted - real_made, false);

  std::sort(errors.begin(), errors.end(),
            [](const InducedError& a, const InducedError& b) { return a.token_index < b.token_index; });

  InductionResult result;
  result.text.reserve(text.size() + errors.size());
  std::size_t at = 0;
  for (const auto& e : errors) {
    const Token& t = tokens[e.token_index];
    result.text.append(text.substr(at, t.begin - at));
    result.text.append(restore_case(t.surface, e.corrupted));
    at = t.end;
  }
  result.text.append(text.substr(at));
  result.errors = std::move(errors);
  return result;
}

// ---------------------------------------------------------------------------

ClassScore EvalReport::overall() const {
  return {nonword.total + realword.total, nonword.corrected + realword.corrected,
          nonword.not_or_falsely_corrected + realword.not_or_falsely_corrected};
}

EvalReport EvalReport::from_counts(std::size_t total_words, std::size_t nonword_total, std::size_t nonword_corrected,
                                   std::size_t realword_total, std::size_t realword_corrected) {
  if (nonword_corrected > nonword_total || realword_corrected > realword_total) {
    throw ContractViolation("corrected count exceeds class total");
  }
  EvalReport r;
  r.total_words = total_words;
  r.nonword = {nonword_total, nonword_corrected, nonword_total - nonword_corrected};
  r.realword = {realword_total, realword_corrected, realword_total - realword_corrected};
  return r;
}

namespace {

Outcome outcome_of(const InducedError& gold, const Correction* corr) {
  if (corr == nullptr || !corr->applied || !corr->chosen) return Outcome::kNotCorrected;
  return normalize_token(*corr->chosen) == normalize_token(gold.original) ? Outcome::kCorrected
                                                                          : Outcome::kFalselyCorrected;
}

std::unordered_map<std::size_t, const Correction*> by_token(const std::vector<Correction>& corrections) {
  std::unordered_map<std::size_t, const Correction*> out;
  for (const auto& c : corrections) out.emplace(c.error.token_index, &c);
  return out;
}

}  // namespace

Outcome classify(const InducedError& gold, const std::vector<Correction>& corrections) {
  auto it = std::find_if(corrections.begin(), corrections.end(),
                         [&](const Correction& c) { return c.error.token_index == gold.token_index; });
  return outcome_of(gold, it == corrections.end() ? nullptr : &*it);
}

EvalReport evaluate(const std::vector<InducedError>& gold, const std::vector<Correction>& corrections,
                    const std::vector<Token>& tokens) {
  EvalReport report;
  report.total_words =
      static_cast<std::size_t>(std::count_if(tokens.begin(), tokens.end(), [](const Token& t) { return t.is_word; }));
  for (const auto& c : corrections) {
    if (c.error.token_index >= tokens.size()) throw ContractViolation("correction refers to a token past the end");
  }
  const auto lookup = by_token(corrections);
  for (const auto& g : gold) {
    if (g.token_index >= tokens.size() || tokens[g.token_index].normalized != normalize_token(g.corrupted)) {
      throw ContractViolation("induced error at token " + std::to_string(g.token_index) +
                              " does not match the tokenized text");
    }
    auto it = lookup.find(g.token_index);
    const bool ok = outcome_of(g, it == lookup.end() ? nullptr : it->second) == Outcome::kCorrected;
    ClassScore& score = g.kind == ErrorKind::kNonWord ? report.nonword : report.realword;
    ++score.total;
    ++(ok ? score.corrected : score.not_or_falsely_corrected);
  }
  return report;
}

// ---------------------------------------------------------------------------

long percent(std::size_t part, std::size_t whole) {
  if (whole == 0) return 0;
  return static_cast<long>((200 * static_cast<unsigned long long>(part) + whole) / (2ULL * whole));
}

namespace {

std::string grouped(std::size_t n) {
  std::string digits = std::to_string(n);
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i > 0 && (digits.size() - i) % 3 == 0) out.push_back(',');
    out.push_back(digits[i]);
  }
  return out;
}

std::string share(std::size_t part, std::size_t whole) {
  return std::to_string(percent(part, whole)) + "% of " + grouped(whole);
}

nlohmann::ordered_json score_json(const ClassScore& s) {
  return {{"total", s.total},
          {"corrected", s.corrected},
          {"not_or_falsely_corrected", s.not_or_falsely_corrected},
          {"rate", s.rate()}};
}

ClassScore score_from_json(const nlohmann::json& j) {
  ClassScore s{j.at("total").get<std::size_t>(), j.at("corrected").get<std::size_t>(),
               j.at("not_or_falsely_corrected").get<std::size_t>()};
  if (s.corrected + s.not_or_falsely_corrected != s.total) {
    throw ParseError("report class counts do not add up to the class total");
  }
  return s;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string render_table(const EvalReport& report) {
  const ClassScore overall = report.overall();
  const std::array<ClassScore, 3> bands = {overall, report.nonword, report.realword};
  const std::array<std::string, 3> titles = {"Total Errors", "Non-Word Errors", "Real-Word Errors"};
  const std::array<std::string, 3> totals = {grouped(overall.total), grouped(report.nonword.total),
                                             grouped(report.realword.total)};
  const std::array<std::string, 3> shares = {share(overall.total, report.total_words) + " total words",
                                             share(report.nonword.total, overall.total),
                                             share(report.realword.total, overall.total)};

  // Three sub-rows per band: label, count, share; two cells each.
  std::array<std::array<std::array<std::string, 2>, 3>, 3> cells;
  std::array<std::array<std::size_t, 2>, 3> widths{};
  for (std::size_t b = 0; b < 3; ++b) {
    cells[b][0] = {"Corrected", "Not/Falsely Corrected"};
    cells[b][1] = {grouped(bands[b].corrected), grouped(bands[b].not_or_falsely_corrected)};
    cells[b][2] = {share(bands[b].corrected, bands[b].total), share(bands[b].not_or_falsely_corrected, bands[b].total)};
    for (std::size_t r = 0; r < 3; ++r) {
      for (std::size_t c = 0; c < 2; ++c) widths[b][c] = std::max(widths[b][c], cells[b][r][c].size());
    }
    const std::size_t head = std::max({titles[b].size(), totals[b].size(), shares[b].size()});
    const std::size_t span = widths[b][0] + 3 + widths[b][1];
    if (head > span) widths[b][1] += head - span;
  }

  std::ostringstream out;
  if (report.seed) out << "Seed: " << *report.seed << '\n';
  auto band_row = [&](const std::array<std::string, 3>& row) {
    for (std::size_t b = 0; b < 3; ++b) {
      std::string cell = pad(row[b], widths[b][0] + 3 + widths[b][1]);
      if (b == 2) cell.erase(cell.find_last_not_of(' ') + 1);
      out << cell << (b < 2 ? " | " : "\n");
    }
  };
  band_row(titles);
  band_row(totals);
  band_row(shares);
  for (std::size_t r = 0; r < 3; ++r) {
    std::string line;
    for (std::size_t b = 0; b < 3; ++b) {
      line += pad(cells[b][r][0], widths[b][0]) + " | " + pad(cells[b][r][1], widths[b][1]);
      if (b < 2) line += " | ";
    }
    line.erase(line.find_last_not_of(' ') + 1);
    out << line << '\n';
  }
  return out.str();
}

}  // namespace

std::string emit_report(const EvalReport& report, ReportFormat format) {
  const ClassScore overall = report.overall();
  switch (format) {
    case ReportFormat::kJson: {
      nlohmann::ordered_json j;
      if (report.seed) j["seed"] = *report.seed;
      j["total_words"] = report.total_words;
      j["total_errors"] = report.total_errors();
      j["nonword"] = score_json(report.nonword);
      j["realword"] = score_json(report.realword);
      j["overall"] = score_json(overall);
      return j.dump(2) + "\n";
    }
    case ReportFormat::kCsv: {
      std::ostringstream out;
      out << "band,total,corrected,not_or_falsely_corrected,rate_percent\n";
      auto row = [&](std::string_view name, const ClassScore& s) {
        out << name << ',' << s.total << ',' << s.corrected << ',' << s.not_or_falsely_corrected << ','
            << percent(s.corrected, s.total) << '\n';
      };
      row("overall", overall);
      row("nonword", report.nonword);
      row("realword", report.realword);
      out << "words," << report.total_words << ",,,\n";
      return out.str();
    }
    case ReportFormat::kTable:
      return render_table(report);
  }
  return {};
}

EvalReport report_from_json(std::string_view json) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json);
    EvalReport r;
    r.total_words = j.at("total_words").get<std::size_t>();
    r.nonword = score_from_json(j.at("nonword"));
    r.realword = score_from_json(j.at("realword"));
    if (j.contains("seed")) r.seed = j.at("seed").get<std::uint64_t>();
    if (j.at("total_errors").get<std::size_t>() != r.total_errors()) {
      throw ParseError("total_errors does not equal nonword.total + realword.total");
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid report JSON: ") + e.what());
  }
}

std::string emit_error_log_csv(const std::vector<InducedError>& gold, const std::vector<Correction>& corrections) {
  const auto lookup = by_token(corrections);
  std::ostringstream out;
  out << "token_index,original,corrupted,op,kind,chosen,outcome\n";
  for (const auto& g : gold) {
    auto it = lookup.find(g.token_index);
    const Correction* c = it == lookup.end() ? nullptr : it->second;
    const std::string chosen = c != nullptr && c->applied && c->chosen ? *c->chosen : "";
    out << g.token_index << ',' << csv_field(g.original) << ',' << csv_field(g.corrupted) << ',' << to_string(g.op)
        << ',' << to_string(g.kind) << ',' << csv_field(chosen) << ',' << to_string(outcome_of(g, c)) << '\n';
  }
  return out.str();
}

}  // namespace webspell
