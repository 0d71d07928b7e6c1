#include "mtkit/evalkit.hpp"

#include <optional>
#include <stdexcept>

#include <fmt/format.h>

#include "mtkit/parser.hpp"

namespace mtkit {

namespace {

constexpr std::array<const char*, kJudgmentCount> kLabels = {
    "fully-acceptable",      "unnatural-style",   "minor-syntactic-errors", "major-syntactic-errors",
    "partially-correct",     "nonsense-or-wrong", "no-parse",               "no-generation",
};

}  // namespace

long CorpusEntry::length() const { return static_cast<long>(tokenize(sentence).size()); }

std::vector<CorpusEntry> parse_corpus(const std::vector<Clause>& clauses, const std::string& origin) {
  std::vector<CorpusEntry> out;
  for (const auto& c : clauses) {
    const std::string where = origin + ":" + std::to_string(c.line);
    const Term& t = c.term;
    if (!t.is("entry", 3) || !t.arg(1).is_int() || !t.arg(2).is_atom())
      throw LoadError(where + ": expected entry(Id, RepCount, \"sentence\")");
    if (t.arg(1).value() < 1) throw LoadError(where + ": repetition count must be positive");
    out.push_back({t.arg(0), static_cast<long>(t.arg(1).value()), t.arg(2).name()});
  }
  return out;
}

std::vector<CorpusEntry> read_corpus(const std::filesystem::path& path) {
  try {
    return parse_corpus(read_clause_file(path), path.string());
  } catch (const SyntaxError& e) {
    throw LoadError(e.what());
  }
}

Percent Percent::of(long num, long den) {
  if (den <= 0) throw std::invalid_argument("percentage of an empty total");
  return Percent{(2 * num * 1000 + den) / (2 * den)};
}

std::string Percent::str() const { return fmt::format("{}.{}", tenths / 10, tenths % 10); }

Percent weighted_coverage(const std::vector<CorpusEntry>& corpus, const std::vector<bool>& covered) {
  if (corpus.size() != covered.size()) throw std::invalid_argument("coverage flags do not match corpus size");
  long num = 0, den = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    den += corpus[i].weight();
    if (covered[i]) num += corpus[i].weight();
  }
  return Percent::of(num, den);
}

std::string label(Judgment j) { return kLabels[static_cast<std::size_t>(j)]; }

Judgment parse_judgment(const std::string& text) {
  std::string norm = text;
  for (auto& c : norm)
    if (c == '_') c = '-';
  for (std::size_t i = 0; i < kLabels.size(); ++i)
    if (norm == kLabels[i]) return static_cast<Judgment>(i);
  throw LoadError("unknown judgment label '" + text + "'");
}

namespace {

// Unquoted `fully-acceptable` reads as a chain of `-` terms; rejoin it.
std::optional<std::string> label_text(const Term& t) {
  if (t.is_atom()) return t.name();
  if (!t.is("-", 2)) return std::nullopt;
  auto l = label_text(t.arg(0)), r = label_text(t.arg(1));
  if (!l || !r) return std::nullopt;
  return *l + "-" + *r;
}

}  // namespace

std::vector<JudgedEntry> parse_judgments(const std::vector<Clause>& clauses, const std::string& origin) {
  std::vector<JudgedEntry> out;
  for (const auto& c : clauses) {
    const std::string where = origin + ":" + std::to_string(c.line);
    const Term& t = c.term;
    auto text = t.is("judge", 2) ? label_text(t.arg(1)) : std::nullopt;
    if (!text) throw LoadError(where + ": expected judge(Id, Label)");
    try {
      out.push_back({t.arg(0), parse_judgment(*text)});
    } catch (const LoadError& e) {
      throw LoadError(where + ": " + e.what());
    }
  }
  return out;
}

std::vector<JudgedEntry> read_judgments(const std::filesystem::path& path) {
  try {
    return parse_judgments(read_clause_file(path), path.string());
  } catch (const SyntaxError& e) {
    throw LoadError(e.what());
  }
}

CategoryTable category_table(const std::vector<JudgedEntry>& judged) {
  CategoryTable t;
  for (const auto& j : judged) ++t.counts[static_cast<std::size_t>(j.judgment)];
  t.total = static_cast<long>(judged.size());
  if (t.total > 0)
    for (std::size_t i = 0; i < kJudgmentCount; ++i) t.percents[i] = Percent::of(t.counts[i], t.total);
  return t;
}

std::string format_category_table(const CategoryTable& t) {
  std::string out = fmt::format("{:<24} {:>7} {:>6}\n", "category", "count", "%");
  for (std::size_t i = 0; i < kJudgmentCount; ++i)
    out += fmt::format("{:<24} {:>7} {:>6}\n", kLabels[i], t.counts[i], t.percents[i].str());
  out += fmt::format("{:<24} {:>7}\n", "total", t.total);
  return out;
}

}  // namespace mtkit
