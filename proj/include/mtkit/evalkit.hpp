#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "mtkit/lingdata.hpp"
#include "mtkit/term.hpp"

namespace mtkit {

/// `entry(Id, RepCount, "sentence").`
struct CorpusEntry {
  Term id;
  long rep_count = 1;
  std::string sentence;

  long length() const;  // tokens
  long weight() const { return rep_count * length(); }
};

std::vector<CorpusEntry> parse_corpus(const std::vector<Clause>& clauses, const std::string& origin);
std::vector<CorpusEntry> read_corpus(const std::filesystem::path& path);

/// Percentage held in tenths and rounded half up at one decimal.
struct Percent {
  long tenths = 0;

  static Percent of(long num, long den);
  std::string str() const;  // "52.5"
  friend bool operator==(const Percent&, const Percent&) = default;
};

/// Weighted share of covered entries: sum of rep_count * length over
/// covered entries divided by the same sum over all entries.
Percent weighted_coverage(const std::vector<CorpusEntry>& corpus, const std::vector<bool>& covered);

enum class Judgment {
  FullyAcceptable,
  UnnaturalStyle,
  MinorSyntacticErrors,
  MajorSyntacticErrors,
  PartiallyCorrect,
  NonsenseOrWrong,
  NoParse,
  NoGeneration,
};
inline constexpr std::size_t kJudgmentCount = 8;

std::string label(Judgment j);
/// Accepts hyphenated labels and their underscore spellings.
Judgment parse_judgment(const std::string& text);

struct JudgedEntry {
  Term id;
  Judgment judgment;
};

/// `judge(Id, Label).`
std::vector<JudgedEntry> parse_judgments(const std::vector<Clause>& clauses, const std::string& origin);
std::vector<JudgedEntry> read_judgments(const std::filesystem::path& path);

struct CategoryTable {
  std::array<long, kJudgmentCount> counts{};
  std::array<Percent, kJudgmentCount> percents{};
  long total = 0;
};

CategoryTable category_table(const std::vector<JudgedEntry>& judged);
std::string format_category_table(const CategoryTable& t);

}  // namespace mtkit
