#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mtkit/lingdata.hpp"
#include "mtkit/term.hpp"

namespace mtkit {

/// Lowercases (ASCII and Latin-1 letters in UTF-8), splits on whitespace and
/// detaches sentence-final `?`, `!` or `.` as its own token.
std::vector<std::string> tokenize(std::string_view text);

/// Joins tokens with single spaces.
std::string join_tokens(const std::vector<std::string>& tokens);

struct Edge {
  std::size_t start = 0;
  std::size_t end = 0;
  Term category;
  std::vector<Term> remaining;  // daughters still to find; empty for passive edges
  Term rule_id;                 // `lex` for lexical edges

  bool passive() const { return remaining.empty(); }
};

struct ParseStats {
  std::size_t edges = 0;
  std::size_t passive_edges = 0;
};

/// Bottom-up chart parse. Returns the semantics of every start-category
/// analysis spanning all tokens, canonically renamed, deduplicated and
/// sorted by printed form.
std::vector<Term> parse(const std::vector<std::string>& tokens, const LanguageDescription& lang,
                        ParseStats* stats = nullptr);

/// Full chart, for inspection and tests.
std::vector<Edge> parse_chart(const std::vector<std::string>& tokens, const LanguageDescription& lang);

}  // namespace mtkit
