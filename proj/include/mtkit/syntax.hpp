#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mtkit/term.hpp"

namespace mtkit {

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& what, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }
  /// Message without the location suffix.
  const std::string& message() const { return message_; }

 private:
  std::string message_;
  int line_;
  int column_;
};

/// A clause read from a resource file, with the line it started on.
struct Clause {
  Term term;
  int line = 0;
};

/// Parses exactly one term; a trailing `.` is permitted.
///
/// Atoms are lowercase identifiers, `$`-prefixed identifiers, single-quoted
/// or double-quoted text, and decimal numbers with a fractional part (these
/// read as atoms, e.g. `2.5`). Variables start with an uppercase letter or
/// `_`; a lone `_` is a fresh anonymous variable. Infix `=` (700, xfx) and
/// `+` / `-` (500, yfx) are supported.
Term parse_term(std::string_view text);

/// Parses a sequence of `.`-terminated clauses.
std::vector<Clause> parse_clauses(std::string_view text);

/// Reads and parses a clause file; SyntaxError messages carry the path.
std::vector<Clause> read_clause_file(const std::filesystem::path& path);

/// Quotes text as an atom when it is not a plain lowercase identifier.
std::string quote_atom(std::string_view name);

}  // namespace mtkit
