#include "mtkit/syntax.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace mtkit {

SyntaxError::SyntaxError(const std::string& what, int line, int column)
    : std::runtime_error(what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
      message_(what),
      line_(line),
      column_(column) {}

namespace {

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool lower(char c) { return c >= 'a' && c <= 'z'; }
bool upper(char c) { return (c >= 'A' && c <= 'Z') || c == '_'; }
bool digit(char c) { return c >= '0' && c <= '9'; }

enum class Tok { Atom, QuotedAtom, Var, Int, Punct, Op, End, Eof };

struct Token {
  Tok kind = Tok::Eof;
  std::string text;
  std::int64_t value = 0;
  int line = 1;
  int column = 1;
  bool glued = false;  // no whitespace before this token
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    bool glued = !skip_space();
    Token t;
    t.line = line_;
    t.column = col_;
    t.glued = glued;
    if (pos_ >= src_.size()) {
      t.kind = Tok::Eof;
      return t;
    }
    char c = src_[pos_];
    if (lower(c) || c == '$') {
      std::size_t start = pos_;
      advance();
      while (pos_ < src_.size() && ident_char(src_[pos_])) advance();
      t.kind = Tok::Atom;
      t.text = std::string(src_.substr(start, pos_ - start));
      if (t.text == "$") fail("'$' must be followed by an identifier", t);
      return t;
    }
    if (upper(c)) {
      std::size_t start = pos_;
      while (pos_ < src_.size() && ident_char(src_[pos_])) advance();
      t.kind = Tok::Var;
      t.text = std::string(src_.substr(start, pos_ - start));
      return t;
    }
    if (digit(c)) return number(t);
    if (c == '\'' || c == '"') {
      t.kind = Tok::QuotedAtom;
      t.text = quoted(c, t);
      return t;
    }
    if (c == '.') {
      advance();
      if (pos_ >= src_.size() || std::isspace(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '%') {
        t.kind = Tok::End;
        return t;
      }
      fail("unexpected '.'", t);
    }
    if (c == '(' || c == ')' || c == '[' || c == ']' || c == ',' || c == '|') {
      advance();
      t.kind = Tok::Punct;
      t.text = std::string(1, c);
      return t;
    }
    if (c == '=' || c == '+' || c == '-') {
      advance();
      t.kind = Tok::Op;
      t.text = std::string(1, c);
      return t;
    }
    fail(std::string("unexpected character '") + c + "'", t);
  }

  bool at_digit() const { return pos_ < src_.size() && digit(src_[pos_]); }

  [[noreturn]] static void fail(const std::string& msg, const Token& at) {
    throw SyntaxError(msg, at.line, at.column);
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  // Returns true if any whitespace or comment was skipped.
  bool skip_space() {
    bool skipped = false;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
        skipped = true;
      } else if (c == '%') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
        skipped = true;
      } else {
        break;
      }
    }
    return skipped;
  }

  Token number(Token t) {
    std::size_t start = pos_;
    while (pos_ < src_.size() && digit(src_[pos_])) advance();
    if (pos_ + 1 < src_.size() && src_[pos_] == '.' && digit(src_[pos_ + 1])) {
      advance();
      while (pos_ < src_.size() && digit(src_[pos_])) advance();
      t.kind = Tok::Atom;
      t.text = std::string(src_.substr(start, pos_ - start));
      return t;
    }
    t.kind = Tok::Int;
    t.text = std::string(src_.substr(start, pos_ - start));
    try {
      t.value = std::stoll(t.text);
    } catch (const std::out_of_range&) {
      fail("integer out of range", t);
    }
    return t;
  }

  std::string quoted(char q, const Token& at) {
    advance();
    std::string out;
    while (true) {
      if (pos_ >= src_.size()) fail("unterminated quoted text", at);
      char c = src_[pos_];
      if (c == q) {
        advance();
        if (pos_ < src_.size() && src_[pos_] == q) {
          out += q;
          advance();
          continue;
        }
        return out;
      }
      if (c == '\\') {
        advance();
        if (pos_ >= src_.size()) fail("unterminated escape", at);
        char e = src_[pos_];
        switch (e) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case '\\': case '\'': case '"': out += e; break;
          default: fail(std::string("unknown escape '\\") + e + "'", at);
        }
        advance();
        continue;
      }
      out += c;
      advance();
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) { shift(); }

  bool at_eof() const { return cur_.kind == Tok::Eof; }
  bool at_end() const { return cur_.kind == Tok::End; }
  int line() const { return cur_.line; }

  Term term(int max_priority = 1200) {
    Term left = primary();
    int left_priority = 0;
    while (cur_.kind == Tok::Op) {
      const bool xfx = cur_.text == "=";
      const int p = xfx ? 700 : 500;
      if (p > max_priority) break;
      if (xfx ? left_priority >= p : left_priority > p) break;
      std::string op = cur_.text;
      shift();
      Term right = term(p - 1);
      left = Term::compound(op, {left, right});
      left_priority = p;
    }
    return left;
  }

  void expect_end() {
    if (cur_.kind != Tok::End) Lexer::fail("expected '.' at end of clause", cur_);
    shift();
  }

  void expect_eof() {
    if (cur_.kind == Tok::End) shift();
    if (cur_.kind != Tok::Eof) Lexer::fail("unexpected trailing input", cur_);
  }

 private:
  void shift() { cur_ = lex_.next(); }

  bool punct(char c) const { return cur_.kind == Tok::Punct && cur_.text[0] == c; }

  void expect_punct(char c) {
    if (!punct(c)) Lexer::fail(std::string("expected '") + c + "'", cur_);
    shift();
  }

  Term primary() {
    Token t = cur_;
    switch (t.kind) {
      case Tok::Int:
        shift();
        return Term::integer(t.value);
      case Tok::Var:
        shift();
        if (t.text == "_") return Term::var("_G" + std::to_string(++anon_));
        return Term::var(t.text);
      case Tok::Atom:
      case Tok::QuotedAtom: {
        shift();
        if (punct('(')) return compound_args(t.text);
        return Term::atom(t.text);
      }
      case Tok::Op:
        if (t.text == "-" && lex_.at_digit()) {
          shift();
          if (cur_.kind == Tok::Atom && cur_.glued) {  // negative decimal
            std::string text = "-" + cur_.text;
            shift();
            return Term::atom(text);
          }
          if (cur_.kind != Tok::Int || !cur_.glued) Lexer::fail("expected number after '-'", cur_);
          auto v = -cur_.value;
          shift();
          return Term::integer(v);
        }
        Lexer::fail("operator '" + t.text + "' in argument position (quote it to use as an atom)", t);
      case Tok::Punct:
        if (t.text == "(") {
          shift();
          Term inner = term(1200);
          expect_punct(')');
          return inner;
        }
        if (t.text == "[") {
          shift();
          return list_tail();
        }
        Lexer::fail("unexpected '" + t.text + "'", t);
      case Tok::End:
        Lexer::fail("unexpected end of clause", t);
      case Tok::Eof:
        Lexer::fail("unexpected end of input", t);
    }
    Lexer::fail("unexpected token", t);
  }

  Term compound_args(const std::string& functor) {
    expect_punct('(');
    std::vector<Term> args;
    args.push_back(term(999));
    while (punct(',')) {
      shift();
      args.push_back(term(999));
    }
    expect_punct(')');
    return Term::compound(functor, std::move(args));
  }

  Term list_tail() {
    if (punct(']')) {
      shift();
      return Term();
    }
    std::vector<Term> items;
    items.push_back(term(999));
    while (punct(',')) {
      shift();
      items.push_back(term(999));
    }
    Term tail;
    if (punct('|')) {
      shift();
      tail = term(999);
    }
    expect_punct(']');
    return make_list(items, tail);
  }

  Lexer lex_;
  Token cur_{};
  int anon_ = 0;
};

}  // namespace

Term parse_term(std::string_view text) {
  Parser p(text);
  Term t = p.term();
  p.expect_eof();
  return t;
}

std::vector<Clause> parse_clauses(std::string_view text) {
  Parser p(text);
  std::vector<Clause> out;
  while (!p.at_eof()) {
    int line = p.line();
    Term t = p.term();
    p.expect_end();
    out.push_back({std::move(t), line});
  }
  return out;
}

std::vector<Clause> read_clause_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_clauses(buf.str());
  } catch (const SyntaxError& e) {
    throw SyntaxError(path.string() + ": " + e.message(), e.line(), e.column());
  }
}

std::string quote_atom(std::string_view name) {
  bool plain = !name.empty() && (lower(name[0]) || (name[0] == '$' && name.size() > 1));
  for (std::size_t i = 1; plain && i < name.size(); ++i) plain = ident_char(name[i]);
  if (plain) return std::string(name);
  std::string out = "'";
  for (char c : name) {
    switch (c) {
      case '\'': out += "\\'"; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '\'';
  return out;
}

}  // namespace mtkit
