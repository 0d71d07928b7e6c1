#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mtkit {

/// Immutable first-order logic term: atom, variable, integer or compound.
///
/// Terms are shared by pointer; copying a Term is cheap and never copies
/// the structure. Lists are encoded as `$cons(H, T)` / `$nil`.
class Term {
 public:
  enum class Kind { Var, Int, Atom, Compound };

  /// Default-constructed term is the atom `$nil`.
  Term();

  static Term atom(std::string name);
  static Term var(std::string name);
  static Term integer(std::int64_t value);
  /// Throws std::invalid_argument if args is empty or functor is empty.
  static Term compound(std::string functor, std::vector<Term> args);

  Kind kind() const;
  bool is_atom() const { return kind() == Kind::Atom; }
  bool is_var() const { return kind() == Kind::Var; }
  bool is_int() const { return kind() == Kind::Int; }
  bool is_compound() const { return kind() == Kind::Compound; }
  bool is_atomic() const { return is_atom() || is_int(); }

  /// Atom name, variable name or compound functor.
  const std::string& name() const;
  std::int64_t value() const;
  std::span<const Term> args() const;
  std::size_t arity() const;
  const Term& arg(std::size_t i) const;

  bool is(std::string_view functor, std::size_t arity) const;

  bool ground() const;

  friend bool operator==(const Term& a, const Term& b);
  /// Standard order: Var < Int < Atom < Compound, then by name/arity/args.
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

inline constexpr std::string_view kNil = "$nil";
inline constexpr std::string_view kCons = "$cons";

Term make_list(const std::vector<Term>& items, const Term& tail = Term());
/// Proper-list elements, or nullopt if `t` is not a nil-terminated list.
std::optional<std::vector<Term>> list_items(const Term& t);
bool is_nil(const Term& t);

/// Variable names in order of first occurrence (left to right).
std::vector<std::string> variables(const Term& t);
bool occurs(std::string_view var, const Term& t);
/// Every atom name and compound functor in `t`.
void collect_constants(const Term& t, std::set<std::string>& out);

/// Concrete-syntax rendering; `parse_term(print_term(t)) == t`.
std::string print_term(const Term& t);

/// Renames every variable `V` to `V_<salt>`.
Term rename_apart(const Term& t, std::uint64_t salt);
/// Process-wide fresh salt for rename_apart; thread-safe.
std::uint64_t fresh_salt();

/// Renames variables to A, B, ... Z, A1, B1, ... in order of occurrence.
Term canonical_vars(const Term& t);

}  // namespace mtkit
