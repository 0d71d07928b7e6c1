#pragma once

#include <map>
#include <optional>
#include <string>

#include "mtkit/term.hpp"

namespace mtkit {

/// Finite mapping from variable names to terms.
class Substitution {
 public:
  using Map = std::map<std::string, Term, std::less<>>;

  Substitution() = default;
  explicit Substitution(Map bindings) : bindings_(std::move(bindings)) {}

  const Term* lookup(std::string_view var) const;
  void bind(std::string var, Term value);
  bool contains(std::string_view var) const { return lookup(var) != nullptr; }
  std::size_t size() const { return bindings_.size(); }
  bool empty() const { return bindings_.empty(); }
  const Map& bindings() const { return bindings_; }

  /// Chases bindings through variables and subterms (triangular form).
  Term resolve(const Term& t) const;
  /// Resolves every range term; the result is idempotent when the
  /// bindings are acyclic.
  Substitution resolved() const;

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  Map bindings_;
};

/// Single-pass replacement of bound variables; unbound ones are kept.
Term apply_subst(const Substitution& s, const Term& t);

/// Most general unifier with occurs-check, in idempotent form.
std::optional<Substitution> unify(const Term& a, const Term& b);

/// Extends a triangular substitution so that `a` and `b` unify. On failure
/// `env` may hold partial bindings; callers copy it first if they need it.
bool unify_into(Substitution& env, const Term& a, const Term& b);

/// One-way matching: binds only variables of `pattern`; variables in
/// `target` behave as constants. Pattern and target must not share
/// variables.
std::optional<Substitution> match(const Term& pattern, const Term& target);

/// True if the two terms are equal up to a consistent variable renaming.
bool variant(const Term& a, const Term& b);

std::string print_subst(const Substitution& s);

}  // namespace mtkit
