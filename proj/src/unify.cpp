#include "mtkit/unify.hpp"

namespace mtkit {

const Term* Substitution::lookup(std::string_view var) const {
  auto it = bindings_.find(var);
  return it == bindings_.end() ? nullptr : &it->second;
}

void Substitution::bind(std::string var, Term value) { bindings_.insert_or_assign(std::move(var), std::move(value)); }

Term Substitution::resolve(const Term& t) const {
  if (t.ground() || bindings_.empty()) return t;
  if (t.is_var()) {
    const Term* b = lookup(t.name());
    return b ? resolve(*b) : t;
  }
  std::vector<Term> args;
  args.reserve(t.arity());
  bool changed = false;
  for (const auto& a : t.args()) {
    args.push_back(resolve(a));
    changed = changed || !(args.back() == a);
  }
  return changed ? Term::compound(t.name(), std::move(args)) : t;
}

Substitution Substitution::resolved() const {
  Map out;
  for (const auto& [v, t] : bindings_) out.emplace(v, resolve(t));
  return Substitution(std::move(out));
}

Term apply_subst(const Substitution& s, const Term& t) {
  if (t.ground() || s.empty()) return t;
  if (t.is_var()) {
    const Term* b = s.lookup(t.name());
    return b ? *b : t;
  }
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const auto& a : t.args()) args.push_back(apply_subst(s, a));
  return Term::compound(t.name(), std::move(args));
}

namespace {

const Term& walk(const Substitution& env, const Term& t) {
  const Term* cur = &t;
  while (cur->is_var()) {
    const Term* b = env.lookup(cur->name());
    if (!b) break;
    cur = b;
  }
  return *cur;
}

bool occurs_walk(const Substitution& env, std::string_view var, const Term& t) {
  if (t.ground()) return false;
  const Term& w = walk(env, t);
  if (w.is_var()) return w.name() == var;
  for (const auto& a : w.args())
    if (occurs_walk(env, var, a)) return true;
  return false;
}

}  // namespace

bool unify_into(Substitution& env, const Term& a, const Term& b) {
  const Term x = walk(env, a);
  const Term y = walk(env, b);
  if (x.is_var() && y.is_var() && x.name() == y.name()) return true;
  if (x.is_var()) {
    if (occurs_walk(env, x.name(), y)) return false;
    env.bind(x.name(), y);
    return true;
  }
  if (y.is_var()) {
    if (occurs_walk(env, y.name(), x)) return false;
    env.bind(y.name(), x);
    return true;
  }
  if (x.kind() != y.kind()) return false;
  switch (x.kind()) {
    case Term::Kind::Int:
      return x.value() == y.value();
    case Term::Kind::Atom:
      return x.name() == y.name();
    case Term::Kind::Compound:
      if (x.name() != y.name() || x.arity() != y.arity()) return false;
      for (std::size_t i = 0; i < x.arity(); ++i)
        if (!unify_into(env, x.arg(i), y.arg(i))) return false;
      return true;
    case Term::Kind::Var:
      break;
  }
  return false;
}

std::optional<Substitution> unify(const Term& a, const Term& b) {
  Substitution env;
  if (!unify_into(env, a, b)) return std::nullopt;
  return env.resolved();
}

namespace {

bool match_into(Substitution& s, const Term& p, const Term& t) {
  if (p.is_var()) {
    if (const Term* b = s.lookup(p.name())) return *b == t;
    s.bind(p.name(), t);
    return true;
  }
  if (p.kind() != t.kind()) return false;
  switch (p.kind()) {
    case Term::Kind::Int:
      return p.value() == t.value();
    case Term::Kind::Atom:
      return p.name() == t.name();
    case Term::Kind::Compound:
      if (p.name() != t.name() || p.arity() != t.arity()) return false;
      for (std::size_t i = 0; i < p.arity(); ++i)
        if (!match_into(s, p.arg(i), t.arg(i))) return false;
      return true;
    case Term::Kind::Var:
      break;
  }
  return false;
}

bool variant_into(std::map<std::string, std::string>& fwd, std::map<std::string, std::string>& back, const Term& a,
                  const Term& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Var: {
      auto [f, fnew] = fwd.emplace(a.name(), b.name());
      auto [g, gnew] = back.emplace(b.name(), a.name());
      return f->second == b.name() && g->second == a.name();
    }
    case Term::Kind::Int:
      return a.value() == b.value();
    case Term::Kind::Atom:
      return a.name() == b.name();
    case Term::Kind::Compound:
      if (a.name() != b.name() || a.arity() != b.arity()) return false;
      for (std::size_t i = 0; i < a.arity(); ++i)
        if (!variant_into(fwd, back, a.arg(i), b.arg(i))) return false;
      return true;
  }
  return false;
}

}  // namespace

std::optional<Substitution> match(const Term& pattern, const Term& target) {
  Substitution s;
  if (!match_into(s, pattern, target)) return std::nullopt;
  return s;
}

bool variant(const Term& a, const Term& b) {
  std::map<std::string, std::string> fwd, back;
  return variant_into(fwd, back, a, b);
}

std::string print_subst(const Substitution& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [v, t] : s.bindings()) {
    if (!first) out += ", ";
    first = false;
    out += v + "/" + print_term(t);
  }
  return out + "}";
}

}  // namespace mtkit
