#pragma once

// Hand-rolled generators and reference oracles shared by the unit and
// acceptance tests. Every generator is driven by an explicit seed.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mtkit/composer.hpp"
#include "mtkit/lingdata.hpp"
#include "mtkit/manifest.hpp"
#include "mtkit/parser.hpp"
#include "mtkit/syntax.hpp"
#include "mtkit/term.hpp"
#include "mtkit/transfer.hpp"
#include "mtkit/unify.hpp"

namespace mtkit::testing {

inline std::filesystem::path fixtures() { return MTKIT_FIXTURES; }

inline const Manifest& manifest() {
  static const Manifest m = Manifest::load(fixtures() / "mtkit.cfg");
  return m;
}

/// Cached per process; tests are single-threaded.
inline const LanguageDescription& language(const std::string& lang) {
  static std::map<std::string, std::unique_ptr<LanguageDescription>> cache;
  auto& slot = cache[lang];
  if (!slot) slot = std::make_unique<LanguageDescription>(load_language(manifest(), lang));
  return *slot;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Non-empty lines that are not `%` or `#` comments.
inline std::vector<std::string> sentence_lines(const std::filesystem::path& p) {
  std::vector<std::string> out;
  std::istringstream in(slurp(p));
  for (std::string line; std::getline(in, line);)
    if (!line.empty() && line[0] != '%' && line[0] != '#') out.push_back(line);
  return out;
}

inline std::vector<TransferRule> pair_rules(const std::string& src, const std::string& tgt) {
  ResourceSet res;
  for (const auto& f : manifest().pair_files(src, tgt, "trules")) res.add_file(f);
  return res.transfer_rules;
}

inline std::vector<TransferRule> rules_from_text(std::string_view text) {
  ResourceSet res;
  res.add_clauses(parse_clauses(text), "test");
  return res.transfer_rules;
}

// ---------------------------------------------------------------------------
// Term generators

class TermGen {
 public:
  explicit TermGen(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
  std::mt19937_64& rng() { return rng_; }

  /// Random term over a small signature so that unification succeeds often
  /// enough to matter. Variables are drawn from `<prefix>0..<prefix>4`.
  Term term(int depth, const std::string& prefix = "X") {
    int pick = uniform(0, depth <= 0 ? 2 : 5);
    switch (pick) {
      case 0:
        return Term::var(prefix + std::to_string(uniform(0, 4)));
      case 1:
        return Term::atom(std::string(1, static_cast<char>('a' + uniform(0, 2))));
      case 2:
        return coin(0.3) ? Term::integer(uniform(0, 2)) : Term::atom("a");
      default: {
        static const std::pair<const char*, int> functors[] = {{"f", 1}, {"g", 2}, {"h", 3}};
        auto [name, arity] = functors[uniform(0, 2)];
        std::vector<Term> args;
        for (int i = 0; i < arity; ++i) args.push_back(term(depth - 1, prefix));
        return Term::compound(name, std::move(args));
      }
    }
  }

  Term ground(int depth) {
    Term t = term(depth, "G");
    return replace_vars(t);
  }

  struct Unifiable {
    Term a;
    Term b;
    Substitution theta;  // ground unifier of a and b
  };

  /// Two generalizations of one ground term; their variables are disjoint
  /// and `theta` maps each back to the covered subterm.
  Unifiable unifiable(int depth) {
    Term c = ground(depth);
    Substitution theta;
    int n = 0;
    Term a = generalize(c, "A", theta, n);
    Term b = generalize(c, "B", theta, n);
    return {a, b, theta};
  }

  /// A pair whose only unifier would bind a variable to a term containing
  /// it. Either `C[X]` vs `C[t(X)]`, or a two-variable cycle.
  std::pair<Term, Term> cyclic(int depth) {
    const Term x = Term::var("Z0");
    if (coin()) {
      Term t = with_hole(std::max(1, depth), x);
      Term ctx_a = with_hole(uniform(0, depth), x);
      Term ctx_b = substitute_hole(ctx_a, t);
      return coin() ? std::pair{ctx_a, ctx_b} : std::pair{ctx_b, ctx_a};
    }
    const Term y = Term::var("Z1");
    Term a = Term::compound("p", {x, y});
    Term b = Term::compound("p", {with_hole(std::max(1, depth), y), with_hole(uniform(0, depth), x)});
    return coin() ? std::pair{a, b} : std::pair{b, a};
  }

 private:
  Term replace_vars(const Term& t) {
    if (t.is_var()) return Term::atom("c");
    if (!t.is_compound()) return t;
    std::vector<Term> args;
    for (const auto& a : t.args()) args.push_back(replace_vars(a));
    return Term::compound(t.name(), std::move(args));
  }

  Term generalize(const Term& c, const std::string& prefix, Substitution& theta, int& n) {
    if (coin(0.25)) {
      for (const auto& [v, bound] : theta.bindings())
        if (v.rfind(prefix, 0) == 0 && bound == c && coin()) return Term::var(v);
      std::string v = prefix + std::to_string(n++);
      theta.bind(v, c);
      return Term::var(v);
    }
    if (!c.is_compound()) return c;
    std::vector<Term> args;
    for (const auto& a : c.args()) args.push_back(generalize(a, prefix, theta, n));
    return Term::compound(c.name(), std::move(args));
  }

  // Random compound (when depth > 0) with exactly one `$hole` leaf, or the
  // hole itself at depth 0. The hole is filled with `fill`.
  Term with_hole(int depth, const Term& fill) {
    if (depth <= 0) return fill;
    int arity = uniform(1, 3);
    int where = uniform(0, arity - 1);
    std::vector<Term> args;
    for (int i = 0; i < arity; ++i) args.push_back(i == where ? with_hole(depth - 1, fill) : term(depth - 1, "W"));
    return Term::compound(arity == 1 ? "f" : arity == 2 ? "g" : "h", std::move(args));
  }

  static Term substitute_hole(const Term& t, const Term& fill) {
    if (t.is_var() && t.name() == "Z0") return fill;
    if (!t.is_compound()) return t;
    std::vector<Term> args;
    for (const auto& a : t.args()) args.push_back(substitute_hole(a, fill));
    return Term::compound(t.name(), std::move(args));
  }

  std::mt19937_64 rng_;
};

// ---------------------------------------------------------------------------
// Unification oracles

/// Empty when `s` unifies `a` and `b` and is idempotent; else a reason.
inline std::string check_unifier(const Term& a, const Term& b, const Substitution& s) {
  if (apply_subst(s, a) != apply_subst(s, b))
    return "not a unifier: " + print_term(apply_subst(s, a)) + " vs " + print_term(apply_subst(s, b));
  for (const auto& [v, t] : s.bindings()) {
    if (t.is_var() && t.name() == v) return "trivial binding " + v;
    for (const auto& w : variables(t))
      if (s.contains(w)) return "not idempotent: " + v + " -> " + print_term(t) + " mentions bound " + w;
  }
  return {};
}

/// Empty when `theta` factors through `s`: theta(s(v)) == theta(v) for every
/// variable of `a` and `b`.
inline std::string check_more_general(const Term& a, const Term& b, const Substitution& s,
                                      const Substitution& theta) {
  std::set<std::string> vars;
  for (const auto& v : variables(a)) vars.insert(v);
  for (const auto& v : variables(b)) vars.insert(v);
  for (const auto& v : vars) {
    Term x = Term::var(v);
    if (apply_subst(theta, apply_subst(s, x)) != apply_subst(theta, x))
      return "not most general at " + v + ": " + print_term(apply_subst(s, x));
  }
  return {};
}

// ---------------------------------------------------------------------------
// Composition oracles

struct AtomicRuleSets {
  std::vector<TransferRule> left;
  std::vector<TransferRule> right;
};

/// Atomic rules `a<i> => b<j>` and `b<j> => c<k>` over small alphabets so
/// that many intermediates meet.
inline AtomicRuleSets atomic_rulesets(TermGen& g, int max_rules) {
  AtomicRuleSets out;
  int na = g.uniform(1, 12), nb = g.uniform(1, 12), nc = g.uniform(1, 12);
  int nl = g.uniform(1, max_rules), nr = g.uniform(1, max_rules);
  auto atom = [&](char p, int n) { return Term::atom(std::string(1, p) + std::to_string(g.uniform(0, n - 1))); };
  for (int i = 0; i < nl; ++i) out.left.push_back({Term::atom("l" + std::to_string(i)), atom('a', na), atom('b', nb)});
  for (int i = 0; i < nr; ++i) out.right.push_back({Term::atom("r" + std::to_string(i)), atom('b', nb), atom('c', nc)});
  return out;
}

using Relation = std::set<std::pair<std::string, std::string>>;

/// Relational composition by enumeration.
inline Relation brute_compose(const std::vector<TransferRule>& left, const std::vector<TransferRule>& right) {
  Relation out;
  for (const auto& l : left)
    for (const auto& r : right)
      if (l.rhs == r.lhs) out.insert({print_term(l.lhs), print_term(r.rhs)});
  return out;
}

inline Relation relation_of(const std::vector<ComposedRule>& rules) {
  Relation out;
  for (const auto& c : rules) out.insert({print_term(c.rule.lhs), print_term(c.rule.rhs)});
  return out;
}

inline std::set<std::string> composed_ids(const std::vector<ComposedRule>& rules) {
  std::set<std::string> out;
  for (const auto& c : rules) out.insert(print_term(c.rule.id));
  return out;
}

inline std::set<std::string> complete_targets(const Term& qlf, const TransferResources& res) {
  std::set<std::string> out;
  for (const auto& c : transfer(qlf, res))
    if (c.complete()) out.insert(print_term(c.target));
  return out;
}

/// Complete L3 targets reachable by transferring twice.
inline std::set<std::string> two_step_targets(const Term& qlf, const TransferResources& r12,
                                              const TransferResources& r23) {
  std::set<std::string> out;
  for (const auto& mid : transfer(qlf, r12))
    if (mid.complete())
      for (auto& t : complete_targets(mid.target, r23)) out.insert(t);
  return out;
}

/// Source QLFs: parses of `sentences`, then variants with content senses
/// swapped for other senses of the same paradigm macro. Deterministic for a
/// given seed; stops at `want` distinct QLFs or when attempts run out.
inline std::vector<Term> enumerate_qlfs(const LanguageDescription& src, const std::vector<std::string>& sentences,
                                        std::size_t want, std::uint64_t seed) {
  std::map<std::string, std::string> macro_of;
  std::map<std::string, std::vector<std::string>> pool;
  for (const auto& e : src.lex_entries) {
    if (macro_of.emplace(e.sense, e.macro).second) pool[e.macro].push_back(e.sense);
  }
  std::vector<Term> base;
  std::map<std::string, Term> seen;
  for (const auto& s : sentences)
    for (auto& q : parse(tokenize(s), src))
      if (seen.emplace(print_term(q), q).second) base.push_back(q);

  TermGen g(seed);
  auto mutate = [&](auto&& self, const Term& t) -> Term {
    std::string name = t.is_atom() || t.is_compound() ? t.name() : std::string();
    if (auto it = macro_of.find(name); it != macro_of.end() && g.coin()) {
      const auto& alts = pool[it->second];
      name = alts[static_cast<std::size_t>(g.uniform(0, static_cast<int>(alts.size()) - 1))];
    }
    if (t.is_atom()) return Term::atom(name);
    if (!t.is_compound()) return t;
    std::vector<Term> args;
    for (const auto& a : t.args()) args.push_back(self(self, a));
    return Term::compound(name, std::move(args));
  };
  for (std::size_t attempt = 0; seen.size() < want && attempt < want * 50 && !base.empty(); ++attempt) {
    const Term& b = base[attempt % base.size()];
    Term q = mutate(mutate, b);
    seen.emplace(print_term(q), q);
  }
  std::vector<Term> out;
  for (auto& [k, q] : seen) out.push_back(q);
  return out;
}

}  // namespace mtkit::testing
