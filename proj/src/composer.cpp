#include "mtkit/composer.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>
#include <thread>

#include "mtkit/unify.hpp"

namespace mtkit {

namespace {

// Replaces each tr(X) occurrence by a fresh variable, recording the pair.
Term open_markers(const Term& t, std::uint64_t salt, std::vector<std::pair<Term, Term>>& markers) {
  if (t.is("tr", 1)) {
    Term m = Term::var("$M" + std::to_string(markers.size()) + "_" + std::to_string(salt));
    markers.emplace_back(m, t.arg(0));
    return m;
  }
  if (!t.is_compound()) return t;
  std::vector<Term> args;
  for (const auto& a : t.args()) args.push_back(open_markers(a, salt, markers));
  return Term::compound(t.name(), std::move(args));
}

// Rewrites tr(Y) to tr(X) per `map`; reports any mapped Y outside a marker.
Term rewrite_markers(const Term& t, const std::map<std::string, Term>& map, bool& raw) {
  if (t.is("tr", 1) && t.arg(0).is_var()) {
    auto it = map.find(t.arg(0).name());
    return it == map.end() ? t : Term::compound("tr", {it->second});
  }
  if (t.is_var()) {
    if (map.count(t.name())) raw = true;
    return t;
  }
  if (!t.is_compound()) return t;
  std::vector<Term> args;
  for (const auto& a : t.args()) args.push_back(rewrite_markers(a, map, raw));
  return Term::compound(t.name(), std::move(args));
}

std::string head_of(const Term& t) { return t.is_var() ? std::string() : t.is_int() ? print_term(t) : t.name(); }

}  // namespace

std::string to_string(SkipReason r) {
  switch (r) {
    case SkipReason::NoUnify: return "no-unify";
    case SkipReason::OpaqueIntermediate: return "opaque-intermediate";
    case SkipReason::RawIntermediateVariable: return "raw-intermediate-variable";
    case SkipReason::Blocked: return "blocked";
  }
  return "unknown";
}

ComposeOutcome compose_pair(const TransferRule& left, const TransferRule& right) {
  const std::uint64_t s1 = fresh_salt();
  const std::uint64_t s2 = fresh_salt();
  const Term a = rename_apart(left.lhs, s1);
  const Term b = rename_apart(left.rhs, s1);
  const Term c = rename_apart(right.lhs, s2);
  const Term d = rename_apart(right.rhs, s2);
  auto skip = [&](SkipReason r) { return ComposeOutcome(SkipDiagnostic{left.id, right.id, r}); };

  std::vector<std::pair<Term, Term>> markers;  // (M_i, X_i)
  const Term opened = open_markers(b, s1, markers);
  auto sigma = unify(opened, c);
  if (!sigma) return skip(SkipReason::NoUnify);

  const Term lhs = apply_subst(*sigma, a);
  std::set<std::string> lhs_vars;
  for (auto& v : variables(lhs)) lhs_vars.insert(v);

  // Each intermediate translation must reach the second rule as a fresh
  // variable that only its markers consume.
  std::map<std::string, Term> y_to_x;
  for (const auto& [m, x] : markers) {
    const Term bound = apply_subst(*sigma, m);
    const Term source = apply_subst(*sigma, x);
    if (!bound.is_var() || !source.is_var() || lhs_vars.count(bound.name()) || y_to_x.count(bound.name()))
      return skip(SkipReason::OpaqueIntermediate);
    y_to_x.emplace(bound.name(), source);
  }

  bool raw = false;
  const Term rhs = rewrite_markers(apply_subst(*sigma, d), y_to_x, raw);
  if (raw) return skip(SkipReason::RawIntermediateVariable);
  // Any other variable left in the right-hand side is unconstrained by the
  // composed left-hand side.
  for (const auto& v : variables(rhs))
    if (!lhs_vars.count(v)) raw = true;
  if (raw) return skip(SkipReason::RawIntermediateVariable);

  return ComposedRule{{Term::compound("c", {left.id, right.id}), lhs, rhs}, left.id, right.id};
}

bool is_blocked(const ComposedRule& r, const std::vector<BlockDecl>& blocks) {
  for (const auto& b : blocks) {
    if (b.kind == BlockDecl::Kind::Id) {
      if (print_term(b.id) == print_term(r.rule.id)) return true;
    } else if (b.lhs_head == head_of(r.rule.lhs) && b.rhs_head == head_of(r.rule.rhs)) {
      return true;
    }
  }
  return false;
}

CompositionResult compose_rulesets(const std::vector<TransferRule>& left, const std::vector<TransferRule>& right,
                                   const std::vector<BlockDecl>& blocks, unsigned threads) {
  struct Row {
    std::vector<ComposedRule> rules;
    std::vector<SkipDiagnostic> skipped;
  };
  std::vector<Row> rows(left.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < left.size(); i = next++) {
      for (const auto& r2 : right) {
        auto outcome = compose_pair(left[i], r2);
        if (auto* c = std::get_if<ComposedRule>(&outcome)) {
          if (is_blocked(*c, blocks))
            rows[i].skipped.push_back({c->left_id, c->right_id, SkipReason::Blocked});
          else
            rows[i].rules.push_back(std::move(*c));
        } else {
          rows[i].skipped.push_back(std::get<SkipDiagnostic>(outcome));
        }
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, left.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  CompositionResult out;
  out.pairs_attempted = left.size() * right.size();
  std::set<std::string> seen;
  for (auto& row : rows) {
    for (auto& r : row.rules)
      if (seen.insert(print_transfer_rule(r.rule)).second) out.rules.push_back(std::move(r));
    out.skipped.insert(out.skipped.end(), row.skipped.begin(), row.skipped.end());
  }
  return out;
}

PrefModel compose_prefs(const PrefModel& left, const PrefModel& right, const std::vector<ComposedRule>& rules) {
  PrefModel out;
  for (const auto& r : rules) out.set(r.rule.id, left.weight(r.left_id) + right.weight(r.right_id));
  return out;
}

std::string format_composed_rules(const std::vector<ComposedRule>& rules) {
  std::string out;
  for (const auto& r : rules) out += print_transfer_rule(r.rule) + "\n";
  return out;
}

std::string format_composed_prefs(const PrefModel& prefs, const std::vector<ComposedRule>& rules) {
  std::string out;
  for (const auto& r : rules)
    out += "pref(" + print_term(r.rule.id) + ", " + format_weight(prefs.weight(r.rule.id)) + ").\n";
  return out;
}

std::string format_diagnostics(const std::vector<SkipDiagnostic>& skipped) {
  std::string out;
  for (const auto& s : skipped)
    out += "skip(" + print_term(s.left_id) + ", " + print_term(s.right_id) + ", " + to_string(s.reason) + ").\n";
  return out;
}

}  // namespace mtkit
