#include "mtkit/transfer.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "mtkit/unify.hpp"

namespace mtkit {

namespace {

struct Partial {
  Term target;
  std::vector<Term> trace;
  std::vector<std::string> gaps;
  std::vector<WWPatch> patches;
};

std::string partial_key(const Partial& p) {
  std::string k = print_term(p.target) + "|" + print_trace(p.trace) + "|";
  for (const auto& w : p.patches) k += w.source_surface + ">" + w.target_surface + "/" + w.tag + ";";
  return k;
}

void append(Partial& into, const Partial& from) {
  into.trace.insert(into.trace.end(), from.trace.begin(), from.trace.end());
  into.gaps.insert(into.gaps.end(), from.gaps.begin(), from.gaps.end());
  into.patches.insert(into.patches.end(), from.patches.begin(), from.patches.end());
}

void dedupe(std::vector<Partial>& ps) {
  std::unordered_set<std::string> seen;
  std::vector<Partial> out;
  for (auto& p : ps)
    if (seen.insert(partial_key(p)).second) out.push_back(std::move(p));
  ps = std::move(out);
}

// Cross product of per-argument alternatives under functor `name`.
std::vector<Partial> combine(const std::string& name, const std::vector<std::vector<Partial>>& per_arg) {
  std::vector<Partial> acc{Partial{Term(), {}, {}, {}}};
  std::vector<std::vector<Term>> args{{}};
  for (const auto& alts : per_arg) {
    std::vector<Partial> next_acc;
    std::vector<std::vector<Term>> next_args;
    for (std::size_t i = 0; i < acc.size(); ++i) {
      for (const auto& alt : alts) {
        Partial p = acc[i];
        append(p, alt);
        auto a = args[i];
        a.push_back(alt.target);
        next_acc.push_back(std::move(p));
        next_args.push_back(std::move(a));
      }
    }
    acc = std::move(next_acc);
    args = std::move(next_args);
  }
  for (std::size_t i = 0; i < acc.size(); ++i)
    acc[i].target = args[i].empty() ? Term::atom(name) : Term::compound(name, std::move(args[i]));
  return acc;
}

std::string functor_key(const Term& t) {
  if (t.is_var()) return "$var";
  if (t.is_int()) return "$int/" + std::to_string(t.value());
  return t.name() + "/" + std::to_string(t.arity());
}

class Transfer {
 public:
  explicit Transfer(const TransferResources& res) : res_(res) {
    for (const auto& r : res.rules) by_lhs_[functor_key(r.lhs)].push_back(&r);
  }

  std::vector<Partial> candidates(const Term& t) {
    const std::string key = print_term(t);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<Partial> out;
    if (t.is_var() || t.is_int()) {
      out.push_back({t, {}, {}, {}});
    } else if (t.is_atom()) {
      out = apply_rules(t);
      if (out.empty()) out = constant_fallback(t);
    } else {
      out = apply_rules(t);
      std::vector<std::vector<Partial>> per_arg;
      for (const auto& a : t.args()) per_arg.push_back(candidates(a));
      for (const auto& f : functor_candidates(t.name())) {
        for (auto& c : combine(f.target.name(), per_arg)) {
          Partial p{c.target, f.trace, f.gaps, f.patches};
          append(p, c);
          out.push_back(std::move(p));
        }
      }
    }
    dedupe(out);
    memo_.emplace(key, out);
    return out;
  }

 private:
  std::vector<Partial> apply_rules(const Term& t) {
    std::vector<Partial> out;
    std::vector<const TransferRule*> rules;
    for (const std::string& key : {functor_key(t), std::string("$var")})
      if (auto it = by_lhs_.find(key); it != by_lhs_.end()) rules.insert(rules.end(), it->second.begin(), it->second.end());
    for (const TransferRule* r : rules) {
      const std::uint64_t salt = fresh_salt();
      auto sigma = match(rename_apart(r->lhs, salt), t);
      if (!sigma) continue;
      bool ok = true;
      auto alts = instantiate(rename_apart(r->rhs, salt), *sigma, t, ok);
      if (!ok) continue;
      for (auto& a : alts) {
        Partial p{a.target, {r->id}, {}, {}};
        append(p, a);
        out.push_back(std::move(p));
      }
    }
    return out;
  }

  // Rule right-hand side with `tr(V)` replaced by the transfer of V's binding.
  std::vector<Partial> instantiate(const Term& rhs, const Substitution& sigma, const Term& whole, bool& ok) {
    if (rhs.is("tr", 1)) {
      const Term& v = rhs.arg(0);
      const Term* bound = v.is_var() ? sigma.lookup(v.name()) : nullptr;
      // A marker must bind a proper subterm, so recursion always descends.
      if (!bound || *bound == whole) {
        ok = false;
        return {};
      }
      return candidates(*bound);
    }
    if (rhs.is_var()) {
      const Term* bound = sigma.lookup(rhs.name());
      return {Partial{bound ? *bound : rhs, {}, {}, {}}};
    }
    if (!rhs.is_compound()) return {Partial{rhs, {}, {}, {}}};
    std::vector<std::vector<Partial>> per_arg;
    for (const auto& a : rhs.args()) {
      per_arg.push_back(instantiate(a, sigma, whole, ok));
      if (!ok) return {};
    }
    return combine(rhs.name(), per_arg);
  }

  // Alternatives for a constant no rule covers: itself if interlingual,
  // else word-to-word patches, else a gap.
  std::vector<Partial> constant_fallback(const Term& atom) {
    if (res_.interlingual.count(atom.name())) return {Partial{atom, {}, {}, {}}};
    auto patched = ww_patch(atom.name());
    if (!patched.empty()) return patched;
    return {Partial{atom, {}, {atom.name()}, {}}};
  }

  // Functor alternatives: atomic rules whose right-hand side is an atom,
  // else the constant fallback.
  std::vector<Partial> functor_candidates(const std::string& name) {
    std::vector<Partial> out;
    for (auto& p : apply_rules(Term::atom(name)))
      if (p.target.is_atom()) out.push_back(std::move(p));
    if (out.empty()) out = constant_fallback(Term::atom(name));
    return out;
  }

  std::vector<Partial> ww_patch(const std::string& sense) {
    std::vector<Partial> out;
    if (!res_.source || !res_.target) return out;
    for (const auto& e : res_.source->lex_entries) {
      if (e.sense != sense) continue;
      const std::string tag = res_.source->tag_of(e.macro).value_or(e.macro);
      auto rule = std::find_if(res_.ww.begin(), res_.ww.end(),
                               [&](const WWRule& w) { return w.surface == e.surface && w.tag == tag; });
      if (rule == res_.ww.end()) continue;
      for (const auto& alt : rule->targets)
        for (const auto& te : res_.target->lex_entries)
          if (te.surface == alt && res_.target->tag_of(te.macro).value_or(te.macro) == tag)
            out.push_back({Term::atom(te.sense), {}, {}, {WWPatch{e.surface, alt, tag}}});
    }
    dedupe(out);
    return out;
  }

  const TransferResources& res_;
  std::map<std::string, std::vector<const TransferRule*>> by_lhs_;
  std::unordered_map<std::string, std::vector<Partial>> memo_;
};

}  // namespace

std::set<std::string> interlingual_constants(const LanguageDescription& a, const LanguageDescription& b) {
  auto out = grammar_constants(a);
  auto more = grammar_constants(b);
  out.insert(more.begin(), more.end());
  return out;
}

std::string print_trace(const std::vector<Term>& trace) {
  std::string out = "[";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (i) out += ", ";
    out += print_term(trace[i]);
  }
  return out + "]";
}

std::vector<TransferResult> rank(std::vector<TransferResult> candidates, const PrefModel& prefs) {
  for (auto& c : candidates) {
    c.score = 0;
    for (const auto& id : c.trace) c.score += prefs.weight(id);
  }
  auto names = [](const TransferResult& r) {
    std::vector<std::string> v;
    for (const auto& id : r.trace) v.push_back(print_term(id));
    return v;
  };
  std::stable_sort(candidates.begin(), candidates.end(), [&](const TransferResult& a, const TransferResult& b) {
    if (a.score != b.score) return a.score > b.score;
    return names(a) < names(b);
  });
  return candidates;
}

std::vector<TransferResult> transfer(const Term& qlf, const TransferResources& res, std::size_t limit) {
  Transfer engine(res);
  std::vector<TransferResult> out;
  for (auto& p : engine.candidates(qlf))
    out.push_back({std::move(p.target), 0, std::move(p.trace), std::move(p.gaps), std::move(p.patches)});
  out = rank(std::move(out), res.prefs);
  if (limit > 0 && out.size() > limit) out.resize(limit);
  return out;
}

}  // namespace mtkit
