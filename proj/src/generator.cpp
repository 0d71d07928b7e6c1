#include "mtkit/generator.hpp"

#include <climits>
#include <functional>
#include <map>
#include <set>

#include "mtkit/parser.hpp"
#include "mtkit/unify.hpp"

namespace mtkit {

namespace {

std::string functor_key(const Term& t) {
  return t.is_compound() ? t.name() + "/" + std::to_string(t.arity()) : t.name() + "/0";
}

using Tokens = std::vector<std::string>;
using Cont = std::function<void(const Substitution&, const Tokens&)>;

class Generator {
 public:
  Generator(const LanguageDescription& lang, const std::vector<LexicalItem>& extra) : lang_(lang) {
    for (const auto* items : {&lang.lexicon, &extra})
      for (const auto& item : *items) lexical_[functor_key(item.category)].push_back(&item);
    for (const auto& r : lang.rules) rules_[functor_key(r.mother)].push_back(&r);
    compute_min_depth();
  }

  void derive(const Term& cat, int depth, const Substitution& env, const Cont& k) const {
    const std::string key = functor_key(cat);
    if (min_depth(key) > depth) return;
    if (auto it = lexical_.find(key); it != lexical_.end()) {
      for (const LexicalItem* item : it->second) {
        Substitution e = env;
        Term c = item->category.ground() ? item->category : rename_apart(item->category, fresh_salt());
        if (unify_into(e, cat, c)) k(e, Tokens{item->surface});
      }
    }
    if (depth < 2) return;
    auto it = rules_.find(key);
    if (it == rules_.end()) return;
    for (const GrammarRule* r : it->second) {
      bool reachable = true;
      for (const auto& d : r->daughters) reachable = reachable && min_depth(functor_key(d)) <= depth - 1;
      if (!reachable) continue;
      const std::uint64_t salt = fresh_salt();
      Substitution e = env;
      if (!unify_into(e, cat, rename_apart(r->mother, salt))) continue;
      std::vector<Term> ds;
      for (const auto& d : r->daughters) ds.push_back(rename_apart(d, salt));
      std::vector<Tokens> parts(ds.size());
      std::vector<bool> done(ds.size(), false);
      sequence(ds, parts, done, ds.size(), depth - 1, e, k);
    }
  }

 private:
  // Daughters are realized semantics-first: the next one expanded is the
  // leftmost whose semantics is already instantiated, so heads bind the
  // arguments their dependents need.
  void sequence(const std::vector<Term>& ds, std::vector<Tokens>& parts, std::vector<bool>& done,
                std::size_t remaining, int depth, const Substitution& env, const Cont& k) const {
    if (remaining == 0) {
      Tokens all;
      for (const auto& p : parts) all.insert(all.end(), p.begin(), p.end());
      k(env, all);
      return;
    }
    std::size_t pick = ds.size();
    for (std::size_t i = 0; i < ds.size(); ++i) {
      if (done[i]) continue;
      if (pick == ds.size()) pick = i;
      if (ds[i].is_compound() && !env.resolve(semantics_of(ds[i])).is_var()) {
        pick = i;
        break;
      }
    }
    derive(ds[pick], depth, env, [&](const Substitution& e, const Tokens& toks) {
      parts[pick] = toks;
      done[pick] = true;
      sequence(ds, parts, done, remaining - 1, depth, e, k);
      done[pick] = false;
    });
  }

  int min_depth(const std::string& key) const {
    auto it = min_depth_.find(key);
    return it == min_depth_.end() ? INT_MAX : it->second;
  }

  // Least derivation depth per category functor, computed to a fixpoint.
  void compute_min_depth() {
    for (const auto& [key, items] : lexical_) min_depth_[key] = 1;
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& r : lang_.rules) {
        int worst = 0;
        for (const auto& d : r.daughters) worst = std::max(worst, min_depth(functor_key(d)));
        if (worst == INT_MAX) continue;
        const std::string key = functor_key(r.mother);
        if (worst + 1 < min_depth(key)) {
          min_depth_[key] = worst + 1;
          changed = true;
        }
      }
    }
  }

  const LanguageDescription& lang_;
  std::map<std::string, std::vector<const LexicalItem*>> lexical_;
  std::map<std::string, std::vector<const GrammarRule*>> rules_;
  std::map<std::string, int> min_depth_;
};

}  // namespace

std::vector<std::string> generate(const Term& qlf, const LanguageDescription& lang, int depth_bound,
                                  const std::vector<LexicalItem>& extra) {
  Generator g(lang, extra);
  Term start = rename_apart(lang.start, fresh_salt());
  Substitution env;
  if (!start.is_compound() || !unify_into(env, semantics_of(start), rename_apart(qlf, fresh_salt()))) return {};
  std::set<std::string> out;
  g.derive(start, depth_bound, env, [&](const Substitution&, const Tokens& toks) { out.insert(join_tokens(toks)); });
  return {out.begin(), out.end()};
}

}  // namespace mtkit
