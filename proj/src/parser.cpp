#include "mtkit/parser.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "mtkit/unify.hpp"

namespace mtkit {

namespace {

// Lowercases ASCII and the two-byte UTF-8 encodings of Latin-1 capitals.
std::string lowercase(std::string_view s) {
  std::string out(s);
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto c = static_cast<unsigned char>(out[i]);
    if (c < 0x80) {
      out[i] = static_cast<char>(std::tolower(c));
    } else if (c == 0xC3 && i + 1 < out.size()) {
      auto d = static_cast<unsigned char>(out[i + 1]);
      if (d >= 0x80 && d <= 0x9E && d != 0x97) out[i + 1] = static_cast<char>(d + 0x20);
      ++i;
    }
  }
  return out;
}

bool final_punct(char c) { return c == '?' || c == '!' || c == '.'; }

std::string functor_key(const Term& t) {
  return t.is_compound() ? t.name() + "/" + std::to_string(t.arity()) : t.name() + "/0";
}

std::string edge_key(const Edge& e) {
  Term t = Term::compound("$edge", {e.category, make_list(e.remaining)});
  return std::to_string(e.start) + ":" + std::to_string(e.end) + ":" + print_term(canonical_vars(t));
}

// Upper bound on chart size; a grammar whose unary rules grow categories
// without limit would otherwise never saturate.
constexpr std::size_t kMaxEdges = 500000;

class Chart {
 public:
  Chart(const std::vector<std::string>& tokens, const LanguageDescription& lang) : tokens_(tokens), lang_(lang) {
    for (std::size_t i = 0; i < lang.rules.size(); ++i)
      by_first_[functor_key(lang.rules[i].daughters.front())].push_back(i);
    passive_at_.resize(tokens.size() + 1);
    active_at_.resize(tokens.size() + 1);
  }

  void run() {
    for (std::size_t i = 0; i < tokens_.size(); ++i)
      for (const auto& item : lang_.lexicon)
        if (item.surface == tokens_[i])
          add({i, i + 1, rename_apart(item.category, fresh_salt()), {}, Term::atom("lex")});
    while (!agenda_.empty()) {
      std::size_t idx = agenda_.front();
      agenda_.pop_front();
      if (edges_[idx].passive())
        process_passive(idx);
      else
        process_active(idx);
    }
  }

  const std::vector<Edge>& edges() const { return edges_; }

 private:
  void add(Edge e) {
    if (!seen_.insert(edge_key(e)).second) return;
    if (edges_.size() >= kMaxEdges) throw std::runtime_error("parse chart exceeded edge limit");
    edges_.push_back(std::move(e));
    std::size_t idx = edges_.size() - 1;
    const Edge& x = edges_.back();
    if (x.passive())
      passive_at_[x.start].push_back(idx);
    else
      active_at_[x.end].push_back(idx);
    agenda_.push_back(idx);
  }

  void process_passive(std::size_t idx) {
    const Edge p = edges_[idx];
    if (auto it = by_first_.find(functor_key(p.category)); it != by_first_.end()) {
      for (std::size_t ri : it->second) {
        const GrammarRule& r = lang_.rules[ri];
        const std::uint64_t salt = fresh_salt();
        Substitution env;
        if (!unify_into(env, rename_apart(r.daughters.front(), salt), p.category)) continue;
        Edge n{p.start, p.end, env.resolve(rename_apart(r.mother, salt)), {}, r.id};
        for (std::size_t k = 1; k < r.daughters.size(); ++k)
          n.remaining.push_back(env.resolve(rename_apart(r.daughters[k], salt)));
        add(std::move(n));
      }
    }
    const std::vector<std::size_t> actives = active_at_[p.start];
    for (std::size_t ai : actives) combine(ai, idx);
  }

  void process_active(std::size_t idx) {
    const std::size_t end = edges_[idx].end;
    if (end >= passive_at_.size()) return;
    const std::vector<std::size_t> passives = passive_at_[end];
    for (std::size_t pi : passives) combine(idx, pi);
  }

  void combine(std::size_t active_idx, std::size_t passive_idx) {
    const Edge a = edges_[active_idx];
    const Edge& p = edges_[passive_idx];
    Term cat = rename_apart(p.category, fresh_salt());
    Substitution env;
    if (!unify_into(env, a.remaining.front(), cat)) return;
    Edge n{a.start, p.end, env.resolve(a.category), {}, a.rule_id};
    for (std::size_t k = 1; k < a.remaining.size(); ++k) n.remaining.push_back(env.resolve(a.remaining[k]));
    add(std::move(n));
  }

  const std::vector<std::string>& tokens_;
  const LanguageDescription& lang_;
  std::map<std::string, std::vector<std::size_t>> by_first_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> passive_at_;  // by start
  std::vector<std::vector<std::size_t>> active_at_;   // by end
  std::unordered_set<std::string> seen_;
  std::deque<std::size_t> agenda_;
};

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(lowercase(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(lowercase(cur));
  if (!out.empty() && out.back().size() > 1 && final_punct(out.back().back())) {
    std::string p(1, out.back().back());
    out.back().pop_back();
    out.push_back(p);
  }
  return out;
}

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out.push_back(' ');
    out += t;
  }
  return out;
}

std::vector<Edge> parse_chart(const std::vector<std::string>& tokens, const LanguageDescription& lang) {
  Chart chart(tokens, lang);
  chart.run();
  return chart.edges();
}

std::vector<Term> parse(const std::vector<std::string>& tokens, const LanguageDescription& lang, ParseStats* stats) {
  if (tokens.empty()) return {};
  Chart chart(tokens, lang);
  chart.run();
  std::map<std::string, Term> results;
  std::size_t passive = 0;
  for (const auto& e : chart.edges()) {
    if (!e.passive()) continue;
    ++passive;
    if (e.start != 0 || e.end != tokens.size()) continue;
    Substitution env;
    if (!unify_into(env, rename_apart(lang.start, fresh_salt()), e.category)) continue;
    Term sem = canonical_vars(semantics_of(env.resolve(e.category)));
    results.emplace(print_term(sem), sem);
  }
  if (stats) {
    stats->edges = chart.edges().size();
    stats->passive_edges = passive;
  }
  std::vector<Term> out;
  for (auto& [k, t] : results) out.push_back(t);
  return out;
}

}  // namespace mtkit
