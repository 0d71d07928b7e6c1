// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances are the constants below.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "mtkit/evalkit.hpp"
#include "mtkit/generator.hpp"
#include "mtkit/pipeline.hpp"
#include "mtkit/porter.hpp"
#include "support.hpp"

using namespace mtkit;
using namespace mtkit::testing;
namespace fs = std::filesystem;

namespace {

constexpr int kUnifyPairs = 10000;
constexpr double kUnifySeconds = 10.0;
constexpr int kInversionMinSentences = 30;
constexpr double kInversionSeconds = 60.0;
constexpr int kAtomicTrials = 100;
constexpr int kAtomicMaxRules = 50;
constexpr std::size_t kSoundnessQlfs = 200;
constexpr int kWithholdTrials = 30;
constexpr int kDeterminismRuns = 3;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

Verdict unify_laws() {
  Verdict v;
  TermGen g(1001);
  int random_ok = 0, planted = 0, cyclic = 0;
  auto t0 = Clock::now();
  for (int i = 0; i < kUnifyPairs; ++i) {
    switch (i % 5) {
      case 0:
      case 1: {
        Term a = g.term(g.uniform(0, 4));
        Term b = g.term(g.uniform(0, 4), g.coin() ? "X" : "Y");
        if (auto s = unify(a, b)) {
          ++random_ok;
          if (auto e = check_unifier(a, b, *s); !e.empty()) v.fail(e);
        }
        break;
      }
      case 2:
      case 3: {
        auto u = g.unifiable(g.uniform(0, 5));
        ++planted;
        auto s = unify(u.a, u.b);
        if (!s) {
          v.fail("no unifier for " + print_term(u.a) + " ~ " + print_term(u.b));
          break;
        }
        if (auto e = check_unifier(u.a, u.b, *s); !e.empty()) v.fail(e);
        if (auto e = check_more_general(u.a, u.b, *s, u.theta); !e.empty()) v.fail(e);
        break;
      }
      default: {
        auto [a, b] = g.cyclic(g.uniform(1, 4));
        ++cyclic;
        if (unify(a, b)) v.fail("cyclic pair unified: " + print_term(a) + " ~ " + print_term(b));
      }
    }
  }
  double secs = seconds_since(t0);
  if (secs >= kUnifySeconds) v.fail("took " + std::to_string(secs) + " s");
  if (v.ok)
    v.detail = std::to_string(kUnifyPairs) + " pairs (" + std::to_string(random_ok) + " random unifiable, " +
               std::to_string(planted) + " planted, " + std::to_string(cyclic) + " cyclic) in " +
               fmt::format("{:.2f}", secs) + " s";
  return v;
}

Verdict inversion() {
  Verdict v;
  auto t0 = Clock::now();
  std::size_t checked = 0;
  for (const char* lang : {"swetoy", "engtoy", "fretoy", "dantoy"}) {
    const auto& d = language(lang);
    auto lines = sentence_lines(fixtures() / "sentences" / (std::string(lang) + ".txt"));
    if (lines.size() < kInversionMinSentences) v.fail(std::string(lang) + " has too few sentences");
    for (const auto& s : lines) {
      const std::string norm = join_tokens(tokenize(s));
      auto qs = parse(tokenize(s), d);
      if (qs.empty()) v.fail(std::string(lang) + ": no parse for " + s);
      for (const auto& q : qs) {
        auto gens = generate(q, d);
        if (std::find(gens.begin(), gens.end(), norm) == gens.end())
          v.fail(std::string(lang) + ": " + s + " not regenerated from " + print_term(q));
        for (const auto& out : gens) {
          bool back = false;
          for (const auto& q2 : parse(tokenize(out), d)) back = back || unify(q, rename_apart(q2, fresh_salt()));
          if (!back) v.fail(std::string(lang) + ": " + out + " does not parse back to " + print_term(q));
        }
      }
      ++checked;
    }
  }
  double secs = seconds_since(t0);
  if (secs >= kInversionSeconds) v.fail("took " + std::to_string(secs) + " s");
  if (v.ok) v.detail = std::to_string(checked) + " sentences in 4 languages in " + fmt::format("{:.2f}", secs) + " s";
  return v;
}

Verdict atomic_composition() {
  Verdict v;
  TermGen g(1003);
  std::size_t largest = 0;
  for (int i = 0; i < kAtomicTrials; ++i) {
    auto sets = atomic_rulesets(g, kAtomicMaxRules);
    largest = std::max(largest, sets.left.size() * sets.right.size());
    if (relation_of(compose_rulesets(sets.left, sets.right).rules) != brute_compose(sets.left, sets.right))
      v.fail("trial " + std::to_string(i) + " differs from the brute-force relation");
  }
  if (v.ok) v.detail = std::to_string(kAtomicTrials) + " pairs, largest " + std::to_string(largest) + " rule pairs";
  return v;
}

Verdict soundness() {
  Verdict v;
  const auto& swe = language("swetoy");
  std::set<std::string> il;
  for (const char* l : {"swetoy", "engtoy", "fretoy"})
    for (auto& c : grammar_constants(language(l))) il.insert(c);
  TransferResources r12, r23, r13;
  r12.rules = pair_rules("swetoy", "engtoy");
  r23.rules = pair_rules("engtoy", "fretoy");
  for (auto& c : compose_rulesets(r12.rules, r23.rules).rules) r13.rules.push_back(c.rule);
  r12.interlingual = r23.interlingual = r13.interlingual = il;

  auto qlfs = enumerate_qlfs(swe, sentence_lines(fixtures() / "sentences" / "swetoy.txt"), kSoundnessQlfs, 1004);
  if (qlfs.size() < kSoundnessQlfs) v.fail("only " + std::to_string(qlfs.size()) + " source forms");
  std::size_t nonempty = 0;
  for (const auto& q : qlfs) {
    auto direct = complete_targets(q, r13);
    auto two = two_step_targets(q, r12, r23);
    if (!direct.empty()) ++nonempty;
    for (const auto& t : direct)
      if (!two.count(t)) v.fail(print_term(q) + " => " + t + " has no two-step derivation");
  }

  auto ex = compose_rulesets(rules_from_text("trule(r12, want(X), desire(tr(X)))."),
                             rules_from_text("trule(r23a, desire(Y), souhaiter(tr(Y))). "
                                             "trule(r23b, desire(happy), content)."));
  if (ex.rules.size() != 1 || print_transfer_rule(ex.rules[0].rule) != "trule(c(r12,r23a),want(A),souhaiter(tr(A))).")
    v.fail("want/desire/souhaiter did not compose");
  if (ex.skipped.size() != 1 || ex.skipped[0].reason != SkipReason::OpaqueIntermediate)
    v.fail("desire(happy) => content was not skipped as opaque-intermediate");
  if (v.ok)
    v.detail = std::to_string(qlfs.size()) + " source forms, " + std::to_string(nonempty) +
               " with composed candidates; example composes and skips r23b";
  return v;
}

Verdict conservation() {
  Verdict v;
  TermGen g(1005);
  auto check = [&](const std::vector<TransferRule>& l, const std::vector<TransferRule>& r) {
    auto base = compose_rulesets(l, r);
    if (base.pairs_attempted != l.size() * r.size() || base.pairs_attempted != base.rules.size() + base.skipped.size())
      v.fail("pairs not conserved");
    auto ids = composed_ids(base.rules);
    for (std::size_t i = 0; i < base.rules.size(); i += std::max<std::size_t>(1, base.rules.size() / 5)) {
      const auto& c = base.rules[i].rule;
      ResourceSet b;
      b.add_clauses(parse_clauses("block_id(" + print_term(c.id) + "). block_pair(" + c.lhs.name() + ", " +
                                  c.rhs.name() + ")."),
                    "acceptance");
      for (const auto& decl : b.blocks) {
        auto blocked = compose_rulesets(l, r, {decl});
        if (blocked.pairs_attempted != blocked.rules.size() + blocked.skipped.size()) v.fail("blocked pairs not conserved");
        for (const auto& id : composed_ids(blocked.rules))
          if (!ids.count(id)) v.fail("block added " + id);
        if (blocked.rules.size() >= base.rules.size()) v.fail("block of " + print_term(c.id) + " removed nothing");
      }
    }
  };
  for (int i = 0; i < 30; ++i) {
    auto sets = atomic_rulesets(g, 20);
    check(sets.left, sets.right);
  }
  check(pair_rules("swetoy", "engtoy"), pair_rules("engtoy", "fretoy"));
  if (v.ok) v.detail = "30 random rule-set pairs and the fixture pair";
  return v;
}

Verdict porting() {
  Verdict v;
  const auto pair = fixtures() / "pairs" / "swetoy-dantoy";
  const LanguageDescription target = load_language_skeleton(manifest(), "dantoy");
  PortInputs in;
  in.source = &language("swetoy");
  in.target_lang = "dantoy";
  in.target_paradigms = target.paradigms;
  ResourceSet ww;
  ww.add_file(pair / "ww.filled.pl");
  in.ww = ww.ww_rules;
  in.interlingual = interlingual_constants(language("swetoy"), target);

  auto round1 = read_answers(pair / "answers.round1.pl"), round2 = read_answers(pair / "answers.round2.pl");
  std::size_t rounds = 0;
  auto r = port_fixpoint(in, {round1, round2}, 5, &rounds);
  if (!r.requests.empty()) v.fail("requests remain after the answer rounds");
  if (format_ported_lexicon(r, "swetoy", "dantoy") != slurp(pair / "ported" / "lexicon.dantoy") ||
      format_byproduct_rules(r) != slurp(pair / "ported" / "trules.byproduct"))
    v.fail("ported output differs from the checked-in files");

  // (a) one identity rule per interlingual constant
  std::map<std::string, int> ident;
  for (const auto& t : r.identity_rules) {
    if (t.lhs != t.rhs) v.fail("identity rule " + print_term(t.id) + " is not an identity");
    ++ident[t.lhs.name()];
  }
  for (const auto& c : in.interlingual)
    if (ident[c] != 1) v.fail("(a) " + c + " has " + std::to_string(ident[c]) + " identity rules");
  if (ident.size() != in.interlingual.size()) v.fail("(a) identity rule for a non-interlingual constant");

  // (b) byproduct content rules and lexical entries are in bijection
  std::map<std::string, int> by_sense, by_rule;
  for (const auto& e : r.lex_entries) ++by_sense[e.sense];
  for (const auto& t : r.content_rules) ++by_rule[t.rhs.name()];
  if (by_sense.size() != r.lex_entries.size() || by_rule.size() != r.content_rules.size() || by_sense != by_rule)
    v.fail("(b) byproduct rules and lexical entries are not in bijection");

  // (c) weighted coverage of the ported pair
  auto report = run_suite(Pipeline::from_manifest(manifest(), "swetoy", "dantoy"),
                          read_corpus(fixtures() / "corpus" / "swetoy.corpus"));
  if (report.covered.str() != "100.0") v.fail("(c) coverage " + report.covered.str() + "%");

  // (d) withholding k answers yields exactly k requests
  std::map<std::pair<std::string, std::string>, Answer> merged;
  for (auto* batch : {&round1, &round2})
    for (auto& a : *batch) merged[{a.surface, a.tag}] = a;
  std::vector<Answer> all;
  for (auto& [k, a] : merged) all.push_back(a);
  TermGen g(1006);
  for (int trial = 0; trial < kWithholdTrials; ++trial) {
    auto answers = all;
    std::shuffle(answers.begin(), answers.end(), g.rng());
    const auto k = static_cast<std::size_t>(g.uniform(0, static_cast<int>(all.size())));
    answers.erase(answers.begin(), answers.begin() + static_cast<std::ptrdiff_t>(k));
    auto trial_in = in;
    trial_in.answers = answers;
    auto got = induce_lexicon(trial_in).requests.size();
    if (got != k) v.fail("(d) withheld " + std::to_string(k) + ", got " + std::to_string(got) + " requests");
  }
  if (v.ok)
    v.detail = fmt::format("(a) {} identity rules (b) {} entries (c) {}% in {} round(s) (d) {} trials", ident.size(),
                           r.lex_entries.size(), report.covered.str(), rounds, kWithholdTrials);
  return v;
}

Verdict weighted_score() {
  Verdict v;
  auto corpus = parse_corpus(parse_clauses(R"(
entry(e1, 10, "a b c").
entry(e2, 1, "a b c d e").
entry(e3, 1, "a b c d e").
entry(e4, 1, "a b c d e").
entry(e5, 1, "a b c d e").
)"),
                             "acceptance");
  auto p = weighted_coverage(corpus, {true, false, false, false, false});
  if (p.str() != "60.0") v.fail("got " + p.str() + "%");
  if (v.ok) v.detail = p.str() + "%";
  return v;
}

Verdict judgment_table() {
  Verdict v;
  const std::array<long, kJudgmentCount> counts{5254, 44, 2442, 70, 0, 90, 1070, 1030};
  const std::vector<std::string> want{"52.5", "0.4", "24.4", "0.7", "0.0", "0.9", "10.7", "10.3"};
  std::vector<JudgedEntry> entries;
  long id = 0;
  for (std::size_t j = 0; j < kJudgmentCount; ++j)
    for (long i = 0; i < counts[j]; ++i) entries.push_back({Term::integer(id++), static_cast<Judgment>(j)});
  TermGen g(1008);
  std::shuffle(entries.begin(), entries.end(), g.rng());
  auto t = category_table(entries);
  std::vector<std::string> got;
  for (const auto& p : t.percents) got.push_back(p.str());
  if (t.total != 10000) v.fail("total " + std::to_string(t.total));
  if (got != want) v.fail("percentages differ");
  if (v.ok) v.detail = fmt::format("{}", fmt::join(got, " "));
  return v;
}

Verdict cli_determinism() {
  Verdict v;
  const fs::path dir = fs::temp_directory_path() / "mtkit_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string bin = MTKIT_BIN;
  const std::string cfg = " --config " + (fixtures() / "mtkit.cfg").string();
  const auto fx = [](const char* rel) { return (fixtures() / rel).string(); };
  const std::vector<std::pair<std::string, std::string>> commands{
      {"translate", cfg + " translate --from swetoy --to fretoy --n 3 --input " + fx("sentences/swetoy.txt")},
      {"eval", cfg + " eval run --from swetoy --to dantoy --corpus " + fx("corpus/swetoy.corpus")},
      {"table", cfg + " eval table --judgments " + fx("judgments/swetoy-fretoy.pl")},
  };
  std::vector<std::string> first;
  for (int run = 0; run < kDeterminismRuns; ++run) {
    std::string bytes;
    for (const auto& [name, args] : commands) {
      auto out = dir / (name + std::to_string(run));
      if (std::system((bin + args + " > " + out.string()).c_str()) != 0) v.fail(name + " exited non-zero");
      bytes += slurp(out);
    }
    auto cdir = dir / ("compose" + std::to_string(run));
    auto pdir = dir / ("port" + std::to_string(run));
    const std::string pair = fx("pairs/swetoy-dantoy");
    if (std::system((bin + cfg + " compose --pair swetoy-engtoy --pair engtoy-fretoy --threads " +
                     std::to_string(1 + run) + " --out " + cdir.string() + " > /dev/null")
                        .c_str()) != 0)
      v.fail("compose exited non-zero");
    if (std::system((bin + cfg + " port induce --src swetoy --tgt dantoy --ww " + pair + "/ww.filled.pl --answers " +
                     pair + "/answers.round1.pl --answers " + pair + "/answers.round2.pl --out " + pdir.string() +
                     " > /dev/null")
                        .c_str()) != 0)
      v.fail("port exited non-zero");
    for (const char* f : {"trules.composed", "prefs.composed", "diagnostics.txt"}) bytes += slurp(cdir / f);
    for (const char* f : {"lexicon.dantoy", "trules.byproduct", "requests.txt"}) bytes += slurp(pdir / f);
    if (run == 0) {
      if (bytes.empty()) v.fail("no output");
      first.push_back(bytes);
    } else if (bytes != first[0]) {
      v.fail("run " + std::to_string(run) + " differs from run 0");
    }
  }
  if (v.ok)
    v.detail = std::to_string(kDeterminismRuns) + " runs of translate, eval, table, compose, port; " +
               std::to_string(first[0].size()) + " bytes each";
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"unification laws", unify_laws},
      {"parse/generate inversion", inversion},
      {"atomic composition is relational composition", atomic_composition},
      {"composition soundness", soundness},
      {"pair conservation and block monotonicity", conservation},
      {"porting", porting},
      {"weighted score", weighted_score},
      {"judgment table", judgment_table},
      {"CLI determinism", cli_determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    if (!v.ok) ++failed;
    std::cout << (v.ok ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ": " << v.detail << "\n"
              << std::flush;
  }
  return failed == 0 ? 0 : 1;
}
