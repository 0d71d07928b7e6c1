#include "mtkit/pipeline.hpp"

#include <set>

#include <fmt/format.h>

#include "mtkit/generator.hpp"
#include "mtkit/parser.hpp"

namespace mtkit {

bool SentenceTranslation::covered() const {
  for (const auto& c : candidates)
    if (c.complete()) return true;
  return false;
}

bool SentenceTranslation::best_complete() const { return !candidates.empty() && candidates.front().complete(); }

std::string SentenceTranslation::output() const {
  if (!parsed()) return kNoParse;
  if (realizations.empty()) return kNoGeneration;
  return realizations.front().sentence;
}

Pipeline::Pipeline(LanguageDescription source, LanguageDescription target, TransferResources resources)
    : source_(std::make_shared<const LanguageDescription>(std::move(source))),
      target_(std::make_shared<const LanguageDescription>(std::move(target))),
      resources_(std::move(resources)) {
  resources_.source = source_.get();
  resources_.target = target_.get();
}

Pipeline Pipeline::from_manifest(const Manifest& manifest, const std::string& source, const std::string& target) {
  LanguageDescription src = load_language(manifest, source);
  LanguageDescription tgt = load_language(manifest, target);
  ResourceSet pair = load_pair_resources(manifest, source, target);
  TransferResources res;
  res.rules = std::move(pair.transfer_rules);
  res.prefs = std::move(pair.prefs);
  res.ww = std::move(pair.ww_rules);
  res.interlingual = interlingual_constants(src, tgt);
  return Pipeline(std::move(src), std::move(tgt), std::move(res));
}

std::vector<LexicalItem> gap_items(const std::vector<std::string>& gaps, const LanguageDescription& source,
                                   const LanguageDescription& target) {
  std::vector<LexicalItem> out;
  std::set<std::string> done;
  for (const auto& g : gaps) {
    if (!done.insert(g).second) continue;
    for (const auto& e : source.lex_entries) {
      if (e.sense != g || !target.find_macro(e.macro)) continue;
      // `regular` first, then target paradigms in declaration order; the
      // first that expands supplies any features the macro requires.
      std::vector<std::string> tries{"regular"};
      for (const auto& p : target.paradigms)
        if (p.lang == target.lang && !p.has_irregular_slots()) tries.push_back(p.name);
      for (const auto& paradigm : tries) {
        LexEntry stand_in{target.lang, e.macro, "[gap: " + g + "]", g, paradigm};
        try {
          for (const auto& w : expand_lex_entry(stand_in, target.paradigm_macros, target.paradigms, target.irregulars))
            out.push_back({w.arg(0).name(), w.arg(1), g, stand_in.surface, e.macro});
          break;
        } catch (const LoadError&) {
        }
      }
    }
  }
  return out;
}

SentenceTranslation Pipeline::translate(const std::string& sentence, std::size_t n_best) const {
  SentenceTranslation out;
  out.tokens = tokenize(sentence);
  out.qlfs = parse(out.tokens, *source_);
  std::set<std::string> seen;
  for (const auto& q : out.qlfs)
    for (auto& c : transfer(q, resources_))
      if (seen.insert(print_term(c.target) + "|" + print_trace(c.trace)).second) out.candidates.push_back(std::move(c));
  out.candidates = rank(std::move(out.candidates), resources_.prefs);
  for (std::size_t i = 0; i < out.candidates.size() && out.realizations.size() < n_best; ++i) {
    const auto& c = out.candidates[i];
    auto sentences = generate(c.target, *target_, kDefaultDepthBound, gap_items(c.gaps, *source_, *target_));
    if (!sentences.empty()) out.realizations.push_back({sentences.front(), i});
  }
  return out;
}

SuiteReport run_suite(const Pipeline& pipeline, const std::vector<CorpusEntry>& corpus) {
  SuiteReport r;
  std::vector<bool> parsed, covered, best, realized;
  for (const auto& e : corpus) {
    auto t = pipeline.translate(e.sentence);
    r.rows.push_back({e, t.qlfs.size(), t.covered(), t.best_complete(), t.output()});
    parsed.push_back(t.parsed());
    covered.push_back(t.covered());
    best.push_back(t.best_complete());
    realized.push_back(!t.realizations.empty());
  }
  if (!corpus.empty()) {
    r.parsed = weighted_coverage(corpus, parsed);
    r.covered = weighted_coverage(corpus, covered);
    r.best_complete = weighted_coverage(corpus, best);
    r.realized = weighted_coverage(corpus, realized);
  }
  return r;
}

std::string format_suite_report(const SuiteReport& r) {
  std::string out;
  for (const auto& row : r.rows)
    out += fmt::format("{}\t{}\t{}\t{}\t{}\t{}\n", print_term(row.entry.id), row.entry.rep_count, row.parses,
                       row.covered ? "covered" : "uncovered", row.entry.sentence, row.output);
  out += fmt::format("weighted parse coverage: {}%\n", r.parsed.str());
  out += fmt::format("weighted transfer coverage (any gap-free candidate): {}%\n", r.covered.str());
  out += fmt::format("weighted transfer coverage (top-ranked candidate gap-free): {}%\n", r.best_complete.str());
  out += fmt::format("weighted generation coverage: {}%\n", r.realized.str());
  return out;
}

}  // namespace mtkit
