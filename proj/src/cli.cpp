#include "mtkit/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "mtkit/composer.hpp"
#include "mtkit/evalkit.hpp"
#include "mtkit/generator.hpp"
#include "mtkit/manifest.hpp"
#include "mtkit/parser.hpp"
#include "mtkit/pipeline.hpp"
#include "mtkit/porter.hpp"
#include "mtkit/syntax.hpp"

namespace mtkit {

namespace {

namespace fs = std::filesystem;

std::vector<std::string> read_lines(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open " + path.string());
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '%' || line[start] == '#') continue;
    auto end = line.find_last_not_of(" \t\r");
    out.push_back(line.substr(start, end - start + 1));
  }
  return out;
}

// Corpus files hold entry/3 clauses or one sentence per line.
std::vector<std::string> read_sentences(const fs::path& path) {
  auto lines = read_lines(path);
  if (!lines.empty() && lines.front().rfind("entry(", 0) == 0) {
    std::vector<std::string> out;
    for (const auto& e : read_corpus(path)) out.push_back(e.sentence);
    return out;
  }
  return lines;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw LoadError("cannot write " + path.string());
  out << text;
}

std::pair<std::string, std::string> split_pair(const std::string& spec) {
  auto dash = spec.find('-');
  if (dash == std::string::npos || dash == 0 || dash + 1 == spec.size())
    throw CLI::ValidationError("--pair", "expected L1-L2, got '" + spec + "'");
  return {spec.substr(0, dash), spec.substr(dash + 1)};
}

struct Options {
  std::string config = "mtkit.cfg";
  std::string lang, from, to, qlf, input, sentence, out_path, corpus, ww, blocks, src, tgt, judgments;
  std::vector<std::string> pairs, answers;
  int depth = kDefaultDepthBound;
  std::size_t n_best = 1, examples = 3, rounds = 0;
  unsigned threads = 0;
};

int cmd_parse(const Options& o, std::ostream& out) {
  auto lang = load_language(Manifest::load(o.config), o.lang);
  std::vector<std::string> sentences = o.input.empty() ? std::vector<std::string>{o.sentence} : read_sentences(o.input);
  for (const auto& s : sentences) {
    if (sentences.size() > 1) out << "% " << s << "\n";
    auto qlfs = parse(tokenize(s), lang);
    if (qlfs.empty()) out << kNoParse << "\n";
    for (const auto& q : qlfs) out << print_term(q) << "\n";
  }
  return 0;
}

int cmd_generate(const Options& o, std::ostream& out) {
  auto lang = load_language(Manifest::load(o.config), o.lang);
  Term q = parse_term(o.qlf);
  auto sentences = generate(q, lang, o.depth);
  if (sentences.empty()) out << kNoGeneration << "\n";
  for (const auto& s : sentences) out << s << "\n";
  return 0;
}

int cmd_translate(const Options& o, std::ostream& out) {
  auto pipeline = Pipeline::from_manifest(Manifest::load(o.config), o.from, o.to);
  std::vector<std::string> sentences = o.input.empty() ? std::vector<std::string>{o.sentence} : read_sentences(o.input);
  for (const auto& s : sentences) {
    auto t = pipeline.translate(s, o.n_best);
    if (o.n_best <= 1) {
      out << t.output() << "\n";
      continue;
    }
    out << "% " << s << "\n";
    if (t.realizations.empty()) out << t.output() << "\n";
    for (std::size_t i = 0; i < t.realizations.size(); ++i) {
      const auto& c = t.candidates[t.realizations[i].candidate];
      out << fmt::format("{}\t{}\t{}\t{}\n", i + 1, format_weight(c.score), t.realizations[i].sentence,
                         print_trace(c.trace));
    }
  }
  return 0;
}

int cmd_compose(const Options& o, std::ostream& out) {
  if (o.pairs.size() != 2) throw CLI::ValidationError("--pair", "give exactly two pairs, L1-L2 and L2-L3");
  auto [l1, l2] = split_pair(o.pairs[0]);
  auto [l2b, l3] = split_pair(o.pairs[1]);
  if (l2 != l2b) throw CLI::ValidationError("--pair", "pairs do not share a middle language: " + l2 + " vs " + l2b);
  auto manifest = Manifest::load(o.config);
  ResourceSet r12 = load_pair_resources(manifest, l1, l2);
  ResourceSet r23 = load_pair_resources(manifest, l2, l3);
  std::vector<BlockDecl> blocks;
  if (!o.blocks.empty()) {
    ResourceSet b;
    b.add_file(o.blocks);
    blocks = b.blocks;
  }
  for (const auto* set : {&r12, &r23})
    for (const auto& d : validate_rulesets(set->transfer_rules))
      throw LoadError("ill-formed transfer rule " + print_term(d.rule_id) + ": " + d.message);
  auto result = compose_rulesets(r12.transfer_rules, r23.transfer_rules, blocks, o.threads);
  auto prefs = compose_prefs(r12.prefs, r23.prefs, result.rules);
  fs::path dir = o.out_path.empty() ? fs::path(".") : fs::path(o.out_path);
  fs::create_directories(dir);
  write_file(dir / "trules.composed", format_composed_rules(result.rules));
  write_file(dir / "prefs.composed", format_composed_prefs(prefs, result.rules));
  write_file(dir / "diagnostics.txt", format_diagnostics(result.skipped));
  out << fmt::format("{} pairs attempted, {} rules composed, {} skipped; wrote {}\n", result.pairs_attempted,
                     result.rules.size(), result.skipped.size(), dir.string());
  return 0;
}

int cmd_scaffold(const Options& o, std::ostream& out) {
  auto lang = load_language(Manifest::load(o.config), o.src);
  auto scaffold = scaffold_ww(read_sentences(o.corpus), lang, o.examples);
  std::string text = format_scaffold(scaffold, o.src);
  if (o.out_path.empty())
    out << text;
  else
    write_file(o.out_path, text);
  return 0;
}

int cmd_induce(const Options& o, std::ostream& out) {
  auto manifest = Manifest::load(o.config);
  auto source = load_language(manifest, o.src);
  auto target = load_language_skeleton(manifest, o.tgt);

  PortInputs in;
  in.source = &source;
  in.target_lang = o.tgt;
  in.target_paradigms = target.paradigms;
  ResourceSet ww;
  ww.add_file(o.ww);
  in.ww = ww.ww_rules;
  in.interlingual = interlingual_constants(source, target);
  std::vector<std::vector<Answer>> rounds;
  for (const auto& a : o.answers) rounds.push_back(read_answers(a));
  std::size_t used = 0;
  auto result = port_fixpoint(in, rounds, o.rounds == 0 ? rounds.size() : o.rounds, &used);

  fs::path dir = o.out_path.empty() ? fs::path(".") : fs::path(o.out_path);
  fs::create_directories(dir);
  write_file(dir / ("lexicon." + o.tgt), format_ported_lexicon(result, o.src, o.tgt));
  write_file(dir / "trules.byproduct", format_byproduct_rules(result));
  write_file(dir / "requests.txt", format_requests(result));
  out << fmt::format("{} function words, {} content entries, {} transfer rules, {} requests after {} round(s)\n",
                     result.function_words.size(), result.lex_entries.size(),
                     result.identity_rules.size() + result.content_rules.size(), result.requests.size(), used);
  for (const auto& n : result.notes) out << "note: " << n << "\n";
  return 0;
}

int cmd_eval_run(const Options& o, std::ostream& out) {
  auto pipeline = Pipeline::from_manifest(Manifest::load(o.config), o.from, o.to);
  auto report = run_suite(pipeline, read_corpus(o.corpus));
  std::string text = format_suite_report(report);
  if (o.out_path.empty())
    out << text;
  else
    write_file(o.out_path, text);
  return 0;
}

int cmd_eval_table(const Options& o, std::ostream& out) {
  out << format_category_table(category_table(read_judgments(o.judgments)));
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Grammar-based interlingual translation toolkit", "mtkit"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--config", o.config, "resource manifest")->capture_default_str();

  auto* parse_cmd = app.add_subcommand("parse", "print the QLFs of a sentence");
  parse_cmd->add_option("--lang", o.lang, "language")->required();
  parse_cmd->add_option("--input", o.input, "file with one sentence per line");
  parse_cmd->add_option("sentence", o.sentence, "sentence to parse");

  auto* gen_cmd = app.add_subcommand("generate", "print every sentence realizing a QLF");
  gen_cmd->add_option("--lang", o.lang, "language")->required();
  gen_cmd->add_option("--qlf", o.qlf, "QLF term")->required();
  gen_cmd->add_option("--depth", o.depth, "derivation depth bound")->capture_default_str()->check(CLI::PositiveNumber);

  auto* tr_cmd = app.add_subcommand("translate", "translate sentences");
  tr_cmd->add_option("--from", o.from, "source language")->required();
  tr_cmd->add_option("--to", o.to, "target language")->required();
  tr_cmd->add_option("--n", o.n_best, "number of ranked translations")->capture_default_str()->check(CLI::PositiveNumber);
  tr_cmd->add_option("--input", o.input, "file with one sentence per line, or a corpus");
  tr_cmd->add_option("sentence", o.sentence, "sentence to translate");

  auto* comp_cmd = app.add_subcommand("compose", "compose two transfer rule sets through a shared language");
  comp_cmd->add_option("--pair", o.pairs, "L1-L2 then L2-L3")->required();
  comp_cmd->add_option("--blocks", o.blocks, "blocking declarations")->check(CLI::ExistingFile);
  comp_cmd->add_option("--out", o.out_path, "output directory");
  comp_cmd->add_option("--threads", o.threads, "worker threads (0 = all cores)");

  auto* port_cmd = app.add_subcommand("port", "port a lexicon to a closely related language");
  port_cmd->require_subcommand(1);
  auto* scaffold_cmd = port_cmd->add_subcommand("scaffold", "write blank word-to-word rules for a corpus");
  scaffold_cmd->add_option("--src", o.src, "source language")->required();
  scaffold_cmd->add_option("--corpus", o.corpus, "corpus file")->required()->check(CLI::ExistingFile);
  scaffold_cmd->add_option("--out", o.out_path, "output file (default stdout)");
  scaffold_cmd->add_option("--examples", o.examples, "example sentences per word")->capture_default_str();
  auto* induce_cmd = port_cmd->add_subcommand("induce", "build the target lexicon from filled rules and answers");
  induce_cmd->add_option("--src", o.src, "source language")->required();
  induce_cmd->add_option("--tgt", o.tgt, "target language")->required();
  induce_cmd->add_option("--ww", o.ww, "filled word-to-word rules")->required()->check(CLI::ExistingFile);
  induce_cmd->add_option("--answers", o.answers, "answer files, one per round")->check(CLI::ExistingFile);
  induce_cmd->add_option("--rounds", o.rounds, "maximum rounds (default: one per answer file)");
  induce_cmd->add_option("--out", o.out_path, "output directory");

  auto* eval_cmd = app.add_subcommand("eval", "evaluation");
  eval_cmd->require_subcommand(1);
  auto* run_cmd = eval_cmd->add_subcommand("run", "translate a corpus and report weighted coverage");
  run_cmd->add_option("--from", o.from, "source language")->required();
  run_cmd->add_option("--to", o.to, "target language")->required();
  run_cmd->add_option("--corpus", o.corpus, "corpus of entry(Id, Count, Sentence) clauses")
      ->required()
      ->check(CLI::ExistingFile);
  run_cmd->add_option("--out", o.out_path, "report file (default stdout)");
  auto* table_cmd = eval_cmd->add_subcommand("table", "tabulate judged translations by category");
  table_cmd->add_option("--judgments", o.judgments, "judge(Id, Label) clauses")->required()->check(CLI::ExistingFile);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
    if ((parse_cmd->parsed() || tr_cmd->parsed()) && o.input.empty() && o.sentence.empty())
      throw CLI::ValidationError("sentence", "give a sentence or --input");
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (parse_cmd->parsed()) return cmd_parse(o, out);
    if (gen_cmd->parsed()) return cmd_generate(o, out);
    if (tr_cmd->parsed()) return cmd_translate(o, out);
    if (comp_cmd->parsed()) return cmd_compose(o, out);
    if (scaffold_cmd->parsed()) return cmd_scaffold(o, out);
    if (induce_cmd->parsed()) return cmd_induce(o, out);
    if (run_cmd->parsed()) return cmd_eval_run(o, out);
    if (table_cmd->parsed()) return cmd_eval_table(o, out);
  } catch (const CLI::ValidationError& e) {
    err << "mtkit: " << e.what() << "\n";
    return 2;
  } catch (const SyntaxError& e) {
    err << "mtkit: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "mtkit: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace mtkit
