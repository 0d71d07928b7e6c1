#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mtkit/lingdata.hpp"

namespace mtkit {

struct WWTemplate {
  std::string surface;  // citation form
  std::string tag;
  std::vector<std::string> examples;
};

struct Scaffold {
  std::vector<WWTemplate> templates;       // sorted by (surface, tag)
  std::vector<std::string> unknown_words;  // sorted, unique
};

/// One blank WW rule per distinct source word form in the corpus, with up
/// to `max_examples` corpus sentences in which it occurs.
Scaffold scaffold_ww(const std::vector<std::string>& corpus, const LanguageDescription& source,
                     std::size_t max_examples = 3);
std::string format_scaffold(const Scaffold& s, const std::string& source_lang);

/// Linguist-supplied lexical information for one target word:
/// `answer(Surface, Tag, Root, Paradigm, [Slot=Form, ...]).` with `'?'`
/// marking a blank.
struct Answer {
  std::string surface;
  std::string tag;
  std::optional<std::string> root;
  std::optional<std::string> paradigm;
  std::vector<std::pair<std::string, std::string>> forms;
  std::vector<std::string> blank_slots;
  std::string origin;  // file:line
};

std::vector<Answer> parse_answers(const std::vector<Clause>& clauses, const std::string& origin);
std::vector<Answer> read_answers(const std::filesystem::path& path);

struct InfoRequest {
  std::string surface;
  std::string tag;
  std::string source_surface;
  std::string source_sense;
  std::string macro;
  std::optional<std::string> root;
  std::optional<std::string> paradigm;
  std::vector<std::string> missing_slots;
};

struct PortInputs {
  const LanguageDescription* source = nullptr;
  std::string target_lang;
  std::vector<InflParadigm> target_paradigms;
  std::vector<WWRule> ww;
  std::vector<Answer> answers;  // later answers for the same (surface, tag) win
  std::set<std::string> interlingual;
};

struct PortResult {
  std::vector<FunctionWordEntry> function_words;
  std::vector<LexEntry> lex_entries;
  IrregularTable irregulars;
  std::vector<TransferRule> identity_rules;
  std::vector<TransferRule> content_rules;
  std::vector<InfoRequest> requests;
  std::vector<std::string> notes;  // source words left unported and why
};

/// Target sense for the k-th (1-based) WW alternative of a source sense.
std::string ported_sense(const std::string& source_sense, const std::string& target_lang, std::size_t k);

/// Target lexicon, byproduct transfer rules and outstanding requests.
/// Throws LoadError for answers that name unknown paradigms or slots.
PortResult induce_lexicon(const PortInputs& in);

/// Repeats induction, adding one answer batch per round, until no request
/// remains or the batches (or `max_rounds`) run out.
PortResult port_fixpoint(PortInputs in, const std::vector<std::vector<Answer>>& rounds, std::size_t max_rounds,
                         std::size_t* rounds_used = nullptr);

std::string format_ported_lexicon(const PortResult& r, const std::string& source_lang, const std::string& target_lang);
std::string format_byproduct_rules(const PortResult& r);
std::string format_requests(const PortResult& r);

}  // namespace mtkit
