#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "mtkit/syntax.hpp"
#include "mtkit/term.hpp"

namespace mtkit {

/// Raised when resources are missing, malformed, or inconsistent.
class LoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Grammar rule; `languages` empty means the rule applies to all languages.
struct GrammarRule {
  Term id;
  std::vector<std::string> languages;
  Term mother;
  std::vector<Term> daughters;

  bool applies_to(const std::string& lang) const;
};

struct LangMacro {
  std::string name;
  std::map<std::string, Term> expansions;  // language -> expansion
};

struct FunctionWordEntry {
  std::string lang;
  std::string surface;
  Term category;
};

/// Content-word template set. Templates are `word(SurfaceSpec, Category)`
/// terms using `$surface(Slot)`, `$sense`, `$sense(Args...)` and
/// `$feature(Name)` placeholders.
struct ParadigmMacro {
  std::string name;
  std::vector<std::string> languages;
  std::vector<Term> templates;
};

struct LexEntry {
  std::string lang;
  std::string macro;
  std::string surface;
  std::string sense;
  std::string infl_class;  // paradigm name, or "regular" for uninflected

  friend auto operator<=>(const LexEntry&, const LexEntry&) = default;
};

/// One slot of an inflection paradigm.
struct SlotSpec {
  enum class Kind { Suffix, Irregular, Feature };
  Kind kind = Kind::Suffix;
  int drop = 0;         // characters removed from the root end
  std::string suffix;   // appended after dropping
  std::string feature;  // Kind::Feature value

  friend bool operator==(const SlotSpec&, const SlotSpec&) = default;
};

struct InflParadigm {
  std::string name;
  std::string lang;
  std::map<std::string, SlotSpec> slots;

  bool has_irregular_slots() const;
  std::vector<std::string> irregular_slots() const;
};

/// Irregular surface forms keyed by (language, sense, slot).
using IrregularTable = std::map<std::tuple<std::string, std::string, std::string>, std::string>;

struct TransferRule {
  Term id;
  Term lhs;
  Term rhs;
};

struct WWRule {
  std::string surface;
  std::string tag;
  std::vector<std::string> targets;
};

class PrefModel {
 public:
  void set(const Term& rule_id, double weight);
  /// Unlisted rules weigh 0.
  double weight(const Term& rule_id) const;
  const std::map<std::string, double>& weights() const { return weights_; }
  bool empty() const { return weights_.empty(); }

 private:
  std::map<std::string, double> weights_;  // keyed by printed rule id
};

struct BlockDecl {
  enum class Kind { Id, Pair };
  Kind kind = Kind::Id;
  Term id;
  std::string lhs_head;
  std::string rhs_head;
};

/// Every clause type a resource file may contain, in file order.
struct ResourceSet {
  std::vector<GrammarRule> rules;
  std::vector<LangMacro> macros;
  std::vector<FunctionWordEntry> function_words;
  std::vector<ParadigmMacro> paradigm_macros;
  std::vector<LexEntry> lex_entries;
  std::vector<InflParadigm> paradigms;
  IrregularTable irregulars;
  std::vector<TransferRule> transfer_rules;
  std::vector<WWRule> ww_rules;
  PrefModel prefs;
  std::vector<BlockDecl> blocks;
  std::map<std::string, Term> start;                  // language -> start category
  std::map<std::string, std::set<std::string>> wwtags;  // tag -> macro names / fw functors
  std::map<std::string, std::vector<std::string>> categories;  // documentation only

  /// Appends the clauses of `clauses`; `origin` names the file for errors.
  void add_clauses(const std::vector<Clause>& clauses, const std::string& origin);
  void add_file(const std::filesystem::path& path);
};

/// Fully expanded lexical item usable by the parser and generator.
struct LexicalItem {
  std::string surface;
  Term category;
  std::string sense;  // empty for function words
  std::string lemma;  // citation form of the originating entry
  std::string tag;    // WW category tag (macro or functor name when undeclared)
};

/// One language's grammar and lexicon, macro-expanded.
struct LanguageDescription {
  std::string lang;
  Term start;
  std::vector<GrammarRule> rules;
  std::vector<FunctionWordEntry> function_words;
  std::vector<ParadigmMacro> paradigm_macros;
  std::vector<LexEntry> lex_entries;
  std::vector<InflParadigm> paradigms;
  IrregularTable irregulars;
  std::map<std::string, std::set<std::string>> wwtags;
  std::vector<LexicalItem> lexicon;

  const ParadigmMacro* find_macro(const std::string& name) const;
  const InflParadigm* find_paradigm(const std::string& name) const;
  /// Coarse WW category tag for a macro name or function-word functor.
  std::optional<std::string> tag_of(const std::string& macro_or_functor) const;
  std::set<std::string> tags() const;
};

/// Semantics is carried by the last argument of every category term.
const Term& semantics_of(const Term& category);

/// Constants of rules and function words that can reach a semantics
/// argument, either directly or through shared variables.
std::set<std::string> grammar_constants(const LanguageDescription& d);

/// Builds a language description from resources: filters rules by
/// language, expands `$macro(Name)` nodes and content-word entries.
LanguageDescription build_language(const ResourceSet& resources, const std::string& lang);

std::string inflect(const std::string& root, const InflParadigm* paradigm, const std::string& slot,
                    const std::string& sense, const IrregularTable& irregulars, const std::string& lang);

/// Expands a content-word entry into `word(Surface, Category)` terms.
std::vector<Term> expand_lex_entry(const LexEntry& e, const std::vector<ParadigmMacro>& macros,
                                   const std::vector<InflParadigm>& paradigms, const IrregularTable& irregulars);

struct Diagnostic {
  Term rule_id;
  std::string message;
};

std::vector<Diagnostic> validate_rulesets(const std::vector<TransferRule>& rules);

/// Fixed-point rendering that reads back as a weight (`2.0`, `-0.25`).
std::string format_weight(double w);

/// `trule(Id, Lhs, Rhs).` rendering with canonical variable names.
std::string print_transfer_rule(const TransferRule& r);

}  // namespace mtkit
