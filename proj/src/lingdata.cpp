#include "mtkit/lingdata.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <tuple>

#include <fmt/format.h>

namespace mtkit {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& msg) { throw LoadError(where + ": " + msg); }

std::string text_of(const Term& t, const std::string& where, const char* what) {
  if (t.is_atom()) return t.name();
  if (t.is_int()) return std::to_string(t.value());
  fail(where, std::string(what) + " must be an atom, got " + print_term(t));
}

std::vector<Term> list_of(const Term& t, const std::string& where, const char* what) {
  auto items = list_items(t);
  if (!items) fail(where, std::string(what) + " must be a list, got " + print_term(t));
  return *items;
}

std::vector<std::string> languages_of(const Term& t, const std::string& where) {
  if (t.is_atom() && t.name() == "all") return {};
  if (t.is_atom()) return {t.name()};
  std::vector<std::string> out;
  for (const auto& l : list_of(t, where, "language set")) out.push_back(text_of(l, where, "language"));
  if (out.empty()) fail(where, "empty language set (use 'all')");
  return out;
}

double weight_of(const Term& t, const std::string& where) {
  double w = 0;
  if (t.is_int()) {
    w = static_cast<double>(t.value());
  } else if (t.is_atom()) {
    try {
      std::size_t used = 0;
      w = std::stod(t.name(), &used);
      if (used != t.name().size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      fail(where, "weight must be a number, got " + print_term(t));
    }
  } else if (t.is("-", 1)) {
    w = -weight_of(t.arg(0), where);
  } else {
    fail(where, "weight must be a number, got " + print_term(t));
  }
  if (!std::isfinite(w)) fail(where, "weight must be finite");
  return w;
}

SlotSpec slot_spec_of(const Term& t, const std::string& where) {
  SlotSpec s;
  if (t.is("irregular", 0)) {
    s.kind = SlotSpec::Kind::Irregular;
    return s;
  }
  if (t.is("feature", 1)) {
    s.kind = SlotSpec::Kind::Feature;
    s.feature = text_of(t.arg(0), where, "feature value");
    return s;
  }
  Term base = t;
  if (t.is("+", 2)) {
    s.suffix = text_of(t.arg(1), where, "suffix");
    base = t.arg(0);
  }
  if (base.is("keep", 0)) return s;
  if (base.is("drop", 1) && base.arg(0).is_int() && base.arg(0).value() >= 0) {
    s.drop = static_cast<int>(base.arg(0).value());
    return s;
  }
  fail(where, "bad slot spec " + print_term(t) + " (expected keep+\"sfx\", drop(N)+\"sfx\", irregular or feature(V))");
}

// Number of bytes occupied by the last `n` UTF-8 code points of `s`, or
// npos if `s` has fewer than `n` code points.
std::size_t tail_bytes(const std::string& s, int n) {
  std::size_t pos = s.size();
  for (int i = 0; i < n; ++i) {
    if (pos == 0) return std::string::npos;
    --pos;
    while (pos > 0 && (static_cast<unsigned char>(s[pos]) & 0xC0) == 0x80) --pos;
  }
  return s.size() - pos;
}

Term expand_macros(const Term& t, const std::map<std::string, const LangMacro*>& macros, const std::string& lang,
                   const std::string& rule_name, int depth = 0) {
  if (t.is("$macro", 1)) {
    if (depth > 16) throw LoadError("macro expansion too deep in rule " + rule_name);
    const std::string name = t.arg(0).is_atom() ? t.arg(0).name() : print_term(t.arg(0));
    auto it = macros.find(name);
    if (it == macros.end()) throw LoadError("unknown macro '" + name + "' in rule " + rule_name);
    auto exp = it->second->expansions.find(lang);
    if (exp == it->second->expansions.end())
      throw LoadError("macro '" + name + "' has no expansion for language '" + lang + "' (rule " + rule_name + ")");
    return expand_macros(exp->second, macros, lang, rule_name, depth + 1);
  }
  if (!t.is_compound()) return t;
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const auto& a : t.args()) args.push_back(expand_macros(a, macros, lang, rule_name, depth));
  return Term::compound(t.name(), std::move(args));
}

}  // namespace

bool GrammarRule::applies_to(const std::string& lang) const {
  if (languages.empty()) return true;
  for (const auto& l : languages)
    if (l == lang) return true;
  return false;
}

bool InflParadigm::has_irregular_slots() const { return !irregular_slots().empty(); }

std::vector<std::string> InflParadigm::irregular_slots() const {
  std::vector<std::string> out;
  for (const auto& [name, spec] : slots)
    if (spec.kind == SlotSpec::Kind::Irregular) out.push_back(name);
  return out;
}

void PrefModel::set(const Term& rule_id, double weight) { weights_[print_term(rule_id)] = weight; }

double PrefModel::weight(const Term& rule_id) const {
  auto it = weights_.find(print_term(rule_id));
  return it == weights_.end() ? 0.0 : it->second;
}

void ResourceSet::add_clauses(const std::vector<Clause>& clauses, const std::string& origin) {
  for (const auto& c : clauses) {
    const Term& t = c.term;
    const std::string where = origin + ":" + std::to_string(c.line);
    if (t.is("rule", 4)) {
      GrammarRule r;
      r.id = t.arg(0);
      r.languages = languages_of(t.arg(1), where);
      r.mother = t.arg(2);
      r.daughters = list_of(t.arg(3), where, "daughters");
      if (r.daughters.empty()) fail(where, "rule " + print_term(r.id) + " has no daughters");
      if (!r.mother.is_compound()) fail(where, "rule " + print_term(r.id) + " mother needs a semantics argument");
      rules.push_back(std::move(r));
    } else if (t.is("macro", 3)) {
      const std::string name = text_of(t.arg(0), where, "macro name");
      auto it = std::find_if(macros.begin(), macros.end(), [&](const LangMacro& m) { return m.name == name; });
      if (it == macros.end()) {
        macros.push_back({name, {}});
        it = std::prev(macros.end());
      }
      for (const auto& lang : languages_of(t.arg(1), where)) {
        if (!it->expansions.emplace(lang, t.arg(2)).second)
          fail(where, "duplicate expansion of macro '" + name + "' for " + lang);
      }
    } else if (t.is("fw", 3)) {
      FunctionWordEntry e{text_of(t.arg(0), where, "language"), text_of(t.arg(1), where, "surface"), t.arg(2)};
      if (e.surface.empty()) fail(where, "empty surface form");
      if (!e.category.is_compound()) fail(where, "function word category needs a semantics argument");
      function_words.push_back(std::move(e));
    } else if (t.is("lexmacro", 3)) {
      ParadigmMacro m{text_of(t.arg(0), where, "macro name"), languages_of(t.arg(1), where),
                      list_of(t.arg(2), where, "templates")};
      for (const auto& tpl : m.templates)
        if (!tpl.is("word", 2)) fail(where, "template must be word(Surface, Category), got " + print_term(tpl));
      paradigm_macros.push_back(std::move(m));
    } else if (t.is("lex", 5)) {
      LexEntry e{text_of(t.arg(0), where, "language"), text_of(t.arg(1), where, "macro"),
                 text_of(t.arg(2), where, "surface"), text_of(t.arg(3), where, "sense"),
                 text_of(t.arg(4), where, "inflection class")};
      if (e.surface.empty()) fail(where, "empty surface form");
      lex_entries.push_back(std::move(e));
    } else if (t.is("paradigm", 3)) {
      InflParadigm p{text_of(t.arg(0), where, "paradigm name"), text_of(t.arg(1), where, "language"), {}};
      for (const auto& s : list_of(t.arg(2), where, "slots")) {
        if (!s.is("=", 2)) fail(where, "slot must be Slot=Spec, got " + print_term(s));
        if (!p.slots.emplace(text_of(s.arg(0), where, "slot"), slot_spec_of(s.arg(1), where)).second)
          fail(where, "duplicate slot " + print_term(s.arg(0)));
      }
      paradigms.push_back(std::move(p));
    } else if (t.is("irregular", 4)) {
      irregulars[{text_of(t.arg(0), where, "language"), text_of(t.arg(1), where, "sense"),
                  text_of(t.arg(2), where, "slot")}] = text_of(t.arg(3), where, "form");
    } else if (t.is("trule", 3)) {
      transfer_rules.push_back({t.arg(0), t.arg(1), t.arg(2)});
    } else if (t.is("ww", 3)) {
      WWRule w{text_of(t.arg(0), where, "surface"), text_of(t.arg(1), where, "category tag"), {}};
      if (w.surface.empty()) fail(where, "empty WW source surface");
      for (const auto& x : list_of(t.arg(2), where, "targets")) w.targets.push_back(text_of(x, where, "target"));
      ww_rules.push_back(std::move(w));
    } else if (t.is("pref", 2)) {
      prefs.set(t.arg(0), weight_of(t.arg(1), where));
    } else if (t.is("block_id", 1)) {
      blocks.push_back({BlockDecl::Kind::Id, t.arg(0), {}, {}});
    } else if (t.is("block_pair", 2)) {
      blocks.push_back(
          {BlockDecl::Kind::Pair, Term(), text_of(t.arg(0), where, "head"), text_of(t.arg(1), where, "head")});
    } else if (t.is("start", 1)) {
      start["*"] = t.arg(0);
    } else if (t.is("start", 2)) {
      for (const auto& l : languages_of(t.arg(0), where)) start[l] = t.arg(1);
      if (t.arg(0).is("all", 0)) start["*"] = t.arg(1);
    } else if (t.is("wwtag", 2)) {
      auto& names = wwtags[text_of(t.arg(0), where, "tag")];
      for (const auto& n : list_of(t.arg(1), where, "names")) names.insert(text_of(n, where, "name"));
    } else if (t.is("category", 2)) {
      auto& feats = categories[text_of(t.arg(0), where, "category")];
      for (const auto& f : list_of(t.arg(1), where, "features")) feats.push_back(text_of(f, where, "feature"));
    } else {
      fail(where, "unknown directive " + print_term(t));
    }
  }
}

void ResourceSet::add_file(const std::filesystem::path& path) {
  try {
    add_clauses(read_clause_file(path), path.string());
  } catch (const SyntaxError& e) {
    throw LoadError(e.what());
  } catch (const LoadError&) {
    throw;
  } catch (const std::runtime_error& e) {
    throw LoadError(e.what());
  }
}

const ParadigmMacro* LanguageDescription::find_macro(const std::string& name) const {
  for (const auto& m : paradigm_macros)
    if (m.name == name) return &m;
  return nullptr;
}

const InflParadigm* LanguageDescription::find_paradigm(const std::string& name) const {
  for (const auto& p : paradigms)
    if (p.name == name) return &p;
  return nullptr;
}

std::optional<std::string> LanguageDescription::tag_of(const std::string& name) const {
  for (const auto& [tag, names] : wwtags)
    if (names.count(name)) return tag;
  return std::nullopt;
}

std::set<std::string> LanguageDescription::tags() const {
  std::set<std::string> out;
  for (const auto& [tag, names] : wwtags) out.insert(tag);
  return out;
}

const Term& semantics_of(const Term& category) {
  if (!category.is_compound()) throw std::invalid_argument("category has no semantics argument: " + print_term(category));
  return category.arg(category.arity() - 1);
}

namespace {

using Slot = std::pair<std::string, std::size_t>;  // functor/arity, argument index

std::string slot_key(const Term& t) { return t.name() + "/" + std::to_string(t.arity()); }

// Marks as linked every direct-argument slot holding a variable that occurs
// inside an already linked slot of the same clause. Returns true on change.
bool spread_links(const std::vector<Term>& clause, std::set<Slot>& linked) {
  std::set<std::string> vars;
  for (const auto& t : clause) {
    if (!t.is_compound()) continue;
    for (std::size_t i = 0; i < t.arity(); ++i)
      if (linked.count({slot_key(t), i}))
        for (auto& v : variables(t.arg(i))) vars.insert(v);
  }
  bool changed = false;
  for (const auto& t : clause) {
    if (!t.is_compound()) continue;
    for (std::size_t i = 0; i < t.arity(); ++i)
      if (t.arg(i).is_var() && vars.count(t.arg(i).name())) changed |= linked.insert({slot_key(t), i}).second;
  }
  return changed;
}

}  // namespace

std::set<std::string> grammar_constants(const LanguageDescription& d) {
  // A slot is linked when its value can end up inside a semantics argument.
  // Semantics arguments are linked by definition; links then spread through
  // shared variables in rules and lexical categories until nothing changes.
  std::vector<std::vector<Term>> clauses;
  for (const auto& r : d.rules) {
    std::vector<Term> c{r.mother};
    c.insert(c.end(), r.daughters.begin(), r.daughters.end());
    clauses.push_back(std::move(c));
  }
  const std::size_t n_rules = clauses.size();
  for (const auto& fw : d.function_words) clauses.push_back({fw.category});
  for (const auto& item : d.lexicon) clauses.push_back({item.category});

  std::set<Slot> linked;
  for (const auto& c : clauses)
    for (const auto& t : c)
      if (t.is_compound()) linked.insert({slot_key(t), t.arity() - 1});
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& c : clauses) changed |= spread_links(c, linked);
  }

  // Content-word categories carry senses, not interlingua, so only rules and
  // function words contribute constants.
  std::set<std::string> out;
  const std::size_t n_collect = n_rules + d.function_words.size();
  for (std::size_t k = 0; k < n_collect; ++k)
    for (const auto& t : clauses[k]) {
      if (!t.is_compound()) continue;
      for (std::size_t i = 0; i < t.arity(); ++i)
        if (linked.count({slot_key(t), i})) collect_constants(t.arg(i), out);
    }
  out.erase(std::string(kNil));
  out.erase(std::string(kCons));
  return out;
}

std::string inflect(const std::string& root, const InflParadigm* paradigm, const std::string& slot,
                    const std::string& sense, const IrregularTable& irregulars, const std::string& lang) {
  if (auto it = irregulars.find({lang, sense, slot}); it != irregulars.end()) return it->second;
  if (!paradigm) return root;
  auto it = paradigm->slots.find(slot);
  if (it == paradigm->slots.end())
    throw LoadError("paradigm '" + paradigm->name + "' has no slot '" + slot + "' (sense " + sense + ")");
  const SlotSpec& spec = it->second;
  switch (spec.kind) {
    case SlotSpec::Kind::Irregular:
      throw LoadError("missing irregular form for sense " + sense + ", slot '" + slot + "' (paradigm " +
                      paradigm->name + ")");
    case SlotSpec::Kind::Feature:
      throw LoadError("slot '" + slot + "' of paradigm " + paradigm->name + " is a feature, not a surface form");
    case SlotSpec::Kind::Suffix:
      break;
  }
  std::size_t cut = tail_bytes(root, spec.drop);
  if (cut == std::string::npos)
    throw LoadError("drop(" + std::to_string(spec.drop) + ") exceeds root '" + root + "' (paradigm " +
                    paradigm->name + ", slot " + slot + ")");
  return root.substr(0, root.size() - cut) + spec.suffix;
}

std::vector<Term> expand_lex_entry(const LexEntry& e, const std::vector<ParadigmMacro>& macros,
                                   const std::vector<InflParadigm>& paradigms, const IrregularTable& irregulars) {
  const std::string where = "lex(" + e.lang + ", " + e.macro + ", " + e.surface + ", " + e.sense + ")";
  const ParadigmMacro* macro = nullptr;
  for (const auto& m : macros) {
    bool lang_ok = m.languages.empty();
    for (const auto& l : m.languages) lang_ok = lang_ok || l == e.lang;
    if (m.name == e.macro && lang_ok) macro = &m;
  }
  if (!macro) fail(where, "unknown paradigm macro '" + e.macro + "' for language " + e.lang);
  const InflParadigm* paradigm = nullptr;
  if (e.infl_class != "regular") {
    for (const auto& p : paradigms)
      if (p.name == e.infl_class && p.lang == e.lang) paradigm = &p;
    if (!paradigm) fail(where, "unknown inflection paradigm '" + e.infl_class + "' for language " + e.lang);
  }

  std::function<Term(const Term&)> fill = [&](const Term& t) -> Term {
    if (t.is("$sense", 0)) return Term::atom(e.sense);
    if (t.is("$surface", 1))
      return Term::atom(inflect(e.surface, paradigm, text_of(t.arg(0), where, "slot"), e.sense, irregulars, e.lang));
    if (t.is("$feature", 1)) {
      const std::string name = text_of(t.arg(0), where, "feature");
      if (!paradigm) fail(where, "feature '" + name + "' needs an inflection paradigm");
      auto it = paradigm->slots.find(name);
      if (it == paradigm->slots.end() || it->second.kind != SlotSpec::Kind::Feature)
        fail(where, "paradigm " + paradigm->name + " has no feature '" + name + "'");
      return Term::atom(it->second.feature);
    }
    if (!t.is_compound()) return t;
    std::vector<Term> args;
    for (const auto& a : t.args()) args.push_back(fill(a));
    if (t.name() == "$sense") return Term::compound(e.sense, std::move(args));
    return Term::compound(t.name(), std::move(args));
  };

  std::vector<Term> out;
  out.reserve(macro->templates.size());
  try {
    for (const auto& tpl : macro->templates) out.push_back(fill(tpl));
  } catch (const LoadError& err) {
    fail(where, err.what());
  }
  return out;
}

LanguageDescription build_language(const ResourceSet& res, const std::string& lang) {
  LanguageDescription d;
  d.lang = lang;

  std::set<std::string> ids;
  for (const auto& r : res.rules)
    if (!ids.insert(print_term(r.id)).second) throw LoadError("duplicate grammar rule id " + print_term(r.id));

  std::map<std::string, const LangMacro*> macros;
  for (const auto& m : res.macros) macros[m.name] = &m;

  for (const auto& r : res.rules) {
    if (!r.applies_to(lang)) continue;
    const std::string name = print_term(r.id);
    GrammarRule x{r.id, r.languages, expand_macros(r.mother, macros, lang, name), {}};
    for (const auto& dtr : r.daughters) x.daughters.push_back(expand_macros(dtr, macros, lang, name));
    std::set<std::string> dvars;
    for (const auto& dtr : x.daughters)
      for (auto& v : variables(dtr)) dvars.insert(v);
    for (auto& v : variables(semantics_of(x.mother)))
      if (!dvars.count(v)) throw LoadError("rule " + name + ": semantics variable " + v + " not bound by any daughter");
    d.rules.push_back(std::move(x));
  }

  if (auto it = res.start.find(lang); it != res.start.end())
    d.start = it->second;
  else if (auto all = res.start.find("*"); all != res.start.end())
    d.start = all->second;
  else
    throw LoadError("no start category declared for language '" + lang + "'");

  for (const auto& fw : res.function_words)
    if (fw.lang == lang) d.function_words.push_back(fw);
  for (const auto& m : res.paradigm_macros) {
    bool ok = m.languages.empty();
    for (const auto& l : m.languages) ok = ok || l == lang;
    if (ok) d.paradigm_macros.push_back(m);
  }
  for (const auto& p : res.paradigms)
    if (p.lang == lang) d.paradigms.push_back(p);
  for (const auto& [key, form] : res.irregulars)
    if (std::get<0>(key) == lang) d.irregulars.emplace(key, form);
  d.wwtags = res.wwtags;

  for (const auto& m : d.paradigm_macros) {
    std::function<void(const Term&)> check = [&](const Term& t) {
      if (t.is("$surface", 1)) {
        const std::string slot = t.arg(0).is_atom() ? t.arg(0).name() : print_term(t.arg(0));
        bool found = false;
        for (const auto& p : d.paradigms) found = found || p.slots.count(slot);
        if (!found)
          throw LoadError("paradigm macro " + m.name + " uses slot '" + slot + "' that no " + lang +
                          " paradigm provides");
        return;
      }
      for (const auto& a : t.args()) check(a);
    };
    for (const auto& tpl : m.templates) check(tpl);
  }

  for (const auto& fw : d.function_words) {
    const std::string functor = fw.category.name();
    d.lexicon.push_back({fw.surface, fw.category, {}, fw.surface, d.tag_of(functor).value_or(functor)});
  }
  for (const auto& e : res.lex_entries) {
    if (e.lang != lang) continue;
    d.lex_entries.push_back(e);
    for (const auto& w : expand_lex_entry(e, d.paradigm_macros, d.paradigms, d.irregulars)) {
      if (!w.arg(0).is_atom()) throw LoadError("expanded surface is not an atom: " + print_term(w));
      d.lexicon.push_back({w.arg(0).name(), w.arg(1), e.sense, e.surface, d.tag_of(e.macro).value_or(e.macro)});
    }
  }
  return d;
}

std::vector<Diagnostic> validate_rulesets(const std::vector<TransferRule>& rules) {
  std::vector<Diagnostic> out;
  std::set<std::string> seen;
  for (const auto& r : rules) {
    const std::string id = print_term(r.id);
    if (!seen.insert(id).second) out.push_back({r.id, "duplicate rule id " + id});
    std::set<std::string> lhs_vars;
    for (auto& v : variables(r.lhs)) lhs_vars.insert(v);
    std::set<std::string> reported;
    std::function<void(const Term&, bool)> scan = [&](const Term& t, bool in_marker) {
      if (t.is_var()) {
        if (!lhs_vars.count(t.name()) && reported.insert(t.name()).second)
          out.push_back({r.id, in_marker ? "tr-marker variable " + t.name() + " does not occur in lhs"
                                         : "rhs variable " + t.name() + " does not occur in lhs (range restriction)"});
        return;
      }
      if (t.is("tr", 1)) {
        if (!t.arg(0).is_var()) out.push_back({r.id, "tr-marker argument must be a variable: " + print_term(t)});
        scan(t.arg(0), true);
        return;
      }
      for (const auto& a : t.args()) scan(a, in_marker);
    };
    scan(r.rhs, false);
  }
  return out;
}

std::string format_weight(double w) {
  std::string s = fmt::format("{:.6f}", w);
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.push_back('0');
  if (s == "-0.0") s = "0.0";
  return s;
}

std::string print_transfer_rule(const TransferRule& r) {
  Term c = canonical_vars(Term::compound("trule", {r.id, r.lhs, r.rhs}));
  return print_term(c) + ".";
}

}  // namespace mtkit
