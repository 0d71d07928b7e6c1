#include "mtkit/porter.hpp"

#include <algorithm>
#include <map>

#include "mtkit/parser.hpp"

namespace mtkit {

namespace {

std::optional<std::string> answer_text(const Term& t, const std::string& where, const char* what) {
  if (t.is_atom() && t.name() == "?") return std::nullopt;
  if (t.is_atom()) return t.name();
  throw LoadError(where + ": " + what + " must be an atom or '?', got " + print_term(t));
}

std::string quoted(const std::string& s) { return quote_atom(s); }

}  // namespace

Scaffold scaffold_ww(const std::vector<std::string>& corpus, const LanguageDescription& source,
                     std::size_t max_examples) {
  std::map<std::pair<std::string, std::string>, std::vector<std::string>> found;
  std::set<std::string> unknown;
  for (const auto& sentence : corpus) {
    std::set<std::pair<std::string, std::string>> in_sentence;
    for (const auto& tok : tokenize(sentence)) {
      bool known = false;
      for (const auto& item : source.lexicon) {
        if (item.surface != tok) continue;
        known = true;
        in_sentence.insert({item.lemma, item.tag});
      }
      if (!known) unknown.insert(tok);
    }
    for (const auto& key : in_sentence) {
      auto& ex = found[key];
      if (ex.size() < max_examples) ex.push_back(sentence);
    }
  }
  Scaffold out;
  for (auto& [key, ex] : found) out.templates.push_back({key.first, key.second, std::move(ex)});
  out.unknown_words.assign(unknown.begin(), unknown.end());
  return out;
}

std::string format_scaffold(const Scaffold& s, const std::string& source_lang) {
  if (s.templates.empty() && s.unknown_words.empty()) return {};
  std::string out = "% Word-to-word rule templates for " + source_lang + "; fill in the target list.\n";
  for (const auto& t : s.templates) {
    out += "\n";
    for (const auto& ex : t.examples) out += "% " + ex + "\n";
    out += "ww(" + quoted(t.surface) + ", " + quoted(t.tag) + ", []).\n";
  }
  if (!s.unknown_words.empty()) {
    out += "\n% Not in the " + source_lang + " lexicon:\n";
    for (const auto& w : s.unknown_words) out += "%   " + w + "\n";
  }
  return out;
}

std::vector<Answer> parse_answers(const std::vector<Clause>& clauses, const std::string& origin) {
  std::vector<Answer> out;
  for (const auto& c : clauses) {
    const std::string where = origin + ":" + std::to_string(c.line);
    const Term& t = c.term;
    if (!t.is("answer", 5)) throw LoadError(where + ": expected answer(Surface, Tag, Root, Paradigm, Forms)");
    Answer a;
    a.origin = where;
    auto surface = answer_text(t.arg(0), where, "surface");
    auto tag = answer_text(t.arg(1), where, "tag");
    if (!surface || !tag) throw LoadError(where + ": surface and tag must be given");
    a.surface = *surface;
    a.tag = *tag;
    a.root = answer_text(t.arg(2), where, "root");
    a.paradigm = answer_text(t.arg(3), where, "paradigm");
    auto forms = list_items(t.arg(4));
    if (!forms) throw LoadError(where + ": irregular forms must be a list of Slot=Form");
    for (const auto& f : *forms) {
      if (!f.is("=", 2) || !f.arg(0).is_atom()) throw LoadError(where + ": expected Slot=Form, got " + print_term(f));
      auto form = answer_text(f.arg(1), where, "form");
      if (form)
        a.forms.emplace_back(f.arg(0).name(), *form);
      else
        a.blank_slots.push_back(f.arg(0).name());
    }
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<Answer> read_answers(const std::filesystem::path& path) {
  try {
    return parse_answers(read_clause_file(path), path.string());
  } catch (const SyntaxError& e) {
    throw LoadError(e.what());
  }
}

std::string ported_sense(const std::string& source_sense, const std::string& target_lang, std::size_t k) {
  std::string s = source_sense + "_" + target_lang;
  if (k > 1) s += "_" + std::to_string(k);
  return s;
}

PortResult induce_lexicon(const PortInputs& in) {
  if (!in.source) throw std::invalid_argument("induce_lexicon: no source language");
  const LanguageDescription& src = *in.source;
  PortResult out;

  std::map<std::pair<std::string, std::string>, const Answer*> answers;
  for (const auto& a : in.answers) answers[{a.surface, a.tag}] = &a;
  auto find_paradigm = [&](const std::string& name) -> const InflParadigm* {
    for (const auto& p : in.target_paradigms)
      if (p.name == name && p.lang == in.target_lang) return &p;
    return nullptr;
  };
  for (const auto& a : in.answers) {
    if (!a.paradigm || *a.paradigm == "regular") continue;
    const InflParadigm* p = find_paradigm(*a.paradigm);
    if (!p) throw LoadError(a.origin + ": unknown " + in.target_lang + " paradigm '" + *a.paradigm + "'");
    for (const auto& [slot, form] : a.forms)
      if (!p->slots.count(slot))
        throw LoadError(a.origin + ": paradigm '" + *a.paradigm + "' has no slot '" + slot + "'");
  }

  auto targets_for = [&](const std::string& surface, const std::string& tag) {
    std::vector<std::string> alts;
    for (const auto& w : in.ww)
      if (w.surface == surface && w.tag == tag)
        for (const auto& t : w.targets)
          if (std::find(alts.begin(), alts.end(), t) == alts.end()) alts.push_back(t);
    return alts;
  };

  std::set<std::pair<std::string, std::string>> requested;
  std::set<std::string> fw_seen;
  for (const auto& fw : src.function_words) {
    const std::string functor = fw.category.name();
    const std::string tag = src.tag_of(functor).value_or(functor);
    auto alts = targets_for(fw.surface, tag);
    if (alts.empty()) {
      out.notes.push_back("function word '" + fw.surface + "' (" + tag + "): no WW targets");
      continue;
    }
    for (const auto& alt : alts) {
      FunctionWordEntry e{in.target_lang, alt, fw.category};
      std::string key = alt + "|" + print_term(canonical_vars(fw.category));
      if (fw_seen.insert(key).second) out.function_words.push_back(std::move(e));
    }
  }

  std::set<std::string> rule_seen;
  for (const auto& e : src.lex_entries) {
    const std::string tag = src.tag_of(e.macro).value_or(e.macro);
    auto alts = targets_for(e.surface, tag);
    if (alts.empty()) {
      out.notes.push_back("word '" + e.surface + "' (" + tag + "): no WW targets");
      continue;
    }
    for (std::size_t k = 1; k <= alts.size(); ++k) {
      const std::string& alt = alts[k - 1];
      const std::string sense = ported_sense(e.sense, in.target_lang, k);
      InfoRequest req{alt, tag, e.surface, e.sense, e.macro, std::nullopt, std::nullopt, {}};
      LexEntry entry{in.target_lang, e.macro, alt, sense, "regular"};
      bool ready = false;
      if (e.infl_class == "regular") {
        ready = true;
      } else if (auto it = answers.find({alt, tag}); it != answers.end()) {
        const Answer& a = *it->second;
        req.root = a.root;
        req.paradigm = a.paradigm;
        const InflParadigm* p = a.paradigm && *a.paradigm != "regular" ? find_paradigm(*a.paradigm) : nullptr;
        if (p) {
          for (const auto& slot : p->irregular_slots()) {
            bool given = std::any_of(a.forms.begin(), a.forms.end(), [&](const auto& f) { return f.first == slot; });
            if (!given) req.missing_slots.push_back(slot);
          }
        }
        if (a.root && a.paradigm && req.missing_slots.empty()) {
          ready = true;
          entry.surface = *a.root;
          entry.infl_class = *a.paradigm;
          for (const auto& [slot, form] : a.forms) out.irregulars[{in.target_lang, sense, slot}] = form;
        }
      }
      if (!ready) {
        if (requested.insert({alt, tag}).second) out.requests.push_back(std::move(req));
        continue;
      }
      out.lex_entries.push_back(entry);
      TransferRule r{Term::compound("port", {Term::atom(e.sense), Term::atom(sense)}), Term::atom(e.sense),
                     Term::atom(sense)};
      if (rule_seen.insert(print_term(r.id)).second) out.content_rules.push_back(std::move(r));
    }
  }

  for (const auto& c : in.interlingual)
    out.identity_rules.push_back({Term::compound("ident", {Term::atom(c)}), Term::atom(c), Term::atom(c)});
  return out;
}

PortResult port_fixpoint(PortInputs in, const std::vector<std::vector<Answer>>& rounds, std::size_t max_rounds,
                         std::size_t* rounds_used) {
  PortResult r = induce_lexicon(in);
  std::size_t used = 0;
  while (!r.requests.empty() && used < rounds.size() && used < max_rounds) {
    in.answers.insert(in.answers.end(), rounds[used].begin(), rounds[used].end());
    ++used;
    r = induce_lexicon(in);
  }
  if (rounds_used) *rounds_used = used;
  return r;
}

std::string format_ported_lexicon(const PortResult& r, const std::string& source_lang, const std::string& target_lang) {
  std::string out = "% " + target_lang + " lexicon ported from " + source_lang + ".\n\n";
  for (const auto& fw : r.function_words)
    out += "fw(" + quoted(fw.lang) + ", " + quoted(fw.surface) + ", " + print_term(canonical_vars(fw.category)) +
           ").\n";
  if (!r.function_words.empty()) out += "\n";
  for (const auto& e : r.lex_entries)
    out += "lex(" + quoted(e.lang) + ", " + quoted(e.macro) + ", " + quoted(e.surface) + ", " + quoted(e.sense) +
           ", " + quoted(e.infl_class) + ").\n";
  if (!r.irregulars.empty()) out += "\n";
  for (const auto& [key, form] : r.irregulars) {
    const auto& [lang, sense, slot] = key;
    out += "irregular(" + quoted(lang) + ", " + quoted(sense) + ", " + quoted(slot) + ", " + quoted(form) + ").\n";
  }
  return out;
}

std::string format_byproduct_rules(const PortResult& r) {
  std::string out;
  for (const auto& t : r.identity_rules) out += print_transfer_rule(t) + "\n";
  for (const auto& t : r.content_rules) out += print_transfer_rule(t) + "\n";
  return out;
}

std::string format_requests(const PortResult& r) {
  if (r.requests.empty()) return {};
  std::string out = "% Lexical information requests. Replace each '?' and feed this file back as answers.\n";
  for (const auto& q : r.requests) {
    out += "\n% " + q.source_surface + " (" + q.source_sense + ", " + q.macro + ")";
    if (!q.missing_slots.empty()) out += ": irregular forms needed";
    out += "\nanswer(" + quoted(q.surface) + ", " + quoted(q.tag) + ", " + quoted(q.root.value_or("?")) + ", " +
           quoted(q.paradigm.value_or("?")) + ", [";
    for (std::size_t i = 0; i < q.missing_slots.size(); ++i) {
      if (i) out += ", ";
      out += quoted(q.missing_slots[i]) + "='?'";
    }
    out += "]).\n";
  }
  return out;
}

}  // namespace mtkit
