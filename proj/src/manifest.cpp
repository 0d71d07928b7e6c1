#include "mtkit/manifest.hpp"

#include <fstream>
#include <sstream>

namespace mtkit {

namespace {

Manifest::Files files_of(const Term& list, const std::filesystem::path& base, const std::string& where) {
  auto items = list_items(list);
  if (!items) throw LoadError(where + ": expected a list of key=Path entries");
  Manifest::Files out;
  for (const auto& kv : *items) {
    if (!kv.is("=", 2) || !kv.arg(0).is_atom())
      throw LoadError(where + ": expected key=Path, got " + print_term(kv));
    auto& paths = out[kv.arg(0).name()];
    std::vector<Term> values;
    if (auto l = list_items(kv.arg(1)))
      values = *l;
    else
      values.push_back(kv.arg(1));
    for (const auto& v : values) {
      if (!v.is_atom()) throw LoadError(where + ": path must be text, got " + print_term(v));
      std::filesystem::path p(v.name());
      paths.push_back(p.is_absolute() ? p : base / p);
    }
  }
  return out;
}

}  // namespace

Manifest Manifest::from_text(std::string_view text, const std::filesystem::path& base_dir) {
  Manifest m;
  m.base_dir_ = base_dir;
  for (const auto& c : parse_clauses(text)) {
    const std::string where = "manifest line " + std::to_string(c.line);
    const Term& t = c.term;
    if (t.is("language", 2) && t.arg(0).is_atom()) {
      m.languages_[t.arg(0).name()] = files_of(t.arg(1), base_dir, where);
    } else if (t.is("pair", 3) && t.arg(0).is_atom() && t.arg(1).is_atom()) {
      m.pairs_[{t.arg(0).name(), t.arg(1).name()}] = files_of(t.arg(2), base_dir, where);
    } else {
      throw LoadError(where + ": unknown manifest clause " + print_term(t));
    }
  }
  return m;
}

Manifest Manifest::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open manifest " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return from_text(buf.str(), path.parent_path());
  } catch (const SyntaxError& e) {
    throw LoadError(path.string() + ": " + e.what());
  }
}

const Manifest::Files& Manifest::language(const std::string& lang) const {
  auto it = languages_.find(lang);
  if (it == languages_.end()) throw LoadError("manifest has no entry language(" + lang + ", ...)");
  return it->second;
}

const Manifest::Files& Manifest::pair(const std::string& src, const std::string& tgt) const {
  auto it = pairs_.find({src, tgt});
  if (it == pairs_.end()) throw LoadError("manifest has no entry pair(" + src + ", " + tgt + ", ...)");
  return it->second;
}

std::vector<std::string> Manifest::language_names() const {
  std::vector<std::string> out;
  for (const auto& [name, files] : languages_) out.push_back(name);
  return out;
}

std::vector<std::filesystem::path> Manifest::language_files(const std::string& lang) const {
  std::vector<std::filesystem::path> out;
  for (const auto& [key, paths] : language(lang)) out.insert(out.end(), paths.begin(), paths.end());
  return out;
}

std::vector<std::filesystem::path> Manifest::pair_files(const std::string& src, const std::string& tgt,
                                                        const std::string& key) const {
  const auto& files = pair(src, tgt);
  auto it = files.find(key);
  return it == files.end() ? std::vector<std::filesystem::path>{} : it->second;
}

LanguageDescription load_language(const Manifest& manifest, const std::string& lang) {
  ResourceSet res;
  for (const auto& f : manifest.language_files(lang)) res.add_file(f);
  return build_language(res, lang);
}

LanguageDescription load_language_skeleton(const Manifest& manifest, const std::string& lang) {
  ResourceSet res;
  const auto& files = manifest.language(lang);
  for (const char* key : {"tags", "grammar", "morph"})
    if (auto it = files.find(key); it != files.end())
      for (const auto& f : it->second) res.add_file(f);
  return build_language(res, lang);
}

ResourceSet load_pair_resources(const Manifest& manifest, const std::string& src, const std::string& tgt) {
  ResourceSet res;
  for (const auto& [key, paths] : manifest.pair(src, tgt))
    for (const auto& p : paths) res.add_file(p);
  return res;
}

}  // namespace mtkit
