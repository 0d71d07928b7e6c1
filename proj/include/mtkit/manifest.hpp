#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mtkit/lingdata.hpp"

namespace mtkit {

/// Resource manifest: `language(Lang, [key=Path, ...]).` and
/// `pair(Src, Tgt, [key=Path, ...]).` clauses. Paths are relative to the
/// manifest's directory; a key may repeat or take a list of paths.
class Manifest {
 public:
  using Files = std::map<std::string, std::vector<std::filesystem::path>>;

  static Manifest load(const std::filesystem::path& path);
  static Manifest from_text(std::string_view text, const std::filesystem::path& base_dir);

  const std::filesystem::path& base_dir() const { return base_dir_; }
  bool has_language(const std::string& lang) const { return languages_.count(lang) != 0; }
  bool has_pair(const std::string& src, const std::string& tgt) const { return pairs_.count({src, tgt}) != 0; }

  /// Throws LoadError naming the missing entry.
  const Files& language(const std::string& lang) const;
  const Files& pair(const std::string& src, const std::string& tgt) const;
  std::vector<std::string> language_names() const;

  /// Every file of a language entry, in key order then listing order.
  std::vector<std::filesystem::path> language_files(const std::string& lang) const;
  /// Files under one key of a pair entry (empty when the key is absent).
  std::vector<std::filesystem::path> pair_files(const std::string& src, const std::string& tgt,
                                                const std::string& key) const;

  void set_language(const std::string& lang, Files files) { languages_[lang] = std::move(files); }
  void set_pair(const std::string& src, const std::string& tgt, Files files) { pairs_[{src, tgt}] = std::move(files); }

 private:
  std::filesystem::path base_dir_;
  std::map<std::string, Files> languages_;
  std::map<std::pair<std::string, std::string>, Files> pairs_;
};

LanguageDescription load_language(const Manifest& manifest, const std::string& lang);

/// Tags, grammar and morphology only; for a porting target that has no
/// lexicon yet.
LanguageDescription load_language_skeleton(const Manifest& manifest, const std::string& lang);

/// Loads every file of the pair entry (trules, prefs, ww, blocks, ...).
ResourceSet load_pair_resources(const Manifest& manifest, const std::string& src, const std::string& tgt);

}  // namespace mtkit
