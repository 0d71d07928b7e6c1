#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mtkit/evalkit.hpp"
#include "mtkit/lingdata.hpp"
#include "mtkit/manifest.hpp"
#include "mtkit/transfer.hpp"

namespace mtkit {

inline constexpr const char* kNoParse = "[no parse]";
inline constexpr const char* kNoGeneration = "[no generation]";

struct Realization {
  std::string sentence;
  std::size_t candidate = 0;  // index into SentenceTranslation::candidates
};

struct SentenceTranslation {
  std::vector<std::string> tokens;
  std::vector<Term> qlfs;
  std::vector<TransferResult> candidates;  // ranked, pooled over all parses
  std::vector<Realization> realizations;   // best first

  bool parsed() const { return !qlfs.empty(); }
  bool covered() const;        // some candidate has no gaps
  bool best_complete() const;  // the top-ranked candidate has no gaps
  /// Best realization, or the no-parse / no-generation marker.
  std::string output() const;
};

/// Parse, transfer, rank and generate for one language pair.
class Pipeline {
 public:
  Pipeline(LanguageDescription source, LanguageDescription target, TransferResources resources);

  /// Loads both languages and the pair's `trules`, `prefs` and `ww` files.
  static Pipeline from_manifest(const Manifest& manifest, const std::string& source, const std::string& target);

  SentenceTranslation translate(const std::string& sentence, std::size_t n_best = 1) const;

  const LanguageDescription& source() const { return *source_; }
  const LanguageDescription& target() const { return *target_; }
  const TransferResources& resources() const { return resources_; }

 private:
  std::shared_ptr<const LanguageDescription> source_;
  std::shared_ptr<const LanguageDescription> target_;
  TransferResources resources_;
};

/// Target lexical items standing in for untranslated source senses: the
/// source entry's paradigm macro instantiated with the surface `[gap: sense]`.
std::vector<LexicalItem> gap_items(const std::vector<std::string>& gaps, const LanguageDescription& source,
                                   const LanguageDescription& target);

struct SuiteRow {
  CorpusEntry entry;
  std::size_t parses = 0;
  bool covered = false;
  bool best_complete = false;
  std::string output;
};

struct SuiteReport {
  std::vector<SuiteRow> rows;
  Percent parsed;            // weighted share with at least one parse
  Percent covered;           // weighted share with a gap-free candidate
  Percent best_complete;     // weighted share whose top candidate is gap-free
  Percent realized;          // weighted share with generated output
};

SuiteReport run_suite(const Pipeline& pipeline, const std::vector<CorpusEntry>& corpus);
std::string format_suite_report(const SuiteReport& r);

}  // namespace mtkit
