#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mtkit/lingdata.hpp"
#include "mtkit/term.hpp"

namespace mtkit {

struct WWPatch {
  std::string source_surface;
  std::string target_surface;
  std::string tag;

  friend auto operator<=>(const WWPatch&, const WWPatch&) = default;
};

struct TransferResult {
  Term target;
  double score = 0;
  std::vector<Term> trace;        // rule ids, pre-order
  std::vector<std::string> gaps;  // untranslated source constants, in order of occurrence
  std::vector<WWPatch> patches;

  bool complete() const { return gaps.empty(); }
};

/// Everything one transfer direction needs. `source` and `target` are
/// only consulted for word-to-word patching and may be null.
struct TransferResources {
  std::vector<TransferRule> rules;
  PrefModel prefs;
  std::vector<WWRule> ww;
  std::set<std::string> interlingual;
  const LanguageDescription* source = nullptr;
  const LanguageDescription* target = nullptr;
};

/// Constants both grammars use for semantic glue; they transfer as
/// themselves when no rule covers them.
std::set<std::string> interlingual_constants(const LanguageDescription& a, const LanguageDescription& b);

/// Ranked candidates for `qlf`; at most `limit` when `limit` > 0.
std::vector<TransferResult> transfer(const Term& qlf, const TransferResources& res, std::size_t limit = 0);

/// Rescores from `prefs` (sum of trace weights) and sorts by score
/// descending, then trace ascending.
std::vector<TransferResult> rank(std::vector<TransferResult> candidates, const PrefModel& prefs);

std::string print_trace(const std::vector<Term>& trace);

}  // namespace mtkit
