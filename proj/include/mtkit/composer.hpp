#pragma once

#include <string>
#include <variant>
#include <vector>

#include "mtkit/lingdata.hpp"
#include "mtkit/term.hpp"

namespace mtkit {

struct ComposedRule {
  TransferRule rule;  // id is c(LeftId, RightId)
  Term left_id;
  Term right_id;
};

enum class SkipReason { NoUnify, OpaqueIntermediate, RawIntermediateVariable, Blocked };

std::string to_string(SkipReason r);

struct SkipDiagnostic {
  Term left_id;
  Term right_id;
  SkipReason reason;
};

using ComposeOutcome = std::variant<ComposedRule, SkipDiagnostic>;

/// Composes one L1->L2 rule with one L2->L3 rule. Blocking is not
/// consulted here.
ComposeOutcome compose_pair(const TransferRule& left, const TransferRule& right);

struct CompositionResult {
  std::vector<ComposedRule> rules;  // ordered by (left index, right index)
  std::vector<SkipDiagnostic> skipped;
  std::size_t pairs_attempted = 0;
};

bool is_blocked(const ComposedRule& r, const std::vector<BlockDecl>& blocks);

/// Every pair, rows in parallel over `threads` workers (0 = hardware
/// concurrency); output is independent of the thread count.
CompositionResult compose_rulesets(const std::vector<TransferRule>& left, const std::vector<TransferRule>& right,
                                   const std::vector<BlockDecl>& blocks = {}, unsigned threads = 0);

/// Composed weight is the sum of the two component weights.
PrefModel compose_prefs(const PrefModel& left, const PrefModel& right, const std::vector<ComposedRule>& rules);

/// Output files: one clause per line, canonical variable names.
std::string format_composed_rules(const std::vector<ComposedRule>& rules);
std::string format_composed_prefs(const PrefModel& prefs, const std::vector<ComposedRule>& rules);
std::string format_diagnostics(const std::vector<SkipDiagnostic>& skipped);

}  // namespace mtkit
