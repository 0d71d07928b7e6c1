#pragma once

#include <string>
#include <vector>

#include "mtkit/lingdata.hpp"
#include "mtkit/term.hpp"

namespace mtkit {

/// Maximum derivation depth; a lexical leaf has depth 1.
inline constexpr int kDefaultDepthBound = 12;

/// Every sentence (tokens joined by single spaces) whose start-category
/// derivation has semantics unifying with `qlf` and depth within
/// `depth_bound`. Sorted and deduplicated. `extra` adds lexical items for
/// this call only.
std::vector<std::string> generate(const Term& qlf, const LanguageDescription& lang,
                                  int depth_bound = kDefaultDepthBound, const std::vector<LexicalItem>& extra = {});

}  // namespace mtkit
