#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "unidet/nba.hh"

namespace unidet {

/// Ultimately periodic word stem · cycle^ω over symbol ids of some alphabet.
struct Lasso {
  std::vector<SymbolId> stem;
  std::vector<SymbolId> cycle;  // non-empty

  /// Symbol at word position t.
  SymbolId at(std::size_t t) const {
    return t < stem.size() ? stem[t] : cycle[(t - stem.size()) % cycle.size()];
  }

  friend bool operator==(const Lasso&, const Lasso&) = default;
};

/// Parses `a a | b a` (stem tokens, `|`, cycle tokens). An empty stem is
/// written `| a`. Throws ParseError for a missing bar or an empty cycle and
/// AlphabetError for tokens outside `alphabet`.
Lasso parse_lasso(std::string_view text, const std::vector<std::string>& alphabet);
std::string format_lasso(const Lasso& lasso,
                         const std::vector<std::string>& alphabet);

}  // namespace unidet
