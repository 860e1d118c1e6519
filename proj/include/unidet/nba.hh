#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "unidet/state_set.hh"

namespace unidet {

/// Index into an automaton's alphabet.
using SymbolId = std::uint32_t;

struct Transition {
  StateId source;
  SymbolId symbol;
  StateId target;

  friend bool operator==(const Transition&, const Transition&) = default;
  friend auto operator<=>(const Transition&, const Transition&) = default;
};

/// Nondeterministic Büchi automaton over dense state ids 0..n-1 and an ordered
/// alphabet of distinct whitespace-free tokens. Immutable once built; the
/// constructor throws InvariantError on dangling ids, duplicate tokens, or an
/// empty initial set.
class BuchiAutomaton {
 public:
  BuchiAutomaton(std::size_t num_states, std::vector<std::string> alphabet,
                 std::vector<Transition> transitions, StateSet initial,
                 StateSet accepting);

  std::size_t num_states() const noexcept { return num_states_; }
  const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }
  std::size_t alphabet_size() const noexcept { return alphabet_.size(); }
  const StateSet& initial() const noexcept { return initial_; }
  const StateSet& accepting() const noexcept { return accepting_; }
  bool is_accepting(StateId q) const { return accepting_.contains(q); }

  /// Throws AlphabetError for unknown tokens.
  SymbolId symbol_id(std::string_view token) const;
  const std::string& symbol_token(SymbolId x) const;

  const StateSet& successors(StateId q, SymbolId x) const;
  /// Union of successors over all members of `sources`.
  StateSet successors(const StateSet& sources, SymbolId x) const;

  /// Sorted by (source, symbol, target).
  std::vector<Transition> transitions() const;
  std::size_t num_transitions() const noexcept;

  friend bool operator==(const BuchiAutomaton&, const BuchiAutomaton&) = default;

 private:
  void check_symbol(SymbolId x) const;

  std::size_t num_states_;
  std::vector<std::string> alphabet_;
  StateSet initial_;
  StateSet accepting_;
  std::vector<StateSet> succ_;  // indexed [q * |alphabet| + x]
};

BuchiAutomaton parse_nba(std::string_view text);
std::string serialize_nba(const BuchiAutomaton& aut);

}  // namespace unidet
