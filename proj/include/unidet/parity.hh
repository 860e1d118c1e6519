#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "unidet/lasso.hh"
#include "unidet/state_set.hh"

namespace unidet {

using Priority = std::uint32_t;

struct DpaEdge {
  StateId target;
  Priority priority;

  friend bool operator==(const DpaEdge&, const DpaEdge&) = default;
};

/// Transition-based deterministic parity automaton, min-even acceptance: a
/// run is accepting iff the least priority seen infinitely often is even.
class ParityAutomaton {
 public:
  ParityAutomaton() = default;
  ParityAutomaton(std::size_t num_states, std::vector<std::string> alphabet,
                  StateId initial);

  std::size_t num_states() const noexcept { return num_states_; }
  const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }
  std::size_t alphabet_size() const noexcept { return alphabet_.size(); }
  StateId initial() const noexcept { return initial_; }

  const std::optional<DpaEdge>& edge(StateId q, SymbolId x) const;
  /// Priority must be >= 1; throws InvariantError otherwise.
  void set_edge(StateId q, SymbolId x, DpaEdge e);
  std::size_t num_edges() const noexcept;
  bool is_complete() const noexcept;

  const std::optional<std::string>& label(StateId q) const;
  void set_label(StateId q, std::string label);
  void clear_labels();

  friend bool operator==(const ParityAutomaton&, const ParityAutomaton&) = default;

 private:
  std::size_t num_states_ = 0;
  std::vector<std::string> alphabet_;
  StateId initial_ = 0;
  std::vector<std::optional<DpaEdge>> edges_;  // [q * |alphabet| + x]
  std::vector<std::optional<std::string>> labels_;
};

struct LassoVerdict {
  bool accepted = false;
  /// DPA states visited on one pass of the repeating part, starting at the
  /// cycle boundary that repeats.
  std::vector<StateId> cycle_states;
  Priority min_priority = 0;
};

/// Throws StructuralError on a missing edge.
LassoVerdict run_lasso(const ParityAutomaton& dpa, const Lasso& lasso);

std::string serialize_dpa(const ParityAutomaton& dpa);
/// Throws ParseError (with line) for syntax errors and dangling references.
ParityAutomaton parse_dpa(std::string_view text);

/// Renumbers priorities with a monotone, parity-preserving map onto a dense
/// range starting at 1 or 2, so the parity of the minimum over any set of
/// edges is unchanged. Adjacent used values of equal parity collapse.
ParityAutomaton compact_priorities(const ParityAutomaton& dpa);

}  // namespace unidet
