#pragma once

// Büchi to parity determinization over ranked slices.
//
// One transition runs four stages on the current slice:
//   step      split each set's restricted successors into accepting (left,
//             fresh rank) and non-accepting (right, inherited rank) parts
//   prune     drop empty sets; each surviving set takes the least rank of
//             its block, which classifies old ranks as green or red
//   merge     union adjacent sets according to an interval partition that
//             respects the dominating rank
//   normalize compact the ranks back onto 1..n
// The merge strategy picks the partition; the identity partition gives the
// Muller-Schupp construction and green-subtree collapse gives Safra's.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "unidet/nba.hh"
#include "unidet/parity.hh"
#include "unidet/slice.hh"

namespace unidet {

enum class MergeKind { muller_schupp, safra, max_collapse, adaptive };

struct MergeStrategy {
  MergeKind kind = MergeKind::muller_schupp;
  /// Used by adaptive when no existing successor fits. Never adaptive.
  MergeKind fallback = MergeKind::safra;
  /// Adaptive inspects at most this many partitions, coarsest first.
  std::size_t adaptive_limit = 4096;

  static MergeStrategy of(MergeKind kind) { return MergeStrategy{kind}; }
  /// Throws InvariantError if `fallback` is itself adaptive.
  static MergeStrategy adaptive(MergeKind fallback = MergeKind::safra,
                                std::size_t limit = 4096);
};

/// `ms`, `safra`, `max`, `adaptive`.
std::string_view strategy_token(MergeKind kind);
std::optional<MergeKind> parse_strategy_token(std::string_view token);

/// Inclusive 1-based range of pre-slice positions.
struct Interval {
  std::size_t first;
  std::size_t last;

  std::size_t size() const noexcept { return last - first + 1; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Adjacent intervals covering 1..n in order.
using IntervalPartition = std::vector<Interval>;

std::string to_string(const IntervalPartition& partition);
IntervalPartition singleton_partition(std::size_t n);

/// Predicate "this slice is already a macrostate", consulted by adaptive.
using KnownSlices = std::function<bool(const RankedSlice&)>;

// ---- stages --------------------------------------------------------------

/// Successors of q on x minus everything reachable on x from sets strictly
/// left of q's set. Throws StateNotPresent if q is not in the slice.
StateSet restricted_successors(const BuchiAutomaton& aut,
                               const RankedSlice& slice, StateId q, SymbolId x);

/// 2n-tuple: position 2i-1 holds the accepting restricted successors of set
/// i with fresh rank n+i, position 2i the rest with set i's rank.
PreSlice step(const BuchiAutomaton& aut, const RankedSlice& slice, SymbolId x);

struct PruneResult {
  PreSlice slice;
  std::vector<Rank> green;  // ascending
  std::vector<Rank> red;    // ascending
};

/// Ranks >= `first_fresh` were introduced by step and never count as green
/// or red; pass n+1 for a step over an n-set slice.
PruneResult prune(const PreSlice& stepped, Rank first_fresh);

struct Dominance {
  Rank rank;
  Priority priority;

  friend bool operator==(const Dominance&, const Dominance&) = default;
};

/// k = min(green ∪ red), or num_states+1 when both are empty; priority is 2k
/// when k is green and 2k-1 otherwise.
Dominance dominating_rank(const std::vector<Rank>& green,
                          const std::vector<Rank>& red, std::size_t num_states);

/// Sets of rank < k stay alone, and a set of rank k ends its interval.
bool is_valid_partition(const PreSlice& pruned, Rank k,
                        const IntervalPartition& partition);

/// Every valid partition, coarsest first (fewest intervals, then
/// lexicographic on the optional cut positions), truncated after `limit`
/// entries.
std::vector<IntervalPartition> valid_partitions(const PreSlice& pruned, Rank k,
                                                std::size_t limit = SIZE_MAX);

/// Partition of `strategy` for a pruned pre-slice with dominating rank k and
/// green ranks `green`. `known` is only consulted by adaptive and may be
/// empty.
IntervalPartition choose_partition(const PreSlice& pruned, Rank k,
                                   const std::vector<Rank>& green,
                                   const MergeStrategy& strategy,
                                   const KnownSlices& known = {});

/// Per interval: union of the sets, minimum of the ranks.
PreSlice merge(const PreSlice& pruned, const IntervalPartition& partition);

/// Order-preserving compaction of the ranks onto 1..n. Throws InvariantError
/// on repeated ranks, empty sets, or a result that is not a ranked slice.
RankedSlice normalize(const PreSlice& merged);

// ---- transitions ---------------------------------------------------------

struct TransitionOutcome {
  RankedSlice successor;
  Priority priority = 0;
  std::vector<Rank> green;
  std::vector<Rank> red;
  Rank dominating = 0;
  /// Successor is the sink. Inside the sink dominating is 1 and priority 1.
  bool sink = false;
};

/// Every intermediate stage of one transition.
struct TransitionTrace {
  PreSlice stepped;
  PreSlice pruned;
  IntervalPartition partition;
  PreSlice merged;
  TransitionOutcome outcome;
};

TransitionTrace trace_transition(const BuchiAutomaton& aut,
                                 const RankedSlice& slice, SymbolId x,
                                 const MergeStrategy& strategy,
                                 const KnownSlices& known = {});

inline TransitionOutcome transition(const BuchiAutomaton& aut,
                                    const RankedSlice& slice, SymbolId x,
                                    const MergeStrategy& strategy,
                                    const KnownSlices& known = {}) {
  return trace_transition(aut, slice, x, strategy, known).outcome;
}

// ---- automaton construction ----------------------------------------------

struct DeterminizeOptions {
  MergeStrategy strategy;
  /// Exceeding this many macrostates throws CapacityError.
  std::size_t max_states = 1'000'000;
  /// Attach canonical slice strings as state labels.
  bool labels = true;
  /// Called once per constructed edge.
  std::function<void(StateId source, SymbolId x, const TransitionTrace&)> observer;
};

/// Breadth-first construction from the slice (Q0):1. Macrostates get dense
/// ids in discovery order, so output depends only on the inputs.
ParityAutomaton determinize(const BuchiAutomaton& aut,
                            const DeterminizeOptions& options = {});

}  // namespace unidet
