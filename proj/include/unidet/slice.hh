#pragma once

// Ranked slices: ordered tuples of disjoint state sets with a rank per set.
//
// Tuple positions in this API are 1-based, so that "no position" can be
// written as 0 (left_boundary) and subtree ranges read as (left, i].

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "unidet/state_set.hh"

namespace unidet {

using Rank = std::uint32_t;

struct RankedSet {
  StateSet states;
  Rank rank = 0;

  friend bool operator==(const RankedSet&, const RankedSet&) = default;
};

/// Intermediate tuple produced inside a transition. Sets may be empty, ranks
/// may repeat or leave gaps; only disjointness of the sets is expected.
struct PreSlice {
  std::vector<RankedSet> entries;

  std::size_t size() const noexcept { return entries.size(); }
  std::vector<Rank> ranks() const;
  StateSet states() const;
  bool has_distinct_ranks() const;
  bool is_disjoint() const;
  bool has_empty_set() const;
  std::string to_string() const;

  friend bool operator==(const PreSlice&, const PreSlice&) = default;
};

/// A macrostate. Sets are non-empty and pairwise disjoint, ranks are a
/// bijection onto 1..n and the last set has rank 1. The empty tuple is the
/// sink macrostate.
class RankedSlice {
 public:
  RankedSlice() = default;

  /// Throws InvariantError when `pre` is not a ranked slice.
  static RankedSlice from(PreSlice pre);
  static RankedSlice from(std::vector<RankedSet> entries) {
    return from(PreSlice{std::move(entries)});
  }
  /// Slice with a single set of rank 1.
  static RankedSlice initial(StateSet states);

  const std::vector<RankedSet>& entries() const noexcept { return pre_.entries; }
  const PreSlice& as_pre_slice() const noexcept { return pre_; }
  std::size_t size() const noexcept { return pre_.size(); }
  bool is_sink() const noexcept { return pre_.entries.empty(); }
  std::vector<Rank> ranks() const { return pre_.ranks(); }
  const RankedSet& at(std::size_t position) const;

  /// Union of all sets.
  StateSet states() const { return pre_.states(); }
  /// 1-based position of the set containing q; throws StateNotPresent.
  std::size_t index_of(StateId q) const;
  std::optional<std::size_t> find(StateId q) const;

  /// Canonical form, e.g. `({3}:4,{1}:2,{2}:3,{0}:1)`.
  std::string to_string() const { return pre_.to_string(); }

  friend bool operator==(const RankedSlice&, const RankedSlice&) = default;

 private:
  PreSlice pre_;
};

struct RankedSliceHash {
  std::size_t operator()(const RankedSlice& s) const noexcept;
};

/// Parses the canonical tuple syntax. Whitespace is ignored; `{}` denotes an
/// empty set. Throws ParseError.
PreSlice parse_pre_slice(std::string_view text);
RankedSlice parse_slice(std::string_view text);

// ---- rank tree -----------------------------------------------------------
// These accept any rank sequence with pairwise-distinct values, which covers
// ranked slices and the pre-slices seen after step.

/// Closest position to the right of i with a smaller rank; nullopt for the
/// position holding the minimum rank when it is the last one.
std::optional<std::size_t> parent(std::span<const Rank> ranks, std::size_t i);
/// Closest position to the left of i with a smaller rank, or 0.
std::size_t left_boundary(std::span<const Rank> ranks, std::size_t i);

/// Union of the sets at positions left_boundary(i)+1 .. i.
StateSet subtree_set(const PreSlice& slice, std::size_t i);
inline StateSet subtree_set(const RankedSlice& slice, std::size_t i) {
  return subtree_set(slice.as_pre_slice(), i);
}

// ---- rank profiles -------------------------------------------------------

/// Ranks on the rank-tree path from the root down to a node, ascending.
struct RankProfile {
  std::vector<Rank> ranks;

  friend bool operator==(const RankProfile&, const RankProfile&) = default;
};

std::string to_string(const RankProfile& p);

/// Profile of the node at 1-based position i.
RankProfile rank_profile_at(std::span<const Rank> ranks, std::size_t i);
/// Profile of the node hosting q; throws StateNotPresent.
RankProfile rank_profile(const RankedSlice& slice, StateId q);

enum class ProfileOrder { better, equal, worse };

/// Lexicographic on the common prefix; on a tie the longer profile is better.
ProfileOrder compare_profiles(const RankProfile& a, const RankProfile& b);

/// Prefix holding every rank < k plus the first rank >= k, if any.
RankProfile k_cut(const RankProfile& p, Rank k);

/// True when cut_k(a) is better than or equal to cut_k(b).
bool cut_at_least_as_good(const RankProfile& a, const RankProfile& b, Rank k);

}  // namespace unidet
