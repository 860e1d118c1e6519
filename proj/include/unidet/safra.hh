#pragma once

// Ranked Safra trees and their correspondence with ranked slices.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "unidet/slice.hh"

namespace unidet {

/// Labels are the "reduced" sets: a parent does not repeat states that live
/// in its descendants. The classical label is subtree_set() of the matching
/// slice position.
struct SafraNode {
  StateSet label;
  Rank rank = 0;
  std::vector<SafraNode> children;

  friend bool operator==(const SafraNode&, const SafraNode&) = default;
};

/// Ordered tree with non-empty pairwise-disjoint labels, ranks forming a
/// bijection onto 1..n, root rank 1, and ranks increasing from parent to
/// child and from left sibling to right sibling.
class RankedSafraTree {
 public:
  /// Throws InvariantError if `root` violates any of the above.
  static RankedSafraTree from(SafraNode root);

  const SafraNode& root() const noexcept { return root_; }
  std::size_t size() const noexcept { return size_; }

  friend bool operator==(const RankedSafraTree&, const RankedSafraTree&) = default;

 private:
  SafraNode root_;
  std::size_t size_ = 0;
};

/// Parent and left subtree boundary for every position (1-based, as in
/// slice.hh), plus the operation counts of the stack pass that built them.
struct TreeShape {
  std::vector<std::optional<std::size_t>> parent;  // [i-1] holds parent of i
  std::vector<std::size_t> left_boundary;          // [i-1], 0 for none
  std::size_t main_iterations = 0;
  std::size_t pushes = 0;
  std::size_t pops = 0;

  std::size_t work() const noexcept { return main_iterations + pops; }
};

/// One right-to-left stack pass over the ranks. Ranks need only be pairwise
/// distinct; gaps are fine since only their relative order is used.
TreeShape unflatten(std::span<const Rank> ranks);

/// Post-order listing of the nodes.
RankedSlice safra_to_slice(const RankedSafraTree& tree);
/// Rank tree of the slice; throws InvariantError for the sink slice.
RankedSafraTree slice_to_safra(const RankedSlice& slice);

/// Nested rendering `label:rank(child,child,...)`, e.g.
/// `{0}:1({1}:2,{2}:3)`; leaves omit the parentheses.
std::string render_tree(const RankedSafraTree& tree);
/// Inverse of render_tree; throws ParseError or InvariantError.
RankedSafraTree parse_tree(std::string_view text);

}  // namespace unidet
