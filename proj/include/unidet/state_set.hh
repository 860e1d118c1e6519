#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace unidet {

using StateId = std::uint32_t;

/// Set of automaton states, kept as a strictly ascending id sequence so that
/// equality and ordering are structural.
class StateSet {
 public:
  using const_iterator = std::vector<StateId>::const_iterator;

  StateSet() = default;
  StateSet(std::initializer_list<StateId> ids);
  static StateSet from_unsorted(std::vector<StateId> ids);

  bool empty() const noexcept { return ids_.empty(); }
  std::size_t size() const noexcept { return ids_.size(); }
  const_iterator begin() const noexcept { return ids_.begin(); }
  const_iterator end() const noexcept { return ids_.end(); }
  StateId front() const { return ids_.front(); }
  StateId back() const { return ids_.back(); }
  const std::vector<StateId>& ids() const noexcept { return ids_; }

  bool contains(StateId q) const;
  void insert(StateId q);
  void insert_all(const StateSet& other);

  bool is_subset_of(const StateSet& other) const;
  bool intersects(const StateSet& other) const;

  /// `{0,2,5}`, or `{}` when empty.
  std::string to_string() const;

  friend StateSet operator|(const StateSet& a, const StateSet& b);
  friend StateSet operator&(const StateSet& a, const StateSet& b);
  friend StateSet operator-(const StateSet& a, const StateSet& b);

  friend bool operator==(const StateSet&, const StateSet&) = default;
  friend auto operator<=>(const StateSet&, const StateSet&) = default;

 private:
  std::vector<StateId> ids_;
};

}  // namespace unidet
