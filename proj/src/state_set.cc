#include "unidet/state_set.hh"

#include <algorithm>
#include <iterator>

namespace unidet {

StateSet::StateSet(std::initializer_list<StateId> ids)
    : StateSet(from_unsorted(std::vector<StateId>(ids))) {}

StateSet StateSet::from_unsorted(std::vector<StateId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  StateSet s;
  s.ids_ = std::move(ids);
  return s;
}

bool StateSet::contains(StateId q) const {
  return std::binary_search(ids_.begin(), ids_.end(), q);
}

void StateSet::insert(StateId q) {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), q);
  if (it == ids_.end() || *it != q) ids_.insert(it, q);
}

void StateSet::insert_all(const StateSet& other) {
  if (other.empty()) return;
  *this = *this | other;
}

bool StateSet::is_subset_of(const StateSet& other) const {
  return std::includes(other.ids_.begin(), other.ids_.end(), ids_.begin(),
                       ids_.end());
}

bool StateSet::intersects(const StateSet& other) const {
  auto a = ids_.begin();
  auto b = other.ids_.begin();
  while (a != ids_.end() && b != other.ids_.end()) {
    if (*a == *b) return true;
    if (*a < *b) ++a;
    else ++b;
  }
  return false;
}

std::string StateSet::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(ids_[i]);
  }
  out += '}';
  return out;
}

StateSet operator|(const StateSet& a, const StateSet& b) {
  StateSet r;
  r.ids_.reserve(a.size() + b.size());
  std::set_union(a.ids_.begin(), a.ids_.end(), b.ids_.begin(), b.ids_.end(),
                 std::back_inserter(r.ids_));
  return r;
}

StateSet operator&(const StateSet& a, const StateSet& b) {
  StateSet r;
  std::set_intersection(a.ids_.begin(), a.ids_.end(), b.ids_.begin(),
                        b.ids_.end(), std::back_inserter(r.ids_));
  return r;
}

StateSet operator-(const StateSet& a, const StateSet& b) {
  StateSet r;
  std::set_difference(a.ids_.begin(), a.ids_.end(), b.ids_.begin(),
                      b.ids_.end(), std::back_inserter(r.ids_));
  return r;
}

}  // namespace unidet
