#include "unidet/slice.hh"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "unidet/error.hh"

namespace unidet {

std::vector<Rank> PreSlice::ranks() const {
  std::vector<Rank> r;
  r.reserve(entries.size());
  for (const auto& e : entries) r.push_back(e.rank);
  return r;
}

StateSet PreSlice::states() const {
  std::vector<StateId> all;
  for (const auto& e : entries) all.insert(all.end(), e.states.begin(), e.states.end());
  return StateSet::from_unsorted(std::move(all));
}

bool PreSlice::has_distinct_ranks() const {
  auto r = ranks();
  std::sort(r.begin(), r.end());
  return std::adjacent_find(r.begin(), r.end()) == r.end();
}

bool PreSlice::is_disjoint() const {
  std::size_t total = 0;
  for (const auto& e : entries) total += e.states.size();
  return states().size() == total;
}

bool PreSlice::has_empty_set() const {
  return std::any_of(entries.begin(), entries.end(),
                     [](const RankedSet& e) { return e.states.empty(); });
}

std::string PreSlice::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) out += ',';
    out += entries[i].states.to_string();
    out += ':';
    out += std::to_string(entries[i].rank);
  }
  out += ')';
  return out;
}

RankedSlice RankedSlice::from(PreSlice pre) {
  const std::size_t n = pre.size();
  std::vector<bool> seen(n + 1, false);
  for (const auto& e : pre.entries) {
    if (e.states.empty())
      throw InvariantError("ranked slice contains an empty set: " + pre.to_string());
    if (e.rank < 1 || e.rank > n || seen[e.rank])
      throw InvariantError("ranks are not a bijection onto 1.." +
                           std::to_string(n) + ": " + pre.to_string());
    seen[e.rank] = true;
  }
  if (n > 0 && pre.entries.back().rank != 1)
    throw InvariantError("last set must carry rank 1: " + pre.to_string());
  if (!pre.is_disjoint())
    throw InvariantError("sets are not pairwise disjoint: " + pre.to_string());
  RankedSlice s;
  s.pre_ = std::move(pre);
  return s;
}

RankedSlice RankedSlice::initial(StateSet states) {
  return from(PreSlice{{RankedSet{std::move(states), 1}}});
}

const RankedSet& RankedSlice::at(std::size_t position) const {
  if (position < 1 || position > size())
    throw InvariantError("position " + std::to_string(position) + " out of range");
  return pre_.entries[position - 1];
}

std::optional<std::size_t> RankedSlice::find(StateId q) const {
  for (std::size_t i = 0; i < pre_.entries.size(); ++i)
    if (pre_.entries[i].states.contains(q)) return i + 1;
  return std::nullopt;
}

std::size_t RankedSlice::index_of(StateId q) const {
  if (auto i = find(q)) return *i;
  throw StateNotPresent("state " + std::to_string(q) + " not in slice " + to_string());
}

std::size_t RankedSliceHash::operator()(const RankedSlice& s) const noexcept {
  std::size_t h = 0xcbf29ce484222325ull;
  auto mix = [&h](std::size_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  };
  for (const auto& e : s.entries()) {
    mix(e.rank);
    for (StateId q : e.states) mix(q);
    mix(0xffffffffu);
  }
  return h;
}

namespace {

class SliceParser {
 public:
  explicit SliceParser(std::string_view text) : text_(text) {}

  PreSlice parse() {
    PreSlice out;
    expect('(');
    if (peek() == ')') {
      ++pos_;
    } else {
      while (true) {
        RankedSet e;
        e.states = parse_set();
        expect(':');
        e.rank = static_cast<Rank>(parse_number());
        if (e.rank == 0) fail("ranks are positive");
        out.entries.push_back(std::move(e));
        char c = next();
        if (c == ')') break;
        if (c != ',') fail("expected ',' or ')'");
      }
    }
    if (peek() != '\0') fail("trailing characters");
    return out;
  }

 private:
  StateSet parse_set() {
    expect('{');
    std::vector<StateId> ids;
    if (peek() == '}') {
      ++pos_;
      return {};
    }
    while (true) {
      ids.push_back(static_cast<StateId>(parse_number()));
      char c = next();
      if (c == '}') break;
      if (c != ',') fail("expected ',' or '}'");
    }
    auto sorted = ids;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      fail("repeated state inside a set");
    return StateSet::from_unsorted(std::move(ids));
  }

  std::uint64_t parse_number() {
    skip_ws();
    std::uint64_t v = 0;
    auto first = text_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, text_.data() + text_.size(), v);
    if (ec != std::errc{} || ptr == first) fail("expected a number");
    if (v > 0xffffffffu) fail("number too large");
    pos_ += static_cast<std::size_t>(ptr - first);
    return v;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  char next() {
    char c = peek();
    if (c != '\0') ++pos_;
    return c;
  }
  void expect(char c) {
    if (next() != c) fail(std::string("expected '") + c + "'");
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(1, "slice syntax at offset " + std::to_string(pos_) + ": " + what);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

PreSlice parse_pre_slice(std::string_view text) {
  PreSlice pre = SliceParser(text).parse();
  if (!pre.is_disjoint()) throw ParseError(1, "slice sets are not disjoint");
  return pre;
}

RankedSlice parse_slice(std::string_view text) {
  return RankedSlice::from(parse_pre_slice(text));
}

std::optional<std::size_t> parent(std::span<const Rank> ranks, std::size_t i) {
  for (std::size_t k = i + 1; k <= ranks.size(); ++k)
    if (ranks[k - 1] < ranks[i - 1]) return k;
  return std::nullopt;
}

std::size_t left_boundary(std::span<const Rank> ranks, std::size_t i) {
  for (std::size_t k = i - 1; k >= 1; --k)
    if (ranks[k - 1] < ranks[i - 1]) return k;
  return 0;
}

StateSet subtree_set(const PreSlice& slice, std::size_t i) {
  auto r = slice.ranks();
  StateSet out;
  for (std::size_t k = left_boundary(r, i) + 1; k <= i; ++k)
    out.insert_all(slice.entries[k - 1].states);
  return out;
}

std::string to_string(const RankProfile& p) {
  std::string out;
  for (std::size_t i = 0; i < p.ranks.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(p.ranks[i]);
  }
  return out;
}

RankProfile rank_profile_at(std::span<const Rank> ranks, std::size_t i) {
  RankProfile p;
  std::optional<std::size_t> cur = i;
  while (cur) {
    p.ranks.push_back(ranks[*cur - 1]);
    cur = parent(ranks, *cur);
  }
  std::reverse(p.ranks.begin(), p.ranks.end());
  return p;
}

RankProfile rank_profile(const RankedSlice& slice, StateId q) {
  auto r = slice.ranks();
  return rank_profile_at(r, slice.index_of(q));
}

ProfileOrder compare_profiles(const RankProfile& a, const RankProfile& b) {
  const std::size_t m = std::min(a.ranks.size(), b.ranks.size());
  for (std::size_t i = 0; i < m; ++i) {
    if (a.ranks[i] < b.ranks[i]) return ProfileOrder::better;
    if (a.ranks[i] > b.ranks[i]) return ProfileOrder::worse;
  }
  if (a.ranks.size() > b.ranks.size()) return ProfileOrder::better;
  if (a.ranks.size() < b.ranks.size()) return ProfileOrder::worse;
  return ProfileOrder::equal;
}

RankProfile k_cut(const RankProfile& p, Rank k) {
  RankProfile out;
  for (Rank r : p.ranks) {
    out.ranks.push_back(r);
    if (r >= k) break;
  }
  return out;
}

bool cut_at_least_as_good(const RankProfile& a, const RankProfile& b, Rank k) {
  return compare_profiles(k_cut(a, k), k_cut(b, k)) != ProfileOrder::worse;
}

}  // namespace unidet
