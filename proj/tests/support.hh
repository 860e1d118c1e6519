#pragma once

// Shared fixtures and brute-force helpers for the test binaries. Everything
// here is written independently of the library code it is used to check.

#include <algorithm>
#include <fstream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "unidet/nba.hh"
#include "unidet/slice.hh"

#ifndef UNIDET_TEST_DATA
#error "UNIDET_TEST_DATA must point at tests/data"
#endif

namespace testing {

using namespace unidet;

inline std::string data_path(const std::string& name) {
  return std::string(UNIDET_TEST_DATA) + "/" + name;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline BuchiAutomaton load(const std::string& name) {
  return parse_nba(read_file(data_path(name)));
}

// All words over `sigma` symbols with length in [lo, hi], shortest first.
inline std::vector<std::vector<SymbolId>> words(std::size_t sigma, std::size_t lo,
                                                std::size_t hi) {
  std::vector<std::vector<SymbolId>> out;
  std::vector<std::vector<SymbolId>> layer{{}};
  for (std::size_t len = 0; len <= hi; ++len) {
    if (len >= lo) out.insert(out.end(), layer.begin(), layer.end());
    std::vector<std::vector<SymbolId>> next;
    for (const auto& w : layer)
      for (SymbolId x = 0; x < sigma; ++x) {
        next.push_back(w);
        next.back().push_back(x);
      }
    layer = std::move(next);
  }
  return out;
}

// Interval partitions as lists of (first, last), 1-based.
using Blocks = std::vector<std::pair<std::size_t, std::size_t>>;

// Adjacent intervals covering 1..n where a set whose rank is below k forms an
// interval by itself and a set of rank k is the last of its interval.
inline bool brute_valid(const std::vector<Rank>& ranks, Rank k, const Blocks& b) {
  std::size_t next = 1;
  for (auto [f, l] : b) {
    if (f != next || l < f || l > ranks.size()) return false;
    next = l + 1;
    for (std::size_t p = f; p <= l; ++p) {
      if (ranks[p - 1] < k && f != l) return false;
      if (ranks[p - 1] == k && p != l) return false;
    }
  }
  return next == ranks.size() + 1;
}

// Every interval partition of 1..n satisfying: a set whose rank is below k
// forms an interval by itself, and a set of rank k is the last of its
// interval. Enumerated over all 2^(n-1) cut masks.
inline std::vector<Blocks> brute_partitions(const std::vector<Rank>& ranks, Rank k) {
  const std::size_t n = ranks.size();
  std::vector<Blocks> out;
  if (n == 0) return {Blocks{}};
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n - 1)); ++mask) {
    Blocks b;
    std::size_t first = 1;
    for (std::size_t l = 1; l <= n; ++l)
      if (l == n || (mask >> (l - 1) & 1)) {
        b.emplace_back(first, l);
        first = l + 1;
      }
    if (brute_valid(ranks, k, b)) out.push_back(b);
  }
  return out;
}

// Quadratic parent / left boundary straight from the definitions.
inline std::optional<std::size_t> brute_parent(const std::vector<Rank>& r, std::size_t i) {
  std::optional<std::size_t> best;
  for (std::size_t j = r.size(); j > i; --j)
    if (r[j - 1] < r[i - 1]) best = j;
  return best;
}

inline std::size_t brute_left(const std::vector<Rank>& r, std::size_t i) {
  std::size_t best = 0;
  for (std::size_t j = 1; j < i; ++j)
    if (r[j - 1] < r[i - 1]) best = j;
  return best;
}

// Random ranked slice with n sets over states 0..pool-1 (pool >= n).
inline RankedSlice random_slice(std::mt19937_64& rng, std::size_t n, std::size_t pool) {
  std::vector<StateId> states(pool);
  std::iota(states.begin(), states.end(), 0);
  std::shuffle(states.begin(), states.end(), rng);
  std::vector<std::vector<StateId>> sets(n);
  for (std::size_t i = 0; i < n; ++i) sets[i].push_back(states[i]);
  for (std::size_t i = n; i < pool; ++i)
    if (rng() % 2) sets[rng() % n].push_back(states[i]);
  std::vector<Rank> ranks(n - 1);
  std::iota(ranks.begin(), ranks.end(), 2);
  std::shuffle(ranks.begin(), ranks.end(), rng);
  ranks.push_back(1);
  PreSlice p;
  for (std::size_t i = 0; i < n; ++i)
    p.entries.push_back({StateSet::from_unsorted(sets[i]), ranks[i]});
  return RankedSlice::from(p);
}

}  // namespace testing
