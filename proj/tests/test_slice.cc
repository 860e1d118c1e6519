#include <random>

#include "doctest.h"
#include "support.hh"
#include "unidet/error.hh"

using namespace unidet;

TEST_CASE("slice text round-trips in canonical form") {
  const RankedSlice s = parse_slice(" ( {3}:4 , {1}:2,{2}:3,{0}:1 ) ");
  CHECK(s.size() == 4);
  CHECK(s.to_string() == "({3}:4,{1}:2,{2}:3,{0}:1)");
  CHECK(s.ranks() == std::vector<Rank>{4, 2, 3, 1});
  CHECK(s.states() == StateSet{0, 1, 2, 3});
  CHECK(s.index_of(2) == 3);
  CHECK_FALSE(s.find(7).has_value());
  CHECK_THROWS_AS(s.index_of(7), StateNotPresent);
  CHECK(parse_slice("()").is_sink());
  CHECK(parse_slice("({1,0}:1)").to_string() == "({0,1}:1)");
}

TEST_CASE("slice invariants") {
  CHECK_NOTHROW(parse_slice("({0}:2,{1}:1)"));
  CHECK_THROWS_AS(parse_slice("({0}:1,{1}:2)"), InvariantError);
  CHECK_THROWS_AS(parse_slice("({0}:1,{1}:1)"), InvariantError);
  CHECK_THROWS_AS(parse_slice("({0}:3,{1}:1)"), InvariantError);
  CHECK_THROWS_AS(parse_slice("({}:2,{1}:1)"), InvariantError);
  CHECK_THROWS_AS(parse_slice("({0}:2,{0,1}:1)"), ParseError);
  CHECK_THROWS_AS(parse_slice("({0}:2,{1}:1"), ParseError);
  CHECK_THROWS_AS(parse_slice("({0}2)"), ParseError);
  CHECK_THROWS_AS(parse_slice("{0}:1"), ParseError);
}

TEST_CASE("pre-slices allow empty sets and repeated ranks") {
  const PreSlice p = parse_pre_slice("({}:4,{}:2,{2}:5,{}:3,{3}:6,{0}:1)");
  CHECK(p.has_empty_set());
  CHECK(p.has_distinct_ranks());
  CHECK(p.is_disjoint());
  CHECK(p.states() == StateSet{0, 2, 3});
  CHECK_FALSE(parse_pre_slice("({1}:2,{2}:2)").has_distinct_ranks());
  CHECK(p.to_string() == "({}:4,{}:2,{2}:5,{}:3,{3}:6,{0}:1)");
}

TEST_CASE("parent and left boundary on the four-set example") {
  const std::vector<Rank> r{4, 2, 3, 1};
  CHECK(parent(r, 1) == std::optional<std::size_t>(2));
  CHECK(parent(r, 2) == std::optional<std::size_t>(4));
  CHECK(parent(r, 3) == std::optional<std::size_t>(4));
  CHECK_FALSE(parent(r, 4).has_value());
  CHECK(left_boundary(r, 1) == 0);
  CHECK(left_boundary(r, 2) == 0);
  CHECK(left_boundary(r, 3) == 2);
  CHECK(left_boundary(r, 4) == 0);
  const RankedSlice s = parse_slice("({3}:4,{1}:2,{2}:3,{0}:1)");
  CHECK(subtree_set(s, 2) == StateSet{1, 3});
  CHECK(subtree_set(s, 3) == StateSet{2});
  CHECK(subtree_set(s, 4) == StateSet{0, 1, 2, 3});
}

TEST_CASE("parent and left boundary agree with the quadratic definitions") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng() % 10;
    std::vector<Rank> r(n);
    std::iota(r.begin(), r.end(), 1);
    std::shuffle(r.begin(), r.end(), rng);
    for (std::size_t i = 1; i <= n; ++i) {
      CHECK(parent(r, i) == testing::brute_parent(r, i));
      CHECK(left_boundary(r, i) == testing::brute_left(r, i));
    }
  }
}

TEST_CASE("rank profiles") {
  const RankedSlice s = parse_slice("({3}:4,{1}:2,{2}:3,{0}:1)");
  CHECK(rank_profile(s, 3).ranks == std::vector<Rank>{1, 2, 4});
  CHECK(rank_profile(s, 1).ranks == std::vector<Rank>{1, 2});
  CHECK(rank_profile(s, 2).ranks == std::vector<Rank>{1, 3});
  CHECK(rank_profile(s, 0).ranks == std::vector<Rank>{1});
  CHECK(to_string(rank_profile(s, 3)) == "1,2,4");
  CHECK_THROWS_AS(rank_profile(s, 9), StateNotPresent);
}

TEST_CASE("profile order and k-cuts") {
  const RankProfile a{{1, 2, 4}}, b{{1, 3}}, c{{1, 2}};
  CHECK(compare_profiles(a, b) == ProfileOrder::better);
  CHECK(compare_profiles(b, a) == ProfileOrder::worse);
  CHECK(compare_profiles(a, c) == ProfileOrder::better);
  CHECK(compare_profiles(c, a) == ProfileOrder::worse);
  CHECK(compare_profiles(a, a) == ProfileOrder::equal);

  CHECK(k_cut(a, 3).ranks == std::vector<Rank>{1, 2, 4});
  CHECK(k_cut(a, 2).ranks == std::vector<Rank>{1, 2});
  CHECK(k_cut(RankProfile{{1, 3, 5}}, 3).ranks == std::vector<Rank>{1, 3});
  CHECK(k_cut(RankProfile{{1, 2}}, 9).ranks == std::vector<Rank>{1, 2});

  // Beyond the cut the profiles may differ arbitrarily.
  CHECK(cut_at_least_as_good(RankProfile{{1, 3, 9}}, RankProfile{{1, 3, 5}}, 3));
  CHECK(cut_at_least_as_good(RankProfile{{1, 2}}, RankProfile{{1, 3, 5}}, 3));
  CHECK_FALSE(cut_at_least_as_good(RankProfile{{1, 3}}, RankProfile{{1, 2}}, 3));
}
