#include <random>

#include "doctest.h"
#include "support.hh"
#include "unidet/error.hh"
#include "unidet/oracle.hh"

using namespace unidet;
using testing::load;

TEST_CASE("witness runs on the small examples") {
  const auto three = load("three_state.nba");
  const Lasso a_omega{{}, {0}};
  const auto run = nba_accepting_run(three, a_omega);
  REQUIRE(run.has_value());
  CHECK(run->prefix == std::vector<StateId>{0});
  CHECK(run->loop == std::vector<StateId>{1});
  CHECK(is_accepting_run(three, a_omega, *run));
  CHECK(nba_accepts_lasso_unrolled(three, a_omega));

  const auto four = load("four_state.nba");
  const auto run3 = nba_accepting_run(four, a_omega);
  REQUIRE(run3.has_value());
  CHECK(run3->loop == std::vector<StateId>{2});
  CHECK(is_accepting_run(four, a_omega, *run3));

  const auto empty = load("empty.nba");
  CHECK_FALSE(nba_accepts_lasso(empty, a_omega));
  CHECK_FALSE(nba_accepts_lasso_unrolled(empty, a_omega));
}

TEST_CASE("acceptance needs the accepting state on the cycle") {
  // 0 -a-> 1 -b-> 1, only 0 accepting: a b^w is rejected.
  const BuchiAutomaton aut(2, {"a", "b"}, {{0, 0, 1}, {1, 1, 1}}, {0}, {0});
  const Lasso l{{0}, {1}};
  CHECK_FALSE(nba_accepts_lasso(aut, l));
  CHECK_FALSE(nba_accepts_lasso_unrolled(aut, l));
  // Accepting state only reachable mid-cycle: (ab)^w over 0 -a-> 1 -b-> 0.
  const BuchiAutomaton alt(2, {"a", "b"}, {{0, 0, 1}, {1, 1, 0}}, {0}, {1});
  const Lasso ab{{}, {0, 1}};
  const auto run = nba_accepting_run(alt, ab);
  REQUIRE(run.has_value());
  CHECK(run->loop.size() % 2 == 0);
  CHECK(is_accepting_run(alt, ab, *run));
  CHECK(nba_accepts_lasso_unrolled(alt, ab));
  CHECK_FALSE(nba_accepts_lasso(alt, Lasso{{}, {0}}));
}

TEST_CASE("is_accepting_run rejects broken runs") {
  const auto three = load("three_state.nba");
  const Lasso l{{}, {0}};
  CHECK_FALSE(is_accepting_run(three, l, LassoRun{{0}, {0}}));  // no accepting state
  CHECK_FALSE(is_accepting_run(three, l, LassoRun{{1}, {1}}));  // not initial
  CHECK_FALSE(is_accepting_run(three, l, LassoRun{{0}, {2}}));  // 2 -a-> 2 missing
  CHECK(is_accepting_run(three, l, LassoRun{{0, 0}, {1, 2}}));
}

TEST_CASE("lasso enumeration order and count") {
  const auto all = enumerate_lassos(2, 3, 3);
  CHECK(all.size() == 210);
  CHECK(lasso_count(2, 3, 3) == 210);
  CHECK(lasso_count(1, 3, 3) == 12);
  CHECK(lasso_count(3, 0, 1) == 3);
  CHECK(all[0] == Lasso{{}, {0}});
  CHECK(all[1] == Lasso{{}, {1}});
  CHECK(all[2] == Lasso{{}, {0, 0}});
  CHECK(all[14] == Lasso{{0}, {0}});
  CHECK(all.back() == Lasso{{1, 1, 1}, {1, 1, 1}});
  for (std::size_t s = 1; s <= 3; ++s)
    for (std::size_t c = 1; c <= 3; ++c)
      CHECK(enumerate_lassos(3, s, c).size() == lasso_count(3, s, c));
}

TEST_CASE("split tree levels of the three-state automaton") {
  const auto three = load("three_state.nba");
  const auto levels = split_tree_levels(three, {0, 0, 0});
  using L = std::vector<StateSet>;
  REQUIRE(levels.size() == 4);
  CHECK(levels[0] == L{{0}});
  CHECK(levels[1] == L{{1}, {0}});
  CHECK(levels[2] == L{{1}, {2}, {0}});
  CHECK(levels[3] == L{{1}, {2}, {0}});
  CHECK(split_tree_levels(load("empty.nba"), {0}).back().empty());
}

TEST_CASE("both oracles agree and witnesses check out") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    RandomNbaParams p;
    p.num_states = 1 + rng() % 6;
    p.alphabet_size = 1 + rng() % 3;
    p.density = 0.2 + 0.1 * static_cast<double>(rng() % 4);
    const auto aut = random_nba(p, rng);
    for (int k = 0; k < 20; ++k) {
      const Lasso l = sample_lasso(rng, p.alphabet_size, 4, 4);
      const auto run = nba_accepting_run(aut, l);
      CHECK(run.has_value() == nba_accepts_lasso_unrolled(aut, l));
      if (run) CHECK(is_accepting_run(aut, l, *run));
      // Unrolling the cycle once or doubling it names the same word.
      Lasso unrolled{l.stem, l.cycle};
      unrolled.stem.insert(unrolled.stem.end(), l.cycle.begin(), l.cycle.end());
      Lasso doubled{l.stem, l.cycle};
      doubled.cycle.insert(doubled.cycle.end(), l.cycle.begin(), l.cycle.end());
      CHECK(nba_accepts_lasso(aut, unrolled) == run.has_value());
      CHECK(nba_accepts_lasso(aut, doubled) == run.has_value());
    }
  }
}

TEST_CASE("random generation is reproducible") {
  const CorpusParams cp{20, 5, 2, 0.4, 0.4, 7};
  const auto a = random_corpus(cp);
  const auto b = random_corpus(cp);
  REQUIRE(a.size() == 20);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i] == b[i]);
    CHECK(a[i].num_states() >= 1);
    CHECK(a[i].num_states() <= 5);
    CHECK(a[i].alphabet_size() <= 2);
    CHECK(a[i].initial() == StateSet{0});
  }
  std::mt19937_64 r1(3), r2(3);
  for (int i = 0; i < 50; ++i) CHECK(sample_lasso(r1, 2, 5, 5) == sample_lasso(r2, 2, 5, 5));
  std::mt19937_64 rng(1);
  RandomNbaParams dense{4, 2, 1.0, 1.0};
  CHECK(random_nba(dense, rng).num_transitions() == 32);
  RandomNbaParams none{4, 2, 0.0, 0.0};
  const auto bare = random_nba(none, rng);
  CHECK(bare.num_transitions() == 0);
  CHECK(bare.accepting().empty());
}
