#pragma once

// Brute-force reference procedures used to cross-check the construction.
// None of them touch slices: they work on the NBA directly.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "unidet/lasso.hh"
#include "unidet/nba.hh"

namespace unidet {

/// Ultimately periodic run: state at time t is prefix[t], or
/// loop[(t - |prefix|) % |loop|] afterwards.
struct LassoRun {
  std::vector<StateId> prefix;
  std::vector<StateId> loop;

  StateId at(std::size_t t) const {
    return t < prefix.size() ? prefix[t] : loop[(t - prefix.size()) % loop.size()];
  }
};

/// An accepting run of `aut` on the lasso word, found through the SCCs of
/// the product with the cycle; nullopt if the word is rejected. The loop
/// length is a multiple of the cycle length.
std::optional<LassoRun> nba_accepting_run(const BuchiAutomaton& aut, const Lasso& lasso);

inline bool nba_accepts_lasso(const BuchiAutomaton& aut, const Lasso& lasso) {
  return nba_accepting_run(aut, lasso).has_value();
}

/// Same question answered by closing the post-stem states under whole
/// cycle blocks and looking for a block that visits an accepting state and
/// lies on a cycle of blocks.
bool nba_accepts_lasso_unrolled(const BuchiAutomaton& aut, const Lasso& lasso);

/// Whether `run` is a run of `aut` on the lasso word that starts in an
/// initial state and visits an accepting state inside its loop.
bool is_accepting_run(const BuchiAutomaton& aut, const Lasso& lasso, const LassoRun& run);

/// All lassos with |stem| <= max_stem and 1 <= |cycle| <= max_cycle, stem
/// major, each part ordered by length and then by symbol index.
std::vector<Lasso> enumerate_lassos(std::size_t alphabet_size, std::size_t max_stem,
                                    std::size_t max_cycle);

/// Number of entries enumerate_lassos would return.
std::uint64_t lasso_count(std::size_t alphabet_size, std::size_t max_stem,
                          std::size_t max_cycle);

/// Tuples of the tree of state sets obtained by splitting every set's
/// successors into accepting (left) and non-accepting (right) parts, keeping
/// each state only in its leftmost occurrence and dropping empty sets.
/// Entry j holds the tuple after the first j symbols of `word`.
std::vector<std::vector<StateSet>> split_tree_levels(const BuchiAutomaton& aut,
                                                     const std::vector<SymbolId>& word);

// ---- random automata -----------------------------------------------------

/// Uniform draw in [0, 1) that does not depend on the standard library's
/// distribution implementations.
double unit_draw(std::mt19937_64& rng);
/// Uniform draw in [lo, hi].
std::size_t index_draw(std::mt19937_64& rng, std::size_t lo, std::size_t hi);

struct RandomNbaParams {
  std::size_t num_states = 4;
  std::size_t alphabet_size = 2;
  /// Each (source, symbol, target) triple is an edge with this probability.
  double density = 0.4;
  /// Each state is accepting with this probability.
  double accepting_fraction = 0.4;
};

/// Alphabet tokens a, b, c, ...; initial state 0.
BuchiAutomaton random_nba(const RandomNbaParams& params, std::mt19937_64& rng);

struct CorpusParams {
  std::size_t count = 100;
  std::size_t max_states = 5;
  std::size_t max_alphabet = 2;
  double density = 0.4;
  double accepting_fraction = 0.4;
  std::uint64_t seed = 1;
};

/// Each automaton draws its size from 1..max_states and its alphabet from
/// 1..max_alphabet. Deterministic in the parameters.
std::vector<BuchiAutomaton> random_corpus(const CorpusParams& params);

Lasso sample_lasso(std::mt19937_64& rng, std::size_t alphabet_size,
                   std::size_t max_stem, std::size_t max_cycle);

}  // namespace unidet
