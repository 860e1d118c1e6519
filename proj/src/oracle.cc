#include "unidet/oracle.hh"

#include <algorithm>
#include <deque>
#include <limits>
#include <string>

#include "unidet/error.hh"

namespace unidet {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Product of the automaton with the cycle: node q * |cycle| + j means state q
// about to read cycle[j].
struct Product {
  const BuchiAutomaton& aut;
  const std::vector<SymbolId>& cycle;

  std::size_t size() const { return aut.num_states() * cycle.size(); }
  std::size_t node(StateId q, std::size_t j) const { return q * cycle.size() + j; }
  StateId state(std::size_t v) const { return static_cast<StateId>(v / cycle.size()); }
  std::size_t offset(std::size_t v) const { return v % cycle.size(); }

  template <class F>
  void for_each_successor(std::size_t v, F&& f) const {
    const std::size_t j = offset(v);
    const std::size_t next = (j + 1) % cycle.size();
    for (StateId r : aut.successors(state(v), cycle[j])) f(node(r, next));
  }
};

// Iterative Tarjan restricted to nodes flagged in `active`. Returns the
// component index of every node (kNone outside `active`).
std::vector<std::size_t> tarjan(const Product& g, const std::vector<bool>& active) {
  const std::size_t n = g.size();
  std::vector<std::size_t> index(n, kNone), low(n, 0), comp(n, kNone);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t counter = 0, components = 0;

  struct Frame {
    std::size_t v;
    std::vector<std::size_t> succ;
    std::size_t next = 0;
  };
  for (std::size_t root = 0; root < n; ++root) {
    if (!active[root] || index[root] != kNone) continue;
    std::vector<Frame> call;
    auto enter = [&](std::size_t v) {
      index[v] = low[v] = counter++;
      stack.push_back(v);
      on_stack[v] = true;
      Frame f{v, {}, 0};
      g.for_each_successor(v, [&](std::size_t w) { f.succ.push_back(w); });
      call.push_back(std::move(f));
    };
    enter(root);
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.next < f.succ.size()) {
        const std::size_t w = f.succ[f.next++];
        if (!active[w]) continue;
        if (index[w] == kNone) {
          enter(w);
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      const std::size_t v = f.v;
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = components;
        } while (w != v);
        ++components;
      }
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
    }
  }
  return comp;
}

// Breadth-first search from `sources` over nodes satisfying `allowed`;
// returns parent pointers (sources point to themselves, unreached to kNone).
template <class Allowed>
std::vector<std::size_t> bfs(const Product& g, const std::vector<std::size_t>& sources,
                             Allowed&& allowed) {
  std::vector<std::size_t> parent(g.size(), kNone);
  std::deque<std::size_t> queue;
  for (std::size_t s : sources)
    if (parent[s] == kNone) {
      parent[s] = s;
      queue.push_back(s);
    }
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    g.for_each_successor(v, [&](std::size_t w) {
      if (parent[w] == kNone && allowed(w)) {
        parent[w] = v;
        queue.push_back(w);
      }
    });
  }
  return parent;
}

}  // namespace

std::optional<LassoRun> nba_accepting_run(const BuchiAutomaton& aut, const Lasso& lasso) {
  if (lasso.cycle.empty()) throw InvariantError("lasso cycle is empty");
  for (SymbolId x : lasso.stem)
    if (x >= aut.alphabet_size()) throw AlphabetError("lasso symbol out of range");
  for (SymbolId x : lasso.cycle)
    if (x >= aut.alphabet_size()) throw AlphabetError("lasso symbol out of range");

  // Stem layers with one predecessor per reached state.
  const std::size_t n = aut.num_states();
  std::vector<std::vector<std::size_t>> stem_parent;
  std::vector<bool> layer(n, false);
  for (StateId q : aut.initial()) layer[q] = true;
  for (SymbolId x : lasso.stem) {
    std::vector<std::size_t> par(n, kNone);
    std::vector<bool> next(n, false);
    for (StateId q = 0; q < n; ++q)
      if (layer[q])
        for (StateId r : aut.successors(q, x))
          if (!next[r]) {
            next[r] = true;
            par[r] = q;
          }
    stem_parent.push_back(std::move(par));
    layer = std::move(next);
  }

  const Product g{aut, lasso.cycle};
  std::vector<std::size_t> sources;
  for (StateId q = 0; q < n; ++q)
    if (layer[q]) sources.push_back(g.node(q, 0));
  const auto reach = bfs(g, sources, [](std::size_t) { return true; });
  std::vector<bool> active(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) active[v] = reach[v] != kNone;
  const auto comp = tarjan(g, active);

  std::vector<std::size_t> comp_size(g.size() + 1, 0);
  for (std::size_t v = 0; v < g.size(); ++v)
    if (comp[v] != kNone) ++comp_size[comp[v]];
  auto on_cycle = [&](std::size_t v) {
    if (comp_size[comp[v]] > 1) return true;
    bool self = false;
    g.for_each_successor(v, [&](std::size_t w) { self = self || w == v; });
    return self;
  };

  std::size_t target = kNone;
  for (std::size_t v = 0; v < g.size() && target == kNone; ++v)
    if (active[v] && aut.is_accepting(g.state(v)) && on_cycle(v)) target = v;
  if (target == kNone) return std::nullopt;

  LassoRun run;
  // Product path from a source to the target, then the stem back to Q0.
  std::vector<std::size_t> path;
  for (std::size_t v = target;; v = reach[v]) {
    path.push_back(v);
    if (reach[v] == v) break;
  }
  std::reverse(path.begin(), path.end());
  std::vector<StateId> stem_states(lasso.stem.size() + 1);
  stem_states.back() = g.state(path.front());
  for (std::size_t t = lasso.stem.size(); t > 0; --t)
    stem_states[t - 1] = static_cast<StateId>(stem_parent[t - 1][stem_states[t]]);
  run.prefix.assign(stem_states.begin(), stem_states.end() - 1);
  for (std::size_t i = 0; i + 1 < path.size(); ++i) run.prefix.push_back(g.state(path[i]));

  // Shortest cycle through the target inside its component.
  const std::size_t c = comp[target];
  std::vector<std::size_t> first_hop;
  g.for_each_successor(target, [&](std::size_t w) {
    if (comp[w] == c) first_hop.push_back(w);
  });
  std::vector<std::size_t> loop_nodes{target};
  if (std::find(first_hop.begin(), first_hop.end(), target) == first_hop.end()) {
    const auto back = bfs(g, first_hop, [&](std::size_t w) { return comp[w] == c; });
    std::vector<std::size_t> tail;
    for (std::size_t v = back[target]; ; v = back[v]) {
      tail.push_back(v);
      if (back[v] == v) break;
    }
    loop_nodes.insert(loop_nodes.end(), tail.rbegin(), tail.rend());
  }
  for (std::size_t v : loop_nodes) run.loop.push_back(g.state(v));
  return run;
}

bool is_accepting_run(const BuchiAutomaton& aut, const Lasso& lasso, const LassoRun& run) {
  if (run.loop.empty() || lasso.cycle.empty()) return false;
  if (run.loop.size() % lasso.cycle.size() != 0) return false;
  const std::size_t p = run.prefix.size();
  // The word repeats with the loop only once the stem has been read.
  if (p < lasso.stem.size()) return false;
  for (std::size_t t = 0; t < p + run.loop.size(); ++t)
    if (run.at(t) >= aut.num_states()) return false;
  if (!aut.initial().contains(run.at(0))) return false;
  for (std::size_t t = 0; t < p + run.loop.size(); ++t)
    if (!aut.successors(run.at(t), lasso.at(t)).contains(run.at(t + 1))) return false;
  return std::any_of(run.loop.begin(), run.loop.end(),
                     [&](StateId q) { return aut.is_accepting(q); });
}

bool nba_accepts_lasso_unrolled(const BuchiAutomaton& aut, const Lasso& lasso) {
  if (lasso.cycle.empty()) throw InvariantError("lasso cycle is empty");
  const std::size_t n = aut.num_states();
  StateSet current = aut.initial();
  for (SymbolId x : lasso.stem) current = aut.successors(current, x);

  // block[a]: end states of a cycle block from a; block_f[a]: those reached
  // on a path that meets an accepting state after at least one symbol.
  std::vector<StateSet> block(n), block_f(n);
  for (StateId a = 0; a < n; ++a) {
    StateSet plain{a}, marked;
    for (SymbolId x : lasso.cycle) {
      StateSet np = aut.successors(plain, x);
      StateSet nm = aut.successors(marked, x);
      nm.insert_all(np & aut.accepting());
      plain = np - nm;
      marked = nm;
    }
    block[a] = plain | marked;
    block_f[a] = marked;
  }

  std::vector<bool> in_b(n, false);
  std::vector<StateId> work(current.begin(), current.end());
  for (StateId q : work) in_b[q] = true;
  while (!work.empty()) {
    StateId q = work.back();
    work.pop_back();
    for (StateId r : block[q])
      if (!in_b[r]) {
        in_b[r] = true;
        work.push_back(r);
      }
  }
  auto reaches = [&](StateId from, StateId to) {
    std::vector<bool> seen(n, false);
    std::vector<StateId> todo{from};
    seen[from] = true;
    while (!todo.empty()) {
      StateId q = todo.back();
      todo.pop_back();
      if (q == to) return true;
      for (StateId r : block[q])
        if (!seen[r]) {
          seen[r] = true;
          todo.push_back(r);
        }
    }
    return false;
  };
  for (StateId a = 0; a < n; ++a)
    if (in_b[a])
      for (StateId b : block_f[a])
        if (reaches(b, a)) return true;
  return false;
}

namespace {

// All words of exactly `len` symbols in lexicographic order.
std::vector<std::vector<SymbolId>> words_of_length(std::size_t sigma, std::size_t len) {
  std::vector<std::vector<SymbolId>> out;
  std::vector<SymbolId> w(len, 0);
  while (true) {
    out.push_back(w);
    std::size_t i = len;
    while (i > 0 && w[i - 1] + 1 == sigma) w[--i] = 0;
    if (i == 0) break;
    ++w[i - 1];
  }
  return out;
}

}  // namespace

std::vector<Lasso> enumerate_lassos(std::size_t alphabet_size, std::size_t max_stem,
                                    std::size_t max_cycle) {
  std::vector<Lasso> out;
  if (alphabet_size == 0) return out;
  std::vector<std::vector<SymbolId>> cycles;
  for (std::size_t len = 1; len <= max_cycle; ++len)
    for (auto& w : words_of_length(alphabet_size, len)) cycles.push_back(std::move(w));
  for (std::size_t len = 0; len <= max_stem; ++len)
    for (const auto& u : words_of_length(alphabet_size, len))
      for (const auto& v : cycles) out.push_back({u, v});
  return out;
}

std::uint64_t lasso_count(std::size_t alphabet_size, std::size_t max_stem,
                          std::size_t max_cycle) {
  std::uint64_t stems = 0, cycles = 0, power = 1;
  for (std::size_t i = 0; i <= std::max(max_stem, max_cycle); ++i) {
    if (i <= max_stem) stems += power;
    if (i >= 1 && i <= max_cycle) cycles += power;
    power *= alphabet_size;
  }
  return stems * cycles;
}

std::vector<std::vector<StateSet>> split_tree_levels(const BuchiAutomaton& aut,
                                                     const std::vector<SymbolId>& word) {
  std::vector<std::vector<StateSet>> levels{{aut.initial()}};
  for (SymbolId x : word) {
    std::vector<StateSet> next;
    StateSet seen;
    for (const StateSet& s : levels.back()) {
      StateSet succ = aut.successors(s, x);
      for (StateSet part : {succ & aut.accepting(), succ - aut.accepting()}) {
        part = part - seen;
        seen.insert_all(part);
        if (!part.empty()) next.push_back(std::move(part));
      }
    }
    levels.push_back(std::move(next));
  }
  return levels;
}

double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t index_draw(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
}

BuchiAutomaton random_nba(const RandomNbaParams& params, std::mt19937_64& rng) {
  if (params.num_states == 0 || params.alphabet_size == 0)
    throw InvariantError("random automaton needs states and symbols");
  if (params.alphabet_size > 26) throw InvariantError("at most 26 random symbols");
  std::vector<std::string> alphabet;
  for (std::size_t i = 0; i < params.alphabet_size; ++i)
    alphabet.emplace_back(1, static_cast<char>('a' + i));
  std::vector<Transition> edges;
  for (StateId p = 0; p < params.num_states; ++p)
    for (SymbolId x = 0; x < params.alphabet_size; ++x)
      for (StateId q = 0; q < params.num_states; ++q)
        if (unit_draw(rng) < params.density) edges.push_back({p, x, q});
  std::vector<StateId> accepting;
  for (StateId q = 0; q < params.num_states; ++q)
    if (unit_draw(rng) < params.accepting_fraction) accepting.push_back(q);
  return BuchiAutomaton(params.num_states, std::move(alphabet), std::move(edges),
                        StateSet{0}, StateSet::from_unsorted(std::move(accepting)));
}

std::vector<BuchiAutomaton> random_corpus(const CorpusParams& params) {
  std::mt19937_64 rng(params.seed);
  std::vector<BuchiAutomaton> out;
  out.reserve(params.count);
  for (std::size_t i = 0; i < params.count; ++i) {
    RandomNbaParams p;
    p.num_states = index_draw(rng, 1, params.max_states);
    p.alphabet_size = index_draw(rng, 1, params.max_alphabet);
    p.density = params.density;
    p.accepting_fraction = params.accepting_fraction;
    out.push_back(random_nba(p, rng));
  }
  return out;
}

Lasso sample_lasso(std::mt19937_64& rng, std::size_t alphabet_size, std::size_t max_stem,
                   std::size_t max_cycle) {
  Lasso l;
  const std::size_t s = index_draw(rng, 0, max_stem);
  const std::size_t c = index_draw(rng, 1, std::max<std::size_t>(max_cycle, 1));
  for (std::size_t i = 0; i < s; ++i)
    l.stem.push_back(static_cast<SymbolId>(index_draw(rng, 0, alphabet_size - 1)));
  for (std::size_t i = 0; i < c; ++i)
    l.cycle.push_back(static_cast<SymbolId>(index_draw(rng, 0, alphabet_size - 1)));
  return l;
}

}  // namespace unidet
