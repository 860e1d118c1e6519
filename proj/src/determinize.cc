#include "unidet/determinize.hh"

#include <algorithm>
#include <unordered_map>

#include "unidet/error.hh"
#include "unidet/safra.hh"

namespace unidet {

MergeStrategy MergeStrategy::adaptive(MergeKind fallback, std::size_t limit) {
  if (fallback == MergeKind::adaptive)
    throw InvariantError("adaptive merge cannot fall back to itself");
  return MergeStrategy{MergeKind::adaptive, fallback, limit};
}

std::string_view strategy_token(MergeKind kind) {
  switch (kind) {
    case MergeKind::muller_schupp: return "ms";
    case MergeKind::safra: return "safra";
    case MergeKind::max_collapse: return "max";
    case MergeKind::adaptive: return "adaptive";
  }
  return "?";
}

std::optional<MergeKind> parse_strategy_token(std::string_view token) {
  for (MergeKind k : {MergeKind::muller_schupp, MergeKind::safra,
                      MergeKind::max_collapse, MergeKind::adaptive})
    if (strategy_token(k) == token) return k;
  return std::nullopt;
}

std::string to_string(const IntervalPartition& partition) {
  std::string out;
  for (const auto& iv : partition) {
    out += '[';
    out += std::to_string(iv.first);
    if (iv.last != iv.first) {
      out += '-';
      out += std::to_string(iv.last);
    }
    out += ']';
  }
  return out.empty() ? "[]" : out;
}

IntervalPartition singleton_partition(std::size_t n) {
  IntervalPartition p;
  p.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) p.push_back({i, i});
  return p;
}

StateSet restricted_successors(const BuchiAutomaton& aut, const RankedSlice& slice,
                               StateId q, SymbolId x) {
  const std::size_t pos = slice.index_of(q);
  StateSet left;
  for (std::size_t j = 1; j < pos; ++j) left.insert_all(aut.successors(slice.at(j).states, x));
  return aut.successors(q, x) - left;
}

PreSlice step(const BuchiAutomaton& aut, const RankedSlice& slice, SymbolId x) {
  const std::size_t n = slice.size();
  PreSlice out;
  out.entries.reserve(2 * n);
  StateSet seen;
  for (std::size_t i = 1; i <= n; ++i) {
    StateSet d = aut.successors(slice.at(i).states, x) - seen;
    seen.insert_all(d);
    out.entries.push_back({d & aut.accepting(), static_cast<Rank>(n + i)});
    out.entries.push_back({d - aut.accepting(), slice.at(i).rank});
  }
  return out;
}

PruneResult prune(const PreSlice& stepped, Rank first_fresh) {
  PruneResult res;
  const auto& in = stepped.entries;
  std::vector<bool> kept_rank;  // indexed by rank
  auto mark = [&](Rank r) {
    if (r >= kept_rank.size()) kept_rank.resize(r + 1, false);
    kept_rank[r] = true;
  };
  std::size_t i = 0;
  while (i < in.size() && in[i].states.empty()) ++i;
  while (i < in.size()) {
    std::size_t j = i + 1;
    Rank lo = in[i].rank;
    while (j < in.size() && in[j].states.empty()) lo = std::min(lo, in[j++].rank);
    res.slice.entries.push_back({in[i].states, lo});
    mark(lo);
    i = j;
  }
  std::vector<const RankedSet*> old;
  for (const auto& e : in)
    if (e.rank < first_fresh) old.push_back(&e);
  std::sort(old.begin(), old.end(),
            [](const RankedSet* a, const RankedSet* b) { return a->rank < b->rank; });
  for (const RankedSet* e : old) {
    const bool kept = e->rank < kept_rank.size() && kept_rank[e->rank];
    if (!kept)
      res.red.push_back(e->rank);
    else if (e->states.empty())
      res.green.push_back(e->rank);
  }
  return res;
}

Dominance dominating_rank(const std::vector<Rank>& green, const std::vector<Rank>& red,
                          std::size_t num_states) {
  auto g = std::min_element(green.begin(), green.end());
  auto r = std::min_element(red.begin(), red.end());
  if (g == green.end() && r == red.end()) {
    const Rank k = static_cast<Rank>(num_states + 1);
    return {k, 2 * k - 1};
  }
  if (r == red.end() || (g != green.end() && *g < *r)) return {*g, 2 * *g};
  return {*r, 2 * *r - 1};
}

namespace {

// Cut after position l (1 <= l < n) is forced when the set at l has rank <= k
// or the set at l+1 has rank < k.
std::vector<bool> forced_cuts(const PreSlice& pruned, Rank k) {
  const std::size_t n = pruned.size();
  std::vector<bool> forced(n + 1, false);
  for (std::size_t l = 1; l < n; ++l)
    forced[l] = pruned.entries[l - 1].rank <= k || pruned.entries[l].rank < k;
  return forced;
}

IntervalPartition from_cuts(std::size_t n, const std::vector<bool>& cut) {
  IntervalPartition p;
  std::size_t first = 1;
  for (std::size_t l = 1; l <= n; ++l)
    if (l == n || cut[l]) {
      p.push_back({first, l});
      first = l + 1;
    }
  return p;
}

IntervalPartition safra_partition(const PreSlice& pruned, const std::vector<Rank>& green) {
  const std::size_t n = pruned.size();
  const auto ranks = pruned.ranks();
  const TreeShape shape = unflatten(ranks);
  // span_end[p]: right end of the widest green subtree span starting at p.
  // Spans sharing a position are fused.
  std::vector<std::size_t> span_end(n + 2, 0);
  for (std::size_t l = 1; l <= n; ++l)
    if (std::binary_search(green.begin(), green.end(), ranks[l - 1])) {
      const std::size_t first = shape.left_boundary[l - 1] + 1;
      span_end[first] = std::max(span_end[first], l);
    }
  IntervalPartition p;
  std::size_t i = 1;
  while (i <= n) {
    std::size_t last = i;
    std::size_t reach = span_end[i];
    for (std::size_t j = i; j <= reach && j <= n; ++j) reach = std::max(reach, span_end[j]);
    if (reach > last) last = reach;
    p.push_back({i, last});
    i = last + 1;
  }
  return p;
}

}  // namespace

bool is_valid_partition(const PreSlice& pruned, Rank k, const IntervalPartition& partition) {
  const std::size_t n = pruned.size();
  std::size_t expect = 1;
  for (const auto& iv : partition) {
    if (iv.first != expect || iv.last < iv.first || iv.last > n) return false;
    expect = iv.last + 1;
  }
  if (expect != n + 1) return false;
  const auto forced = forced_cuts(pruned, k);
  for (const auto& iv : partition)
    for (std::size_t l = iv.first; l < iv.last; ++l)
      if (forced[l]) return false;
  return true;
}

std::vector<IntervalPartition> valid_partitions(const PreSlice& pruned, Rank k,
                                                std::size_t limit) {
  std::vector<IntervalPartition> out;
  const std::size_t n = pruned.size();
  if (limit == 0) return out;
  if (n == 0) {
    out.emplace_back();
    return out;
  }
  const auto forced = forced_cuts(pruned, k);
  std::vector<std::size_t> optional;
  for (std::size_t l = 1; l < n; ++l)
    if (!forced[l]) optional.push_back(l);
  const std::size_t f = optional.size();
  for (std::size_t chosen = 0; chosen <= f; ++chosen) {
    std::vector<std::size_t> idx(chosen);
    for (std::size_t t = 0; t < chosen; ++t) idx[t] = t;
    while (true) {
      std::vector<bool> cut = forced;
      for (std::size_t t : idx) cut[optional[t]] = true;
      out.push_back(from_cuts(n, cut));
      if (out.size() >= limit) return out;
      // Next combination in lexicographic order.
      std::size_t t = chosen;
      while (t > 0 && idx[t - 1] == f - chosen + t - 1) --t;
      if (t == 0) break;
      ++idx[t - 1];
      for (std::size_t u = t; u < chosen; ++u) idx[u] = idx[u - 1] + 1;
    }
  }
  return out;
}

PreSlice merge(const PreSlice& pruned, const IntervalPartition& partition) {
  PreSlice out;
  out.entries.reserve(partition.size());
  for (const auto& iv : partition) {
    RankedSet m{StateSet{}, pruned.entries.at(iv.first - 1).rank};
    for (std::size_t l = iv.first; l <= iv.last; ++l) {
      const auto& e = pruned.entries.at(l - 1);
      m.states.insert_all(e.states);
      m.rank = std::min(m.rank, e.rank);
    }
    out.entries.push_back(std::move(m));
  }
  return out;
}

RankedSlice normalize(const PreSlice& merged) {
  if (!merged.has_distinct_ranks())
    throw InvariantError("cannot normalize repeated ranks: " + merged.to_string());
  auto sorted = merged.ranks();
  std::sort(sorted.begin(), sorted.end());
  PreSlice out = merged;
  for (auto& e : out.entries)
    e.rank = static_cast<Rank>(
        std::lower_bound(sorted.begin(), sorted.end(), e.rank) - sorted.begin() + 1);
  return RankedSlice::from(std::move(out));
}

IntervalPartition choose_partition(const PreSlice& pruned, Rank k,
                                   const std::vector<Rank>& green,
                                   const MergeStrategy& strategy,
                                   const KnownSlices& known) {
  switch (strategy.kind) {
    case MergeKind::muller_schupp:
      return singleton_partition(pruned.size());
    case MergeKind::safra:
      return safra_partition(pruned, green);
    case MergeKind::max_collapse:
      return from_cuts(pruned.size(), forced_cuts(pruned, k));
    case MergeKind::adaptive:
      break;
  }
  if (known) {
    for (auto& p : valid_partitions(pruned, k, strategy.adaptive_limit))
      if (known(normalize(merge(pruned, p)))) return p;
  }
  return choose_partition(pruned, k, green, MergeStrategy::of(strategy.fallback));
}

TransitionTrace trace_transition(const BuchiAutomaton& aut, const RankedSlice& slice,
                                 SymbolId x, const MergeStrategy& strategy,
                                 const KnownSlices& known) {
  TransitionTrace t;
  if (x >= aut.alphabet_size()) throw AlphabetError("symbol id out of range");
  if (slice.is_sink()) {
    t.outcome.sink = true;
    t.outcome.dominating = 1;
    t.outcome.priority = 1;
    return t;
  }
  t.stepped = step(aut, slice, x);
  PruneResult pr = prune(t.stepped, static_cast<Rank>(slice.size() + 1));
  t.pruned = std::move(pr.slice);
  const Dominance dom = dominating_rank(pr.green, pr.red, aut.num_states());
  t.partition = choose_partition(t.pruned, dom.rank, pr.green, strategy, known);
  if (!is_valid_partition(t.pruned, dom.rank, t.partition))
    throw InvariantError("merge partition " + to_string(t.partition) +
                         " violates dominating rank " + std::to_string(dom.rank));
  t.merged = merge(t.pruned, t.partition);
  t.outcome.successor = normalize(t.merged);
  t.outcome.priority = dom.priority;
  t.outcome.dominating = dom.rank;
  t.outcome.green = std::move(pr.green);
  t.outcome.red = std::move(pr.red);
  t.outcome.sink = t.outcome.successor.is_sink();
  return t;
}

ParityAutomaton determinize(const BuchiAutomaton& aut, const DeterminizeOptions& options) {
  std::unordered_map<RankedSlice, StateId, RankedSliceHash> ids;
  std::vector<RankedSlice> slices;
  auto intern = [&](const RankedSlice& s) {
    auto [it, fresh] = ids.try_emplace(s, static_cast<StateId>(slices.size()));
    if (fresh) {
      if (slices.size() >= options.max_states)
        throw CapacityError("more than " + std::to_string(options.max_states) +
                            " macrostates");
      slices.push_back(s);
    }
    return it->second;
  };
  const KnownSlices known = [&](const RankedSlice& s) { return ids.contains(s); };

  intern(RankedSlice::initial(aut.initial()));
  const std::size_t sigma = aut.alphabet_size();
  std::vector<DpaEdge> edges;
  for (std::size_t q = 0; q < slices.size(); ++q) {
    for (SymbolId x = 0; x < sigma; ++x) {
      const RankedSlice current = slices[q];
      TransitionTrace t = trace_transition(aut, current, x, options.strategy, known);
      const StateId target = intern(t.outcome.successor);
      edges.push_back({target, t.outcome.priority});
      if (options.observer) options.observer(static_cast<StateId>(q), x, t);
    }
  }

  ParityAutomaton dpa(slices.size(), aut.alphabet(), 0);
  for (std::size_t q = 0; q < slices.size(); ++q) {
    for (SymbolId x = 0; x < sigma; ++x)
      dpa.set_edge(static_cast<StateId>(q), x, edges[q * sigma + x]);
    if (options.labels) dpa.set_label(static_cast<StateId>(q), slices[q].to_string());
  }
  return dpa;
}

}  // namespace unidet
