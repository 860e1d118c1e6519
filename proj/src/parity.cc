#include "unidet/parity.hh"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "text.hh"
#include "unidet/error.hh"

namespace unidet {

ParityAutomaton::ParityAutomaton(std::size_t num_states,
                                 std::vector<std::string> alphabet,
                                 StateId initial)
    : num_states_(num_states),
      alphabet_(std::move(alphabet)),
      initial_(initial),
      edges_(num_states * alphabet_.size()),
      labels_(num_states) {
  if (num_states_ == 0) throw InvariantError("parity automaton needs a state");
  if (initial_ >= num_states_) throw InvariantError("initial state out of range");
}

const std::optional<DpaEdge>& ParityAutomaton::edge(StateId q, SymbolId x) const {
  if (q >= num_states_ || x >= alphabet_.size())
    throw StructuralError("edge query out of range");
  return edges_[q * alphabet_.size() + x];
}

void ParityAutomaton::set_edge(StateId q, SymbolId x, DpaEdge e) {
  if (q >= num_states_ || e.target >= num_states_ || x >= alphabet_.size())
    throw InvariantError("edge endpoint out of range");
  if (e.priority < 1) throw InvariantError("priorities start at 1");
  edges_[q * alphabet_.size() + x] = e;
}

std::size_t ParityAutomaton::num_edges() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(edges_.begin(), edges_.end(), [](const auto& e) { return e.has_value(); }));
}

bool ParityAutomaton::is_complete() const noexcept {
  return num_edges() == edges_.size();
}

const std::optional<std::string>& ParityAutomaton::label(StateId q) const {
  return labels_.at(q);
}

void ParityAutomaton::set_label(StateId q, std::string label) {
  labels_.at(q) = std::move(label);
}

void ParityAutomaton::clear_labels() {
  for (auto& l : labels_) l.reset();
}

LassoVerdict run_lasso(const ParityAutomaton& dpa, const Lasso& lasso) {
  if (lasso.cycle.empty()) throw InvariantError("lasso cycle is empty");
  auto step = [&](StateId q, SymbolId x) -> DpaEdge {
    const auto& e = dpa.edge(q, x);
    if (!e)
      throw StructuralError("missing edge from state " + std::to_string(q) +
                            " on '" + dpa.alphabet().at(x) + "'");
    return *e;
  };
  StateId q = dpa.initial();
  for (SymbolId x : lasso.stem) q = step(q, x).target;

  // Pigeonhole over the states seen at cycle boundaries.
  std::map<StateId, std::size_t> boundary_index;
  std::vector<std::vector<StateId>> pass_states;
  std::vector<Priority> pass_min;
  while (!boundary_index.contains(q)) {
    boundary_index.emplace(q, pass_states.size());
    std::vector<StateId> states;
    Priority lo = 0;
    for (SymbolId x : lasso.cycle) {
      states.push_back(q);
      DpaEdge e = step(q, x);
      lo = (lo == 0) ? e.priority : std::min(lo, e.priority);
      q = e.target;
    }
    pass_states.push_back(std::move(states));
    pass_min.push_back(lo);
  }
  LassoVerdict v;
  for (std::size_t i = boundary_index.at(q); i < pass_states.size(); ++i) {
    v.cycle_states.insert(v.cycle_states.end(), pass_states[i].begin(),
                          pass_states[i].end());
    v.min_priority = (v.min_priority == 0) ? pass_min[i]
                                           : std::min(v.min_priority, pass_min[i]);
  }
  v.accepted = v.min_priority % 2 == 0;
  return v;
}

std::string serialize_dpa(const ParityAutomaton& dpa) {
  std::ostringstream out;
  out << "dpa\n";
  out << "states " << dpa.num_states() << '\n';
  out << "alphabet";
  for (const auto& tok : dpa.alphabet()) out << ' ' << tok;
  out << "\ninit " << dpa.initial() << '\n';
  for (StateId q = 0; q < dpa.num_states(); ++q)
    if (const auto& l = dpa.label(q)) out << "label " << q << ' ' << *l << '\n';
  for (StateId q = 0; q < dpa.num_states(); ++q)
    for (SymbolId x = 0; x < dpa.alphabet_size(); ++x)
      if (const auto& e = dpa.edge(q, x))
        out << q << ' ' << dpa.alphabet()[x] << ' ' << e->target << ' '
            << e->priority << '\n';
  return out.str();
}

ParityAutomaton parse_dpa(std::string_view input) {
  auto lines = text::tokenize(input);
  if (lines.empty()) throw ParseError(0, "empty input, expected 'dpa'");
  if (lines[0].tokens.size() != 1 || lines[0].tokens[0] != "dpa")
    throw ParseError(lines[0].number, "expected 'dpa' header");

  std::optional<std::uint64_t> num_states, initial;
  std::size_t init_line = 0;
  std::optional<std::vector<std::string>> alphabet;
  struct PendingLabel {
    std::size_t line;
    std::uint64_t state;
    std::string text;
  };
  struct PendingEdge {
    std::size_t line;
    std::uint64_t src;
    std::string_view symbol;
    std::uint64_t dst;
    std::uint64_t priority;
  };
  std::vector<PendingLabel> labels;
  std::vector<PendingEdge> edges;

  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto& line = lines[li];
    std::string_view head = line.tokens[0];
    if (head == "states") {
      if (num_states) throw ParseError(line.number, "duplicate 'states' line");
      if (line.tokens.size() != 2 || !(num_states = text::to_uint(line.tokens[1])))
        throw ParseError(line.number, "expected 'states <n>'");
    } else if (head == "alphabet") {
      if (alphabet) throw ParseError(line.number, "duplicate 'alphabet' line");
      alphabet.emplace();
      std::set<std::string_view> seen;
      for (std::size_t i = 1; i < line.tokens.size(); ++i) {
        if (!seen.insert(line.tokens[i]).second)
          throw ParseError(line.number, "duplicate alphabet token '" +
                                            std::string(line.tokens[i]) + "'");
        alphabet->emplace_back(line.tokens[i]);
      }
      if (alphabet->empty()) throw ParseError(line.number, "empty alphabet");
    } else if (head == "init") {
      if (initial) throw ParseError(line.number, "duplicate 'init' line");
      if (line.tokens.size() != 2 || !(initial = text::to_uint(line.tokens[1])))
        throw ParseError(line.number, "expected 'init <id>'");
      init_line = line.number;
    } else if (head == "label") {
      if (line.tokens.size() < 3)
        throw ParseError(line.number, "expected 'label <id> <text>'");
      auto id = text::to_uint(line.tokens[1]);
      if (!id) throw ParseError(line.number, "label needs a state id");
      std::string body;
      for (std::size_t i = 2; i < line.tokens.size(); ++i) {
        if (i > 2) body += ' ';
        body += line.tokens[i];
      }
      labels.push_back({line.number, *id, std::move(body)});
    } else {
      if (line.tokens.size() != 4)
        throw ParseError(line.number, "expected '<src> <symbol> <dst> <priority>'");
      auto src = text::to_uint(line.tokens[0]);
      auto dst = text::to_uint(line.tokens[2]);
      auto pri = text::to_uint(line.tokens[3]);
      if (!src || !dst || !pri)
        throw ParseError(line.number, "malformed transition line");
      if (*pri < 1 || *pri > 0xffffffffu)
        throw ParseError(line.number, "priority must be a positive integer");
      edges.push_back({line.number, *src, line.tokens[1], *dst, *pri});
    }
  }
  if (!num_states) throw ParseError(lines.back().number, "missing 'states' line");
  if (!alphabet) throw ParseError(lines.back().number, "missing 'alphabet' line");
  if (!initial) throw ParseError(lines.back().number, "missing 'init' line");

  const std::uint64_t n = *num_states;
  auto check = [&](std::uint64_t id, std::size_t line) {
    if (id >= n)
      throw ParseError(line, "state " + std::to_string(id) + " out of range for " +
                                 std::to_string(n) + " states");
    return static_cast<StateId>(id);
  };
  if (n == 0) throw ParseError(lines.back().number, "parity automaton needs a state");
  ParityAutomaton dpa(n, *alphabet, check(*initial, init_line));
  for (auto& l : labels) {
    StateId q = check(l.state, l.line);
    if (dpa.label(q)) throw ParseError(l.line, "duplicate label");
    dpa.set_label(q, std::move(l.text));
  }
  for (const auto& e : edges) {
    auto it = std::find(alphabet->begin(), alphabet->end(), e.symbol);
    if (it == alphabet->end())
      throw ParseError(e.line, "unknown symbol '" + std::string(e.symbol) + "'");
    StateId src = check(e.src, e.line);
    auto x = static_cast<SymbolId>(it - alphabet->begin());
    if (dpa.edge(src, x))
      throw ParseError(e.line, "second edge for the same state and symbol");
    dpa.set_edge(src, x, {check(e.dst, e.line), static_cast<Priority>(e.priority)});
  }
  return dpa;
}

ParityAutomaton compact_priorities(const ParityAutomaton& dpa) {
  std::set<Priority> used;
  for (StateId q = 0; q < dpa.num_states(); ++q)
    for (SymbolId x = 0; x < dpa.alphabet_size(); ++x)
      if (const auto& e = dpa.edge(q, x)) used.insert(e->priority);
  // Adjacent values of equal parity collapse; a parity change steps by one.
  std::map<Priority, Priority> remap;
  Priority cur = 0;
  for (Priority p : used) {
    if (remap.empty()) cur = (p % 2 == 1) ? 1 : 2;
    else if ((p % 2) != (cur % 2)) ++cur;
    remap[p] = cur;
  }
  ParityAutomaton out = dpa;
  for (StateId q = 0; q < dpa.num_states(); ++q)
    for (SymbolId x = 0; x < dpa.alphabet_size(); ++x)
      if (const auto& e = dpa.edge(q, x))
        out.set_edge(q, x, {e->target, remap.at(e->priority)});
  return out;
}

}  // namespace unidet
