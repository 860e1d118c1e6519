#include "unidet/nba.hh"

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>
#include <unordered_map>

#include "text.hh"
#include "unidet/error.hh"

namespace unidet {

BuchiAutomaton::BuchiAutomaton(std::size_t num_states,
                               std::vector<std::string> alphabet,
                               std::vector<Transition> transitions,
                               StateSet initial, StateSet accepting)
    : num_states_(num_states),
      alphabet_(std::move(alphabet)),
      initial_(std::move(initial)),
      accepting_(std::move(accepting)),
      succ_(num_states_ * alphabet_.size()) {
  std::set<std::string_view> seen;
  for (const auto& tok : alphabet_) {
    if (tok.empty() || tok.find_first_of(" \t\r\n#|") != std::string::npos)
      throw InvariantError("invalid alphabet token '" + tok + "'");
    if (!seen.insert(tok).second)
      throw InvariantError("duplicate alphabet token '" + tok + "'");
  }
  if (initial_.empty()) throw InvariantError("initial state set is empty");
  auto check_state = [&](StateId q, const char* what) {
    if (q >= num_states_)
      throw InvariantError(std::string(what) + " state " + std::to_string(q) +
                           " out of range");
  };
  for (StateId q : initial_) check_state(q, "initial");
  for (StateId q : accepting_) check_state(q, "accepting");
  for (const auto& t : transitions) {
    check_state(t.source, "transition source");
    check_state(t.target, "transition target");
    if (t.symbol >= alphabet_.size())
      throw InvariantError("transition symbol index out of range");
    succ_[t.source * alphabet_.size() + t.symbol].insert(t.target);
  }
}

void BuchiAutomaton::check_symbol(SymbolId x) const {
  if (x >= alphabet_.size())
    throw AlphabetError("symbol index " + std::to_string(x) +
                        " not in alphabet");
}

SymbolId BuchiAutomaton::symbol_id(std::string_view token) const {
  auto it = std::find(alphabet_.begin(), alphabet_.end(), token);
  if (it == alphabet_.end())
    throw AlphabetError("unknown symbol '" + std::string(token) + "'");
  return static_cast<SymbolId>(it - alphabet_.begin());
}

const std::string& BuchiAutomaton::symbol_token(SymbolId x) const {
  check_symbol(x);
  return alphabet_[x];
}

const StateSet& BuchiAutomaton::successors(StateId q, SymbolId x) const {
  check_symbol(x);
  if (q >= num_states_)
    throw StateNotPresent("state " + std::to_string(q) + " out of range");
  return succ_[q * alphabet_.size() + x];
}

StateSet BuchiAutomaton::successors(const StateSet& sources, SymbolId x) const {
  check_symbol(x);
  std::vector<StateId> acc;
  for (StateId p : sources) {
    const auto& s = successors(p, x);
    acc.insert(acc.end(), s.begin(), s.end());
  }
  return StateSet::from_unsorted(std::move(acc));
}

std::vector<Transition> BuchiAutomaton::transitions() const {
  std::vector<Transition> out;
  for (StateId p = 0; p < num_states_; ++p)
    for (SymbolId x = 0; x < alphabet_.size(); ++x)
      for (StateId q : succ_[p * alphabet_.size() + x]) out.push_back({p, x, q});
  return out;
}

std::size_t BuchiAutomaton::num_transitions() const noexcept {
  std::size_t n = 0;
  for (const auto& s : succ_) n += s.size();
  return n;
}

namespace {

struct PendingIds {
  std::size_t line = 0;
  std::vector<std::uint64_t> ids;
};

std::vector<std::uint64_t> parse_ids(const text::Line& line) {
  std::vector<std::uint64_t> ids;
  for (std::size_t i = 1; i < line.tokens.size(); ++i) {
    auto v = text::to_uint(line.tokens[i]);
    if (!v)
      throw ParseError(line.number, "expected state id, got '" +
                                        std::string(line.tokens[i]) + "'");
    ids.push_back(*v);
  }
  return ids;
}

}  // namespace

BuchiAutomaton parse_nba(std::string_view input) {
  auto lines = text::tokenize(input);
  if (lines.empty()) throw ParseError(0, "empty input, expected 'nba'");
  if (lines[0].tokens.size() != 1 || lines[0].tokens[0] != "nba")
    throw ParseError(lines[0].number, "expected 'nba' header");

  std::optional<std::uint64_t> num_states;
  std::optional<std::vector<std::string>> alphabet;
  std::optional<PendingIds> init, accept;
  struct PendingTransition {
    std::size_t line;
    std::uint64_t src;
    std::string_view symbol;
    std::uint64_t dst;
  };
  std::vector<PendingTransition> pending;

  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto& line = lines[li];
    std::string_view head = line.tokens[0];
    if (head == "states") {
      if (num_states) throw ParseError(line.number, "duplicate 'states' line");
      if (line.tokens.size() != 2)
        throw ParseError(line.number, "expected 'states <n>'");
      num_states = text::to_uint(line.tokens[1]);
      if (!num_states) throw ParseError(line.number, "invalid state count");
    } else if (head == "alphabet") {
      if (alphabet) throw ParseError(line.number, "duplicate 'alphabet' line");
      alphabet.emplace();
      std::set<std::string_view> seen;
      for (std::size_t i = 1; i < line.tokens.size(); ++i) {
        if (!seen.insert(line.tokens[i]).second)
          throw ParseError(line.number, "duplicate alphabet token '" +
                                            std::string(line.tokens[i]) + "'");
        if (line.tokens[i].find('|') != std::string_view::npos)
          throw ParseError(line.number, "alphabet token must not contain '|'");
        alphabet->emplace_back(line.tokens[i]);
      }
      if (alphabet->empty()) throw ParseError(line.number, "empty alphabet");
    } else if (head == "init") {
      if (init) throw ParseError(line.number, "duplicate 'init' line");
      init = PendingIds{line.number, parse_ids(line)};
    } else if (head == "accept") {
      if (accept) throw ParseError(line.number, "duplicate 'accept' line");
      accept = PendingIds{line.number, parse_ids(line)};
    } else {
      if (line.tokens.size() != 3)
        throw ParseError(line.number, "expected '<src> <symbol> <dst>'");
      auto src = text::to_uint(line.tokens[0]);
      auto dst = text::to_uint(line.tokens[2]);
      if (!src || !dst)
        throw ParseError(line.number, "transition endpoints must be state ids");
      pending.push_back({line.number, *src, line.tokens[1], *dst});
    }
  }

  if (!num_states) throw ParseError(lines.back().number, "missing 'states' line");
  if (!alphabet) throw ParseError(lines.back().number, "missing 'alphabet' line");
  if (!init) throw ParseError(lines.back().number, "missing 'init' line");

  const std::uint64_t n = *num_states;
  auto check = [&](std::uint64_t id, std::size_t line) {
    if (id >= n)
      throw ParseError(line, "state " + std::to_string(id) +
                                 " out of range for " + std::to_string(n) +
                                 " states");
    return static_cast<StateId>(id);
  };
  std::vector<StateId> init_ids, acc_ids;
  for (auto id : init->ids) init_ids.push_back(check(id, init->line));
  if (init_ids.empty()) throw ParseError(init->line, "initial set is empty");
  if (accept)
    for (auto id : accept->ids) acc_ids.push_back(check(id, accept->line));

  std::vector<Transition> transitions;
  transitions.reserve(pending.size());
  for (const auto& p : pending) {
    auto it = std::find(alphabet->begin(), alphabet->end(), p.symbol);
    if (it == alphabet->end())
      throw ParseError(p.line,
                       "unknown symbol '" + std::string(p.symbol) + "'");
    transitions.push_back({check(p.src, p.line),
                           static_cast<SymbolId>(it - alphabet->begin()),
                           check(p.dst, p.line)});
  }
  return BuchiAutomaton(n, std::move(*alphabet), std::move(transitions),
                        StateSet::from_unsorted(std::move(init_ids)),
                        StateSet::from_unsorted(std::move(acc_ids)));
}

std::string serialize_nba(const BuchiAutomaton& aut) {
  std::ostringstream out;
  out << "nba\n";
  out << "states " << aut.num_states() << '\n';
  out << "alphabet";
  for (const auto& tok : aut.alphabet()) out << ' ' << tok;
  out << "\ninit";
  for (StateId q : aut.initial()) out << ' ' << q;
  out << "\naccept";
  for (StateId q : aut.accepting()) out << ' ' << q;
  out << '\n';
  for (const auto& t : aut.transitions())
    out << t.source << ' ' << aut.alphabet()[t.symbol] << ' ' << t.target
        << '\n';
  return out.str();
}

}  // namespace unidet
