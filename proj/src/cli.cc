#include "unidet/cli.hh"

#include <algorithm>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <optional>
#include <random>
#include <sstream>
#include <unordered_set>

#include "CLI11.hpp"
#include "unidet/determinize.hh"
#include "unidet/error.hh"
#include "unidet/oracle.hh"
#include "unidet/parity.hh"
#include "unidet/safra.hh"

namespace unidet {

namespace {

// Unreadable files are usage errors, like unparsable contents.
class InputError : public Error {
 public:
  using Error::Error;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) throw InputError("cannot write '" + path + "'");
}

BuchiAutomaton load_nba(const std::string& path) {
  return parse_nba(read_input(path));
}

std::string join_ranks(const std::vector<Rank>& ranks) {
  std::string s = "{";
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(ranks[i]);
  }
  return s + "}";
}

std::string format_run(const LassoRun& run) {
  std::string s;
  for (StateId q : run.prefix) s += std::to_string(q) + ' ';
  s += "(";
  for (std::size_t i = 0; i < run.loop.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(run.loop[i]);
  }
  return s + ")^w";
}

struct StrategyFlags {
  std::string name = "ms";
  std::string fallback = "safra";
  std::size_t adaptive_limit = 4096;

  void add_to(CLI::App* cmd) {
    cmd->add_option("-s,--strategy", name, "merge strategy")
        ->check(CLI::IsMember({"ms", "safra", "max", "adaptive"}))
        ->capture_default_str();
    cmd->add_option("--fallback", fallback, "adaptive fallback strategy")
        ->check(CLI::IsMember({"ms", "safra", "max"}))
        ->capture_default_str();
    cmd->add_option("--adaptive-limit", adaptive_limit,
                    "partitions inspected by adaptive before falling back")
        ->capture_default_str();
  }

  MergeStrategy get() const {
    const MergeKind kind = *parse_strategy_token(name);
    if (kind == MergeKind::adaptive)
      return MergeStrategy::adaptive(*parse_strategy_token(fallback), adaptive_limit);
    return MergeStrategy::of(kind);
  }
};

// ---- determinize ----------------------------------------------------------

struct DeterminizeConfig {
  std::string input;
  std::string output;
  StrategyFlags strategy;
  std::size_t cap = 1'000'000;
  bool labels = true;
  bool compact = false;
};

int cmd_determinize(const DeterminizeConfig& cfg, std::ostream& out) {
  const BuchiAutomaton nba = load_nba(cfg.input);
  DeterminizeOptions opt;
  opt.strategy = cfg.strategy.get();
  opt.max_states = cfg.cap;
  opt.labels = cfg.labels;
  ParityAutomaton dpa = determinize(nba, opt);
  if (cfg.compact) dpa = compact_priorities(dpa);
  write_output(cfg.output, serialize_dpa(dpa), out);
  return kExitOk;
}

// ---- check ----------------------------------------------------------------

struct CheckConfig {
  std::string input;
  std::string dpa;
  StrategyFlags strategy;
  std::size_t cap = 1'000'000;
  std::size_t max_u = 3;
  std::size_t max_v = 3;
  std::size_t random = 0;
  std::size_t random_len = 8;
  std::uint64_t seed = 1;
};

int cmd_check(const CheckConfig& cfg, std::ostream& out) {
  const BuchiAutomaton nba = load_nba(cfg.input);
  ParityAutomaton dpa;
  std::string source;
  if (!cfg.dpa.empty()) {
    dpa = parse_dpa(read_input(cfg.dpa));
    if (dpa.alphabet() != nba.alphabet())
      throw AlphabetError("alphabet of '" + cfg.dpa + "' differs from the NBA's");
    source = cfg.dpa;
  } else {
    DeterminizeOptions opt;
    opt.strategy = cfg.strategy.get();
    opt.max_states = cfg.cap;
    dpa = determinize(nba, opt);
    source = "strategy " + cfg.strategy.name;
  }

  std::vector<Lasso> lassos = enumerate_lassos(nba.alphabet_size(), cfg.max_u, cfg.max_v);
  std::mt19937_64 rng(cfg.seed);
  for (std::size_t i = 0; i < cfg.random; ++i)
    lassos.push_back(sample_lasso(rng, nba.alphabet_size(), cfg.random_len, cfg.random_len));

  for (const Lasso& lasso : lassos) {
    const auto run = nba_accepting_run(nba, lasso);
    const bool unrolled = nba_accepts_lasso_unrolled(nba, lasso);
    const std::string word = format_lasso(lasso, nba.alphabet());
    if (run.has_value() != unrolled) {
      out << "oracle disagreement on " << word << "\n";
      return kExitDisagree;
    }
    LassoVerdict v;
    try {
      v = run_lasso(dpa, lasso);
    } catch (const StructuralError& e) {
      out << "DPA has no run on " << word << ": " << e.what() << "\n";
      return kExitDisagree;
    }
    if (v.accepted == run.has_value()) continue;
    out << "disagreement on " << word << "\n";
    if (run)
      out << "  NBA accepts, run " << format_run(*run) << "\n";
    else
      out << "  NBA rejects\n";
    out << "  DPA " << (v.accepted ? "accepts" : "rejects") << ", repeating states";
    for (StateId q : v.cycle_states) out << ' ' << q;
    out << ", least repeating priority " << v.min_priority << "\n";
    return kExitDisagree;
  }
  out << "agree on " << lassos.size() << " lassos (" << source << ", "
      << dpa.num_states() << " DPA states)\n";
  return kExitOk;
}

// ---- stats ----------------------------------------------------------------

struct StatsConfig {
  std::string input;
  std::size_t random = 0;
  std::uint64_t seed = 1;
  std::size_t max_states = 5;
  std::size_t max_alphabet = 2;
  double density = 0.4;
  double accepting = 0.4;
  std::size_t cap = 1'000'000;
  std::size_t adaptive_limit = 4096;
};

struct StrategyTotals {
  std::size_t automata = 0;
  std::size_t capped = 0;
  std::size_t states = 0;
  std::size_t edges = 0;
  std::size_t largest = 0;
};

StrategyTotals measure(const std::vector<BuchiAutomaton>& corpus, MergeStrategy strategy,
                       std::size_t cap) {
  StrategyTotals t;
  for (const auto& nba : corpus) {
    DeterminizeOptions opt;
    opt.strategy = strategy;
    opt.max_states = cap;
    opt.labels = false;
    try {
      const ParityAutomaton dpa = determinize(nba, opt);
      ++t.automata;
      t.states += dpa.num_states();
      t.edges += dpa.num_edges();
      t.largest = std::max(t.largest, dpa.num_states());
    } catch (const CapacityError&) {
      ++t.capped;
    }
  }
  return t;
}

int cmd_stats(const StatsConfig& cfg, std::ostream& out) {
  std::vector<BuchiAutomaton> corpus;
  if (!cfg.input.empty()) {
    corpus.push_back(load_nba(cfg.input));
  } else {
    if (cfg.random == 0) throw InputError("stats needs --input or --random N");
    if (cfg.max_states == 0 || cfg.max_alphabet == 0 || cfg.max_alphabet > 26)
      throw InputError("--max-states must be positive and --max-alphabet in 1..26");
    corpus = random_corpus({cfg.random, cfg.max_states, cfg.max_alphabet, cfg.density,
                            cfg.accepting, cfg.seed});
  }
  const std::vector<MergeStrategy> strategies{
      MergeStrategy::of(MergeKind::muller_schupp), MergeStrategy::of(MergeKind::safra),
      MergeStrategy::of(MergeKind::max_collapse),
      MergeStrategy::adaptive(MergeKind::safra, cfg.adaptive_limit)};
  std::vector<std::future<StrategyTotals>> jobs;
  for (const auto& s : strategies)
    jobs.push_back(std::async(std::launch::async, measure, std::cref(corpus), s, cfg.cap));

  out << std::left << std::setw(10) << "strategy" << std::right << std::setw(9)
      << "automata" << std::setw(8) << "capped" << std::setw(10) << "states"
      << std::setw(10) << "edges" << std::setw(9) << "largest" << "\n";
  for (std::size_t i = 0; i < strategies.size(); ++i) {
    const StrategyTotals t = jobs[i].get();
    out << std::left << std::setw(10) << strategy_token(strategies[i].kind) << std::right
        << std::setw(9) << t.automata << std::setw(8) << t.capped << std::setw(10)
        << t.states << std::setw(10) << t.edges << std::setw(9) << t.largest << "\n";
  }
  return kExitOk;
}

// ---- roundtrip ------------------------------------------------------------

struct RoundtripConfig {
  std::string slice;
  bool from_tree = false;
};

int cmd_roundtrip(const RoundtripConfig& cfg, std::ostream& out) {
  if (cfg.from_tree) {
    const RankedSafraTree tree = parse_tree(cfg.slice);
    const RankedSlice slice = safra_to_slice(tree);
    const RankedSafraTree back = slice_to_safra(slice);
    out << "tree   " << render_tree(tree) << "\n";
    out << "slice  " << slice.to_string() << "\n";
    out << "tree   " << render_tree(back) << "\n";
    if (!(back == tree)) {
      out << "mismatch\n";
      return kExitDisagree;
    }
    out << "ok\n";
    return kExitOk;
  }
  const RankedSlice slice = parse_slice(cfg.slice);
  if (slice.is_sink()) throw InvariantError("the sink slice has no Safra tree");
  const RankedSafraTree tree = slice_to_safra(slice);
  const RankedSlice back = safra_to_slice(tree);
  out << "slice  " << slice.to_string() << "\n";
  out << "tree   " << render_tree(tree) << "\n";
  out << "slice  " << back.to_string() << "\n";
  if (!(back == slice)) {
    out << "mismatch\n";
    return kExitDisagree;
  }
  out << "ok\n";
  return kExitOk;
}

// ---- trace ----------------------------------------------------------------

struct TraceConfig {
  std::string input;
  std::string lasso;
  std::string from;
  StrategyFlags strategy;
};

int cmd_trace(const TraceConfig& cfg, std::ostream& out) {
  const BuchiAutomaton nba = load_nba(cfg.input);
  const Lasso lasso = parse_lasso(cfg.lasso, nba.alphabet());
  const MergeStrategy strategy = cfg.strategy.get();

  RankedSlice current = RankedSlice::initial(nba.initial());
  if (!cfg.from.empty()) {
    current = parse_slice(cfg.from);
    for (StateId q : current.states())
      if (q >= nba.num_states())
        throw InputError("start slice mentions state " + std::to_string(q) +
                         " outside the automaton");
  }
  std::unordered_set<RankedSlice, RankedSliceHash> seen{current};
  const KnownSlices known = [&](const RankedSlice& s) { return seen.contains(s); };

  std::size_t step_no = 0;
  bool reported_sink = false;
  auto advance = [&](SymbolId x, const char* part) {
    const TransitionTrace t = trace_transition(nba, current, x, strategy, known);
    ++step_no;
    out << "[" << step_no << "] " << nba.symbol_token(x) << " (" << part << ") from "
        << current.to_string() << "\n";
    if (current.is_sink()) {
      out << "  sink: stays in the sink, priority 1\n";
      return t.outcome.priority;
    }
    const auto& o = t.outcome;
    out << "  step       " << t.stepped.to_string() << "\n";
    out << "  prune      " << t.pruned.to_string() << "\n";
    out << "  events     G=" << join_ranks(o.green) << " R=" << join_ranks(o.red)
        << " k=" << o.dominating << "\n";
    out << "  priority   " << o.priority << "\n";
    out << "  partition  " << to_string(t.partition) << "\n";
    out << "  merge      " << t.merged.to_string() << "\n";
    out << "  normalize  " << o.successor.to_string() << "\n";
    if (o.sink && !reported_sink) {
      out << "  sink: no run survives, entering the sink\n";
      reported_sink = true;
    }
    current = o.successor;
    seen.insert(current);
    return o.priority;
  };

  for (SymbolId x : lasso.stem) advance(x, "stem");
  // Run whole cycle passes until a pass starts from a slice seen before.
  std::vector<RankedSlice> boundaries;
  std::vector<Priority> pass_min;
  while (std::find(boundaries.begin(), boundaries.end(), current) == boundaries.end()) {
    boundaries.push_back(current);
    Priority lo = 0;
    for (SymbolId x : lasso.cycle) {
      const Priority p = advance(x, "cycle");
      lo = lo == 0 ? p : std::min(lo, p);
    }
    pass_min.push_back(lo);
  }
  const std::size_t first =
      static_cast<std::size_t>(std::find(boundaries.begin(), boundaries.end(), current) -
                               boundaries.begin());
  const Priority least = *std::min_element(pass_min.begin() + first, pass_min.end());
  const bool accepted = least % 2 == 0;
  out << "repeats from pass " << first + 1 << " of " << pass_min.size()
      << ", least repeating priority " << least << "\n";
  out << "verdict: " << (accepted ? "accepted" : "rejected") << "\n";
  if (cfg.from.empty()) {
    const bool nba_accepts = nba_accepts_lasso(nba, lasso);
    out << "nba:     " << (nba_accepts ? "accepted" : "rejected") << "\n";
    if (nba_accepts != accepted) return kExitDisagree;
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Determinize Büchi automata into parity automata over ranked slices",
               "unidet"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "unidet 0.1.0");

  DeterminizeConfig det;
  auto* c_det = app.add_subcommand("determinize", "Build a parity automaton");
  c_det->add_option("-i,--input", det.input, "NBA file, '-' for stdin")->required();
  c_det->add_option("-o,--output", det.output, "DPA file (default stdout)");
  det.strategy.add_to(c_det);
  c_det->add_option("--cap", det.cap, "macrostate limit")->capture_default_str();
  c_det->add_flag("--labels,!--no-labels", det.labels, "write slice labels");
  c_det->add_flag("--compact", det.compact, "renumber priorities densely");

  CheckConfig chk;
  auto* c_chk = app.add_subcommand("check", "Compare an NBA and a DPA on lassos");
  c_chk->add_option("-i,--input", chk.input, "NBA file")->required();
  c_chk->add_option("--dpa", chk.dpa, "DPA file (default: determinize the NBA)");
  chk.strategy.add_to(c_chk);
  c_chk->add_option("--cap", chk.cap, "macrostate limit")->capture_default_str();
  c_chk->add_option("--max-u", chk.max_u, "longest stem")->capture_default_str();
  c_chk->add_option("--max-v", chk.max_v, "longest cycle")->capture_default_str();
  c_chk->add_option("--random", chk.random, "extra random lassos")->capture_default_str();
  c_chk->add_option("--random-len", chk.random_len, "longest random stem and cycle")
      ->capture_default_str();
  c_chk->add_option("--seed", chk.seed, "random seed")->capture_default_str();

  StatsConfig st;
  auto* c_st = app.add_subcommand("stats", "Compare macrostate counts across strategies");
  auto* st_in = c_st->add_option("-i,--input", st.input, "NBA file");
  c_st->add_option("--random", st.random, "random corpus size")->excludes(st_in);
  c_st->add_option("--seed", st.seed, "corpus seed")->capture_default_str();
  c_st->add_option("--max-states", st.max_states, "largest random NBA")
      ->capture_default_str();
  c_st->add_option("--max-alphabet", st.max_alphabet, "largest random alphabet")
      ->capture_default_str();
  c_st->add_option("--density", st.density, "edge probability")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  c_st->add_option("--accepting", st.accepting, "accepting-state probability")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  c_st->add_option("--cap", st.cap, "macrostate limit")->capture_default_str();
  c_st->add_option("--adaptive-limit", st.adaptive_limit, "adaptive partition limit")
      ->capture_default_str();

  RoundtripConfig rt;
  auto* c_rt = app.add_subcommand("roundtrip", "Slice to Safra tree and back");
  c_rt->add_option("slice", rt.slice, "ranked slice, e.g. '({1}:2,{0}:1)'")->required();
  c_rt->add_flag("--tree", rt.from_tree, "argument is a tree, e.g. '{0}:1({1}:2)'");

  TraceConfig tr;
  auto* c_tr = app.add_subcommand("trace", "Show every stage of the run on a lasso");
  c_tr->add_option("-i,--input", tr.input, "NBA file")->required();
  c_tr->add_option("--lasso", tr.lasso, "word 'stem | cycle', e.g. 'a | b a'")->required();
  tr.strategy.add_to(c_tr);
  c_tr->add_option("--from", tr.from, "start slice instead of the initial one");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*c_det) return cmd_determinize(det, out);
    if (*c_chk) return cmd_check(chk, out);
    if (*c_st) return cmd_stats(st, out);
    if (*c_rt) return cmd_roundtrip(rt, out);
    if (*c_tr) return cmd_trace(tr, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const AlphabetError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDisagree;
  }
  return kExitUsage;
}

}  // namespace unidet
