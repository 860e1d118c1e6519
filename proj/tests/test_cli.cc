#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "doctest.h"
#include "support.hh"
#include "unidet/cli.hh"
#include "unidet/parity.hh"

using namespace unidet;
using testing::data_path;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "unidet_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

void write(const std::filesystem::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("determinize writes the golden file") {
  const auto r = run({"determinize", "-i", data_path("three_state.nba"), "--strategy", "ms"});
  CHECK(r.code == 0);
  CHECK(r.out == testing::read_file(data_path("three_state_ms.dpa")));

  const auto out = scratch("three.dpa");
  CHECK(run({"determinize", "-i", data_path("three_state.nba"), "-o", out.string()}).code == 0);
  CHECK(testing::read_file(out.string()) == r.out);

  const auto bare = run({"determinize", "-i", data_path("three_state.nba"), "--no-labels"});
  CHECK_FALSE(contains(bare.out, "label"));
  CHECK(parse_dpa(bare.out).num_states() == 3);
}

TEST_CASE("determinize usage and input errors") {
  CHECK(run({"determinize", "-i", data_path("three_state.nba"), "--strategy", "rabin"}).code == 2);
  CHECK(run({"determinize"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  const auto missing = run({"determinize", "-i", data_path("nope.nba")});
  CHECK(missing.code == 2);
  const auto bad = run({"determinize", "-i", data_path("bad_symbol.nba")});
  CHECK(bad.code == 2);
  CHECK(contains(bad.err, "line 7"));
  CHECK(run({"determinize", "-i", data_path("three_letter.nba"), "--cap", "3"}).code == 1);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("check agrees with its own construction and catches corruption") {
  for (const char* s : {"ms", "safra", "max", "adaptive"}) {
    const auto r = run({"check", "-i", data_path("three_letter.nba"), "--strategy", s});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "agree on 1560 lassos"));
  }
  CHECK(run({"check", "-i", data_path("three_state.nba"), "--dpa", data_path("three_state_ms.dpa"),
             "--max-u", "3", "--max-v", "3"})
            .code == 0);

  std::string dpa = testing::read_file(data_path("three_state_ms.dpa"));
  dpa.replace(dpa.find("2 a 2 4"), 7, "2 a 2 5");
  const auto corrupt = scratch("corrupt.dpa");
  write(corrupt, dpa);
  const auto r = run({"check", "-i", data_path("three_state.nba"), "--dpa", corrupt.string()});
  CHECK(r.code == 1);
  CHECK(contains(r.out, "disagreement on | a\n"));
  CHECK(contains(r.out, "NBA accepts, run 0 (1)^w"));
  CHECK(contains(r.out, "least repeating priority 5"));

  const auto other = scratch("other_alphabet.dpa");
  write(other, "dpa\nstates 1\nalphabet b\ninit 0\n0 b 0 2\n");
  CHECK(run({"check", "-i", data_path("three_state.nba"), "--dpa", other.string()}).code == 2);

  const auto partial = scratch("partial.dpa");
  write(partial, "dpa\nstates 1\nalphabet a\ninit 0\n");
  CHECK(run({"check", "-i", data_path("three_state.nba"), "--dpa", partial.string()}).code == 1);
}

TEST_CASE("random lassos in check are seeded") {
  const std::vector<std::string> args{"check", "-i", data_path("three_letter.nba"), "--max-u", "0",
                                      "--max-v", "1", "--random", "1000", "--seed", "7"};
  const auto a = run(args), b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(contains(a.out, "agree on 1003 lassos"));
}

TEST_CASE("stats table") {
  const auto r = run({"stats", "-i", data_path("three_state.nba")});
  CHECK(r.code == 0);
  std::istringstream in(r.out);
  std::string header;
  std::getline(in, header);
  CHECK(contains(header, "states"));
  std::map<std::string, std::size_t> states;
  std::string name;
  std::size_t automata, ncapped, st, edges, largest;
  while (in >> name >> automata >> ncapped >> st >> edges >> largest) states[name] = st;
  CHECK(states["ms"] == 3);
  CHECK(states["adaptive"] == 3);
  CHECK(states["safra"] == 4);
  CHECK(states["max"] == 4);

  const auto empty = run({"stats", "-i", data_path("empty.nba")});
  CHECK(contains(empty.out, "ms                1       0         2"));

  const auto corpus = run({"stats", "--random", "20", "--seed", "3"});
  CHECK(corpus.code == 0);
  CHECK(corpus.out == run({"stats", "--random", "20", "--seed", "3"}).out);
  CHECK(run({"stats"}).code == 2);
  const auto capped = run({"stats", "-i", data_path("three_letter.nba"), "--cap", "5"});
  CHECK(contains(capped.out, "ms                0       1"));
}

TEST_CASE("roundtrip") {
  const auto r = run({"roundtrip", "({3}:4,{1}:2,{2}:3,{0}:1)"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "tree   {0}:1({1}:2({3}:4),{2}:3)"));
  CHECK(contains(r.out, "slice  ({3}:4,{1}:2,{2}:3,{0}:1)\nok"));
  CHECK(run({"roundtrip", "({0}:1)"}).code == 0);
  CHECK(run({"roundtrip", "({0}:2,{1}:1)"}).code == 0);
  CHECK(run({"roundtrip", "({0}:1,{1}:2)"}).code == 1);
  CHECK(run({"roundtrip", "({0}:1,{1}:2"}).code == 2);
  CHECK(run({"roundtrip", "()"}).code == 1);
  const auto t = run({"roundtrip", "--tree", "{0}:1({1}:2,{2}:3)"});
  CHECK(t.code == 0);
  CHECK(contains(t.out, "slice  ({1}:2,{2}:3,{0}:1)"));
}

TEST_CASE("trace prints every stage") {
  const auto six = run({"trace", "-i", data_path("six_set.nba"), "--lasso", "| x",
                        "--strategy", "safra", "--from",
                        "({2}:3,{3}:5,{1}:2,{5}:6,{4}:4,{0}:1)"});
  CHECK(six.code == 0);
  CHECK(contains(six.out, "events     G={2,6} R={5} k=2\n  priority   4\n"));
  CHECK(contains(six.out, "normalize  ({1,2,3}:2,{5}:4,{4}:3,{0}:1)"));

  const auto three = run({"trace", "-i", data_path("four_state.nba"), "--lasso", "| a",
                          "--strategy", "safra", "--from", "({1}:2,{2}:3,{0}:1)"});
  CHECK(three.code == 0);
  CHECK(contains(three.out, "priority   3\n"));
  CHECK(contains(three.out, "normalize  ({2}:2,{3}:3,{0}:1)"));

  const auto sink = run({"trace", "-i", data_path("empty.nba"), "--lasso", "a | a"});
  CHECK(sink.code == 0);
  CHECK(contains(sink.out, "priority   1\n"));
  CHECK(contains(sink.out, "entering the sink"));
  CHECK(contains(sink.out, "verdict: rejected"));

  const auto one = run({"trace", "-i", data_path("three_state.nba"), "--lasso", "| a"});
  CHECK(contains(one.out, "verdict: accepted"));
  CHECK(contains(one.out, "nba:     accepted"));

  CHECK(run({"trace", "-i", data_path("three_state.nba"), "--lasso", "| b"}).code == 2);
  CHECK(run({"trace", "-i", data_path("three_state.nba"), "--lasso", "a"}).code == 2);
  CHECK(run({"trace", "-i", data_path("three_state.nba"), "--lasso", "| a", "--from",
             "({7}:1)"})
            .code == 2);
}
