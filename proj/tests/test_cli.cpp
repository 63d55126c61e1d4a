#include <doctest.h>

#include <json.hpp>

#include "cecd/parser.hpp"
#include "testutil.hpp"

using namespace cecd;
using testutil::fixture_path;
using testutil::run_cli;

namespace {
bool contains(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}
} // namespace

TEST_CASE("opt with budget emits the hand-optimized program") {
  auto r = run_cli("opt " + fixture_path("flag_loop.ir") + " -k 20");
  REQUIRE(r.exit_code == 0);
  Program got = parse_program(r.out);
  Program golden = testutil::load_fixture("flag_loop.opt.ir");
  CHECK(structural_eq(got, golden));
}

TEST_CASE("opt without budget leaves the program alone") {
  auto r = run_cli("opt " + fixture_path("flag_loop.ir"));
  REQUIRE(r.exit_code == 0);
  CHECK(structural_eq(parse_program(r.out),
                      testutil::load_fixture("flag_loop.ir")));
}

TEST_CASE("opt writes per-candidate stats") {
  testutil::TempDir tmp;
  std::string stats = tmp.path() + "/stats.json";
  std::string out = tmp.path() + "/out.ir";
  auto r = run_cli("opt " + fixture_path("flag_loop.ir") + " -k 20 --stats " +
                   stats + " -o " + out);
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.empty());

  Program written = parse_program(testutil::read_file(out));
  CHECK(structural_eq(written, testutil::load_fixture("flag_loop.opt.ir")));

  nlohmann::json rows = nlohmann::json::parse(testutil::read_file(stats));
  REQUIRE(rows.is_array());
  REQUIRE(rows.size() == 3); // one row per distinct branch condition
  const auto& first = rows[0];
  CHECK(first.at("cond") == "e");
  CHECK(first.at("blocks_before") == 11);
  CHECK(first.at("blocks_after") == 13);
  CHECK(first.at("instrs_before") == 15);
  CHECK(first.at("instrs_after") == 17);
  CHECK(first.at("n") == 1);
  CHECK(first.at("k") == 20);
  CHECK(first.at("predicted_growth") == 2);
  CHECK(first.at("actual_growth") == 2);
  CHECK(first.at("accepted") == true);
  CHECK(first.at("verified").is_null());
  // The two single-site conditions have no profitable region.
  CHECK(rows[1].at("cond") == "c");
  CHECK(rows[1].at("accepted") == false);
  CHECK(rows[1].at("blocks_after") == rows[1].at("blocks_before"));
  CHECK(rows[2].at("cond") == "i < n");
  CHECK(rows[2].at("accepted") == false);
}

TEST_CASE("opt --verify records the check in the stats") {
  testutil::TempDir tmp;
  std::string stats = tmp.path() + "/stats.json";
  auto r = run_cli("opt " + fixture_path("flag_loop.ir") +
                   " -k 20 --verify --seed 5 --stats " + stats + " -o /dev/null");
  REQUIRE(r.exit_code == 0);
  nlohmann::json rows = nlohmann::json::parse(testutil::read_file(stats));
  CHECK(rows[0].at("verified") == true);
}

TEST_CASE("opt --cond restricts the pipeline to one condition") {
  auto r = run_cli("opt " + fixture_path("flag_loop.ir") + " --cond e -k 20");
  REQUIRE(r.exit_code == 0);
  CHECK(structural_eq(parse_program(r.out),
                      testutil::load_fixture("flag_loop.opt.ir")));

  auto missing = run_cli("opt " + fixture_path("flag_loop.ir") +
                         " --cond q -k 20 2>/dev/null");
  CHECK(missing.exit_code == 2);
  auto malformed = run_cli("opt " + fixture_path("flag_loop.ir") +
                           " --cond 'e +' -k 20 2>/dev/null");
  CHECK(malformed.exit_code == 2);
}

TEST_CASE("opt --unguarded changes the acceptance bar") {
  // The tighter default predicts growth 2, the unguarded form predicts 6.
  auto tight = run_cli("opt " + fixture_path("flag_loop.ir") + " -k 5");
  REQUIRE(tight.exit_code == 0);
  CHECK(structural_eq(parse_program(tight.out),
                      testutil::load_fixture("flag_loop.opt.ir")));

  auto loose = run_cli("opt " + fixture_path("flag_loop.ir") +
                       " -k 5 --unguarded");
  REQUIRE(loose.exit_code == 0);
  CHECK(structural_eq(parse_program(loose.out),
                      testutil::load_fixture("flag_loop.ir")));

  auto roomy = run_cli("opt " + fixture_path("flag_loop.ir") +
                       " -k 6 --unguarded");
  REQUIRE(roomy.exit_code == 0);
  CHECK(structural_eq(parse_program(roomy.out),
                      testutil::load_fixture("flag_loop.opt.ir")));
}

TEST_CASE("opt --order round-robin reaches the same fixpoint") {
  auto r = run_cli("opt " + fixture_path("flag_loop.ir") +
                   " -k 20 --order round-robin");
  REQUIRE(r.exit_code == 0);
  CHECK(structural_eq(parse_program(r.out),
                      testutil::load_fixture("flag_loop.opt.ir")));

  auto bad = run_cli("opt " + fixture_path("flag_loop.ir") +
                     " --order sideways 2>/dev/null");
  CHECK(bad.exit_code == 2);
}

TEST_CASE("opt --emit-dot drops annotated graphs next to the run") {
  testutil::TempDir tmp;
  std::string dots = tmp.path() + "/dots";
  auto r = run_cli("opt " + fixture_path("flag_loop.ir") + " -k 20 --emit-dot " +
                   dots + " -o /dev/null");
  REQUIRE(r.exit_code == 0);
  std::string before = testutil::read_file(dots + "/before.dot");
  std::string after = testutil::read_file(dots + "/after.dot");
  CHECK(contains(before, "digraph cecd {"));
  CHECK(contains(before, "fillcolor=lightgoldenrod"));
  CHECK(contains(after, "subgraph cluster_t {"));
  CHECK(contains(after, "bb8_u -> bb9_t"));
}

TEST_CASE("analyze prints one row per block") {
  auto r = run_cli("analyze " + fixture_path("flag_loop.ir") + " --cond e");
  REQUIRE(r.exit_code == 0);
  nlohmann::json rows = nlohmann::json::parse(r.out);
  REQUIRE(rows.size() == 11);
  for (const auto& row : rows) {
    if (row.at("block") == "bb6") {
      CHECK(row.at("valid") == false);
      CHECK(row.at("d") == false);
    }
    if (row.at("block") == "bb8") {
      CHECK(row.at("d") == true);
      CHECK(row.at("ru") == true);
    }
  }
  auto bad = run_cli("analyze " + fixture_path("flag_loop.ir") +
                     " --cond 'e +' 2>/dev/null");
  CHECK(bad.exit_code == 2);
}

TEST_CASE("run executes the program and reports a summary") {
  auto r = run_cli("run " + fixture_path("flag_loop.ir") + " --inputs 0,3,1");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out == "1\n1\n1\n5\n3\n"
                 "-- completed steps=30 evals: [c]=1 [e]=3 [i < n]=4\n");

  auto opt = run_cli("run " + fixture_path("flag_loop.opt.ir") +
                     " --inputs 0,3,1");
  REQUIRE(opt.exit_code == 0);
  CHECK(opt.out == "1\n1\n1\n5\n3\n"
                   "-- completed steps=28 evals: [c]=1 [e]=1 [i < n]=4\n");
}

TEST_CASE("run distinguishes failure modes by exit code") {
  auto err = run_cli("run " + fixture_path("flag_loop.ir") + " --inputs 1,2");
  CHECK(err.exit_code == 1);
  CHECK(contains(err.out, "-- runtime-error undefined-variable steps=6"));

  auto fuel = run_cli("run " + fixture_path("flag_loop.ir") +
                      " --inputs 0,3,1 --fuel 11");
  CHECK(fuel.exit_code == 0);
  CHECK(contains(fuel.out, "-- fuel-exhausted steps=11"));
  CHECK(fuel.out.rfind("1\n", 0) == 0);

  auto starved = run_cli("run " + fixture_path("flag_loop.ir"));
  CHECK(starved.exit_code == 1);
  CHECK(contains(starved.out, "-- runtime-error input-exhausted steps=0"));
}

TEST_CASE("knapsack-demo checks an explicit instance") {
  auto r = run_cli("knapsack-demo --items 2:3,3:4,4:5 --budget 5");
  REQUIRE(r.exit_code == 0);
  CHECK(contains(r.out, "items=[2:3 3:4 4:5] budget=5 knapsack=7 region=7 PASS"));
  CHECK(contains(r.out, "cfg blocks=8"));
  CHECK(contains(r.out, "region growth=5"));
  CHECK(contains(r.out, "members=[bb_e bb_l0 bb_l1 bb_n0 bb_n1]"));
}

TEST_CASE("knapsack-demo sweeps random instances") {
  auto r = run_cli("knapsack-demo --count 3 --seed 9");
  REQUIRE(r.exit_code == 0);
  CHECK(contains(r.out, "all instances agree"));
  std::size_t passes = 0;
  for (std::size_t at = r.out.find(" PASS"); at != std::string::npos;
       at = r.out.find(" PASS", at + 1))
    ++passes;
  CHECK(passes == 3);
}

TEST_CASE("knapsack-demo rejects malformed items") {
  CHECK(run_cli("knapsack-demo --items 0:3 --budget 5 2>/dev/null").exit_code ==
        2);
  CHECK(run_cli("knapsack-demo --items abc 2>/dev/null").exit_code == 2);
}

TEST_CASE("dot renders with and without annotations") {
  auto plain = run_cli("dot " + fixture_path("flag_loop.ir"));
  REQUIRE(plain.exit_code == 0);
  CHECK(contains(plain.out, "digraph cecd {"));
  CHECK_FALSE(contains(plain.out, "fillcolor"));

  auto notes = run_cli("dot " + fixture_path("flag_loop.ir") + " --cond e");
  REQUIRE(notes.exit_code == 0);
  CHECK(contains(notes.out, "fillcolor=lightgoldenrod"));
}

TEST_CASE("usage problems exit with code 2") {
  CHECK(run_cli("2>/dev/null").exit_code == 2);
  CHECK(run_cli("nonsense 2>/dev/null").exit_code == 2);
  CHECK(run_cli("opt 2>/dev/null").exit_code == 2);
  CHECK(run_cli("opt /no/such/file.ir 2>/dev/null").exit_code == 2);

  testutil::TempDir tmp;
  std::string broken = tmp.file("broken.ir", "block a {\n");
  CHECK(run_cli("opt " + broken + " 2>/dev/null").exit_code == 2);

  auto version = run_cli("--version");
  CHECK(version.exit_code == 0);
  CHECK(contains(version.out, "0.1.0"));
  auto help = run_cli("--help");
  CHECK(help.exit_code == 0);
  CHECK(contains(help.out, "opt"));
  CHECK(contains(help.out, "knapsack-demo"));
}
