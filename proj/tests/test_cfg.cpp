#include <doctest.h>

#include "cecd/ir.hpp"
#include "cecd/parser.hpp"
#include "testutil.hpp"

using namespace cecd;

TEST_CASE("successors come out in slot order") {
  Program p = testutil::load_fixture("flag_loop.ir");
  CHECK(succ(p, "bb1") == std::vector<BlockId>{"bb2", "bb6"});
  CHECK(succ(p, "bb2") == std::vector<BlockId>{"bb3"});
  CHECK(succ(p, "bb7") == std::vector<BlockId>{"bb8", "bb11"});
  CHECK(succ(p, "bb11").empty());
}

TEST_CASE("pred gathers every incoming edge") {
  Program p = testutil::load_fixture("flag_loop.ir");
  CHECK(pred(p, "bb7") ==
        std::set<BlockId>{"bb4", "bb5", "bb6", "bb9", "bb10"});
  CHECK(pred(p, "bb1").empty());
  CHECK(pred(p, "bb11") == std::set<BlockId>{"bb7"});
  CHECK_THROWS_AS(pred(p, "nope"), std::out_of_range);
}

TEST_CASE("program construction validates its graph") {
  std::vector<BasicBlock> one;
  one.push_back(BasicBlock{"a", {}, ExitTerm{}, {}});
  CHECK_NOTHROW(Program(one, "a"));

  CHECK_THROWS_AS(Program({}, "a"), std::invalid_argument);
  CHECK_THROWS_AS(Program(one, "missing"), std::invalid_argument);

  std::vector<BasicBlock> dup;
  dup.push_back(BasicBlock{"a", {}, ExitTerm{}, {}});
  dup.push_back(BasicBlock{"a", {}, ExitTerm{}, {}});
  CHECK_THROWS_AS(Program(dup, "a"), std::invalid_argument);

  std::vector<BasicBlock> dangling;
  dangling.push_back(BasicBlock{"a", {}, GotoTerm{"ghost"}, {}});
  CHECK_THROWS_AS(Program(dangling, "a"), std::invalid_argument);
}

TEST_CASE("index_of and find agree about membership") {
  Program p = testutil::load_fixture("flag_loop.ir");
  CHECK(p.contains("bb4"));
  CHECK_FALSE(p.contains("bb12"));
  CHECK(p.index_of("bb1") == 0);
  CHECK(p.index_of("bb11") == 10);
  CHECK_THROWS_AS(p.index_of("bb12"), std::out_of_range);
  CHECK(p.find("bb4") != nullptr);
  CHECK(p.find("bb12") == nullptr);
}

TEST_CASE("size measures count instructions, not terminators") {
  Program p = testutil::load_fixture("flag_loop.ir");
  CHECK(block_size(p.block("bb8")) == 0);
  CHECK(block_size(p.block("bb9")) == 2);
  CHECK(block_size(p.block("bb1")) == 3);
  CHECK(instruction_count(p) == 15);
  CHECK(input_count(p) == 3);

  Program q = testutil::load_fixture("flag_loop.opt.ir");
  CHECK(instruction_count(q) == 17);
}

TEST_CASE("origin_from_id recognizes exactly the copy suffixes") {
  REQUIRE(origin_from_id("x.t").has_value());
  CHECK(origin_from_id("x.t")->original == "x");
  CHECK(origin_from_id("x.t")->kind == CopyKind::True);
  CHECK(origin_from_id("x.f")->kind == CopyKind::False);
  CHECK(origin_from_id("x.u")->kind == CopyKind::Unknown);
  CHECK(origin_from_id("x.y.u")->original == "x.y");
  CHECK_FALSE(origin_from_id("x").has_value());
  CHECK_FALSE(origin_from_id("x.q").has_value());
  CHECK_FALSE(origin_from_id("x.tt").has_value());
  CHECK_FALSE(origin_from_id(".t").has_value());
}

TEST_CASE("structural_eq notices any difference") {
  Program a = testutil::load_fixture("flag_loop.ir");
  Program b = testutil::load_fixture("flag_loop.ir");
  CHECK(structural_eq(a, b));

  // Same blocks in a different order is a different program.
  std::vector<BasicBlock> reordered(a.blocks().rbegin(), a.blocks().rend());
  Program c(reordered, "bb1");
  CHECK_FALSE(structural_eq(a, c));

  CHECK_FALSE(structural_eq(a, testutil::load_fixture("flag_loop_s2.ir")));
}

TEST_CASE("isomorphism ignores names but not structure") {
  Program a = parse_program("block x { v = input; br v y z; }\n"
                            "block y { print 1; exit; }\n"
                            "block z { print 0; exit; }\n");
  Program b = parse_program("block q0 { v = input; br v q1 q2; }\n"
                            "block q1 { print 1; exit; }\n"
                            "block q2 { print 0; exit; }\n");
  Program swapped = parse_program("block q0 { v = input; br v q2 q1; }\n"
                                  "block q1 { print 1; exit; }\n"
                                  "block q2 { print 0; exit; }\n");
  CHECK(testutil::isomorphic(a, b));
  CHECK_FALSE(testutil::isomorphic(a, swapped));
}
