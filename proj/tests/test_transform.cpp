#include <doctest.h>

#include "cecd/heuristic.hpp"
#include "cecd/parser.hpp"
#include "cecd/transform.hpp"
#include "testutil.hpp"

using namespace cecd;

namespace {

Region fixture_region(const Program& p) {
  return select_region(p, parse_expr("e"));
}

const Terminator& term_of(const Program& p, const BlockId& id) {
  return p.block(id).term;
}

BlockId goto_target(const Program& p, const BlockId& id) {
  return std::get<GotoTerm>(term_of(p, id)).target;
}

} // namespace

TEST_CASE("full transform reproduces the hand-optimized fixture") {
  Program p = testutil::load_fixture("flag_loop.ir");
  Program golden = testutil::load_fixture("flag_loop.opt.ir");
  TransformReport rep;
  Program out = apply_cecd(p, fixture_region(p), rep);
  CHECK(structural_eq(out, golden));
  CHECK(testutil::isomorphic(out, golden));
  CHECK(rep.copies_created == 18);
  CHECK(rep.edges_rewired == 6);
  CHECK(rep.conditionals_eliminated == 1);
  CHECK(rep.blocks_removed_by_cleanup == 10);
}

TEST_CASE("duplicate replicates edges by where they start and end") {
  Program p = testutil::load_fixture("flag_loop.ir");
  TransformReport rep;
  Program d = duplicate(p, fixture_region(p), rep);
  CHECK(rep.copies_created == 18);
  CHECK(d.blocks().size() == 23); // 5 untouched + 6 members * 3

  // Entering the region from outside lands on the .u copy.
  CHECK(goto_target(d, "bb6") == "bb7.u");
  const auto& bb3 = std::get<BranchTerm>(term_of(d, "bb3"));
  CHECK(bb3.on_true == "bb4.u");
  CHECK(bb3.on_false == "bb5.u");

  // Edges between members stay within one copy of the region.
  CHECK(goto_target(d, "bb9.t") == "bb7.t");
  CHECK(goto_target(d, "bb9.f") == "bb7.f");
  CHECK(goto_target(d, "bb4.u") == "bb7.u");
  CHECK(std::get<BranchTerm>(term_of(d, "bb8.f")).on_true == "bb9.f");

  // Edges leaving the region point at the untouched original.
  for (const char* id : {"bb7.t", "bb7.f", "bb7.u"})
    CHECK(std::get<BranchTerm>(term_of(d, id)).on_false == "bb11");

  // Copies remember what they were copied from.
  REQUIRE(d.block("bb7.f").origin.has_value());
  CHECK(d.block("bb7.f").origin->original == "bb7");
  CHECK(d.block("bb7.f").origin->kind == CopyKind::False);
  CHECK_FALSE(d.block("bb6").origin.has_value());

  // The member blocks themselves are gone, replaced in place.
  CHECK_FALSE(d.contains("bb7"));
  CHECK(d.blocks()[3].id == "bb4.t");
  CHECK(d.blocks()[4].id == "bb4.f");
  CHECK(d.blocks()[5].id == "bb4.u");
}

TEST_CASE("rewire moves condition branches onto the matching copies") {
  Program p = testutil::load_fixture("flag_loop.ir");
  Region r = fixture_region(p);
  TransformReport rep;
  Program d = rewire(duplicate(p, r, rep), r, rep);
  CHECK(rep.edges_rewired == 6);

  const auto& bb3 = std::get<BranchTerm>(term_of(d, "bb3"));
  CHECK(bb3.on_true == "bb4.t");
  CHECK(bb3.on_false == "bb5.f");
  const auto& bb8u = std::get<BranchTerm>(term_of(d, "bb8.u"));
  CHECK(bb8u.on_true == "bb9.t");
  CHECK(bb8u.on_false == "bb10.f");

  // Branches on other conditions are left alone.
  const auto& bb7t = std::get<BranchTerm>(term_of(d, "bb7.t"));
  CHECK(bb7t.on_true == "bb8.t");
}

TEST_CASE("eliminate collapses branches only in the resolved copies") {
  Program p = testutil::load_fixture("flag_loop.ir");
  Region r = fixture_region(p);
  TransformReport rep;
  Program d = eliminate(rewire(duplicate(p, r, rep), r, rep), r, rep);
  CHECK(rep.conditionals_eliminated == 1);

  CHECK(goto_target(d, "bb8.t") == "bb9.t");
  CHECK(goto_target(d, "bb8.f") == "bb10.f");
  CHECK(std::holds_alternative<BranchTerm>(term_of(d, "bb8.u")));
  // bb3 tests the condition but sits outside the region.
  CHECK(std::holds_alternative<BranchTerm>(term_of(d, "bb3")));

  SUBCASE("cleanup then sheds dead copies and empty forwarders") {
    Program c = cleanup(d, rep);
    CHECK(rep.blocks_removed_by_cleanup == 10);
    CHECK(c.blocks().size() == 13);
    for (const char* gone :
         {"bb4.f", "bb4.u", "bb5.t", "bb5.u", "bb9.f", "bb9.u", "bb10.t",
          "bb10.u", "bb8.t", "bb8.f"})
      CHECK_FALSE(c.contains(gone));
    // The forwarders' predecessors now jump straight through.
    CHECK(std::get<BranchTerm>(term_of(c, "bb7.t")).on_true == "bb9.t");
    CHECK(std::get<BranchTerm>(term_of(c, "bb7.f")).on_true == "bb10.f");

    TransformReport again;
    Program c2 = cleanup(c, again);
    CHECK(again.blocks_removed_by_cleanup == 0);
    CHECK(structural_eq(c, c2));
  }
}

TEST_CASE("keep_originals leaves the stale region blocks in place") {
  Program p = testutil::load_fixture("flag_loop.ir");
  TransformReport rep;
  TransformOptions opts;
  opts.keep_originals = true;
  Program out = apply_cecd(p, fixture_region(p), rep, opts);
  CHECK(out.blocks().size() == 29);
  CHECK(rep.copies_created == 18);
  CHECK(rep.edges_rewired == 6);
  CHECK(rep.conditionals_eliminated == 1);
  CHECK(rep.blocks_removed_by_cleanup == 0);

  // Original members survive untouched, each followed by its copies.
  CHECK(out.contains("bb7"));
  CHECK(goto_target(out, "bb9") == "bb7");
  CHECK(std::holds_alternative<BranchTerm>(term_of(out, "bb8")));
  CHECK(out.index_of("bb4.t") == out.index_of("bb4") + 1);
  CHECK(out.index_of("bb4.u") == out.index_of("bb4") + 3);

  // Outside edges still funnel into the .u copies, so the originals are dead.
  CHECK(goto_target(out, "bb6") == "bb7.u");
  CHECK(goto_target(out, "bb8.t") == "bb9.t");
}

TEST_CASE("regions that cannot be trusted are rejected") {
  Program p = testutil::load_fixture("flag_loop.ir");
  ExprPtr e = parse_expr("e");
  TransformReport rep;

  Region empty{{}, e};
  CHECK_THROWS_WITH_AS(duplicate(p, empty, rep), "region has no members",
                       TransformError);

  Region no_cond{{"bb4"}, nullptr};
  CHECK_THROWS_WITH_AS(duplicate(p, no_cond, rep), "region has no condition",
                       TransformError);

  Region missing{{"bb4", "zz"}, e};
  CHECK_THROWS_WITH_AS(duplicate(p, missing, rep),
                       "region member is not a block: zz", TransformError);

  Region entry{{"bb1"}, e};
  CHECK_THROWS_WITH_AS(duplicate(p, entry, rep),
                       "region must not contain the entry block",
                       TransformError);

  Region writer{{"bb6"}, e};
  CHECK_THROWS_WITH_AS(duplicate(p, writer, rep),
                       "region member bb6 writes an operand of the condition",
                       TransformError);
}

TEST_CASE("copy names must be free") {
  Program p = parse_program("block main { br c one two; }\n"
                            "block one { goto fin; }\n"
                            "block one.t { goto fin; }\n"
                            "block two { goto fin; }\n"
                            "block fin { exit; }\n");
  Region r{{"one"}, parse_expr("c")};
  TransformReport rep;
  CHECK_THROWS_WITH_AS(duplicate(p, r, rep), "block id already taken: one.t",
                       TransformError);
}

TEST_CASE("remove_unreachable walks from the entry block") {
  Program p = parse_program("block a { print 1; goto c; }\n"
                            "block b { print 2; goto c; }\n"
                            "block c { exit; }\n"
                            "block d { goto b; }\n");
  TransformReport rep;
  Program out = remove_unreachable(p, rep);
  CHECK(rep.blocks_removed_by_cleanup == 2);
  CHECK(out.blocks().size() == 2);
  CHECK(out.contains("a"));
  CHECK(out.contains("c"));
}

TEST_CASE("elide_forwarding squeezes goto chains") {
  Program p = parse_program("block a { print 1; goto b; }\n"
                            "block b { goto c; }\n"
                            "block c { goto d; }\n"
                            "block d { print 2; exit; }\n");
  TransformReport rep;
  Program out = elide_forwarding(p, rep);
  CHECK(rep.blocks_removed_by_cleanup == 2);
  CHECK(out.blocks().size() == 2);
  CHECK(goto_target(out, "a") == "d");
}

TEST_CASE("elide_forwarding keeps cycles, self-loops and the entry") {
  TransformReport rep;

  Program cyc = parse_program("block p { print 1; goto x; }\n"
                              "block x { goto y; }\n"
                              "block y { goto x; }\n");
  Program cyc_out = elide_forwarding(cyc, rep);
  CHECK(rep.blocks_removed_by_cleanup == 0);
  CHECK(structural_eq(cyc_out, cyc));

  Program self = parse_program("block p { print 1; goto s; }\n"
                               "block s { goto s; }\n");
  Program self_out = elide_forwarding(self, rep);
  CHECK(rep.blocks_removed_by_cleanup == 0);
  CHECK(structural_eq(self_out, self));

  Program ent = parse_program("block e0 { goto t; }\n"
                              "block t { print 1; exit; }\n");
  Program ent_out = elide_forwarding(ent, rep);
  CHECK(rep.blocks_removed_by_cleanup == 0);
  CHECK(structural_eq(ent_out, ent));
}

TEST_CASE("a tail that leaves a cycle is still elided") {
  // x forwards into a real block, so only the pure two-block cycle stays.
  Program p = parse_program("block p { print 1; br c x w; }\n"
                            "block x { goto d; }\n"
                            "block w { goto v; }\n"
                            "block v { goto w; }\n"
                            "block d { print 2; exit; }\n");
  TransformReport rep;
  Program out = elide_forwarding(p, rep);
  CHECK(rep.blocks_removed_by_cleanup == 1);
  CHECK_FALSE(out.contains("x"));
  CHECK(std::get<BranchTerm>(out.block("p").term).on_true == "d");
  CHECK(out.contains("w"));
  CHECK(out.contains("v"));
}

TEST_CASE("the transformed fixture parses back to itself") {
  Program p = testutil::load_fixture("flag_loop.ir");
  TransformReport rep;
  Program out = apply_cecd(p, fixture_region(p), rep);
  Program back = parse_program(print_program(out));
  CHECK(structural_eq(out, back));
  REQUIRE(back.block("bb7.u").origin.has_value());
  CHECK(back.block("bb7.u").origin->kind == CopyKind::Unknown);
}
