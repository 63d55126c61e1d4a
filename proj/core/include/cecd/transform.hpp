#pragma once

#include <set>
#include <stdexcept>
#include <string>

#include "cecd/ir.hpp"

namespace cecd {

class TransformError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// The blocks to duplicate, together with the branch condition whose value
// the duplication makes known inside them.
struct Region {
  std::set<BlockId> members;
  ExprPtr cond;
};

struct TransformReport {
  std::size_t copies_created = 0;
  std::size_t edges_rewired = 0;
  std::size_t conditionals_eliminated = 0;
  std::size_t blocks_removed_by_cleanup = 0;
};

struct TransformOptions {
  // Keep the now-unreachable original region blocks and skip cleanup, so the
  // raw intermediate with all three copies of every member stays visible.
  bool keep_originals = false;
};

// Throws TransformError unless the region is usable: non-empty, all members
// exist, the entry block is not a member, and no member writes an operand of
// the condition (a copy must be able to trust the recorded outcome).
void check_valid(const Program& p, const Region& r);

// Replace each member X with copies X.t, X.f, X.u. Edges between members are
// replicated kind for kind, edges leaving the region fan out from every copy
// to the original target, and edges entering the region from outside are
// redirected to the .u copy (the value of the condition is unknown on them).
Program duplicate(const Program& p, const Region& r, TransformReport& rep,
                  const TransformOptions& opts = {});

// Retarget branch slots that test the region condition and point at a copy:
// the true slot moves to the .t copy, the false slot to the .f copy.
Program rewire(const Program& p, const Region& r, TransformReport& rep);

// Inside .t and .f copies the condition's value is known, so their branches
// on it collapse to gotos. The .u copies keep theirs.
Program eliminate(const Program& p, const Region& r, TransformReport& rep);

Program remove_unreachable(const Program& p, TransformReport& rep);

// Drop blocks that hold no instructions and just forward through a goto,
// retargeting their incoming edges. The entry block stays, and a cycle made
// only of such blocks stays too (there is nowhere to forward it to).
Program elide_forwarding(const Program& p, TransformReport& rep);

Program cleanup(const Program& p, TransformReport& rep);

// duplicate, rewire, eliminate, cleanup. With keep_originals set the cleanup
// step is skipped.
Program apply_cecd(const Program& p, const Region& r, TransformReport& rep,
                   const TransformOptions& opts = {});

} // namespace cecd
