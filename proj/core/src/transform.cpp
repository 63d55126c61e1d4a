#include "cecd/transform.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <unordered_set>

namespace cecd {

namespace {

const char* suffix_of(CopyKind k) {
  switch (k) {
    case CopyKind::True: return ".t";
    case CopyKind::False: return ".f";
    case CopyKind::Unknown: return ".u";
  }
  return "";
}

BlockId copy_id(const BlockId& base, CopyKind k) { return base + suffix_of(k); }

bool writes_any(const BasicBlock& b, const std::set<std::string>& vars) {
  for (const auto& in : b.instrs) {
    const std::string* target = nullptr;
    if (const auto* a = std::get_if<AssignInstr>(&in)) target = &a->target;
    if (const auto* inp = std::get_if<InputInstr>(&in)) target = &inp->target;
    if (target && vars.count(*target)) return true;
  }
  return false;
}

void for_each_target(Terminator& t, const std::function<void(BlockId&)>& f) {
  if (auto* gt = std::get_if<GotoTerm>(&t)) {
    f(gt->target);
  } else if (auto* br = std::get_if<BranchTerm>(&t)) {
    f(br->on_true);
    f(br->on_false);
  }
}

} // namespace

void check_valid(const Program& p, const Region& r) {
  if (!r.cond) throw TransformError("region has no condition");
  if (r.members.empty()) throw TransformError("region has no members");
  std::set<std::string> ops = operands_of(r.cond);
  for (const auto& id : r.members) {
    const BasicBlock* b = p.find(id);
    if (!b) throw TransformError("region member is not a block: " + id);
    if (id == p.entry())
      throw TransformError("region must not contain the entry block");
    if (writes_any(*b, ops))
      throw TransformError("region member " + id +
                           " writes an operand of the condition");
  }
}

Program duplicate(const Program& p, const Region& r, TransformReport& rep,
                  const TransformOptions& opts) {
  check_valid(p, r);
  static const CopyKind kKinds[] = {CopyKind::True, CopyKind::False,
                                    CopyKind::Unknown};
  for (const auto& id : r.members)
    for (CopyKind k : kKinds)
      if (p.contains(copy_id(id, k)))
        throw TransformError("block id already taken: " + copy_id(id, k));

  std::vector<BasicBlock> out;
  for (const BasicBlock& b : p.blocks()) {
    bool member = r.members.count(b.id) != 0;
    if (!member || opts.keep_originals) {
      BasicBlock kept = b;
      if (!member) {
        // An edge into the region from outside carries no knowledge of the
        // condition, so it lands on the .u copy.
        for_each_target(kept.term, [&](BlockId& t) {
          if (r.members.count(t)) t = copy_id(t, CopyKind::Unknown);
        });
      }
      out.push_back(std::move(kept));
    }
    if (!member) continue;
    for (CopyKind k : kKinds) {
      BasicBlock c = b;
      c.id = copy_id(b.id, k);
      c.origin = BlockOrigin{b.id, k};
      for_each_target(c.term, [&](BlockId& t) {
        if (r.members.count(t)) t = copy_id(t, k);
      });
      out.push_back(std::move(c));
      ++rep.copies_created;
    }
  }
  return Program(std::move(out), p.entry());
}

Program rewire(const Program& p, const Region& r, TransformReport& rep) {
  std::vector<BasicBlock> out = p.blocks();
  for (BasicBlock& b : out) {
    auto* br = std::get_if<BranchTerm>(&b.term);
    if (!br || !expr_eq(br->cond, r.cond)) continue;
    auto retarget = [&](BlockId& slot, CopyKind k) {
      const BasicBlock* tgt = p.find(slot);
      if (!tgt || !tgt->origin || !r.members.count(tgt->origin->original))
        return;
      BlockId fresh = copy_id(tgt->origin->original, k);
      if (fresh != slot) {
        slot = std::move(fresh);
        ++rep.edges_rewired;
      }
    };
    retarget(br->on_true, CopyKind::True);
    retarget(br->on_false, CopyKind::False);
  }
  return Program(std::move(out), p.entry());
}

Program eliminate(const Program& p, const Region& r, TransformReport& rep) {
  std::vector<BasicBlock> out = p.blocks();
  std::set<BlockId> sites;
  for (BasicBlock& b : out) {
    if (!b.origin || !r.members.count(b.origin->original)) continue;
    if (b.origin->kind == CopyKind::Unknown) continue;
    auto* br = std::get_if<BranchTerm>(&b.term);
    if (!br || !expr_eq(br->cond, r.cond)) continue;
    BlockId taken =
        b.origin->kind == CopyKind::True ? br->on_true : br->on_false;
    b.term = GotoTerm{std::move(taken)};
    sites.insert(b.origin->original);
  }
  rep.conditionals_eliminated += sites.size();
  return Program(std::move(out), p.entry());
}

Program remove_unreachable(const Program& p, TransformReport& rep) {
  std::unordered_set<std::string> seen;
  std::deque<BlockId> work{p.entry()};
  seen.insert(p.entry());
  while (!work.empty()) {
    BlockId id = std::move(work.front());
    work.pop_front();
    for (const BlockId& s : successors(p.block(id).term))
      if (seen.insert(s).second) work.push_back(s);
  }
  std::vector<BasicBlock> out;
  for (const BasicBlock& b : p.blocks())
    if (seen.count(b.id))
      out.push_back(b);
    else
      ++rep.blocks_removed_by_cleanup;
  return Program(std::move(out), p.entry());
}

namespace {

bool is_forwarding(const BasicBlock& b) {
  return b.instrs.empty() && std::holds_alternative<GotoTerm>(b.term);
}

// True when following gotos through forwarding blocks leads back to b.
bool in_forwarding_cycle(const Program& p, const BasicBlock& b) {
  std::set<BlockId> visited{b.id};
  BlockId cur = std::get<GotoTerm>(b.term).target;
  while (true) {
    if (cur == b.id) return true;
    const BasicBlock& blk = p.block(cur);
    if (!is_forwarding(blk)) return false;
    if (!visited.insert(cur).second) return false;
    cur = std::get<GotoTerm>(blk.term).target;
  }
}

} // namespace

Program elide_forwarding(const Program& p, TransformReport& rep) {
  Program cur = p;
  for (;;) {
    const BasicBlock* victim = nullptr;
    for (const BasicBlock& b : cur.blocks()) {
      if (b.id == cur.entry() || !is_forwarding(b)) continue;
      if (std::get<GotoTerm>(b.term).target == b.id) continue;
      if (in_forwarding_cycle(cur, b)) continue;
      victim = &b;
      break;
    }
    if (!victim) return cur;
    BlockId gone = victim->id;
    BlockId dest = std::get<GotoTerm>(victim->term).target;
    std::vector<BasicBlock> out;
    for (const BasicBlock& b : cur.blocks()) {
      if (b.id == gone) continue;
      BasicBlock kept = b;
      for_each_target(kept.term, [&](BlockId& t) {
        if (t == gone) t = dest;
      });
      out.push_back(std::move(kept));
    }
    ++rep.blocks_removed_by_cleanup;
    cur = Program(std::move(out), cur.entry());
  }
}

Program cleanup(const Program& p, TransformReport& rep) {
  Program cur = remove_unreachable(p, rep);
  return elide_forwarding(cur, rep);
}

Program apply_cecd(const Program& p, const Region& r, TransformReport& rep,
                   const TransformOptions& opts) {
  Program cur = duplicate(p, r, rep, opts);
  cur = rewire(cur, r, rep);
  cur = eliminate(cur, r, rep);
  if (!opts.keep_originals) cur = cleanup(cur, rep);
  return cur;
}

} // namespace cecd
