#include "cecd/heuristic.hpp"

#include <deque>
#include <functional>
#include <stdexcept>
#include <string>

namespace cecd {

Region select_region(const Program& p, const ExprPtr& e,
                     IterationOrder order) {
  AnalysisResult r = compute_region(p, e, order);
  std::set<BlockId> members = blocks_where(p, r.d);
  members.erase(p.entry());
  return Region{std::move(members), e};
}

CostReport evaluate_region(const Program& p, const ExprPtr& e,
                           const std::set<BlockId>& members,
                           const EvalParams& params,
                           const CopyPredictionOptions& opts) {
  AnalysisResult r = compute_reachable_copies(p, e, members, opts);
  CostReport c;
  for (std::size_t i = 0; i < p.blocks().size(); ++i) {
    std::int64_t s = block_size(p.blocks()[i]);
    if (r.rt[i]) c.rt_size += s;
    if (r.rf[i]) c.rf_size += s;
    if (r.ru[i]) c.ru_size += s;
    if (r.d[i]) {
      c.region_size += s;
      if (r.expr_site[i]) ++c.n;
    }
  }
  c.growth = c.rt_size + c.rf_size + c.ru_size - c.region_size;
  c.accepted = c.growth <= c.n * params.k;
  return c;
}

KnapsackCfg build_knapsack_cfg(const KnapsackInstance& inst) {
  if (inst.items.empty())
    throw std::invalid_argument("knapsack instance has no items");
  if (inst.budget < 0)
    throw std::invalid_argument("knapsack budget must be non-negative");

  ExprPtr cond = Expr::variable("e0");
  std::vector<BasicBlock> blocks;
  ProfileData profile;

  auto leaf_id = [](std::size_t i) { return "bb_l" + std::to_string(i); };

  blocks.push_back(BasicBlock{"bb_s", {}, ExitTerm{}, {}}); // term patched below
  std::size_t inner = 0;
  std::function<BlockId(std::size_t, std::size_t)> build =
      [&](std::size_t lo, std::size_t hi) -> BlockId {
    if (hi - lo == 1) {
      BasicBlock leaf{leaf_id(lo), {}, GotoTerm{"bb_e"}, {}};
      for (std::int64_t w = 0; w < inst.items[lo].weight; ++w)
        leaf.instrs.push_back(AssignInstr{"x", Expr::literal(0)});
      profile.freq[leaf.id] = inst.items[lo].value;
      blocks.push_back(std::move(leaf));
      return leaf_id(lo);
    }
    BlockId id = "bb_n" + std::to_string(inner);
    ExprPtr c = Expr::variable("c" + std::to_string(inner));
    ++inner;
    std::size_t slot = blocks.size();
    blocks.push_back(BasicBlock{id, {}, ExitTerm{}, {}});
    std::size_t mid = (lo + hi) / 2;
    BlockId left = build(lo, mid);
    BlockId right = build(mid, hi);
    blocks[slot].term = BranchTerm{c, left, right};
    return id;
  };
  BlockId root = build(0, inst.items.size());
  blocks[0].term = BranchTerm{cond, root, root};
  blocks.push_back(BasicBlock{"bb_e", {}, BranchTerm{cond, "bb_x", "bb_x"}, {}});
  blocks.push_back(BasicBlock{"bb_x", {}, ExitTerm{}, {}});

  return KnapsackCfg{Program(std::move(blocks), "bb_s"), std::move(profile),
                     std::move(cond)};
}

namespace {

std::int64_t freq_of(const ProfileData& profile, const BlockId& id) {
  auto it = profile.freq.find(id);
  return it == profile.freq.end() ? 0 : it->second;
}

} // namespace

RegionChoice best_region_by_profile(const Program& p, const ExprPtr& e,
                                    const ProfileData& profile,
                                    const EvalParams& params) {
  AnalysisResult base = compute_region(p, e);
  CfgView g = make_view(p, e);

  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < p.blocks().size(); ++i)
    if (base.d[i] && p.blocks()[i].id != p.entry()) candidates.push_back(i);
  if (candidates.size() > 20)
    throw std::invalid_argument("too many candidate blocks to enumerate");

  RegionChoice best; // the empty choice scores zero

  for (std::uint64_t mask = 1; mask < (1ull << candidates.size()); ++mask) {
    std::vector<char> mem(p.blocks().size(), 0);
    for (std::size_t b = 0; b < candidates.size(); ++b)
      if (mask & (1ull << b)) mem[candidates[b]] = 1;

    // Keep only the picked blocks that are on a path from an evaluation of e
    // to a picked block that still tests it; the rest contribute nothing.
    std::vector<char> known = solve_any_path(
        g,
        [&](std::size_t i, const std::vector<char>& v) {
          if (!mem[i]) return false;
          for (std::size_t j : g.preds[i])
            if (g.expr_site[j] || v[j]) return true;
          return false;
        },
        Direction::Forward);
    std::vector<char> wanted = solve_any_path(
        g,
        [&](std::size_t i, const std::vector<char>& v) {
          if (!mem[i]) return false;
          if (g.expr_site[i]) return true;
          for (std::size_t j : g.succs[i])
            if (v[j]) return true;
          return false;
        },
        Direction::Backward);

    std::set<BlockId> members;
    for (std::size_t i = 0; i < mem.size(); ++i)
      if (known[i] && wanted[i]) members.insert(p.blocks()[i].id);
    if (members.empty()) continue;

    CostReport cost = evaluate_region(p, e, members, params);
    if (!cost.accepted) continue;

    AnalysisResult r = compute_reachable_copies(p, e, members);
    std::vector<char> tf(g.n, 0);
    for (std::size_t i = 0; i < g.n; ++i) tf[i] = r.rt[i] || r.rf[i];

    // For every branch site that gets resolved, credit the frequency of each
    // duplicated block that can reach it inside the duplicated set.
    std::int64_t objective = 0;
    for (std::size_t m = 0; m < g.n; ++m) {
      if (!tf[m] || !g.expr_site[m]) continue;
      std::vector<char> seen(g.n, 0);
      std::deque<std::size_t> work{m};
      seen[m] = 1;
      while (!work.empty()) {
        std::size_t i = work.front();
        work.pop_front();
        objective += freq_of(profile, p.blocks()[i].id);
        for (std::size_t j : g.preds[i])
          if (tf[j] && !seen[j]) {
            seen[j] = 1;
            work.push_back(j);
          }
      }
    }

    if (objective > best.objective) {
      best.members = std::move(members);
      best.cost = cost;
      best.objective = objective;
    }
  }
  return best;
}

KnapsackSolution knapsack_brute_force(const KnapsackInstance& inst) {
  if (inst.items.size() > 20)
    throw std::invalid_argument("too many items to enumerate");
  if (inst.budget < 0)
    throw std::invalid_argument("knapsack budget must be non-negative");
  KnapsackSolution best;
  for (std::uint64_t mask = 0; mask < (1ull << inst.items.size()); ++mask) {
    std::int64_t w = 0, v = 0;
    for (std::size_t i = 0; i < inst.items.size(); ++i)
      if (mask & (1ull << i)) {
        w += inst.items[i].weight;
        v += inst.items[i].value;
      }
    if (w > inst.budget || v <= best.value) continue;
    best.value = v;
    best.weight = w;
    best.chosen.clear();
    for (std::size_t i = 0; i < inst.items.size(); ++i)
      if (mask & (1ull << i)) best.chosen.push_back(i);
  }
  return best;
}

} // namespace cecd
