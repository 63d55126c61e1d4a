#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "cecd/analysis.hpp"
#include "cecd/transform.hpp"

namespace cecd {

struct EvalParams {
  // Instruction growth allowed per eliminated branch site.
  std::int64_t k = 0;
};

// Size arithmetic for duplicating a region: the three copy sets priced by
// instruction count, against the region itself which goes away.
struct CostReport {
  std::int64_t rt_size = 0;
  std::int64_t rf_size = 0;
  std::int64_t ru_size = 0;
  std::int64_t region_size = 0;
  std::int64_t n = 0; // branch sites on the condition inside the region
  std::int64_t growth = 0;
  bool accepted = false;
};

// The full profitable region for e: every block where the condition is both
// known on entry and still wanted. The entry block is dropped if the
// dataflow result contains it, since it cannot be duplicated.
Region select_region(const Program& p, const ExprPtr& e,
                     IterationOrder order = IterationOrder::Worklist);

// growth = rt + rf + ru - region, accepted iff growth <= n * k.
CostReport evaluate_region(const Program& p, const ExprPtr& e,
                           const std::set<BlockId>& members,
                           const EvalParams& params,
                           const CopyPredictionOptions& opts = {});

struct KnapsackItem {
  std::int64_t weight = 0; // > 0
  std::int64_t value = 0;  // > 0
};

struct KnapsackInstance {
  std::vector<KnapsackItem> items;
  std::int64_t budget = 0; // >= 0
};

// Execution frequencies per block; blocks not listed count as zero.
struct ProfileData {
  std::map<BlockId, std::int64_t> freq;
};

struct KnapsackCfg {
  Program program;
  ProfileData profile;
  ExprPtr cond;
};

// Encode a knapsack instance as a region-selection problem: a branch on the
// condition feeds a binary dispatch tree over fresh conditions, one leaf per
// item holding weight-many filler instructions, all converging on a final
// block that tests the condition again. Choosing leaves to duplicate costs
// their weight (the growth) and earns their value (the profiled frequency),
// under budget k per eliminated site.
KnapsackCfg build_knapsack_cfg(const KnapsackInstance& inst);

struct RegionChoice {
  std::set<BlockId> members;
  CostReport cost;
  std::int64_t objective = 0;
};

// Search all subsets of the profitable blocks for the region with the best
// profile-weighted payoff among those the growth budget accepts. The payoff
// counts, for every surviving branch site the region eliminates, the profiled
// frequency of each duplicated block from which that site is reachable
// without leaving the duplicated ones. Throws when there are more than 20
// candidate blocks.
RegionChoice best_region_by_profile(const Program& p, const ExprPtr& e,
                                    const ProfileData& profile,
                                    const EvalParams& params);

struct KnapsackSolution {
  std::vector<std::size_t> chosen;
  std::int64_t weight = 0;
  std::int64_t value = 0;
};

// Exhaustive 0/1 knapsack, first subset found wins ties. Throws when there
// are more than 20 items.
KnapsackSolution knapsack_brute_force(const KnapsackInstance& inst);

} // namespace cecd
