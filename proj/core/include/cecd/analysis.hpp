#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "cecd/ir.hpp"

namespace cecd {

// Adjacency plus the per-block facts the region equations consume. Kept as a
// plain index-based view so the solver can also run on a restricted graph.
struct CfgView {
  std::size_t n = 0;
  std::vector<std::vector<std::size_t>> succs; // deduplicated
  std::vector<std::vector<std::size_t>> preds; // deduplicated
  std::vector<char> valid;     // no member instruction writes an operand of e
  std::vector<char> expr_site; // block's terminator branches on e
  // For expr sites only: targets of the matching branch.
  std::vector<std::int32_t> true_target;  // -1 when not an expr site
  std::vector<std::int32_t> false_target;

  bool true_edge(std::size_t from, std::size_t to) const {
    return expr_site[from] && true_target[from] == static_cast<std::int32_t>(to);
  }
  bool false_edge(std::size_t from, std::size_t to) const {
    return expr_site[from] && false_target[from] == static_cast<std::int32_t>(to);
  }
};

CfgView make_view(const Program& p, const ExprPtr& e);

// Drops the masked-out nodes' edges and facts; indices keep their meaning.
CfgView restrict_view(const CfgView& g, const std::vector<char>& keep);

struct LocalProps {
  std::vector<char> valid;
  std::vector<char> expr_site;
};

LocalProps compute_locals(const Program& p, const ExprPtr& e);

enum class Direction { Forward, Backward };
enum class IterationOrder { Worklist, RoundRobin };

// Least fixpoint of a monotone boolean transfer, starting all-false.
// Forward: a block's value depends on predecessors; changes notify
// successors. Backward is the mirror image.
template <typename F>
std::vector<char> solve_any_path(const CfgView& g, F&& transfer, Direction dir,
                                 IterationOrder order = IterationOrder::Worklist) {
  std::vector<char> vals(g.n, 0);
  if (order == IterationOrder::RoundRobin) {
    bool changed = true;
    while (changed) {
      changed = false;
      if (dir == Direction::Forward) {
        for (std::size_t i = 0; i < g.n; ++i) {
          if (!vals[i] && transfer(i, vals)) { vals[i] = 1; changed = true; }
        }
      } else {
        for (std::size_t i = g.n; i-- > 0;) {
          if (!vals[i] && transfer(i, vals)) { vals[i] = 1; changed = true; }
        }
      }
    }
    return vals;
  }
  std::vector<std::size_t> work;
  std::vector<char> queued(g.n, 1);
  work.reserve(g.n * 2);
  for (std::size_t i = 0; i < g.n; ++i)
    work.push_back(dir == Direction::Forward ? i : g.n - 1 - i);
  for (std::size_t head = 0; head < work.size(); ++head) {
    std::size_t i = work[head];
    queued[i] = 0;
    if (vals[i] || !transfer(i, vals)) continue;
    vals[i] = 1;
    const auto& out = dir == Direction::Forward ? g.succs[i] : g.preds[i];
    for (std::size_t j : out)
      if (!queued[j] && !vals[j]) { queued[j] = 1; work.push_back(j); }
  }
  return vals;
}

struct AnalysisResult {
  ExprPtr e;
  std::vector<char> valid, expr_site, live, antic, d, rt, rf, ru;
};

// Live/Antic/D for the largest useful region of condition e.
AnalysisResult compute_region(const Program& p, const ExprPtr& e,
                              IterationOrder order = IterationOrder::Worklist);

struct CopyPredictionOptions {
  // The guarded form stops t/f propagation across predecessors that
  // themselves branch on e (their copies hand control to .t/.f, never to
  // their own kind). The unguarded form omits that factor and over-predicts;
  // it is kept selectable for comparison.
  bool guarded = true;
  IterationOrder order = IterationOrder::Worklist;
};

// Fills rt/rf/ru for an arbitrary valid region (d is set to the region's
// membership mask). Errors if the region is not valid.
AnalysisResult compute_reachable_copies(const Program& p, const ExprPtr& e,
                                        const std::set<BlockId>& region,
                                        const CopyPredictionOptions& opts = {});

// compute_region plus copy prediction for its D-set.
AnalysisResult analyze(const Program& p, const ExprPtr& e,
                       const CopyPredictionOptions& opts = {});

// Independent characterization of the useful region, by graph walks over
// path semantics rather than fixpoint iteration. maxlen bounds the walk
// depth and must be at least the block count.
std::set<BlockId> useful_oracle(const Program& p, const ExprPtr& e,
                                std::size_t maxlen);

std::set<BlockId> blocks_where(const Program& p, const std::vector<char>& mask);

// One row per block with the eight booleans, as a JSON array.
std::string analysis_to_json(const Program& p, const AnalysisResult& r);

} // namespace cecd
