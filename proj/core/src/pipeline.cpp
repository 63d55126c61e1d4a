#include "cecd/pipeline.hpp"

#include <algorithm>
#include <random>

#include <json.hpp>

#include "cecd/interpreter.hpp"

namespace cecd {

std::vector<ExprPtr> branch_condition_candidates(const Program& p) {
  std::vector<ExprPtr> conds;
  std::vector<std::size_t> counts;
  for (const BasicBlock& b : p.blocks()) {
    const auto* br = std::get_if<BranchTerm>(&b.term);
    if (!br) continue;
    bool found = false;
    for (std::size_t i = 0; i < conds.size(); ++i)
      if (expr_eq(conds[i], br->cond)) {
        ++counts[i];
        found = true;
        break;
      }
    if (!found) {
      conds.push_back(br->cond);
      counts.push_back(1);
    }
  }
  std::vector<std::size_t> idx(conds.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return counts[a] > counts[b];
  });
  std::vector<ExprPtr> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(conds[i]);
  return out;
}

PipelineResult run_opt_pipeline(const Program& p, const PipelineOptions& opts) {
  std::vector<ExprPtr> candidates = branch_condition_candidates(p);
  if (opts.only_cond) {
    std::vector<ExprPtr> filtered;
    for (const ExprPtr& c : candidates)
      if (expr_eq(c, *opts.only_cond)) filtered.push_back(c);
    candidates = std::move(filtered);
  }

  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<std::int64_t> val(-8, 8);

  PipelineResult result{p, {}, false};
  for (const ExprPtr& e : candidates) {
    const Program& cur = result.output;
    CandidateStats row;
    row.cond = to_string(e);
    row.k = opts.k;
    row.blocks_before = static_cast<std::int64_t>(cur.blocks().size());
    row.blocks_after = row.blocks_before;
    row.instrs_before = instruction_count(cur);
    row.instrs_after = row.instrs_before;

    Region region = select_region(cur, e, opts.prediction.order);
    if (region.members.empty()) {
      result.stats.push_back(std::move(row));
      continue;
    }
    CostReport cost =
        evaluate_region(cur, e, region.members, EvalParams{opts.k},
                        opts.prediction);
    row.n = cost.n;
    row.predicted_growth = cost.growth;
    if (!cost.accepted) {
      result.stats.push_back(std::move(row));
      continue;
    }

    TransformReport rep;
    Program next = apply_cecd(cur, region, rep,
                              TransformOptions{opts.keep_originals});
    row.accepted = true;
    row.blocks_after = static_cast<std::int64_t>(next.blocks().size());
    row.instrs_after = instruction_count(next);
    row.actual_growth = row.instrs_after - row.instrs_before;

    if (opts.verify) {
      std::size_t len = static_cast<std::size_t>(input_count(cur)) + 4;
      bool ok = true;
      for (std::size_t r = 0; r < opts.verify_runs && ok; ++r) {
        std::vector<std::int64_t> inputs(len);
        for (auto& x : inputs) x = val(rng);
        ok = equivalent(cur, next, inputs, opts.fuel);
      }
      row.verified = ok;
      if (!ok) result.verify_failed = true;
    }

    result.output = std::move(next);
    result.stats.push_back(std::move(row));
  }
  return result;
}

std::string stats_to_json(const std::vector<CandidateStats>& stats) {
  nlohmann::json rows = nlohmann::json::array();
  for (const CandidateStats& s : stats) {
    nlohmann::json row = {{"cond", s.cond},
                          {"blocks_before", s.blocks_before},
                          {"blocks_after", s.blocks_after},
                          {"instrs_before", s.instrs_before},
                          {"instrs_after", s.instrs_after},
                          {"n", s.n},
                          {"k", s.k},
                          {"predicted_growth", s.predicted_growth},
                          {"actual_growth", s.actual_growth},
                          {"accepted", s.accepted}};
    row["verified"] = s.verified ? nlohmann::json(*s.verified)
                                 : nlohmann::json(nullptr);
    rows.push_back(std::move(row));
  }
  return rows.dump(2);
}

} // namespace cecd
