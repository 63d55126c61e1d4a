#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cecd/heuristic.hpp"
#include "cecd/ir.hpp"

namespace cecd {

// Distinct branch conditions in the program, most branch sites first, ties
// by first appearance in block order.
std::vector<ExprPtr> branch_condition_candidates(const Program& p);

struct PipelineOptions {
  std::int64_t k = 0;
  std::optional<ExprPtr> only_cond; // restrict to candidates equal to this
  bool keep_originals = false;
  bool verify = false;
  std::uint64_t seed = 0;
  std::int64_t fuel = 10000;
  std::size_t verify_runs = 100;
  CopyPredictionOptions prediction;
};

struct CandidateStats {
  std::string cond;
  std::int64_t blocks_before = 0;
  std::int64_t blocks_after = 0;
  std::int64_t instrs_before = 0;
  std::int64_t instrs_after = 0;
  std::int64_t n = 0;
  std::int64_t k = 0;
  std::int64_t predicted_growth = 0;
  std::int64_t actual_growth = 0;
  bool accepted = false;
  std::optional<bool> verified; // unset when verification was not run
};

struct PipelineResult {
  Program output;
  std::vector<CandidateStats> stats;
  bool verify_failed = false;
};

// Consider every candidate condition once, in order, each against the
// program as transformed so far. A candidate whose region the growth budget
// accepts is applied; when verification is on, the program before and after
// each applied transform is run on random inputs and compared.
PipelineResult run_opt_pipeline(const Program& p, const PipelineOptions& opts);

std::string stats_to_json(const std::vector<CandidateStats>& stats);

} // namespace cecd
