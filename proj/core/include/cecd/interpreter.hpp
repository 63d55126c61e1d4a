#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "cecd/ir.hpp"

namespace cecd {

enum class Outcome { Completed, FuelExhausted, RuntimeError };

enum class RuntimeErrorKind { None, UndefinedVariable, InputExhausted };

struct Trace {
  std::vector<std::int64_t> outputs;
  Outcome outcome = Outcome::Completed;
  RuntimeErrorKind error = RuntimeErrorKind::None;
};

struct ExecStats {
  std::int64_t steps = 0;           // completed instructions + terminators
  std::int64_t branches_executed = 0;
  std::vector<std::uint32_t> blocks_visited; // block indices, in visit order

  // Evaluation counts for branch conditions, keyed by structural equality.
  std::vector<std::pair<ExprPtr, std::int64_t>> cond_evals;

  std::int64_t evals_of(const ExprPtr& e) const;
  std::int64_t total_cond_evals() const;
  std::vector<BlockId> visited_ids(const Program& p) const;
};

struct RunResult {
  Trace trace;
  ExecStats stats;
};

// Precompiles block/variable references so repeated runs of the same program
// are cheap. Values are 64-bit two's complement with wraparound.
class Executor {
public:
  explicit Executor(const Program& p);
  RunResult run(std::span<const std::int64_t> inputs, std::int64_t fuel) const;

private:
  struct CAssign { std::uint32_t slot; const Expr* value; };
  struct CInput { std::uint32_t slot; };
  struct CPrint { const Expr* value; };
  struct CBlock {
    std::vector<std::variant<CAssign, CInput, CPrint>> instrs;
    // Terminator, flattened: kind 0=goto 1=branch 2=exit.
    int kind = 2;
    const Expr* cond = nullptr;
    std::uint32_t cond_class = 0;
    std::uint32_t on_true = 0;
    std::uint32_t on_false = 0;
  };

  const Program* program_;
  std::vector<CBlock> blocks_;
  std::uint32_t entry_ = 0;
  std::size_t var_count_ = 0;
  std::vector<ExprPtr> cond_classes_;
  std::unordered_map<const Expr*, std::uint32_t> var_slots_;

  std::uint32_t slot_of(const std::string& name,
                        std::unordered_map<std::string, std::uint32_t>& m);
  void index_expr(const ExprPtr& e,
                  std::unordered_map<std::string, std::uint32_t>& m);
};

// One-shot convenience around Executor.
RunResult run(const Program& p, std::span<const std::int64_t> inputs,
              std::int64_t fuel);

// Same outputs and outcome (including error kind). If p1 runs out of fuel,
// only requires p1's outputs to be a prefix of p2's: the second program may
// get further on the same fuel.
bool equivalent(const Program& p1, const Program& p2,
                std::span<const std::int64_t> inputs, std::int64_t fuel);

} // namespace cecd
