#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "cecd/expr.hpp"

namespace cecd {

using BlockId = std::string;

enum class CopyKind { True, False, Unknown };

// Which block a duplicated block was copied from. The printed form encodes
// this in the id suffix (.t/.f/.u), so parsing recovers it.
struct BlockOrigin {
  BlockId original;
  CopyKind kind;
  bool operator==(const BlockOrigin&) const = default;
};

struct AssignInstr {
  std::string target;
  ExprPtr value;
};

struct InputInstr {
  std::string target;
};

struct PrintInstr {
  ExprPtr value;
};

using Instruction = std::variant<AssignInstr, InputInstr, PrintInstr>;

struct GotoTerm {
  BlockId target;
};

struct BranchTerm {
  ExprPtr cond;
  BlockId on_true;
  BlockId on_false;
};

struct ExitTerm {};

using Terminator = std::variant<GotoTerm, BranchTerm, ExitTerm>;

struct BasicBlock {
  BlockId id;
  std::vector<Instruction> instrs;
  Terminator term;
  std::optional<BlockOrigin> origin;
};

// A complete control flow graph. Construction validates that ids are unique,
// the entry exists, and every terminator target names a block.
class Program {
public:
  Program(std::vector<BasicBlock> blocks, BlockId entry);

  const std::vector<BasicBlock>& blocks() const { return blocks_; }
  const BlockId& entry() const { return entry_; }

  bool contains(const BlockId& id) const { return index_.count(id) != 0; }
  std::size_t index_of(const BlockId& id) const;   // throws on unknown id
  const BasicBlock& block(const BlockId& id) const;
  const BasicBlock* find(const BlockId& id) const; // nullptr on unknown id

private:
  std::vector<BasicBlock> blocks_;
  BlockId entry_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Targets named by a terminator, in slot order (Branch: true then false).
std::vector<BlockId> successors(const Terminator& t);

std::vector<BlockId> succ(const Program& p, const BlockId& id);
std::set<BlockId> pred(const Program& p, const BlockId& id);

bool instr_eq(const Instruction& a, const Instruction& b);
bool term_eq(const Terminator& a, const Terminator& b);
bool block_eq(const BasicBlock& a, const BasicBlock& b);

// Field-by-field identity: same block order, ids, instructions, terminators,
// origins, and entry.
bool structural_eq(const Program& a, const Program& b);

// Number of instructions in the block, terminator excluded. This is the
// size measure the growth heuristic uses.
std::int64_t block_size(const BasicBlock& b);
std::int64_t instruction_count(const Program& p);
std::int64_t input_count(const Program& p);

// If id looks like "<base>.t" / ".f" / ".u", the origin that suffix encodes.
std::optional<BlockOrigin> origin_from_id(const BlockId& id);

} // namespace cecd
