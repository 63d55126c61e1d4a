#include "cecd/ir.hpp"

#include <stdexcept>
#include <utility>

namespace cecd {

Program::Program(std::vector<BasicBlock> blocks, BlockId entry)
    : blocks_(std::move(blocks)), entry_(std::move(entry)) {
  if (blocks_.empty()) throw std::invalid_argument("program has no blocks");
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    auto [it, inserted] = index_.emplace(blocks_[i].id, i);
    (void)it;
    if (!inserted)
      throw std::invalid_argument("duplicate block id: " + blocks_[i].id);
  }
  if (!contains(entry_))
    throw std::invalid_argument("entry block does not exist: " + entry_);
  for (const auto& b : blocks_)
    for (const auto& t : successors(b.term))
      if (!contains(t))
        throw std::invalid_argument("block " + b.id +
                                    " targets undefined block: " + t);
}

std::size_t Program::index_of(const BlockId& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw std::out_of_range("unknown block id: " + id);
  return it->second;
}

const BasicBlock& Program::block(const BlockId& id) const {
  return blocks_[index_of(id)];
}

const BasicBlock* Program::find(const BlockId& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &blocks_[it->second];
}

std::vector<BlockId> successors(const Terminator& t) {
  if (const auto* g = std::get_if<GotoTerm>(&t)) return {g->target};
  if (const auto* b = std::get_if<BranchTerm>(&t)) return {b->on_true, b->on_false};
  return {};
}

std::vector<BlockId> succ(const Program& p, const BlockId& id) {
  return successors(p.block(id).term);
}

std::set<BlockId> pred(const Program& p, const BlockId& id) {
  (void)p.index_of(id); // unknown ids are an error even with no edges
  std::set<BlockId> out;
  for (const auto& b : p.blocks())
    for (const auto& t : successors(b.term))
      if (t == id) out.insert(b.id);
  return out;
}

bool instr_eq(const Instruction& a, const Instruction& b) {
  if (a.index() != b.index()) return false;
  if (const auto* x = std::get_if<AssignInstr>(&a)) {
    const auto& y = std::get<AssignInstr>(b);
    return x->target == y.target && expr_eq(x->value, y.value);
  }
  if (const auto* x = std::get_if<InputInstr>(&a))
    return x->target == std::get<InputInstr>(b).target;
  return expr_eq(std::get<PrintInstr>(a).value, std::get<PrintInstr>(b).value);
}

bool term_eq(const Terminator& a, const Terminator& b) {
  if (a.index() != b.index()) return false;
  if (const auto* x = std::get_if<GotoTerm>(&a))
    return x->target == std::get<GotoTerm>(b).target;
  if (const auto* x = std::get_if<BranchTerm>(&a)) {
    const auto& y = std::get<BranchTerm>(b);
    return expr_eq(x->cond, y.cond) && x->on_true == y.on_true &&
           x->on_false == y.on_false;
  }
  return true;
}

bool block_eq(const BasicBlock& a, const BasicBlock& b) {
  if (a.id != b.id || a.origin != b.origin) return false;
  if (a.instrs.size() != b.instrs.size()) return false;
  for (std::size_t i = 0; i < a.instrs.size(); ++i)
    if (!instr_eq(a.instrs[i], b.instrs[i])) return false;
  return term_eq(a.term, b.term);
}

bool structural_eq(const Program& a, const Program& b) {
  if (a.entry() != b.entry()) return false;
  if (a.blocks().size() != b.blocks().size()) return false;
  for (std::size_t i = 0; i < a.blocks().size(); ++i)
    if (!block_eq(a.blocks()[i], b.blocks()[i])) return false;
  return true;
}

std::int64_t block_size(const BasicBlock& b) {
  return static_cast<std::int64_t>(b.instrs.size());
}

std::int64_t instruction_count(const Program& p) {
  std::int64_t n = 0;
  for (const auto& b : p.blocks()) n += block_size(b);
  return n;
}

std::int64_t input_count(const Program& p) {
  std::int64_t n = 0;
  for (const auto& b : p.blocks())
    for (const auto& in : b.instrs)
      if (std::holds_alternative<InputInstr>(in)) ++n;
  return n;
}

std::optional<BlockOrigin> origin_from_id(const BlockId& id) {
  auto dot = id.rfind('.');
  if (dot == std::string::npos || dot == 0 || dot + 2 != id.size())
    return std::nullopt;
  switch (id[dot + 1]) {
    case 't': return BlockOrigin{id.substr(0, dot), CopyKind::True};
    case 'f': return BlockOrigin{id.substr(0, dot), CopyKind::False};
    case 'u': return BlockOrigin{id.substr(0, dot), CopyKind::Unknown};
    default: return std::nullopt;
  }
}

} // namespace cecd
