#include "cecd/interpreter.hpp"

#include <algorithm>
#include <stdexcept>

namespace cecd {

std::int64_t ExecStats::evals_of(const ExprPtr& e) const {
  for (const auto& [cond, n] : cond_evals)
    if (expr_eq(cond, e)) return n;
  return 0;
}

std::int64_t ExecStats::total_cond_evals() const {
  std::int64_t n = 0;
  for (const auto& [cond, c] : cond_evals) n += c;
  return n;
}

std::vector<BlockId> ExecStats::visited_ids(const Program& p) const {
  std::vector<BlockId> out;
  out.reserve(blocks_visited.size());
  for (auto i : blocks_visited) out.push_back(p.blocks()[i].id);
  return out;
}

std::uint32_t Executor::slot_of(
    const std::string& name, std::unordered_map<std::string, std::uint32_t>& m) {
  auto [it, inserted] = m.emplace(name, static_cast<std::uint32_t>(m.size()));
  (void)inserted;
  return it->second;
}

void Executor::index_expr(const ExprPtr& e,
                          std::unordered_map<std::string, std::uint32_t>& m) {
  switch (e->kind()) {
    case Expr::Kind::Literal: return;
    case Expr::Kind::Variable:
      var_slots_.emplace(e.get(), slot_of(e->name(), m));
      return;
    case Expr::Kind::Unary: index_expr(e->lhs(), m); return;
    case Expr::Kind::Binary:
      index_expr(e->lhs(), m);
      index_expr(e->rhs(), m);
      return;
  }
}

Executor::Executor(const Program& p) : program_(&p) {
  std::unordered_map<std::string, std::uint32_t> slots;
  entry_ = static_cast<std::uint32_t>(p.index_of(p.entry()));
  blocks_.reserve(p.blocks().size());
  for (const auto& b : p.blocks()) {
    CBlock cb;
    for (const auto& in : b.instrs) {
      if (const auto* a = std::get_if<AssignInstr>(&in)) {
        index_expr(a->value, slots);
        cb.instrs.push_back(CAssign{slot_of(a->target, slots), a->value.get()});
      } else if (const auto* i = std::get_if<InputInstr>(&in)) {
        cb.instrs.push_back(CInput{slot_of(i->target, slots)});
      } else {
        const auto& pr = std::get<PrintInstr>(in);
        index_expr(pr.value, slots);
        cb.instrs.push_back(CPrint{pr.value.get()});
      }
    }
    if (const auto* g = std::get_if<GotoTerm>(&b.term)) {
      cb.kind = 0;
      cb.on_true = static_cast<std::uint32_t>(p.index_of(g->target));
    } else if (const auto* br = std::get_if<BranchTerm>(&b.term)) {
      cb.kind = 1;
      index_expr(br->cond, slots);
      cb.cond = br->cond.get();
      cb.on_true = static_cast<std::uint32_t>(p.index_of(br->on_true));
      cb.on_false = static_cast<std::uint32_t>(p.index_of(br->on_false));
      std::uint32_t cls = 0;
      for (; cls < cond_classes_.size(); ++cls)
        if (expr_eq(cond_classes_[cls], br->cond)) break;
      if (cls == cond_classes_.size()) cond_classes_.push_back(br->cond);
      cb.cond_class = cls;
    } else {
      cb.kind = 2;
    }
    blocks_.push_back(std::move(cb));
  }
  var_count_ = slots.size();
}

namespace {

struct Env {
  std::vector<std::int64_t> vals;
  std::vector<char> defined;
  const std::unordered_map<const Expr*, std::uint32_t>* slots;
  bool undef = false; // set when evaluation touched an undefined variable

  std::int64_t eval(const Expr* e) {
    switch (e->kind()) {
      case Expr::Kind::Literal:
        return e->value();
      case Expr::Kind::Variable: {
        std::uint32_t s = slots->at(e);
        if (!defined[s]) {
          undef = true;
          return 0;
        }
        return vals[s];
      }
      case Expr::Kind::Unary: {
        std::int64_t v = eval(e->lhs().get());
        if (e->unary_op() == UnaryOp::Neg)
          return static_cast<std::int64_t>(-static_cast<std::uint64_t>(v));
        return v == 0 ? 1 : 0;
      }
      case Expr::Kind::Binary: {
        // Both sides always evaluate; && and || are not short-circuiting.
        std::uint64_t a = static_cast<std::uint64_t>(eval(e->lhs().get()));
        std::uint64_t b = static_cast<std::uint64_t>(eval(e->rhs().get()));
        std::int64_t sa = static_cast<std::int64_t>(a);
        std::int64_t sb = static_cast<std::int64_t>(b);
        switch (e->binary_op()) {
          case BinaryOp::Add: return static_cast<std::int64_t>(a + b);
          case BinaryOp::Sub: return static_cast<std::int64_t>(a - b);
          case BinaryOp::Mul: return static_cast<std::int64_t>(a * b);
          case BinaryOp::Eq: return sa == sb ? 1 : 0;
          case BinaryOp::Ne: return sa != sb ? 1 : 0;
          case BinaryOp::Lt: return sa < sb ? 1 : 0;
          case BinaryOp::Le: return sa <= sb ? 1 : 0;
          case BinaryOp::Gt: return sa > sb ? 1 : 0;
          case BinaryOp::Ge: return sa >= sb ? 1 : 0;
          case BinaryOp::And: return (sa != 0 && sb != 0) ? 1 : 0;
          case BinaryOp::Or: return (sa != 0 || sb != 0) ? 1 : 0;
        }
        return 0;
      }
    }
    return 0;
  }
};

} // namespace

RunResult Executor::run(std::span<const std::int64_t> inputs,
                        std::int64_t fuel) const {
  if (fuel < 1) throw std::invalid_argument("fuel must be at least 1");
  RunResult r;
  r.stats.cond_evals.reserve(cond_classes_.size());
  for (const auto& c : cond_classes_) r.stats.cond_evals.emplace_back(c, 0);

  Env env;
  env.vals.assign(var_count_, 0);
  env.defined.assign(var_count_, 0);
  env.slots = &var_slots_;

  std::size_t next_input = 0;
  std::uint32_t cur = entry_;
  auto fail = [&](RuntimeErrorKind k) {
    r.trace.outcome = Outcome::RuntimeError;
    r.trace.error = k;
    return r;
  };

  for (;;) {
    r.stats.blocks_visited.push_back(cur);
    const CBlock& b = blocks_[cur];
    for (const auto& in : b.instrs) {
      if (r.stats.steps == fuel) {
        r.trace.outcome = Outcome::FuelExhausted;
        return r;
      }
      if (const auto* a = std::get_if<CAssign>(&in)) {
        env.undef = false;
        std::int64_t v = env.eval(a->value);
        if (env.undef) return fail(RuntimeErrorKind::UndefinedVariable);
        env.vals[a->slot] = v;
        env.defined[a->slot] = 1;
      } else if (const auto* i = std::get_if<CInput>(&in)) {
        if (next_input >= inputs.size())
          return fail(RuntimeErrorKind::InputExhausted);
        env.vals[i->slot] = inputs[next_input++];
        env.defined[i->slot] = 1;
      } else {
        const auto& pr = std::get<CPrint>(in);
        env.undef = false;
        std::int64_t v = env.eval(pr.value);
        if (env.undef) return fail(RuntimeErrorKind::UndefinedVariable);
        r.trace.outputs.push_back(v);
      }
      ++r.stats.steps;
    }
    if (r.stats.steps == fuel) {
      r.trace.outcome = Outcome::FuelExhausted;
      return r;
    }
    switch (b.kind) {
      case 0: // goto
        ++r.stats.steps;
        cur = b.on_true;
        break;
      case 1: { // branch
        env.undef = false;
        std::int64_t v = env.eval(b.cond);
        if (env.undef) return fail(RuntimeErrorKind::UndefinedVariable);
        ++r.stats.cond_evals[b.cond_class].second;
        ++r.stats.branches_executed;
        ++r.stats.steps;
        cur = v != 0 ? b.on_true : b.on_false;
        break;
      }
      default: // exit
        ++r.stats.steps;
        r.trace.outcome = Outcome::Completed;
        return r;
    }
  }
}

RunResult run(const Program& p, std::span<const std::int64_t> inputs,
              std::int64_t fuel) {
  return Executor(p).run(inputs, fuel);
}

bool equivalent(const Program& p1, const Program& p2,
                std::span<const std::int64_t> inputs, std::int64_t fuel) {
  Trace t1 = run(p1, inputs, fuel).trace;
  Trace t2 = run(p2, inputs, fuel).trace;
  if (t1.outcome == Outcome::FuelExhausted) {
    if (t1.outputs.size() > t2.outputs.size()) return false;
    return std::equal(t1.outputs.begin(), t1.outputs.end(), t2.outputs.begin());
  }
  return t1.outcome == t2.outcome && t1.error == t2.error &&
         t1.outputs == t2.outputs;
}

} // namespace cecd
