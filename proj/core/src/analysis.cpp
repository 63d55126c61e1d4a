#include "cecd/analysis.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

namespace cecd {

CfgView make_view(const Program& p, const ExprPtr& e) {
  const auto& blocks = p.blocks();
  CfgView g;
  g.n = blocks.size();
  g.succs.resize(g.n);
  g.preds.resize(g.n);
  g.valid.assign(g.n, 1);
  g.expr_site.assign(g.n, 0);
  g.true_target.assign(g.n, -1);
  g.false_target.assign(g.n, -1);

  std::set<std::string> ops = operands_of(e);
  for (std::size_t i = 0; i < g.n; ++i) {
    const BasicBlock& b = blocks[i];
    for (const auto& in : b.instrs) {
      const std::string* target = nullptr;
      if (const auto* a = std::get_if<AssignInstr>(&in)) target = &a->target;
      if (const auto* inp = std::get_if<InputInstr>(&in)) target = &inp->target;
      if (target && ops.count(*target)) {
        g.valid[i] = 0;
        break;
      }
    }
    if (const auto* br = std::get_if<BranchTerm>(&b.term)) {
      std::size_t t = p.index_of(br->on_true);
      std::size_t f = p.index_of(br->on_false);
      if (expr_eq(br->cond, e)) {
        g.expr_site[i] = 1;
        g.true_target[i] = static_cast<std::int32_t>(t);
        g.false_target[i] = static_cast<std::int32_t>(f);
      }
      g.succs[i].push_back(t);
      if (f != t) g.succs[i].push_back(f);
    } else if (const auto* gt = std::get_if<GotoTerm>(&b.term)) {
      g.succs[i].push_back(p.index_of(gt->target));
    }
  }
  for (std::size_t i = 0; i < g.n; ++i)
    for (std::size_t j : g.succs[i]) g.preds[j].push_back(i);
  return g;
}

CfgView restrict_view(const CfgView& g, const std::vector<char>& keep) {
  CfgView out;
  out.n = g.n;
  out.succs.resize(g.n);
  out.preds.resize(g.n);
  out.valid.assign(g.n, 0);
  out.expr_site.assign(g.n, 0);
  out.true_target.assign(g.n, -1);
  out.false_target.assign(g.n, -1);
  for (std::size_t i = 0; i < g.n; ++i) {
    if (!keep[i]) continue;
    out.valid[i] = g.valid[i];
    out.expr_site[i] = g.expr_site[i];
    for (std::size_t j : g.succs[i])
      if (keep[j]) out.succs[i].push_back(j);
    for (std::size_t j : g.preds[i])
      if (keep[j]) out.preds[i].push_back(j);
    if (g.true_target[i] >= 0 && keep[g.true_target[i]])
      out.true_target[i] = g.true_target[i];
    if (g.false_target[i] >= 0 && keep[g.false_target[i]])
      out.false_target[i] = g.false_target[i];
  }
  return out;
}

LocalProps compute_locals(const Program& p, const ExprPtr& e) {
  CfgView g = make_view(p, e);
  return LocalProps{std::move(g.valid), std::move(g.expr_site)};
}

namespace {

// The three forward equations share this shape: membership gate times a
// disjunction over predecessors.
std::vector<char> solve_live(const CfgView& g, IterationOrder order) {
  return solve_any_path(
      g,
      [&](std::size_t i, const std::vector<char>& live) {
        if (!g.valid[i]) return false;
        for (std::size_t j : g.preds[i])
          if (g.expr_site[j] || live[j]) return true;
        return false;
      },
      Direction::Forward, order);
}

std::vector<char> solve_antic(const CfgView& g, IterationOrder order) {
  return solve_any_path(
      g,
      [&](std::size_t i, const std::vector<char>& antic) {
        if (!g.valid[i]) return false;
        if (g.expr_site[i]) return true;
        for (std::size_t j : g.succs[i])
          if (antic[j]) return true;
        return false;
      },
      Direction::Backward, order);
}

} // namespace

AnalysisResult compute_region(const Program& p, const ExprPtr& e,
                              IterationOrder order) {
  CfgView g = make_view(p, e);
  AnalysisResult r;
  r.e = e;
  r.live = solve_live(g, order);
  r.antic = solve_antic(g, order);
  r.d.assign(g.n, 0);
  for (std::size_t i = 0; i < g.n; ++i) r.d[i] = r.live[i] && r.antic[i];
  r.rt.assign(g.n, 0);
  r.rf.assign(g.n, 0);
  r.ru.assign(g.n, 0);
  r.valid = std::move(g.valid);
  r.expr_site = std::move(g.expr_site);
  return r;
}

namespace {

std::vector<char> solve_copies(const CfgView& g, const std::vector<char>& d,
                               bool true_kind, bool guarded,
                               IterationOrder order) {
  return solve_any_path(
      g,
      [&](std::size_t i, const std::vector<char>& r) {
        if (!d[i]) return false;
        for (std::size_t j : g.preds[i]) {
          bool edge = true_kind ? g.true_edge(j, i) : g.false_edge(j, i);
          if (edge) return true;
          if (r[j] && (!guarded || !g.expr_site[j])) return true;
        }
        return false;
      },
      Direction::Forward, order);
}

std::vector<char> solve_unknown(const CfgView& g, const std::vector<char>& d,
                                IterationOrder order) {
  return solve_any_path(
      g,
      [&](std::size_t i, const std::vector<char>& r) {
        if (!d[i]) return false;
        for (std::size_t j : g.preds[i])
          if (!g.expr_site[j] && (!d[j] || r[j])) return true;
        return false;
      },
      Direction::Forward, order);
}

} // namespace

AnalysisResult compute_reachable_copies(const Program& p, const ExprPtr& e,
                                        const std::set<BlockId>& region,
                                        const CopyPredictionOptions& opts) {
  CfgView g = make_view(p, e);
  std::vector<char> d(g.n, 0);
  for (const auto& id : region) {
    std::size_t i = p.index_of(id);
    if (!g.valid[i])
      throw std::invalid_argument("region is not valid: block " + id +
                                  " assigns an operand of the condition");
    d[i] = 1;
  }
  AnalysisResult r;
  r.e = e;
  r.rt = solve_copies(g, d, true, opts.guarded, opts.order);
  r.rf = solve_copies(g, d, false, opts.guarded, opts.order);
  r.ru = solve_unknown(g, d, opts.order);
  r.live.assign(g.n, 0);
  r.antic.assign(g.n, 0);
  r.d = std::move(d);
  r.valid = std::move(g.valid);
  r.expr_site = std::move(g.expr_site);
  return r;
}

AnalysisResult analyze(const Program& p, const ExprPtr& e,
                       const CopyPredictionOptions& opts) {
  AnalysisResult r = compute_region(p, e, opts.order);
  CfgView g = make_view(p, e);
  r.rt = solve_copies(g, r.d, true, opts.guarded, opts.order);
  r.rf = solve_copies(g, r.d, false, opts.guarded, opts.order);
  r.ru = solve_unknown(g, r.d, opts.order);
  return r;
}

std::set<BlockId> useful_oracle(const Program& p, const ExprPtr& e,
                                std::size_t maxlen) {
  CfgView g = make_view(p, e);
  if (maxlen < g.n)
    throw std::invalid_argument("maxlen must be at least the block count");

  // Walk forward from every evaluation site: a block is marked once some
  // path leaves a site and stays inside valid blocks up to it.
  std::vector<char> after_eval(g.n, 0);
  std::vector<std::size_t> frontier;
  for (std::size_t j = 0; j < g.n; ++j) {
    if (!g.expr_site[j]) continue;
    for (std::size_t s : g.succs[j])
      if (g.valid[s] && !after_eval[s]) {
        after_eval[s] = 1;
        frontier.push_back(s);
      }
  }
  for (std::size_t depth = 1; depth < maxlen && !frontier.empty(); ++depth) {
    std::vector<std::size_t> next;
    for (std::size_t i : frontier)
      for (std::size_t s : g.succs[i])
        if (g.valid[s] && !after_eval[s]) {
          after_eval[s] = 1;
          next.push_back(s);
        }
    frontier = std::move(next);
  }

  // Walk backward from valid evaluation sites: a block is marked when it can
  // still reach an evaluation without leaving valid blocks.
  std::vector<char> before_eval(g.n, 0);
  frontier.clear();
  for (std::size_t j = 0; j < g.n; ++j)
    if (g.expr_site[j] && g.valid[j]) {
      before_eval[j] = 1;
      frontier.push_back(j);
    }
  for (std::size_t depth = 0; depth < maxlen && !frontier.empty(); ++depth) {
    std::vector<std::size_t> next;
    for (std::size_t i : frontier)
      for (std::size_t q : g.preds[i])
        if (g.valid[q] && !before_eval[q]) {
          before_eval[q] = 1;
          next.push_back(q);
        }
    frontier = std::move(next);
  }

  std::set<BlockId> out;
  for (std::size_t i = 0; i < g.n; ++i)
    if (after_eval[i] && before_eval[i]) out.insert(p.blocks()[i].id);
  return out;
}

std::set<BlockId> blocks_where(const Program& p, const std::vector<char>& mask) {
  std::set<BlockId> out;
  for (std::size_t i = 0; i < mask.size() && i < p.blocks().size(); ++i)
    if (mask[i]) out.insert(p.blocks()[i].id);
  return out;
}

std::string analysis_to_json(const Program& p, const AnalysisResult& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < p.blocks().size(); ++i) {
    rows.push_back({{"block", p.blocks()[i].id},
                    {"valid", static_cast<bool>(r.valid[i])},
                    {"expr", static_cast<bool>(r.expr_site[i])},
                    {"live", static_cast<bool>(r.live[i])},
                    {"antic", static_cast<bool>(r.antic[i])},
                    {"d", static_cast<bool>(r.d[i])},
                    {"rt", static_cast<bool>(r.rt[i])},
                    {"rf", static_cast<bool>(r.rf[i])},
                    {"ru", static_cast<bool>(r.ru[i])}});
  }
  return rows.dump(2);
}

} // namespace cecd
