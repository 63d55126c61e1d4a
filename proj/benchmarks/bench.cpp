#include <fstream>
#include <sstream>
#include <string>

#include <benchmark/benchmark.h>

#include "cecd/analysis.hpp"
#include "cecd/heuristic.hpp"
#include "cecd/interpreter.hpp"
#include "cecd/parser.hpp"
#include "cecd/transform.hpp"

namespace {

std::string fixture_text() {
  std::ifstream in(std::string(CECD_FIXTURE_DIR) + "/flag_loop.ir");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string& text() {
  static std::string t = fixture_text();
  return t;
}

const cecd::Program& fixture() {
  static cecd::Program p = cecd::parse_program(text());
  return p;
}

void bm_parse(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(cecd::parse_program(text()));
}
BENCHMARK(bm_parse);

void bm_region_analysis(benchmark::State& state) {
  const cecd::Program& p = fixture();
  cecd::ExprPtr e = cecd::parse_expr("e");
  for (auto _ : state)
    benchmark::DoNotOptimize(cecd::analyze(p, e));
}
BENCHMARK(bm_region_analysis);

void bm_transform(benchmark::State& state) {
  const cecd::Program& p = fixture();
  cecd::Region r = cecd::select_region(p, cecd::parse_expr("e"));
  for (auto _ : state) {
    cecd::TransformReport rep;
    benchmark::DoNotOptimize(cecd::apply_cecd(p, r, rep));
  }
}
BENCHMARK(bm_transform);

void bm_interpret(benchmark::State& state) {
  const cecd::Program& p = fixture();
  cecd::Executor ex(p);
  std::vector<std::int64_t> inputs{0, 50, 1};
  for (auto _ : state)
    benchmark::DoNotOptimize(ex.run(inputs, 10000));
}
BENCHMARK(bm_interpret);

void bm_knapsack_region(benchmark::State& state) {
  cecd::KnapsackInstance inst{{{2, 3}, {3, 4}, {4, 5}, {1, 2}}, 7};
  cecd::KnapsackCfg cfg = cecd::build_knapsack_cfg(inst);
  for (auto _ : state)
    benchmark::DoNotOptimize(cecd::best_region_by_profile(
        cfg.program, cfg.cond, cfg.profile, cecd::EvalParams{inst.budget}));
}
BENCHMARK(bm_knapsack_region);

} // namespace

BENCHMARK_MAIN();
