#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cecd/analysis.hpp"
#include "cecd/dot.hpp"
#include "cecd/heuristic.hpp"
#include "cecd/interpreter.hpp"
#include "cecd/parser.hpp"
#include "cecd/pipeline.hpp"
#include "cecd/printer.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;
constexpr int kExitVerify = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    write_file(path, text);
}

cecd::Program load_program(const std::string& path) {
  try {
    return cecd::parse_program(read_file(path));
  } catch (const cecd::ParseError& e) {
    throw UsageError(path + ":" + e.what());
  }
}

cecd::ExprPtr parse_cond(const std::string& text) {
  try {
    return cecd::parse_expr(text);
  } catch (const cecd::ParseError& e) {
    throw UsageError(std::string("bad condition: ") + e.what());
  }
}

cecd::IterationOrder order_from(const std::string& name) {
  if (name == "worklist") return cecd::IterationOrder::Worklist;
  if (name == "round-robin") return cecd::IterationOrder::RoundRobin;
  throw UsageError("unknown iteration order: " + name);
}

std::vector<std::int64_t> parse_inputs(const std::string& text) {
  std::vector<std::int64_t> out;
  std::string item;
  std::istringstream ss(text);
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      out.push_back(std::stoll(item));
    } catch (const std::exception&) {
      throw UsageError("bad input value: " + item);
    }
  }
  return out;
}

const char* outcome_name(cecd::Outcome o) {
  switch (o) {
    case cecd::Outcome::Completed: return "completed";
    case cecd::Outcome::FuelExhausted: return "fuel-exhausted";
    case cecd::Outcome::RuntimeError: return "runtime-error";
  }
  return "?";
}

const char* error_name(cecd::RuntimeErrorKind k) {
  switch (k) {
    case cecd::RuntimeErrorKind::None: return "none";
    case cecd::RuntimeErrorKind::UndefinedVariable: return "undefined-variable";
    case cecd::RuntimeErrorKind::InputExhausted: return "input-exhausted";
  }
  return "?";
}

int cmd_opt(const std::string& input, const std::string& output,
            std::int64_t k, const std::string& cond_text, bool keep_originals,
            bool verify, std::uint64_t seed, std::int64_t fuel,
            const std::string& stats_path, const std::string& dot_dir,
            bool unguarded, const std::string& order) {
  cecd::Program p = load_program(input);
  cecd::PipelineOptions opts;
  opts.k = k;
  opts.keep_originals = keep_originals;
  opts.verify = verify;
  opts.seed = seed;
  opts.fuel = fuel;
  opts.prediction.guarded = !unguarded;
  opts.prediction.order = order_from(order);
  if (!cond_text.empty()) {
    cecd::ExprPtr e = parse_cond(cond_text);
    bool used = false;
    for (const cecd::ExprPtr& c : cecd::branch_condition_candidates(p))
      if (cecd::expr_eq(c, e)) used = true;
    if (!used)
      throw UsageError("condition is not tested by any branch: " + cond_text);
    opts.only_cond = e;
  }

  cecd::PipelineResult result = cecd::run_opt_pipeline(p, opts);

  if (!dot_dir.empty()) {
    std::filesystem::create_directories(dot_dir);
    std::vector<cecd::ExprPtr> cands = cecd::branch_condition_candidates(p);
    if (opts.only_cond) cands = {*opts.only_cond};
    std::optional<cecd::AnalysisResult> before_notes, after_notes;
    if (!cands.empty()) {
      cecd::CopyPredictionOptions po = opts.prediction;
      before_notes = cecd::analyze(p, cands[0], po);
      after_notes = cecd::analyze(result.output, cands[0], po);
    }
    write_file(dot_dir + "/before.dot", cecd::emit_dot(p, before_notes));
    write_file(dot_dir + "/after.dot",
               cecd::emit_dot(result.output, after_notes));
  }
  if (!stats_path.empty())
    write_file(stats_path, cecd::stats_to_json(result.stats) + "\n");
  write_output(output, cecd::print_program(result.output));

  if (result.verify_failed) {
    std::cerr << "warning: verification found diverging runs; output written "
                 "anyway\n";
    return kExitVerify;
  }
  return kExitOk;
}

int cmd_analyze(const std::string& input, const std::string& cond_text,
                const std::string& output, bool unguarded,
                const std::string& order) {
  cecd::Program p = load_program(input);
  cecd::CopyPredictionOptions po;
  po.guarded = !unguarded;
  po.order = order_from(order);
  cecd::AnalysisResult r = cecd::analyze(p, parse_cond(cond_text), po);
  write_output(output, cecd::analysis_to_json(p, r) + "\n");
  return kExitOk;
}

int cmd_run(const std::string& input, const std::string& inputs_text,
            std::int64_t fuel) {
  cecd::Program p = load_program(input);
  std::vector<std::int64_t> inputs = parse_inputs(inputs_text);
  cecd::RunResult r = cecd::run(p, inputs, fuel);
  for (std::int64_t v : r.trace.outputs) std::cout << v << "\n";
  std::cout << "-- " << outcome_name(r.trace.outcome);
  if (r.trace.outcome == cecd::Outcome::RuntimeError)
    std::cout << " " << error_name(r.trace.error);
  std::cout << " steps=" << r.stats.steps;
  if (!r.stats.cond_evals.empty()) {
    std::cout << " evals:";
    for (const auto& [e, count] : r.stats.cond_evals)
      std::cout << " [" << cecd::to_string(e) << "]=" << count;
  }
  std::cout << "\n";
  return r.trace.outcome == cecd::Outcome::RuntimeError ? kExitRuntime
                                                        : kExitOk;
}

cecd::KnapsackInstance parse_items(const std::string& text,
                                   std::int64_t budget) {
  cecd::KnapsackInstance inst;
  inst.budget = budget;
  std::string item;
  std::istringstream ss(text);
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos)
      throw UsageError("bad item (want weight:value): " + item);
    try {
      cecd::KnapsackItem ki{std::stoll(item.substr(0, colon)),
                            std::stoll(item.substr(colon + 1))};
      if (ki.weight < 1 || ki.value < 1)
        throw UsageError("item weight and value must be positive: " + item);
      inst.items.push_back(ki);
    } catch (const UsageError&) {
      throw;
    } catch (const std::exception&) {
      throw UsageError("bad item (want weight:value): " + item);
    }
  }
  if (inst.items.empty()) throw UsageError("no items given");
  return inst;
}

int run_knapsack_instance(const cecd::KnapsackInstance& inst, bool chatty) {
  cecd::KnapsackCfg cfg = cecd::build_knapsack_cfg(inst);
  cecd::KnapsackSolution want = cecd::knapsack_brute_force(inst);
  cecd::RegionChoice got = cecd::best_region_by_profile(
      cfg.program, cfg.cond, cfg.profile, cecd::EvalParams{inst.budget});

  std::cout << "items=[";
  for (std::size_t i = 0; i < inst.items.size(); ++i) {
    if (i) std::cout << " ";
    std::cout << inst.items[i].weight << ":" << inst.items[i].value;
  }
  std::cout << "] budget=" << inst.budget << " knapsack=" << want.value
            << " region=" << got.objective
            << (want.value == got.objective ? " PASS" : " FAIL") << "\n";
  if (chatty) {
    std::cout << "  cfg blocks=" << cfg.program.blocks().size()
              << " region growth=" << got.cost.growth << " members=[";
    bool first = true;
    for (const auto& id : got.members) {
      if (!first) std::cout << " ";
      std::cout << id;
      first = false;
    }
    std::cout << "]\n";
  }
  return want.value == got.objective ? kExitOk : kExitRuntime;
}

int cmd_knapsack(const std::string& items_text, std::int64_t budget,
                 std::size_t count, std::uint64_t seed) {
  if (!items_text.empty())
    return run_knapsack_instance(parse_items(items_text, budget), true);

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> num_items(1, 6);
  std::uniform_int_distribution<std::int64_t> wv(1, 9), bud(0, 15);
  int rc = kExitOk;
  for (std::size_t i = 0; i < count; ++i) {
    cecd::KnapsackInstance inst;
    std::size_t n = num_items(rng);
    for (std::size_t j = 0; j < n; ++j)
      inst.items.push_back(cecd::KnapsackItem{wv(rng), wv(rng)});
    inst.budget = bud(rng);
    if (run_knapsack_instance(inst, false) != kExitOk) rc = kExitRuntime;
  }
  std::cout << (rc == kExitOk ? "all instances agree\n"
                              : "instances disagree\n");
  return rc;
}

int cmd_dot(const std::string& input, const std::string& cond_text,
            const std::string& output) {
  cecd::Program p = load_program(input);
  std::optional<cecd::AnalysisResult> notes;
  if (!cond_text.empty()) notes = cecd::analyze(p, parse_cond(cond_text));
  write_output(output, cecd::emit_dot(p, notes));
  return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for branch elimination through block duplication"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "0.1.0");

  std::string input, output, cond_text, stats_path, dot_dir, inputs_text;
  std::string items_text;
  std::string order = "worklist";
  std::int64_t k = 0, fuel = 10000, budget = 10;
  std::uint64_t seed = 1;
  std::size_t count = 5;
  bool keep_originals = false, verify = false, unguarded = false;

  auto* opt = app.add_subcommand("opt", "apply the duplication pipeline");
  opt->add_option("input", input, "program to optimize")->required();
  opt->add_option("-o,--output", output, "output file (default stdout)");
  opt->add_option("-k,--budget", k, "allowed growth per eliminated site");
  opt->add_option("--cond", cond_text, "only consider this condition");
  opt->add_flag("--keep-originals", keep_originals,
                "keep original region blocks and skip cleanup");
  opt->add_flag("--verify", verify, "compare runs before and after");
  opt->add_option("--seed", seed, "verification RNG seed");
  opt->add_option("--fuel", fuel, "verification step limit");
  opt->add_option("--stats", stats_path, "write per-candidate stats JSON");
  opt->add_option("--emit-dot", dot_dir, "write before/after graphs here");
  opt->add_flag("--unguarded", unguarded, "use the unguarded copy equations");
  opt->add_option("--order", order, "fixpoint order: worklist|round-robin");

  auto* analyze = app.add_subcommand("analyze", "print per-block analysis");
  analyze->add_option("input", input, "program to analyze")->required();
  analyze->add_option("--cond", cond_text, "condition to analyze")->required();
  analyze->add_option("-o,--output", output, "output file (default stdout)");
  analyze->add_flag("--unguarded", unguarded,
                    "use the unguarded copy equations");
  analyze->add_option("--order", order, "fixpoint order: worklist|round-robin");

  auto* run = app.add_subcommand("run", "execute a program");
  run->add_option("input", input, "program to run")->required();
  run->add_option("--inputs", inputs_text, "comma-separated input values");
  run->add_option("--fuel", fuel, "step limit");

  auto* knap = app.add_subcommand(
      "knapsack-demo", "check region choice against exhaustive knapsack");
  knap->add_option("--items", items_text,
                   "explicit items as weight:value,weight:value,...");
  knap->add_option("--budget", budget, "capacity for explicit items");
  knap->add_option("--count", count, "random instances to try");
  knap->add_option("--seed", seed, "instance RNG seed");

  auto* dot = app.add_subcommand("dot", "render the control flow graph");
  dot->add_option("input", input, "program to render")->required();
  dot->add_option("--cond", cond_text, "annotate with this condition");
  dot->add_option("-o,--output", output, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (opt->parsed())
      return cmd_opt(input, output, k, cond_text, keep_originals, verify,
                     seed, fuel, stats_path, dot_dir, unguarded, order);
    if (analyze->parsed())
      return cmd_analyze(input, cond_text, output, unguarded, order);
    if (run->parsed()) return cmd_run(input, inputs_text, fuel);
    if (knap->parsed()) return cmd_knapsack(items_text, budget, count, seed);
    if (dot->parsed()) return cmd_dot(input, cond_text, output);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
