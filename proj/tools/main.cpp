#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "report.hpp"

int main(int argc, char** argv) {
  using namespace crr::cli;

  CLI::App app{"combinational-circuit verification by computing range reduction"};
  app.require_subcommand(1);
  app.fallthrough();
  CommonArgs common;
  app.add_option("--json", common.json_path, "also write the JSON report to this file");
  app.add_option("--seed", common.seed, "seed for all pseudo-random choices");

  CheckEqArgs eq;
  auto* cmd_eq = app.add_subcommand("check-eq", "check two circuits for equivalence");
  cmd_eq->add_option("left", eq.left, "left circuit file")->required();
  cmd_eq->add_option("right", eq.right, "right circuit file")->required();
  cmd_eq->add_option("--method", eq.method, "cdcl | crr | both")
      ->check(CLI::IsMember({"cdcl", "crr", "both"}));

  SimExclArgs se;
  auto* cmd_se = app.add_subcommand("sim-excl", "verify a circuit by input exclusion");
  cmd_se->add_option("circuit", se.circuit, "circuit file")->required();
  cmd_se->add_option("--mode", se.mode, "basic | sat | sim | both")
      ->check(CLI::IsMember({"basic", "sat", "sim", "both"}));
  cmd_se->add_option("--threshold", se.threshold,
                     "accepted clauses between periodic actions");
  cmd_se->add_option("--sat-budget", se.sat_budget,
                     "conflict budget of the periodic check");
  cmd_se->add_option("--sim-tries", se.sim_tries, "tests per periodic run");
  cmd_se->add_option("--target-len", se.target_len,
                     "exclusion clause length (default: input count)");
  cmd_se->add_option("--bad", se.bad_patterns,
                     "bad-output pattern, e.g. \"z1=1,z2=0\" (repeatable)");
  cmd_se->add_option("--trace", se.trace_path, "write a per-iteration trace");

  RangeArgs ra;
  auto* cmd_ra = app.add_subcommand("range", "exhaustive range or range reduction");
  cmd_ra->add_option("circuit", ra.circuit, "circuit file")->required();
  cmd_ra->add_option("--exclude", ra.exclude_path,
                     "clause file over the inputs; reports the outputs that "
                     "disappear when its falsifying inputs are excluded");
  cmd_ra->add_option("--max-inputs", ra.max_inputs, "enumeration bound");

  GenBenchArgs gb;
  auto* cmd_gb = app.add_subcommand("gen-bench", "generate a benchmark pair");
  cmd_gb->add_option("--inputs", gb.num_inputs, "input count");
  cmd_gb->add_option("--gates", gb.num_gates, "gate count");
  cmd_gb->add_option("--rewrites", gb.rewrite_steps, "rewrite steps");
  cmd_gb->add_option("--bug", gb.bug, "none | gate-flip | fanin-swap | polarity-flip")
      ->check(CLI::IsMember({"none", "gate-flip", "fanin-swap", "polarity-flip"}));
  cmd_gb->add_option("--out", gb.out_dir, "output directory")->required();

  EncodeArgs en;
  auto* cmd_en = app.add_subcommand("encode", "export the circuit CNF as DIMACS");
  cmd_en->add_option("circuit", en.circuit, "circuit file")->required();
  cmd_en->add_option("-o,--output", en.out_path, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_eq) return run_check_eq(eq, common);
    if (*cmd_se) return run_sim_excl(se, common);
    if (*cmd_ra) return run_range(ra, common);
    if (*cmd_gb) return run_gen_bench(gb, common);
    if (*cmd_en) return run_encode(en, common);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
