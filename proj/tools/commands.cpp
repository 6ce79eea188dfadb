#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "crr/aiger.hpp"
#include "crr/dimacs.hpp"
#include "crr/equiv.hpp"
#include "crr/netlist.hpp"
#include "crr/rangeoracle.hpp"
#include "report.hpp"

namespace crr::cli {

namespace {

Assignment parse_bad_pattern(const Circuit& c, const std::string& text) {
  Assignment pattern;
  std::string token;
  std::istringstream is(text);
  while (std::getline(is, token, ',')) {
    std::istringstream ts(token);
    std::string item;
    while (ts >> item) {
      auto eq = item.find('=');
      if (eq == std::string::npos || eq + 2 != item.size() ||
          (item[eq + 1] != '0' && item[eq + 1] != '1'))
        throw std::runtime_error("bad pattern entry '" + item +
                                 "', expected <output>=<0|1>");
      const std::string name = item.substr(0, eq);
      auto v = c.find_var(name);
      const auto outs = c.outputs();
      if (!v || std::find(outs.begin(), outs.end(), *v) == outs.end())
        throw std::runtime_error("bad pattern references unknown output '" + name + "'");
      pattern.set(*v, item[eq + 1] == '1');
    }
  }
  if (pattern.empty()) throw std::runtime_error("empty bad-output pattern");
  return pattern;
}

// Clause file over the circuit inputs: one clause per line, literals are
// input names with an optional '-' prefix, '#' starts a comment.
CnfFormula parse_clause_file(const Circuit& c, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  CnfFormula g(static_cast<int>(c.inputs().size()), VarRole::Input);
  for (Var v : c.inputs()) g.set_name(v, c.var_name(v));
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string token;
    std::vector<Lit> lits;
    while (ls >> token) {
      bool negated = false;
      std::string name = token;
      if (!name.empty() && name[0] == '-') {
        negated = true;
        name = name.substr(1);
      }
      auto v = c.find_var(name);
      if (!v || !c.is_input(*v))
        throw std::runtime_error("line " + std::to_string(lineno) +
                                 ": unknown input '" + name + "'");
      lits.emplace_back(*v, negated);
    }
    if (!lits.empty()) g.add_clause(Clause(std::move(lits)));
  }
  return g;
}

const char* verdict_word(const EcVerdict& v) {
  switch (v.kind) {
    case EcVerdict::Kind::Equivalent: return "equivalent";
    case EcVerdict::Kind::Inequivalent: return "inequivalent";
    case EcVerdict::Kind::Unknown: return "unknown";
  }
  return "?";
}

}  // namespace

int run_check_eq(const CheckEqArgs& args, const CommonArgs& common) {
  const Circuit left = read_circuit_file(args.left);
  const Circuit right = read_circuit_file(args.right);
  Json report = make_report("check-eq");
  report["inputs"] = {{"left", args.left}, {"right", args.right}};
  report["config"] = {{"method", args.method}, {"seed", common.seed}};

  std::vector<std::pair<std::string, EcVerdict>> results;
  if (args.method == "cdcl" || args.method == "both")
    results.emplace_back("cdcl", ec_cdcl(left, right));
  if (args.method == "crr" || args.method == "both")
    results.emplace_back("crr", ec_crr(left, right));
  if (results.empty())
    throw std::runtime_error("unknown method '" + args.method + "'");

  Json jobs = Json::array();
  for (const auto& [method, v] : results) {
    Json job;
    job["method"] = method;
    job["verdict"] = verdict_word(v);
    if (v.counterexample) job["witness"] = witness_json(left, *v.counterexample);
    job["stats"] = {{"sat_calls", v.stats.sat_calls},
                    {"conflicts", v.stats.conflicts},
                    {"pqe_sat_calls", v.stats.pqe_sat_calls}};
    jobs.push_back(std::move(job));
    std::cerr << "check-eq[" << method << "]: " << verdict_word(v) << " ("
              << v.stats.sat_calls << " sat calls, " << v.stats.conflicts
              << " conflicts, " << v.stats.wall_seconds << "s)\n";
  }
  report["results"] = std::move(jobs);

  bool disagree = false;
  for (std::size_t i = 1; i < results.size(); ++i)
    if (results[i].second.kind != results[0].second.kind) disagree = true;
  if (disagree) {
    report["verdict"] = "disagreement";
    emit_report(report, common.json_path);
    std::cerr << "check-eq: methods disagree\n";
    return 3;
  }
  const EcVerdict& v = results[0].second;
  report["verdict"] = verdict_word(v);
  if (v.counterexample) report["witness"] = witness_json(left, *v.counterexample);
  emit_report(report, common.json_path);
  switch (v.kind) {
    case EcVerdict::Kind::Equivalent: return 0;
    case EcVerdict::Kind::Inequivalent: return 1;
    case EcVerdict::Kind::Unknown: return 2;
  }
  return 2;
}

int run_sim_excl(const SimExclArgs& args, const CommonArgs& common) {
  Circuit circuit = read_circuit_file(args.circuit);
  if (!args.bad_patterns.empty()) {
    std::vector<Assignment> patterns;
    for (const auto& p : args.bad_patterns)
      patterns.push_back(parse_bad_pattern(circuit, p));
    circuit = make_monitor(circuit, patterns);
  }

  SimExclConfig cfg;
  cfg.seed = common.seed;
  cfg.threshold = args.threshold;
  cfg.sat_budget = Budget::conflicts(args.sat_budget);
  cfg.sim_tries = args.sim_tries;
  cfg.clause_target_len = args.target_len;
  if (args.mode == "basic") cfg.mode = SimExclMode::Basic;
  else if (args.mode == "sat") cfg.mode = SimExclMode::WithSatChecks;
  else if (args.mode == "sim") cfg.mode = SimExclMode::WithSimRuns;
  else if (args.mode == "both") cfg.mode = SimExclMode::Both;
  else throw std::runtime_error("unknown mode '" + args.mode + "'");

  std::ofstream trace;
  if (args.trace_path) {
    trace.open(*args.trace_path);
    if (!trace) throw std::runtime_error("cannot open trace file");
    const Circuit* cp = &circuit;
    std::ofstream* tp = &trace;
    cfg.observer = [cp, tp](const SimExclStep& step) {
      std::vector<std::string> names;
      *tp << "iter=" << step.iteration << " x=" << step.sampled->bits(cp->inputs())
          << " clause=" << step.clause->to_string()
          << " tier=" << (step.tier == ProofTier::Local ? "local" : "semantic")
          << " verdict="
          << (step.accepted ? "accepted"
                            : step.verdict == SingleClauseStatus::NotZ ? "not-z"
                                                                       : "unknown")
          << "\n";
    };
  }

  const SimExclOutcome out = sim_by_excl(circuit, cfg);

  Json report = make_report("sim-excl");
  report["inputs"] = {{"circuit", args.circuit}};
  report["config"] = {{"seed", common.seed},
                      {"mode", to_string(cfg.mode)},
                      {"threshold", cfg.threshold},
                      {"sat_budget", args.sat_budget},
                      {"sim_tries", cfg.sim_tries},
                      {"bad_patterns", args.bad_patterns}};
  report["verdict"] = out.buggy ? "buggy" : "correct";
  if (out.counterexample)
    report["witness"] = witness_json(circuit, *out.counterexample);
  report["stats"] = {{"iterations", out.stats.iterations},
                     {"clauses_accepted", out.stats.clauses_accepted},
                     {"tier1_proofs", out.stats.tier1_proofs},
                     {"tier2_proofs", out.stats.tier2_proofs},
                     {"pqe_retries", out.stats.pqe_retries},
                     {"sat_checks", out.stats.sat_checks},
                     {"sim_tests", out.stats.sim_tests},
                     {"sat_calls", out.stats.sat_calls},
                     {"conflicts", out.stats.conflicts},
                     {"exit_path", to_string(out.stats.exit_path)}};
  emit_report(report, common.json_path);
  std::cerr << "sim-excl: " << (out.buggy ? "buggy" : "correct") << " via "
            << to_string(out.stats.exit_path) << " after " << out.stats.iterations
            << " iterations (" << out.stats.wall_seconds << "s)\n";
  return out.buggy ? 1 : 0;
}

int run_range(const RangeArgs& args, const CommonArgs& common) {
  const Circuit circuit = read_circuit_file(args.circuit);
  RangeOracleOptions opts;
  opts.max_inputs = args.max_inputs;

  Json report = make_report("range");
  report["inputs"] = {{"circuit", args.circuit}};
  Json out_names = Json::array();
  for (Var z : circuit.outputs()) out_names.push_back(circuit.var_name(z));
  report["outputs"] = std::move(out_names);

  auto sorted_bits = [&](const OutputSet& set) {
    std::vector<std::string> rows;
    for (const Assignment& z : set) rows.push_back(z.bits(circuit.outputs()));
    std::sort(rows.begin(), rows.end());
    return rows;
  };

  if (args.exclude_path) {
    const CnfFormula g = parse_clause_file(circuit, *args.exclude_path);
    const ReductionResult res =
        range_reduction(circuit, InputSet::all(), InputSet::falsifiers(g), opts);
    report["config"] = {{"exclude", *args.exclude_path}};
    report["excluded_outputs"] = sorted_bits(res.excluded);
    if (res.disjoint_warning) report["warning"] = "exclusion set is empty";
    std::cerr << "range: " << res.excluded.size()
              << " output(s) disappear under the exclusion\n";
  } else {
    const OutputSet rng = range(circuit, InputSet::all(), opts);
    report["range"] = sorted_bits(rng);
    std::cerr << "range: " << rng.size() << " output(s)\n";
  }
  emit_report(report, common.json_path);
  return 0;
}

int run_gen_bench(const GenBenchArgs& args, const CommonArgs& common) {
  auto bug = bug_kind_from_string(args.bug);
  if (!bug) throw std::runtime_error("unknown bug kind '" + args.bug + "'");
  BenchSpec spec;
  spec.num_inputs = args.num_inputs;
  spec.num_gates = args.num_gates;
  spec.rewrite_steps = args.rewrite_steps;
  spec.bug = *bug;
  spec.seed = common.seed;

  const BenchPair pair = generate_pair(spec);
  namespace fs = std::filesystem;
  fs::create_directories(args.out_dir);
  const std::string left_path = (fs::path(args.out_dir) / "left.net").string();
  const std::string right_path = (fs::path(args.out_dir) / "right.net").string();
  std::ofstream(left_path) << print_netlist(pair.left);
  std::ofstream(right_path) << print_netlist(pair.right);

  Json report = make_report("gen-bench");
  report["config"] = {{"inputs", spec.num_inputs},
                      {"gates", spec.num_gates},
                      {"rewrites", spec.rewrite_steps},
                      {"bug", to_string(spec.bug)},
                      {"seed", spec.seed}};
  report["files"] = {{"left", left_path}, {"right", right_path}};
  report["expected"] = pair.expected_equivalent ? "equivalent" : "inequivalent";
  report["certified"] = pair.certified;

  const std::string manifest_path = (fs::path(args.out_dir) / "manifest.json").string();
  std::ofstream(manifest_path) << report.dump(2) << "\n";
  emit_report(report, common.json_path);
  std::cerr << "gen-bench: wrote " << args.out_dir << " (expected "
            << report["expected"].get<std::string>() << ")\n";
  return 0;
}

int run_encode(const EncodeArgs& args, const CommonArgs&) {
  const Circuit circuit = read_circuit_file(args.circuit);
  const CnfFormula f = tseitin_encode(circuit);
  if (args.out_path) {
    std::ofstream out(*args.out_path);
    if (!out) throw std::runtime_error("cannot open '" + *args.out_path + "'");
    write_dimacs(out, f);
  } else {
    write_dimacs(std::cout, f);
  }
  std::cerr << "encode: " << f.num_vars() << " vars, " << f.num_clauses()
            << " clauses\n";
  return 0;
}

}  // namespace crr::cli
