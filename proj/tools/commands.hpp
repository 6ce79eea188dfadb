#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "crr/bench.hpp"
#include "crr/simexcl.hpp"

namespace crr::cli {

// Exit codes: 0 = clean / equivalent / correct, 1 = inequivalent / buggy,
// 2 = error or unknown, 3 = method disagreement (check-eq --method both).

struct CommonArgs {
  std::optional<std::string> json_path;
  std::uint64_t seed = 0;
};

struct CheckEqArgs {
  std::string left, right;
  std::string method = "both";  // cdcl | crr | both
};
int run_check_eq(const CheckEqArgs& args, const CommonArgs& common);

struct SimExclArgs {
  std::string circuit;
  std::string mode = "basic";  // basic | sat | sim | both
  std::uint64_t threshold = 32;
  std::uint64_t sat_budget = 10000;
  std::uint64_t sim_tries = 64;
  std::optional<std::size_t> target_len;
  std::vector<std::string> bad_patterns;  // "name=bit[,name=bit...]" per entry
  std::optional<std::string> trace_path;
};
int run_sim_excl(const SimExclArgs& args, const CommonArgs& common);

struct RangeArgs {
  std::string circuit;
  std::optional<std::string> exclude_path;  // clause file over the inputs
  int max_inputs = 20;
};
int run_range(const RangeArgs& args, const CommonArgs& common);

struct GenBenchArgs {
  int num_inputs = 4;
  int num_gates = 8;
  int rewrite_steps = 4;
  std::string bug = "none";
  std::string out_dir;
};
int run_gen_bench(const GenBenchArgs& args, const CommonArgs& common);

struct EncodeArgs {
  std::string circuit;
  std::optional<std::string> out_path;  // default: DIMACS on stdout
};
int run_encode(const EncodeArgs& args, const CommonArgs& common);

}  // namespace crr::cli
