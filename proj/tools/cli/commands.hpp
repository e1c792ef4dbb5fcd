#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cli/config.hpp"

namespace sliceadm::cli {

enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitIo = 2, kExitBudget = 3 };

/// Builtin names: always-accept, never-accept, price-threshold:<payment>,
/// oc-optimal (OC table under always-accept, settings from the config).
/// Anything else is read as a strategy document path.
Strategy resolve_strategy(const std::string& spec, const Instance& instance, const Config& config);

struct SimulateOptions {
  std::string config_path;
  std::string strategy = "always-accept";
  std::optional<std::uint64_t> seed;
  std::string out_path;                     // trace CSV
  std::optional<std::string> result_path;   // default: out_path with .json extension
  std::optional<std::string> requests_path; // scripted requests instead of sampling
};

struct LearnOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_path;
};

struct EvaluateOptions {
  std::string config_path;
  std::vector<std::string> strategies;
  std::int64_t n_runs = 100;
  std::optional<std::uint64_t> seed;
  std::string out_path;
  unsigned threads = 1;
};

struct OracleOptions {
  std::string config_path;
  std::vector<std::string> strategies;
  std::int64_t n_runs = 1000;
  std::optional<std::uint64_t> seed;
  std::string out_path;
  unsigned threads = 1;
};

int cmd_simulate(const SimulateOptions& options, std::ostream& log);
int cmd_learn(const LearnOptions& options, std::ostream& log);
int cmd_evaluate(const EvaluateOptions& options, std::ostream& log);
int cmd_oracle(const OracleOptions& options, std::ostream& log);

/// Parses argv with subcommands simulate, learn, evaluate, oracle.
int run_cli(int argc, char** argv);

}  // namespace sliceadm::cli
