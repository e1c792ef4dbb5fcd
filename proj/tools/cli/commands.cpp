#include "cli/commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "cli/reports.hpp"
#include "sliceadm/errors.hpp"
#include "sliceadm/oracle.hpp"
#include "sliceadm/simulator.hpp"
#include "sliceadm/strategy_io.hpp"

namespace sliceadm::cli {

using nlohmann::json;

namespace {

template <class Body>
int guarded(std::ostream& log, Body&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    log << e.what() << '\n';
    return kExitValidation;
  } catch (const std::ios_base::failure& e) {
    log << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const BudgetExceeded& e) {
    log << "budget exceeded: " << e.what() << '\n';
    return kExitBudget;
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    return kExitValidation;
  }
}

template <class Writer>
void write_file(const std::string& path, Writer&& writer) {
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot write '" + path + "'");
  writer(out);
  out.flush();
  if (!out) throw std::ios_base::failure("failed while writing '" + path + "'");
}

void write_json(const std::string& path, const json& j) {
  write_file(path, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot read '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw MalformedDocument("'" + path + "' is not valid JSON: " + e.what());
  }
}

struct Loaded {
  Config config;
  Instance instance;
  Provenance provenance;
};

Loaded load(const std::string& config_path, std::optional<std::uint64_t> seed) {
  Config config = load_config(config_path);
  if (seed) config.seed = *seed;
  Instance instance = to_instance(config);
  Provenance p{config_hash(config), config.seed, kVersion};
  return Loaded{std::move(config), std::move(instance), std::move(p)};
}

std::vector<Request> load_requests(const std::string& path, const Instance& instance) {
  const json j = read_json(path);
  if (!j.is_array()) throw ConfigError({"requests: must be an array"});
  std::vector<Request> out;
  std::vector<std::string> errors;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string at = "requests[" + std::to_string(i) + "]";
    try {
      const auto& r = j[i];
      const auto fractions = r.at("bundle").get<std::vector<double>>();
      out.push_back(Request{r.at("t").get<int>(), instance.space.from_fractions(fractions),
                            r.value("period", 1)});
      if (!out.back().is_null()) instance.catalog.bundle_index(out.back().bundle);
    } catch (const std::exception& e) {
      errors.push_back(at + ": " + e.what());
    }
  }
  if (!errors.empty()) throw ConfigError(std::move(errors));
  return out;
}

std::vector<NamedStrategy> resolve_all(const std::vector<std::string>& specs, const Loaded& l) {
  std::vector<NamedStrategy> out;
  for (const auto& s : specs) out.push_back({s, resolve_strategy(s, l.instance, l.config)});
  return out;
}

}  // namespace

Strategy resolve_strategy(const std::string& spec, const Instance& instance, const Config& config) {
  if (spec == "always-accept") return Strategy::always_accept();
  if (spec == "never-accept") return Strategy::never_accept();
  if (spec == "oc-optimal") return make_oc_optimal(instance, table_settings(config));
  if (spec.rfind("price-threshold:", 0) == 0) {
    try {
      return Strategy::price_threshold(std::stod(spec.substr(16)));
    } catch (const std::logic_error&) {
      throw ConfigError({"strategy: bad price threshold in '" + spec + "'"});
    }
  }
  StrategyDocument doc = deserialize_strategy(read_json(spec));
  if (const auto& table = doc.strategy.table()) {
    const TableScope expected{instance.horizon, instance.mode, instance.space.resolution()};
    if (!(table->scope() == expected)) {
      throw ConfigError({"strategy: '" + spec +
                         "' was learned for a different t_max, mode or resolution"});
    }
  }
  return doc.strategy;
}

int cmd_simulate(const SimulateOptions& o, std::ostream& log) {
  return guarded(log, [&] {
    const Loaded l = load(o.config_path, o.seed);
    const Strategy strategy = resolve_strategy(o.strategy, l.instance, l.config);
    RunOutcome outcome;
    if (o.requests_path) {
      const auto requests = load_requests(*o.requests_path, l.instance);
      outcome = run_scripted(l.instance, strategy, requests);
    } else {
      outcome = run(l.instance, strategy, RandomStream(l.config.seed, 0));
    }
    const std::string result_path =
        o.result_path.value_or(std::filesystem::path(o.out_path).replace_extension(".json").string());
    write_file(o.out_path, [&](std::ostream& os) { write_trace_csv(os, outcome.trace, l.provenance); });
    json result = to_json(outcome.result, l.instance);
    result["strategy"] = o.strategy;
    result["provenance"] = to_json(l.provenance);
    write_json(result_path, result);
    log << "profit " << outcome.result.profit << " (" << outcome.result.accepted << " accepted, "
        << outcome.result.declined << " declined)\n";
    return kExitOk;
  });
}

int cmd_learn(const LearnOptions& o, std::ostream& log) {
  return guarded(log, [&] {
    const Loaded l = load(o.config_path, o.seed);
    const LearnResult learned = learn_strategy(l.instance, learner_settings(l.config));
    json doc = serialize_strategy(learned.strategy, &learned.report);
    doc["converged"] = learned.report.converged;
    doc["provenance"] = to_json(l.provenance);
    write_json(o.out_path, doc);
    const auto& its = learned.report.iterations;
    log << (learned.report.converged ? "converged" : "did not converge") << " after "
        << its.size() << " iteration(s)";
    if (!its.empty() && its.back().metric) log << ", final metric " << *its.back().metric;
    log << ", gamma " << learned.report.gamma << '\n';
    return kExitOk;
  });
}

int cmd_evaluate(const EvaluateOptions& o, std::ostream& log) {
  return guarded(log, [&] {
    if (o.n_runs < 2) throw ConfigError({"n_runs: must be >= 2, got " + std::to_string(o.n_runs)});
    if (o.strategies.empty()) throw ConfigError({"strategies: at least one strategy is required"});
    const Loaded l = load(o.config_path, o.seed);
    const auto strategies = resolve_all(o.strategies, l);
    const EvaluationReport report = evaluate(l.instance, strategies, o.n_runs, l.config.seed, o.threads);
    json j = to_json(report);
    j["provenance"] = to_json(l.provenance);
    write_json(o.out_path, j);
    for (const auto& s : report.strategies) {
      log << s.name << ": mean " << s.mean << " [" << s.ci_low << ", " << s.ci_high << "]\n";
    }
    return kExitOk;
  });
}

int cmd_oracle(const OracleOptions& o, std::ostream& log) {
  return guarded(log, [&] {
    const Loaded l = load(o.config_path, o.seed);
    const DpPolicy policy = dp_solve(l.instance, DpSettings{l.config.oracle_state_budget});
    std::vector<OracleGap> gaps;
    if (!o.strategies.empty()) {
      if (o.n_runs < 2) throw ConfigError({"n_runs: must be >= 2, got " + std::to_string(o.n_runs)});
      const auto report =
          evaluate(l.instance, resolve_all(o.strategies, l), o.n_runs, l.config.seed, o.threads);
      for (const auto& s : report.strategies) gaps.push_back({s.name, s.mean, s.ci_low, s.ci_high});
    }
    json j = oracle_report(l.instance, policy, gaps);
    if (l.instance.horizon == 2 && l.instance.mode == ContractMode::non_expiring) {
      json rows = json::array();
      for (const auto& r : request_classes(l.instance)) {
        const auto cmp = two_step_enumerate(l.instance, r.bundle);
        rows.push_back({{"bundle", std::vector<int>(r.bundle.units().begin(), r.bundle.units().end())},
                        {"closed_form_payoff", cmp.closed_form_payoff},
                        {"paper_policy", {{"accept", cmp.paper_policy.accept},
                                          {"decline", cmp.paper_policy.decline},
                                          {"difference", cmp.paper_policy.difference()}}},
                        {"optimal_policy", {{"accept", cmp.optimal_policy.accept},
                                            {"decline", cmp.optimal_policy.decline},
                                            {"difference", cmp.optimal_policy.difference()}}}});
      }
      j["two_step"] = std::move(rows);
    }
    j["provenance"] = to_json(l.provenance);
    write_json(o.out_path, j);
    log << "V0 " << policy.v0() << " over " << policy.state_count() << " states\n";
    return kExitOk;
  });
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Admission control for tenant slice requests"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  SimulateOptions sim;
  std::uint64_t sim_seed = 0;
  auto* simulate = app.add_subcommand("simulate", "Simulate one market trajectory");
  simulate->add_option("--config", sim.config_path, "Config JSON")->required();
  simulate->add_option("--strategy", sim.strategy, "Builtin strategy name or strategy JSON path");
  auto* sim_seed_opt = simulate->add_option("--seed", sim_seed, "Override the config seed");
  simulate->add_option("--out", sim.out_path, "Trace CSV path")->required();
  std::string sim_result;
  auto* sim_result_opt = simulate->add_option("--result", sim_result, "Run result JSON path");
  std::string sim_requests;
  auto* sim_requests_opt =
      simulate->add_option("--requests", sim_requests, "Scripted requests JSON instead of sampling");

  LearnOptions learn;
  std::uint64_t learn_seed = 0;
  auto* learn_cmd = app.add_subcommand("learn", "Learn an OC-threshold strategy iteratively");
  learn_cmd->add_option("--config", learn.config_path, "Config JSON")->required();
  auto* learn_seed_opt = learn_cmd->add_option("--seed", learn_seed, "Override the config seed");
  learn_cmd->add_option("--out", learn.out_path, "Strategy JSON path")->required();

  EvaluateOptions eval;
  std::uint64_t eval_seed = 0;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Compare strategies on common request streams");
  evaluate_cmd->add_option("--config", eval.config_path, "Config JSON")->required();
  evaluate_cmd->add_option("--strategies", eval.strategies, "Strategies to compare")->required();
  evaluate_cmd->add_option("--n-runs", eval.n_runs, "Number of runs");
  auto* eval_seed_opt = evaluate_cmd->add_option("--seed", eval_seed, "Override the config seed");
  evaluate_cmd->add_option("--out", eval.out_path, "Report JSON path")->required();

  OracleOptions orc;
  std::uint64_t orc_seed = 0;
  auto* oracle_cmd = app.add_subcommand("oracle", "Solve the exact DP and measure strategy gaps");
  oracle_cmd->add_option("--config", orc.config_path, "Config JSON")->required();
  oracle_cmd->add_option("--strategies", orc.strategies, "Strategies to compare with the optimum");
  oracle_cmd->add_option("--n-runs", orc.n_runs, "Runs per strategy for the gap estimate");
  auto* orc_seed_opt = oracle_cmd->add_option("--seed", orc_seed, "Override the config seed");
  oracle_cmd->add_option("--out", orc.out_path, "Oracle report JSON path")->required();

  unsigned threads = 1;
  app.add_option("--threads", threads, "Worker threads (results do not depend on it)")
      ->check(CLI::PositiveNumber);
  evaluate_cmd->add_option("--threads", eval.threads, "Worker threads")->check(CLI::PositiveNumber);
  oracle_cmd->add_option("--threads", orc.threads, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  if (*simulate) {
    if (*sim_seed_opt) sim.seed = sim_seed;
    if (*sim_result_opt) sim.result_path = sim_result;
    if (*sim_requests_opt) sim.requests_path = sim_requests;
    return cmd_simulate(sim, std::cerr);
  }
  if (*learn_cmd) {
    if (*learn_seed_opt) learn.seed = learn_seed;
    return cmd_learn(learn, std::cerr);
  }
  if (*evaluate_cmd) {
    if (*eval_seed_opt) eval.seed = eval_seed;
    if (threads > 1 && eval.threads == 1) eval.threads = threads;
    return cmd_evaluate(eval, std::cerr);
  }
  if (*orc_seed_opt) orc.seed = orc_seed;
  if (threads > 1 && orc.threads == 1) orc.threads = threads;
  return cmd_oracle(orc, std::cerr);
}

}  // namespace sliceadm::cli
