#include "omatch/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "omatch/config.hpp"
#include "omatch/json_io.hpp"

namespace omatch {

namespace {

constexpr double kBoundTolerance = 1e-6;

std::string format_number(double v) {
  if (std::isinf(v)) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file: " + path);
  out << text;
}

struct VerifyRow {
  std::string policy;
  std::string branch;
  double alg_cost = 0.0;
  double opt_cost = 0.0;
  double ratio = 0.0;
  bool pass = false;
};

Scenario build_scenario(ScenarioKind kind, int capacity, double d) {
  if (kind == ScenarioKind::Omm2) return Scenario::omm2(d, capacity, capacity);
  const int k = kind == ScenarioKind::Ofal3   ? 3
                : kind == ScenarioKind::Ofal4 ? 4
                                              : 5;
  return Scenario::ofal(k, capacity);
}

// A played branch matches its closed form when the cost pair agrees within
// the comparison tolerance; punish branches must have zero OPT cost.
bool branch_matches(ScenarioKind kind, const RatioReport& report) {
  const double tol = tolerance();
  if (std::isinf(report.ratio)) {
    return report.opt_cost <= tol && report.alg_cost > tol;
  }
  std::string label = report.branch_label;
  if (label.rfind("mirror-", 0) == 0) label = label.substr(7);
  for (const auto& form : enumerate_branches(kind)) {
    if (form.label == label) {
      return std::abs(report.alg_cost - form.alg_cost) <= tol &&
             std::abs(report.opt_cost - form.opt_cost) <= tol;
    }
  }
  return false;
}

int cmd_verify_bounds(ScenarioKind kind, const std::string& alg_name,
                      bool all_policies, int capacity,
                      const std::string& format, const std::string& output) {
  const Scenario scenario = build_scenario(kind, capacity, 1.0);
  const double bound = scenario_bound(kind);

  std::vector<PolicyRun> runs;
  if (all_policies) {
    runs = sweep_policies(scenario);
  } else {
    auto alg = make_algorithm(alg_name);
    runs.push_back({alg->name(), play_game(scenario, *alg)});
  }

  bool all_pass = true;
  double min_finite = std::numeric_limits<double>::infinity();
  std::vector<VerifyRow> rows;
  for (const auto& run : runs) {
    VerifyRow row;
    row.policy = run.policy;
    row.branch = run.report.branch_label;
    row.alg_cost = run.report.alg_cost;
    row.opt_cost = run.report.opt_cost;
    row.ratio = run.report.ratio;
    const bool matches = branch_matches(kind, run.report);
    const bool above =
        std::isinf(row.ratio) || row.ratio >= bound - kBoundTolerance;
    row.pass = matches && above;
    all_pass = all_pass && row.pass;
    if (std::isfinite(row.ratio)) {
      min_finite = std::min(min_finite, row.ratio);
    }
    rows.push_back(row);
  }
  if (std::isfinite(min_finite) && min_finite < bound - kBoundTolerance) {
    all_pass = false;
  }

  std::string text;
  if (format == "csv") {
    std::ostringstream csv;
    csv << "scenario,branch,alg_cost,opt_cost,ratio,bound,pass\n";
    for (const auto& row : rows) {
      csv << scenario_name(kind) << ',' << row.branch << ','
          << format_number(row.alg_cost) << ',' << format_number(row.opt_cost)
          << ',' << format_number(row.ratio) << ',' << format_number(bound)
          << ',' << (row.pass ? "true" : "false") << '\n';
    }
    text = csv.str();
  } else {
    nlohmann::json jrows = nlohmann::json::array();
    for (const auto& row : rows) {
      jrows.push_back({{"policy", row.policy},
                       {"branch", row.branch},
                       {"alg_cost", row.alg_cost},
                       {"opt_cost", row.opt_cost},
                       {"ratio", std::isinf(row.ratio)
                                     ? nlohmann::json("inf")
                                     : nlohmann::json(row.ratio)},
                       {"pass", row.pass}});
    }
    nlohmann::json j = {{"scenario", scenario_name(kind)},
                        {"bound", bound},
                        {"min_finite_ratio",
                         std::isfinite(min_finite)
                             ? nlohmann::json(min_finite)
                             : nlohmann::json("inf")},
                        {"rows", jrows},
                        {"pass", all_pass}};
    text = j.dump(2) + "\n";
  }
  write_output(text, output);
  return all_pass ? 0 : 1;
}

int cmd_stress(const ExperimentConfig& config, const std::string& output) {
  const StressReport report = stress_upper_bound(config);
  std::string text;
  if (config.format == "csv") {
    std::ostringstream csv;
    csv << "# rng=" << report.rng_name << " seed=" << report.seed << "\n";
    csv << "seed_offset,n,greedy_cost,opt_cost,ratio\n";
    for (const auto& t : report.trials) {
      csv << t.seed_offset << ',' << t.n << ','
          << format_number(t.greedy_cost) << ',' << format_number(t.opt_cost)
          << ',' << format_number(t.ratio) << '\n';
    }
    text = csv.str();
  } else {
    text = to_json(report).dump(2) + "\n";
  }
  write_output(text, output);
  return report.violations.empty() ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Online metric matching: greedy, exact optimum, reductions "
               "and lower-bound adversaries"};
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand("solve", "Exact offline assignment");
  std::string solve_instance, solve_requests, solve_output;
  solve->add_option("--instance", solve_instance, "Instance JSON file")
      ->required();
  solve->add_option("--requests", solve_requests, "Requests JSON file")
      ->required();
  solve->add_option("--output,-o", solve_output, "Output path (default stdout)");

  // play
  auto* play = app.add_subcommand("play", "Play one adversary game");
  std::string play_scenario, play_alg = "greedy", play_output;
  int play_capacity = 1;
  double play_d = 1.0;
  play->add_option("--scenario", play_scenario, "omm2|ofal3|ofal4|ofal5")
      ->required();
  play->add_option("--alg", play_alg, "Algorithm name");
  play->add_option("--capacity", play_capacity, "Server capacity (ell)");
  play->add_option("--d", play_d, "OMM(2) half spacing");
  play->add_option("--output,-o", play_output, "Output path");

  // verify-bounds
  auto* verify = app.add_subcommand("verify-bounds",
                                    "Check lower-bound branch certificates");
  std::string verify_scenario, verify_alg = "greedy", verify_format = "json";
  std::string verify_output;
  bool all_policies = false;
  int verify_capacity = 1;
  verify->add_option("--scenario", verify_scenario, "omm2|ofal3|ofal4|ofal5")
      ->required();
  verify->add_option("--alg", verify_alg, "Algorithm name");
  verify->add_flag("--all-policies", all_policies,
                   "Enumerate every side-choice policy");
  verify->add_option("--capacity", verify_capacity, "Server capacity (ell)");
  verify->add_option("--format", verify_format, "json|csv");
  verify->add_option("--output,-o", verify_output, "Output path");

  // reduce
  auto* reduce = app.add_subcommand("reduce", "Rate-preserving reductions");
  std::string reduce_mode, reduce_instance, reduce_requests, reduce_output;
  reduce->add_option("--mode", reduce_mode, "anti-opt|one-sided")->required();
  reduce->add_option("--instance", reduce_instance, "Instance JSON file")
      ->required();
  reduce->add_option("--requests", reduce_requests, "Requests JSON file")
      ->required();
  reduce->add_option("--output,-o", reduce_output, "Output path");

  // stress
  auto* stress = app.add_subcommand("stress",
                                    "Randomized GREEDY <= 3 OPT stress test");
  ExperimentConfig config;
  std::string stress_output;
  bool no_plant = false;
  stress->add_option("--trials", config.trials, "Trial count");
  stress->add_option("--seed", config.seed, "Base seed");
  stress->add_option("--n-max", config.n_max, "Maximum requests per trial");
  stress->add_option("--format", config.format, "json|csv");
  stress->add_flag("--no-plant", no_plant, "Skip the planted adversarial trial");
  stress->add_option("--output,-o", stress_output, "Output path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (solve->parsed()) {
      const Instance inst = parse_instance(load_json_file(solve_instance));
      const RequestSequence seq =
          parse_requests(load_json_file(solve_requests), inst);
      const AssignmentPlan plan = optimal_assignment(inst, seq);
      write_output(to_json(plan).dump(2) + "\n", solve_output);
      return 0;
    }
    if (play->parsed()) {
      const ScenarioKind kind = parse_scenario_kind(play_scenario);
      const Scenario scenario = build_scenario(kind, play_capacity, play_d);
      auto alg = make_algorithm(play_alg);
      const RatioReport report = play_game(scenario, *alg);
      write_output(to_json(report).dump(2) + "\n", play_output);
      return 0;
    }
    if (verify->parsed()) {
      return cmd_verify_bounds(parse_scenario_kind(verify_scenario),
                               verify_alg, all_policies, verify_capacity,
                               verify_format, verify_output);
    }
    if (reduce->parsed()) {
      const Instance inst = parse_instance(load_json_file(reduce_instance));
      const RequestSequence seq =
          parse_requests(load_json_file(reduce_requests), inst);
      ReducedInput reduced;
      if (reduce_mode == "anti-opt") {
        reduced = make_anti_opt(inst, seq);
      } else if (reduce_mode == "one-sided") {
        reduced = make_one_sided_priority(inst, seq);
      } else {
        std::cerr << "unknown --mode: " << reduce_mode << "\n";
        return 2;
      }
      write_output(to_json(reduced).dump(2) + "\n", reduce_output);
      return 0;
    }
    if (stress->parsed()) {
      config.plant_adversarial = !no_plant;
      return cmd_stress(config, stress_output);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace omatch
