#include "omatch/harness.hpp"

#include <algorithm>
#include <limits>
#include <random>

#include "omatch/config.hpp"
#include "omatch/offline_solver.hpp"

namespace omatch {

std::pair<Instance, RequestSequence> random_omm2_instance(std::uint64_t seed,
                                                          int n_max) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-10.0, 10.0);

  Instance inst;
  inst.metric.kind = Metric::Kind::Line;
  inst.variant = Variant::Omm2;
  double p1 = coord(rng), p2 = coord(rng);
  if (p2 < p1) std::swap(p1, p2);

  std::uniform_int_distribution<int> pick_n(1, std::max(1, n_max));
  const int n = pick_n(rng);
  std::uniform_int_distribution<int> pick_c1(0, n);
  const int c1 = pick_c1(rng);
  inst.servers = {{Point::at(p1), c1}, {Point::at(p2), n - c1}};

  RequestSequence seq;
  for (int i = 0; i < n; ++i) seq.requests.push_back(Point::at(coord(rng)));
  return {inst, seq};
}

std::pair<Instance, RequestSequence> random_ofal_instance(std::uint64_t seed,
                                                          int n_max) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick_k(2, 5);
  const int k = pick_k(rng);
  std::uniform_int_distribution<int> pick_ell(1, 3);
  const int ell = pick_ell(rng);

  Instance inst;
  inst.metric.kind = Metric::Kind::Line;
  inst.variant = Variant::Ofal;
  for (int i = 0; i < k; ++i) {
    inst.servers.push_back({Point::at(static_cast<double>(i)), ell});
  }

  const int cap = k * ell;
  std::uniform_int_distribution<int> pick_n(1, std::min(n_max, cap));
  const int n = pick_n(rng);
  std::uniform_real_distribution<double> coord(-1.0, static_cast<double>(k));
  RequestSequence seq;
  for (int i = 0; i < n; ++i) seq.requests.push_back(Point::at(coord(rng)));
  return {inst, seq};
}

StressReport stress_upper_bound(const ExperimentConfig& config) {
  StressReport report;
  report.seed = config.seed;
  const double tol = tolerance();
  const GreedyAlgorithm greedy;

  auto run_trial = [&](const Instance& inst, const RequestSequence& seq,
                       std::int64_t offset) {
    StressTrial trial;
    trial.seed_offset = offset;
    trial.n = static_cast<int>(seq.size());
    trial.greedy_cost = run_game(inst, greedy, seq).total_cost;
    trial.opt_cost = optimal_assignment(inst, seq).total_cost;
    if (trial.opt_cost <= tol) {
      trial.ratio = trial.greedy_cost <= tol
                        ? 1.0
                        : std::numeric_limits<double>::infinity();
    } else {
      trial.ratio = trial.greedy_cost / trial.opt_cost;
    }
    report.max_ratio = std::max(report.max_ratio, trial.ratio);
    if (trial.ratio > 3.0 + tol) report.violations.push_back(offset);
    report.trials.push_back(trial);
  };

  for (int i = 0; i < config.trials; ++i) {
    auto [inst, seq] = random_omm2_instance(config.seed + i, config.n_max);
    run_trial(inst, seq, i);
  }
  if (config.plant_adversarial) {
    // The two-request lower-bound input: probe at the origin, then a
    // request at the position greedy just filled.  Ratio exactly 3.
    Instance inst = make_instance(Scenario::omm2());
    RequestSequence seq;
    seq.requests = {Point::at(0.0), Point::at(-1.0)};
    run_trial(inst, seq, -1);
  }
  return report;
}

std::vector<PolicyRun> sweep_policies(const Scenario& scenario) {
  std::vector<PolicyRun> runs;
  auto play = [&](const OnlineAlgorithm& alg) {
    runs.push_back({alg.name(), play_game(scenario, alg)});
  };

  for (int bits = 0; bits < 8; ++bits) {
    std::vector<int> sides;
    std::string label = "policy:";
    for (int t = 0; t < 3; ++t) {
      const int side = (bits >> t) & 1;
      sides.push_back(side);
      label += side == 0 ? 'L' : 'R';
    }
    play(SideChoicePolicy(sides, label));
  }
  play(GreedyAlgorithm{});
  play(SideChoicePolicy({0}, "always-left"));
  play(SideChoicePolicy({1}, "always-right"));
  return runs;
}

double min_finite_ratio(const std::vector<PolicyRun>& runs) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& run : runs) {
    if (std::isfinite(run.report.ratio)) {
      best = std::min(best, run.report.ratio);
    }
  }
  return best;
}

}  // namespace omatch
