#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "omatch/adversary.hpp"
#include "omatch/metric_core.hpp"
#include "omatch/online.hpp"

namespace omatch {

// RNG algorithm recorded in report headers so reruns are reproducible.
inline constexpr const char* kRngName = "mt19937_64";

struct ExperimentConfig {
  std::uint64_t seed = 0;
  int trials = 1;
  int n_max = 12;
  bool plant_adversarial = true;
  std::string format = "json";
};

// Two servers on the line in [-10,10], c1 + c2 = n <= n_max, requests
// uniform in [-10,10]; deterministic in the seed.
std::pair<Instance, RequestSequence> random_omm2_instance(std::uint64_t seed,
                                                          int n_max);

// Unit-spaced line instance with k in 2..5 and n <= min(n_max, k*ell).
std::pair<Instance, RequestSequence> random_ofal_instance(std::uint64_t seed,
                                                          int n_max);

struct StressTrial {
  std::int64_t seed_offset = 0;  // -1 marks the planted adversarial trial
  int n = 0;
  double greedy_cost = 0.0;
  double opt_cost = 0.0;
  double ratio = 0.0;
};

struct StressReport {
  std::string rng_name = kRngName;
  std::uint64_t seed = 0;
  std::vector<StressTrial> trials;
  double max_ratio = 0.0;
  std::vector<std::int64_t> violations;  // trials with ratio > 3 + tol
};

// Runs GREEDY vs the exact optimum on random OMM(2) instances; trial i
// uses seed config.seed + i.
StressReport stress_upper_bound(const ExperimentConfig& config);

struct PolicyRun {
  std::string policy;
  RatioReport report;
};

// Plays the scenario's adversary against every side-choice policy over
// three decision points, plus greedy and the one-sided extremists.
std::vector<PolicyRun> sweep_policies(const Scenario& scenario);

// Smallest finite ratio in a sweep (+infinity if none is finite).
double min_finite_ratio(const std::vector<PolicyRun>& runs);

}  // namespace omatch
