#pragma once

#include <optional>
#include <string>
#include <vector>

#include "omatch/metric_core.hpp"
#include "omatch/online.hpp"

namespace omatch {

enum class ScenarioKind { Omm2, Ofal3, Ofal4, Ofal5 };

struct Scenario {
  ScenarioKind kind = ScenarioKind::Omm2;
  double d = 1.0;  // half server spacing for OMM(2): servers at -d and +d
  int c1 = 1, c2 = 1;  // OMM(2) capacities
  int ell = 1;         // OFAL capacity per server

  static Scenario omm2(double d = 1.0, int c1 = 1, int c2 = 1);
  static Scenario ofal(int k, int ell = 1);
  int server_count() const;
};

ScenarioKind parse_scenario_kind(const std::string& name);
std::string scenario_name(ScenarioKind kind);

Instance make_instance(const Scenario& scenario);

// Adaptive request generator for the lower-bound constructions.  next()
// consumes the algorithm's full history so far (one step per previously
// emitted request) and returns the next request, or nullopt when done.
class Adversary {
 public:
  explicit Adversary(const Scenario& scenario);

  std::optional<Point> next(const GameTrace& history);
  const std::string& branch_label() const { return branch_; }
  bool done() const { return mode_ == Mode::Done; }

 private:
  enum class Mode { Prefix, Main, Punish, Done };

  double logical(double physical) const;   // involution when mirrored
  int side_of(double server_pos, double request_pos) const;  // 0 left, 1 right
  Point emit(double pos);
  void start_punish(const std::vector<double>& positions,
                    std::size_t from = 0);
  std::optional<Point> advance_omm2(int resp_server, double resp_pos);
  std::optional<Point> advance_ofal(int resp_server, double resp_pos);

  Scenario sc_;
  Instance inst_;
  Mode mode_ = Mode::Prefix;
  bool mirrored_ = false;
  std::string branch_;
  std::vector<double> prefix_pos_;
  std::vector<int> prefix_server_;
  std::vector<double> punish_queue_;
  std::size_t punish_next_ = 0;
  std::size_t prefix_next_ = 0;
  int main_step_ = 0;  // count of main-phase requests already emitted
  std::vector<double> emitted_;
};

struct RatioReport {
  double alg_cost = 0.0;
  double opt_cost = 0.0;
  double ratio = 0.0;  // +infinity on punish branches
  std::string branch_label;
  GameTrace trace;
  AssignmentPlan opt_plan;
};

RatioReport play_game(const Instance& inst, const OnlineAlgorithm& alg,
                      Adversary& adversary);
RatioReport play_game(const Scenario& scenario, const OnlineAlgorithm& alg);

struct BranchForm {
  std::string label;
  double alg_cost = 0.0;
  double opt_cost = 0.0;
  double ratio = 0.0;
};

// Closed-form cost pairs of every finite branch (unit spacing), computed
// from the scenario constants rather than gameplay.
std::vector<BranchForm> enumerate_branches(ScenarioKind kind);

// 3, 1+sqrt(6), (4+sqrt(73))/3 and 13/3 respectively.
double scenario_bound(ScenarioKind kind);

}  // namespace omatch
