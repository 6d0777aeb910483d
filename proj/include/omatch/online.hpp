#pragma once

#include <memory>
#include <string>
#include <vector>

#include "omatch/metric_core.hpp"
#include "omatch/offline_solver.hpp"

namespace omatch {

struct ServerState {
  std::vector<int> remaining;

  static ServerState initial(const Instance& inst);
  bool is_free(int i) const { return remaining[i] > 0; }
  int free_count() const;
};

struct GameStep {
  Point request;
  int server = -1;
  double cost = 0.0;
};

struct GameTrace {
  std::vector<GameStep> steps;
  double total_cost = 0.0;
};

// An online algorithm is a deterministic function of the instance, the
// current server state, the revealed request and its own past moves.
class OnlineAlgorithm {
 public:
  virtual ~OnlineAlgorithm() = default;
  virtual std::string name() const = 0;
  virtual int serve(const Instance& inst, const ServerState& state,
                    const Point& request, const GameTrace& history) const = 0;
};

// Closest free server; ties go to the lowest index (which realizes the
// OMM(2) rule of preferring s1).
int greedy_serve(const Instance& inst, const ServerState& state,
                 const Point& request);

class GreedyAlgorithm final : public OnlineAlgorithm {
 public:
  std::string name() const override { return "greedy"; }
  int serve(const Instance& inst, const ServerState& state,
            const Point& request, const GameTrace& history) const override;
};

// Line-metric policy that resolves every genuine two-sided choice with a
// fixed left/right decision table.  Requests at a free server's position
// are matched to that server; one-sided situations take the nearest free
// server on the occupied side.  Decisions past the table reuse its last
// entry, so {0} and {1} are the one-sided extremists.
class SideChoicePolicy final : public OnlineAlgorithm {
 public:
  SideChoicePolicy(std::vector<int> sides, std::string label);
  std::string name() const override { return name_; }
  int serve(const Instance& inst, const ServerState& state,
            const Point& request, const GameTrace& history) const override;

 private:
  std::vector<int> sides_;  // 0 = left, 1 = right, per decision point
  std::string name_;
};

// Test policy that refuses the zero-cost server whenever another free
// server exists; used to exercise the adversaries' punish branches.
class AvoidHomePolicy final : public OnlineAlgorithm {
 public:
  std::string name() const override { return "avoid-home"; }
  int serve(const Instance& inst, const ServerState& state,
            const Point& request, const GameTrace& history) const override;
};

std::unique_ptr<OnlineAlgorithm> make_algorithm(const std::string& name);
std::vector<std::string> algorithm_names();

// Runs a fixed request sequence through an algorithm; raises
// IllegalMoveError if the algorithm returns a full server.
GameTrace run_game(const Instance& inst, const OnlineAlgorithm& alg,
                   const RequestSequence& seq);

struct RequestType {
  int greedy_server = -1;
  int opt_server = -1;
};

std::vector<RequestType> classify_types(const GameTrace& greedy_trace,
                                        const AssignmentPlan& opt_plan);

// True iff every step matched the nearest free server on its side at the
// time; a request at a free server's position surrounds itself.
bool is_surrounding_oriented(const Instance& inst, const GameTrace& trace);

}  // namespace omatch
