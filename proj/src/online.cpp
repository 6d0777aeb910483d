#include "omatch/online.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "omatch/config.hpp"

namespace omatch {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Situation of a request on the line relative to the free servers.
struct LineSituation {
  int at_position = -1;  // free server at the request's position
  int left = -1;         // nearest free server strictly left
  int right = -1;        // nearest free server strictly right
  bool decision() const { return at_position < 0 && left >= 0 && right >= 0; }
};

LineSituation classify_line(const Instance& inst, const ServerState& state,
                            const Point& request) {
  const double tol = tolerance();
  LineSituation sit;
  double best_left = -kInf, best_right = kInf;
  for (int j = 0; j < static_cast<int>(inst.servers.size()); ++j) {
    if (!state.is_free(j)) continue;
    const double p = inst.server_coord(j);
    if (std::abs(p - request.coord) <= tol) {
      if (sit.at_position < 0) sit.at_position = j;
    } else if (p < request.coord) {
      if (p > best_left) {
        best_left = p;
        sit.left = j;
      }
    } else {
      if (p < best_right) {
        best_right = p;
        sit.right = j;
      }
    }
  }
  return sit;
}

}  // namespace

ServerState ServerState::initial(const Instance& inst) {
  ServerState state;
  state.remaining.reserve(inst.servers.size());
  for (const auto& s : inst.servers) state.remaining.push_back(s.capacity);
  return state;
}

int ServerState::free_count() const {
  int count = 0;
  for (int r : remaining) {
    if (r > 0) ++count;
  }
  return count;
}

int greedy_serve(const Instance& inst, const ServerState& state,
                 const Point& request) {
  const double tol = tolerance();
  int best = -1;
  double best_dist = kInf;
  for (int j = 0; j < static_cast<int>(inst.servers.size()); ++j) {
    if (!state.is_free(j)) continue;
    const double d = distance(inst, request, inst.servers[j].pos);
    if (d < best_dist - tol) {
      best_dist = d;
      best = j;
    }
  }
  if (best < 0) throw IllegalMoveError("no free server available");
  return best;
}

int GreedyAlgorithm::serve(const Instance& inst, const ServerState& state,
                           const Point& request, const GameTrace&) const {
  return greedy_serve(inst, state, request);
}

SideChoicePolicy::SideChoicePolicy(std::vector<int> sides, std::string label)
    : sides_(std::move(sides)), name_(std::move(label)) {
  if (sides_.empty()) sides_.push_back(0);
}

int SideChoicePolicy::serve(const Instance& inst, const ServerState& state,
                            const Point& request,
                            const GameTrace& history) const {
  if (inst.metric.kind != Metric::Kind::Line) {
    throw UnsupportedMetricError("side-choice policies need a line metric");
  }
  // Decision index = number of genuine two-sided choices made so far,
  // reconstructed by replaying the history.
  ServerState replay = ServerState::initial(inst);
  int decisions = 0;
  for (const auto& step : history.steps) {
    if (classify_line(inst, replay, step.request).decision()) ++decisions;
    replay.remaining[step.server] -= 1;
  }
  const LineSituation sit = classify_line(inst, state, request);
  if (sit.at_position >= 0) return sit.at_position;
  if (sit.left < 0) return sit.right;
  if (sit.right < 0) return sit.left;
  const int side =
      sides_[std::min<std::size_t>(decisions, sides_.size() - 1)];
  return side == 0 ? sit.left : sit.right;
}

int AvoidHomePolicy::serve(const Instance& inst, const ServerState& state,
                           const Point& request, const GameTrace&) const {
  const double tol = tolerance();
  int home = -1, best_other = -1;
  double best_dist = kInf;
  for (int j = 0; j < static_cast<int>(inst.servers.size()); ++j) {
    if (!state.is_free(j)) continue;
    const double d = distance(inst, request, inst.servers[j].pos);
    if (d <= tol && home < 0) {
      home = j;
    } else if (d < best_dist - tol) {
      best_dist = d;
      best_other = j;
    }
  }
  if (best_other >= 0) return best_other;
  if (home >= 0) return home;
  throw IllegalMoveError("no free server available");
}

std::unique_ptr<OnlineAlgorithm> make_algorithm(const std::string& name) {
  if (name == "greedy") return std::make_unique<GreedyAlgorithm>();
  if (name == "always-left") {
    return std::make_unique<SideChoicePolicy>(std::vector<int>{0}, name);
  }
  if (name == "always-right") {
    return std::make_unique<SideChoicePolicy>(std::vector<int>{1}, name);
  }
  if (name == "avoid-home") return std::make_unique<AvoidHomePolicy>();
  if (name.rfind("policy:", 0) == 0) {
    std::vector<int> sides;
    for (char c : name.substr(7)) {
      if (c == 'L' || c == 'l') {
        sides.push_back(0);
      } else if (c == 'R' || c == 'r') {
        sides.push_back(1);
      } else {
        throw Error("bad policy spec (use L/R letters): " + name);
      }
    }
    if (sides.empty()) throw Error("empty policy spec: " + name);
    return std::make_unique<SideChoicePolicy>(std::move(sides), name);
  }
  throw Error("unknown algorithm: " + name);
}

std::vector<std::string> algorithm_names() {
  return {"greedy", "always-left", "always-right", "avoid-home",
          "policy:<L|R...>"};
}

GameTrace run_game(const Instance& inst, const OnlineAlgorithm& alg,
                   const RequestSequence& seq) {
  check_feasible(inst, seq);
  ServerState state = ServerState::initial(inst);
  GameTrace trace;
  for (const auto& request : seq.requests) {
    const int server = alg.serve(inst, state, request, trace);
    if (server < 0 || server >= static_cast<int>(inst.servers.size()) ||
        !state.is_free(server)) {
      throw IllegalMoveError("algorithm returned a full or invalid server");
    }
    const double cost = distance(inst, request, inst.servers[server].pos);
    state.remaining[server] -= 1;
    trace.steps.push_back({request, server, cost});
    trace.total_cost += cost;
  }
  return trace;
}

std::vector<RequestType> classify_types(const GameTrace& greedy_trace,
                                        const AssignmentPlan& opt_plan) {
  if (greedy_trace.steps.size() != opt_plan.pairs.size()) {
    throw TracePlanMismatchError(
        "trace and plan cover different numbers of requests");
  }
  std::vector<RequestType> types(greedy_trace.steps.size());
  for (std::size_t i = 0; i < greedy_trace.steps.size(); ++i) {
    types[i].greedy_server = greedy_trace.steps[i].server;
  }
  for (const auto& [ri, si] : opt_plan.pairs) {
    if (ri < 0 || ri >= static_cast<int>(types.size())) {
      throw TracePlanMismatchError("plan references an unknown request");
    }
    types[ri].opt_server = si;
  }
  return types;
}

bool is_surrounding_oriented(const Instance& inst, const GameTrace& trace) {
  if (inst.metric.kind != Metric::Kind::Line) {
    throw UnsupportedMetricError(
        "surrounding orientation is defined on the line only");
  }
  const double tol = tolerance();
  ServerState state = ServerState::initial(inst);
  for (const auto& step : trace.steps) {
    const LineSituation sit = classify_line(inst, state, step.request);
    const double chosen = inst.server_coord(step.server);
    bool ok = false;
    if (sit.at_position >= 0 &&
        std::abs(chosen - step.request.coord) <= tol) {
      ok = true;
    }
    if (sit.left >= 0 &&
        std::abs(chosen - inst.server_coord(sit.left)) <= tol) {
      ok = true;
    }
    if (sit.right >= 0 &&
        std::abs(chosen - inst.server_coord(sit.right)) <= tol) {
      ok = true;
    }
    if (!ok) return false;
    state.remaining[step.server] -= 1;
  }
  return true;
}

}  // namespace omatch
