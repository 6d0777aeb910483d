#include "omatch/adversary.hpp"

#include <cmath>
#include <limits>

#include "omatch/config.hpp"
#include "omatch/offline_solver.hpp"

namespace omatch {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double ofal_x(int k) {
  if (k == 3) return std::sqrt(6.0) - 2.0;
  if (k == 4) return (10.0 - std::sqrt(73.0)) / 2.0;
  return 7.0 / 8.0;  // k = 5 probe offset
}

double ofal_y(int k) {
  if (k == 3) return 3.0 * std::sqrt(6.0) - 7.0;
  if (k == 4) return (11.0 * std::sqrt(73.0) - 93.0) / 8.0;
  return 0.0;
}

}  // namespace

Scenario Scenario::omm2(double d, int c1, int c2) {
  Scenario sc;
  sc.kind = ScenarioKind::Omm2;
  sc.d = d;
  sc.c1 = c1;
  sc.c2 = c2;
  return sc;
}

Scenario Scenario::ofal(int k, int ell) {
  if (k < 3 || k > 5) throw Error("OFAL adversaries exist for k in {3,4,5}");
  Scenario sc;
  sc.kind = k == 3   ? ScenarioKind::Ofal3
            : k == 4 ? ScenarioKind::Ofal4
                     : ScenarioKind::Ofal5;
  sc.ell = ell;
  return sc;
}

int Scenario::server_count() const {
  switch (kind) {
    case ScenarioKind::Omm2:
      return 2;
    case ScenarioKind::Ofal3:
      return 3;
    case ScenarioKind::Ofal4:
      return 4;
    default:
      return 5;
  }
}

ScenarioKind parse_scenario_kind(const std::string& name) {
  if (name == "omm2") return ScenarioKind::Omm2;
  if (name == "ofal3") return ScenarioKind::Ofal3;
  if (name == "ofal4") return ScenarioKind::Ofal4;
  if (name == "ofal5") return ScenarioKind::Ofal5;
  throw Error("unknown scenario: " + name);
}

std::string scenario_name(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::Omm2:
      return "omm2";
    case ScenarioKind::Ofal3:
      return "ofal3";
    case ScenarioKind::Ofal4:
      return "ofal4";
    default:
      return "ofal5";
  }
}

Instance make_instance(const Scenario& scenario) {
  Instance inst;
  inst.metric.kind = Metric::Kind::Line;
  if (scenario.kind == ScenarioKind::Omm2) {
    inst.variant = Variant::Omm2;
    inst.servers = {{Point::at(-scenario.d), scenario.c1},
                    {Point::at(scenario.d), scenario.c2}};
  } else {
    inst.variant = Variant::Ofal;
    for (int i = 0; i < scenario.server_count(); ++i) {
      inst.servers.push_back({Point::at(static_cast<double>(i)), scenario.ell});
    }
  }
  return inst;
}

Adversary::Adversary(const Scenario& scenario)
    : sc_(scenario), inst_(make_instance(scenario)) {
  if (scenario.kind == ScenarioKind::Omm2) {
    for (int i = 0; i < scenario.c1 - 1; ++i) {
      prefix_pos_.push_back(inst_.server_coord(0));
      prefix_server_.push_back(0);
    }
    for (int i = 0; i < scenario.c2 - 1; ++i) {
      prefix_pos_.push_back(inst_.server_coord(1));
      prefix_server_.push_back(1);
    }
  } else {
    for (int j = 0; j < scenario.server_count(); ++j) {
      for (int i = 0; i < scenario.ell - 1; ++i) {
        prefix_pos_.push_back(inst_.server_coord(j));
        prefix_server_.push_back(j);
      }
    }
  }
  if (prefix_pos_.empty()) mode_ = Mode::Main;
}

double Adversary::logical(double physical) const {
  if (!mirrored_) return physical;
  const double lo = inst_.server_coord(0);
  const double hi = inst_.server_coord(static_cast<int>(inst_.servers.size()) - 1);
  return lo + hi - physical;
}

int Adversary::side_of(double server_pos, double request_pos) const {
  // In logical coordinates; ties count as left.
  return logical(server_pos) > request_pos + tolerance() ? 1 : 0;
}

Point Adversary::emit(double pos) {
  emitted_.push_back(pos);
  return Point::at(pos);
}

void Adversary::start_punish(const std::vector<double>& positions,
                             std::size_t from) {
  punish_queue_ = positions;
  punish_next_ = from;
  mode_ = Mode::Punish;
  branch_ = "punish-infinite";
}

std::optional<Point> Adversary::next(const GameTrace& history) {
  if (history.steps.size() != emitted_.size()) {
    throw DesyncError("history length does not match emitted requests");
  }
  int resp_server = -1;
  double resp_pos = 0.0;
  if (!emitted_.empty()) {
    const GameStep& last = history.steps.back();
    if (std::abs(last.request.coord - emitted_.back()) > tolerance()) {
      throw DesyncError("history does not replay the emitted requests");
    }
    resp_server = last.server;
    resp_pos = inst_.server_coord(resp_server);
  }

  switch (mode_) {
    case Mode::Done:
      return std::nullopt;
    case Mode::Punish:
      if (punish_next_ >= punish_queue_.size()) {
        mode_ = Mode::Done;
        return std::nullopt;
      }
      return emit(punish_queue_[punish_next_++]);
    case Mode::Prefix: {
      if (prefix_next_ > 0 &&
          resp_server != prefix_server_[prefix_next_ - 1]) {
        // Matched differently from the at-position server: punish with one
        // request at every server position.
        std::vector<double> all;
        for (const auto& s : inst_.servers) all.push_back(s.pos.coord);
        start_punish(all);
        return emit(punish_queue_[punish_next_++]);
      }
      if (prefix_next_ < prefix_pos_.size()) {
        return emit(prefix_pos_[prefix_next_++]);
      }
      mode_ = Mode::Main;
      [[fallthrough]];
    }
    case Mode::Main:
      if (sc_.kind == ScenarioKind::Omm2) {
        return advance_omm2(resp_server, resp_pos);
      }
      return advance_ofal(resp_server, resp_pos);
  }
  return std::nullopt;
}

std::optional<Point> Adversary::advance_omm2(int resp_server, double) {
  switch (main_step_++) {
    case 0:
      // Probe at the midpoint of the two server positions.
      return emit((inst_.server_coord(0) + inst_.server_coord(1)) / 2.0);
    case 1:
      branch_ = resp_server == 0 ? "case1" : "mirror-case1";
      return emit(inst_.server_coord(resp_server));
    default:
      mode_ = Mode::Done;
      return std::nullopt;
  }
}

std::optional<Point> Adversary::advance_ofal(int resp_server,
                                             double resp_pos) {
  const int k = sc_.server_count();
  const double x = ofal_x(k);
  const double y = ofal_y(k);
  // logical() is an involution, so it also maps logical coordinates to
  // physical emission coordinates.

  if (k == 3) {
    switch (main_step_++) {
      case 0:
        return emit(1.0 + x);  // p(s2) + x
      case 1:
        if (side_of(resp_pos, 1.0 + x) == 1) {
          branch_ = "case1";
          return emit(2.0);  // p(s3)
        }
        branch_ = "case2";
        return emit(1.0 - y);  // p(s2) - y
      case 2:
        if (branch_ == "case1") return emit(0.0);
        branch_ = side_of(resp_pos, 1.0 - y) == 0 ? "case2-1" : "case2-2";
        return emit(branch_ == "case2-1" ? 0.0 : 2.0);
      default:
        mode_ = Mode::Done;
        return std::nullopt;
    }
  }

  if (k == 4) {
    switch (main_step_++) {
      case 0:
        return emit(1.5);  // midpoint of s2, s3
      case 1:
        mirrored_ = resp_pos > 1.5 + tolerance();
        return emit(logical(0.0 + x));  // p(s1) + x
      case 2:
        if (side_of(resp_pos, x) == 0) {
          branch_ = "case1";
          return emit(logical(0.0));  // p(s1)
        }
        branch_ = "case2";
        return emit(logical(2.0 + y));  // p(s3) + y
      case 3:
        if (branch_ == "case1") return emit(logical(3.0));  // p(s4)
        branch_ = side_of(resp_pos, 2.0 + y) == 1 ? "case2-1" : "case2-2";
        return emit(logical(branch_ == "case2-1" ? 3.0 : 0.0));
      default:
        if (mirrored_ && branch_.rfind("mirror-", 0) != 0) {
          branch_ = "mirror-" + branch_;
        }
        mode_ = Mode::Done;
        return std::nullopt;
    }
  }

  // k == 5
  switch (main_step_++) {
    case 0:
      return emit(2.0);  // p(s3)
    case 1:
      if (resp_server != 2) {
        start_punish({0.0, 1.0, 3.0, 4.0});
        return emit(punish_queue_[punish_next_++]);
      }
      return emit(2.0);  // p(s3) again, s3 now full
    case 2:
      mirrored_ = resp_pos > 2.0 + tolerance();
      return emit(logical(0.0 + x));  // p(s1) + 7/8
    case 3:
      if (side_of(resp_pos, x) == 0) {
        branch_ = "case1";
        return emit(logical(0.0));  // p(s1)
      }
      branch_ = "case2";
      return emit(logical(3.0));  // p(s4)
    case 4:
      if (branch_ == "case1") return emit(logical(4.0));  // p(s5)
      branch_ = side_of(resp_pos, 3.0) == 0 ? "case2-1" : "case2-2";
      return emit(logical(branch_ == "case2-1" ? 0.0 : 4.0));
    default:
      if (mirrored_ && branch_.rfind("mirror-", 0) != 0) {
        branch_ = "mirror-" + branch_;
      }
      mode_ = Mode::Done;
      return std::nullopt;
  }
}

RatioReport play_game(const Instance& inst, const OnlineAlgorithm& alg,
                      Adversary& adversary) {
  ServerState state = ServerState::initial(inst);
  GameTrace trace;
  RequestSequence seq;
  while (auto request = adversary.next(trace)) {
    const int server = alg.serve(inst, state, *request, trace);
    if (server < 0 || server >= static_cast<int>(inst.servers.size()) ||
        !state.is_free(server)) {
      throw IllegalMoveError("algorithm returned a full or invalid server");
    }
    const double cost = distance(inst, *request, inst.servers[server].pos);
    state.remaining[server] -= 1;
    trace.steps.push_back({*request, server, cost});
    trace.total_cost += cost;
    seq.requests.push_back(*request);
  }

  RatioReport report;
  report.trace = trace;
  report.alg_cost = trace.total_cost;
  report.opt_plan = optimal_assignment(inst, seq);
  report.opt_cost = report.opt_plan.total_cost;
  report.branch_label = adversary.branch_label();
  const double tol = tolerance();
  if (report.opt_cost <= tol) {
    report.ratio = report.alg_cost <= tol ? 1.0 : kInf;
  } else {
    report.ratio = report.alg_cost / report.opt_cost;
  }
  return report;
}

RatioReport play_game(const Scenario& scenario, const OnlineAlgorithm& alg) {
  const Instance inst = make_instance(scenario);
  Adversary adversary(scenario);
  return play_game(inst, alg, adversary);
}

std::vector<BranchForm> enumerate_branches(ScenarioKind kind) {
  const double s6 = std::sqrt(6.0);
  const double s73 = std::sqrt(73.0);
  std::vector<BranchForm> branches;
  switch (kind) {
    case ScenarioKind::Omm2:
      branches.push_back({"case1", 3.0, 1.0, 3.0});
      break;
    case ScenarioKind::Ofal3:
      branches.push_back({"case1", 4.0 - s6, s6 - 2.0, 1.0 + s6});
      branches.push_back({"case2-1", 8.0 - 2.0 * s6, 2.0 * s6 - 4.0, 1.0 + s6});
      branches.push_back({"case2-2", 4.0 * s6 - 6.0, 6.0 - 2.0 * s6, 1.0 + s6});
      break;
    case ScenarioKind::Ofal4:
      branches.push_back({"case1", (15.0 - s73) / 2.0, (s73 - 7.0) / 2.0,
                          (4.0 + s73) / 3.0});
      branches.push_back({"case2-1", (105.0 - 7.0 * s73) / 8.0,
                          (7.0 * s73 - 49.0) / 8.0, (4.0 + s73) / 3.0});
      branches.push_back({"case2-2", (15.0 * s73 - 73.0) / 8.0,
                          (73.0 - 7.0 * s73) / 8.0, (4.0 + s73) / 3.0});
      break;
    case ScenarioKind::Ofal5:
      branches.push_back({"case1", 39.0 / 8.0, 9.0 / 8.0, 13.0 / 3.0});
      branches.push_back({"case2-1", 81.0 / 8.0, 17.0 / 8.0, 81.0 / 17.0});
      branches.push_back({"case2-2", 65.0 / 8.0, 15.0 / 8.0, 13.0 / 3.0});
      break;
  }
  return branches;
}

double scenario_bound(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::Omm2:
      return 3.0;
    case ScenarioKind::Ofal3:
      return 1.0 + std::sqrt(6.0);
    case ScenarioKind::Ofal4:
      return (4.0 + std::sqrt(73.0)) / 3.0;
    default:
      return 13.0 / 3.0;
  }
}

}  // namespace omatch
