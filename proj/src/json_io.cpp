#include "omatch/json_io.hpp"

#include <cmath>
#include <fstream>

namespace omatch {

using nlohmann::json;

namespace {

void require_keys(const json& j, std::initializer_list<const char*> allowed,
                  const char* context) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* key : allowed) {
      if (it.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw Error(std::string("unknown key \"") + it.key() + "\" in " +
                  context);
    }
  }
}

json ratio_json(double ratio) {
  if (std::isinf(ratio)) return json("inf");
  return json(ratio);
}

}  // namespace

Instance parse_instance(const json& j) {
  if (!j.is_object()) throw Error("instance must be a JSON object");
  require_keys(j, {"metric", "servers", "variant"}, "instance");
  if (!j.contains("metric") || !j.contains("servers") ||
      !j.contains("variant")) {
    throw Error("instance needs \"metric\", \"servers\" and \"variant\"");
  }

  Instance inst;
  const json& metric = j.at("metric");
  if (!metric.is_object() || !metric.contains("kind")) {
    throw Error("metric must be an object with a \"kind\"");
  }
  const std::string kind = metric.at("kind").get<std::string>();
  if (kind == "line") {
    require_keys(metric, {"kind"}, "metric");
    inst.metric.kind = Metric::Kind::Line;
  } else if (kind == "matrix") {
    require_keys(metric, {"kind", "d"}, "metric");
    if (!metric.contains("d")) throw Error("matrix metric needs \"d\"");
    inst.metric.kind = Metric::Kind::Matrix;
    inst.metric.matrix =
        metric.at("d").get<std::vector<std::vector<double>>>();
  } else {
    throw Error("metric kind must be \"line\" or \"matrix\"");
  }

  const std::string variant = j.at("variant").get<std::string>();
  if (variant == "omm2") {
    inst.variant = Variant::Omm2;
  } else if (variant == "ofal") {
    inst.variant = Variant::Ofal;
  } else if (variant == "general") {
    inst.variant = Variant::General;
  } else {
    throw Error("variant must be \"omm2\", \"ofal\" or \"general\"");
  }

  for (const json& s : j.at("servers")) {
    require_keys(s, {"pos", "cap"}, "server");
    if (!s.contains("pos") || !s.contains("cap")) {
      throw Error("server needs \"pos\" and \"cap\"");
    }
    Server server;
    if (inst.metric.kind == Metric::Kind::Line) {
      server.pos = Point::at(s.at("pos").get<double>());
    } else {
      if (!s.at("pos").is_number_integer()) {
        throw Error("matrix-metric server positions must be point ids");
      }
      server.pos = Point::index(s.at("pos").get<int>());
    }
    server.capacity = s.at("cap").get<int>();
    inst.servers.push_back(server);
  }

  normalize_ofal_spacing(inst);
  const ValidationReport report = validate(inst);
  if (!report.ok()) {
    std::string msg = "invalid instance:";
    for (const auto& v : report.violations) msg += " " + v + ";";
    throw Error(msg);
  }
  return inst;
}

RequestSequence parse_requests(const json& j, const Instance& inst) {
  if (!j.is_object()) throw Error("requests must be a JSON object");
  require_keys(j, {"requests"}, "requests");
  if (!j.contains("requests")) throw Error("missing \"requests\" array");

  RequestSequence seq;
  for (const json& r : j.at("requests")) {
    if (inst.metric.kind == Metric::Kind::Line) {
      seq.requests.push_back(
          Point::at(r.get<double>() / inst.normalization_scale));
    } else {
      if (!r.is_number_integer()) {
        throw Error("matrix-metric requests must be point ids");
      }
      seq.requests.push_back(Point::index(r.get<int>()));
    }
  }
  check_feasible(inst, seq);
  return seq;
}

json to_json(const Instance& inst) {
  json metric;
  if (inst.metric.kind == Metric::Kind::Line) {
    metric = {{"kind", "line"}};
  } else {
    metric = {{"kind", "matrix"}, {"d", inst.metric.matrix}};
  }
  json servers = json::array();
  for (const auto& s : inst.servers) {
    json pos = inst.metric.kind == Metric::Kind::Line ? json(s.pos.coord)
                                                      : json(s.pos.id);
    servers.push_back({{"pos", pos}, {"cap", s.capacity}});
  }
  const char* variant = inst.variant == Variant::Omm2   ? "omm2"
                        : inst.variant == Variant::Ofal ? "ofal"
                                                        : "general";
  json out = {{"metric", metric}, {"servers", servers}, {"variant", variant}};
  if (inst.normalization_scale != 1.0) {
    out["scale"] = inst.normalization_scale;
  }
  return out;
}

json to_json(const Instance& inst, const RequestSequence& seq) {
  json requests = json::array();
  for (const auto& r : seq.requests) {
    requests.push_back(inst.metric.kind == Metric::Kind::Line ? json(r.coord)
                                                              : json(r.id));
  }
  return {{"requests", requests}};
}

json to_json(const AssignmentPlan& plan) {
  json pairs = json::array();
  for (const auto& [ri, si] : plan.pairs) pairs.push_back({ri, si});
  return {{"pairs", pairs}, {"cost", plan.total_cost}};
}

json to_json(const ReducedInput& reduced) {
  json provenance = json::array();
  for (const auto& edit : reduced.provenance) {
    if (edit.op == Edit::Op::Remove) {
      provenance.push_back(
          {{"op", "remove"}, {"request", edit.request}, {"server", edit.server}});
    } else {
      provenance.push_back(
          {{"op", "move"}, {"request", edit.request}, {"after", edit.after}});
    }
  }
  return {{"instance", to_json(reduced.instance)},
          {"requests", to_json(reduced.instance, reduced.sequence)["requests"]},
          {"provenance", provenance}};
}

json to_json(const RatioReport& report) {
  json steps = json::array();
  for (const auto& step : report.trace.steps) {
    steps.push_back({{"request", step.request.coord},
                     {"server", step.server},
                     {"cost", step.cost}});
  }
  return {{"alg_cost", report.alg_cost},
          {"opt_cost", report.opt_cost},
          {"ratio", ratio_json(report.ratio)},
          {"branch", report.branch_label},
          {"trace", steps},
          {"opt_plan", to_json(report.opt_plan)}};
}

json to_json(const StressReport& report) {
  json rows = json::array();
  for (const auto& t : report.trials) {
    rows.push_back({{"seed_offset", t.seed_offset},
                    {"n", t.n},
                    {"greedy_cost", t.greedy_cost},
                    {"opt_cost", t.opt_cost},
                    {"ratio", ratio_json(t.ratio)}});
  }
  return {{"rng", report.rng_name},
          {"seed", report.seed},
          {"trials", rows},
          {"max_ratio", ratio_json(report.max_ratio)},
          {"violations", report.violations}};
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error("malformed JSON in " + path + ": " + e.what());
  }
}

}  // namespace omatch
