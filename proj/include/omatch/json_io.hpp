#pragma once

#include <string>

#include <json.hpp>

#include "omatch/adversary.hpp"
#include "omatch/harness.hpp"
#include "omatch/metric_core.hpp"
#include "omatch/offline_solver.hpp"
#include "omatch/reductions.hpp"

namespace omatch {

// Strict parsers: unknown keys are rejected, instances are validated and
// OFAL spacing is normalized on load.  All throw omatch::Error.
Instance parse_instance(const nlohmann::json& j);
// Request coordinates are rescaled by the instance's normalization factor
// so they stay consistent with the normalized server positions.
RequestSequence parse_requests(const nlohmann::json& j, const Instance& inst);

nlohmann::json to_json(const Instance& inst);
nlohmann::json to_json(const Instance& inst, const RequestSequence& seq);
nlohmann::json to_json(const AssignmentPlan& plan);
nlohmann::json to_json(const ReducedInput& reduced);
nlohmann::json to_json(const RatioReport& report);
nlohmann::json to_json(const StressReport& report);

nlohmann::json load_json_file(const std::string& path);

}  // namespace omatch
