#pragma once

#include <utility>
#include <vector>

#include "omatch/metric_core.hpp"

namespace omatch {

// Offline matching of requests to servers.  Pairs are (request index,
// server index), listed in request order.
struct AssignmentPlan {
  std::vector<std::pair<int, int>> pairs;
  double total_cost = 0.0;
};

// Minimum-cost assignment respecting server capacities, via successive
// shortest augmenting paths.  Ties between equal-cost optima are broken by
// the lexicographically smallest pair list, so output is deterministic.
AssignmentPlan optimal_assignment(const Instance& inst,
                                  const RequestSequence& seq);

// Exhaustive-enumeration oracle with the same tie rule; refuses n > 10.
AssignmentPlan brute_force_assignment(const Instance& inst,
                                      const RequestSequence& seq);

// Recomputes the plan's cost from scratch, independently of
// plan.total_cost.  Throws InvalidPlanError on dangling indices.
double assignment_cost(const Instance& inst, const RequestSequence& seq,
                       const AssignmentPlan& plan);

}  // namespace omatch
