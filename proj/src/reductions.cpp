#include "omatch/reductions.hpp"

#include <cmath>
#include <limits>

#include "omatch/config.hpp"
#include "omatch/offline_solver.hpp"

namespace omatch {

namespace {

GameTrace greedy_trace(const Instance& inst, const RequestSequence& seq) {
  return run_game(inst, GreedyAlgorithm{}, seq);
}

void require_omm2(const Instance& inst) {
  if (inst.variant != Variant::Omm2 || inst.servers.size() != 2) {
    throw PreconditionError("reduction requires an OMM(2) instance");
  }
}

}  // namespace

double rate(const Instance& inst, const RequestSequence& seq) {
  const double tol = tolerance();
  const double greedy_cost = greedy_trace(inst, seq).total_cost;
  const double opt_cost = optimal_assignment(inst, seq).total_cost;
  if (opt_cost <= tol) {
    return greedy_cost <= tol ? 1.0
                              : std::numeric_limits<double>::infinity();
  }
  return greedy_cost / opt_cost;
}

bool is_anti_opt(const Instance& inst, const RequestSequence& seq) {
  const auto types =
      classify_types(greedy_trace(inst, seq), optimal_assignment(inst, seq));
  for (const auto& t : types) {
    if (t.greedy_server == t.opt_server) return false;
  }
  return true;
}

bool is_one_sided_priority(const Instance& inst, const RequestSequence& seq) {
  require_omm2(inst);
  const GameTrace trace = greedy_trace(inst, seq);
  const int n = static_cast<int>(trace.steps.size());
  if (n == 0) return true;
  const int sx = trace.steps[0].server;
  const int front = std::min(inst.servers[sx].capacity, n);
  for (int i = 0; i < front; ++i) {
    if (trace.steps[i].server != sx) return false;
  }
  for (int i = front; i < n; ++i) {
    if (trace.steps[i].server == sx) return false;
  }
  return true;
}

ReducedInput make_anti_opt(const Instance& inst, const RequestSequence& seq) {
  require_omm2(inst);
  ReducedInput out{inst, seq, {}};
  for (;;) {
    const auto types = classify_types(greedy_trace(out.instance, out.sequence),
                                      optimal_assignment(out.instance, out.sequence));
    int victim = -1;
    for (int i = 0; i < static_cast<int>(types.size()); ++i) {
      if (types[i].greedy_server == types[i].opt_server) {
        victim = i;
        break;
      }
    }
    if (victim < 0) break;
    Edit edit;
    edit.op = Edit::Op::Remove;
    edit.request = victim;
    edit.server = types[victim].greedy_server;
    apply_edit(out.instance, out.sequence, edit);
    out.provenance.push_back(edit);
  }
  return out;
}

ReducedInput make_one_sided_priority(const Instance& inst,
                                     const RequestSequence& seq) {
  require_omm2(inst);
  if (!is_anti_opt(inst, seq)) {
    throw PreconditionError("input is not anti-opt");
  }
  if (static_cast<int>(seq.size()) != inst.total_capacity()) {
    throw PreconditionError(
        "one-sided reduction needs request count equal to total capacity");
  }
  ReducedInput out{inst, seq, {}};
  while (!is_one_sided_priority(out.instance, out.sequence)) {
    const GameTrace trace = greedy_trace(out.instance, out.sequence);
    // First step at which a server becomes full; that server is s_x and
    // the step is r_t.
    ServerState state = ServerState::initial(out.instance);
    int t = -1, sx = -1;
    for (int i = 0; i < static_cast<int>(trace.steps.size()); ++i) {
      const int s = trace.steps[i].server;
      state.remaining[s] -= 1;
      if (state.remaining[s] == 0) {
        t = i;
        sx = s;
        break;
      }
    }
    if (t < 0) {
      throw PreconditionError("greedy never fills a server; not reducible");
    }
    int mover = -1;
    for (int i = 0; i < t; ++i) {
      if (trace.steps[i].server != sx) {
        mover = i;
        break;
      }
    }
    if (mover < 0) {
      throw PreconditionError("no relocatable request found");
    }
    Edit edit;
    edit.op = Edit::Op::Move;
    edit.request = mover;
    edit.after = t;
    apply_edit(out.instance, out.sequence, edit);
    out.provenance.push_back(edit);
  }
  return out;
}

void apply_edit(Instance& inst, RequestSequence& seq, const Edit& edit) {
  auto& reqs = seq.requests;
  if (edit.request < 0 || edit.request >= static_cast<int>(reqs.size())) {
    throw InvalidPlanError("edit references an out-of-range request");
  }
  if (edit.op == Edit::Op::Remove) {
    if (edit.server < 0 ||
        edit.server >= static_cast<int>(inst.servers.size()) ||
        inst.servers[edit.server].capacity <= 0) {
      throw InvalidPlanError("edit references an invalid server");
    }
    reqs.erase(reqs.begin() + edit.request);
    inst.servers[edit.server].capacity -= 1;
  } else {
    const Point moved = reqs[edit.request];
    reqs.erase(reqs.begin() + edit.request);
    if (edit.after < 0 || edit.after > static_cast<int>(reqs.size())) {
      throw InvalidPlanError("edit insertion index out of range");
    }
    reqs.insert(reqs.begin() + edit.after, moved);
  }
}

}  // namespace omatch
