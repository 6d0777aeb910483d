#pragma once

#include <vector>

#include "omatch/metric_core.hpp"
#include "omatch/online.hpp"

namespace omatch {

// One edit applied during a reduction.  Indices refer to the sequence as
// it stood when the edit was applied, so replaying the provenance against
// the original input reproduces the reduced input exactly.
struct Edit {
  enum class Op { Remove, Move };
  Op op = Op::Remove;
  int request = -1;
  int server = -1;  // Remove: server whose capacity was decremented
  int after = -1;   // Move: insertion index after the removal
};

struct ReducedInput {
  Instance instance;
  RequestSequence sequence;
  std::vector<Edit> provenance;
};

// GREEDY(sigma) / OPT(sigma).  Both zero -> 1; zero OPT with positive
// GREEDY -> +infinity.
double rate(const Instance& inst, const RequestSequence& seq);

// True iff GREEDY and the canonical optimum disagree on every request.
bool is_anti_opt(const Instance& inst, const RequestSequence& seq);

// True iff GREEDY fills the server of the first request completely before
// touching the other one (two-server instances).
bool is_one_sided_priority(const Instance& inst, const RequestSequence& seq);

// Repeatedly removes a request matched to the same server by GREEDY and
// the canonical optimum, decrementing that server's capacity, until no
// such request remains.  OMM(2) instances only.
ReducedInput make_anti_opt(const Instance& inst, const RequestSequence& seq);

// Relocates premature other-side requests behind the request that fills
// the first-exhausted server, until the input is one-sided-priority.
// Requires an anti-opt input whose length equals the total capacity.
ReducedInput make_one_sided_priority(const Instance& inst,
                                     const RequestSequence& seq);

// Applies one recorded edit to (instance, sequence) in place.
void apply_edit(Instance& inst, RequestSequence& seq, const Edit& edit);

}  // namespace omatch
