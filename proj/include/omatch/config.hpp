#pragma once

namespace omatch {

// Default comparison tolerance for gap/tie/cost checks.  The environment
// variable OMATCH_TOLERANCE overrides it (read once per process).
inline constexpr double kDefaultTolerance = 1e-9;

// Tolerance used inside the min-cost flow solver (reduced-cost comparisons).
inline constexpr double kSolverTolerance = 1e-12;

double tolerance();

}  // namespace omatch
