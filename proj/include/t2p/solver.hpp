#pragma once

// Bounded breadth-first search over the discretized PDDL+ semantics, used
// as an in-repo oracle on tiny instances. Nodes are explored in
// (steps, total actions) lexicographic order, so the first plan found has
// the shortest makespan and, within it, the fewest actions. Within one
// step an action may be used at most once; "exhausted" is therefore a
// completeness guarantee up to the horizon and the per-step action bound.

#include "t2p/model.hpp"
#include "t2p/plus_validator.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace t2p {

struct SolverOptions {
  Rational delta = Rational(1);
  int horizon = 20; // max number of delta steps
  // <= 0 means |A| (every action at most once per step).
  int max_actions_per_step = 0;
  // 0 means: use the TEMPO2PLUS_NODE_BUDGET environment variable if set,
  // otherwise 200000.
  std::uint64_t node_budget = 0;
  PlusValidatorOptions validator;
};

enum class SolveStatus { Found, Exhausted, BudgetExceeded };

struct SolverStats {
  std::uint64_t expanded = 0;
  std::uint64_t generated = 0;
  std::uint64_t duplicates = 0;
  double wall_seconds = 0.0;
};

struct SolveResult {
  SolveStatus status = SolveStatus::Exhausted;
  std::optional<PlusPlan> plan;
  SolverStats stats;
};

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Every returned plan has been re-checked with validate_plus; a plan the
// validator rejects raises SolverError (it would be a search bug).
SolveResult solve(const PlusProblem &p, const SolverOptions &options = {});

} // namespace t2p
