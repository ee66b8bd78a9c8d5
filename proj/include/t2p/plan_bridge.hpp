#pragma once

// Bidirectional plan translation across the compilation. Lifting maps a
// PDDL+ plan for the compiled problem back to a temporal plan (instant
// entries keep their time; a fixed-duration start becomes a triple with the
// declared duration; a variable-duration start pairs with the next matching
// end action). Lowering maps a temporal plan's happenings onto compiled
// actions and derives a discretization quantum that divides every timeline
// time.

#include "t2p/compiler.hpp"
#include "t2p/model.hpp"

#include <string>
#include <vector>

namespace t2p {

struct PlanBridgeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DeltaChoice {
  Rational delta;
  // Every input time with its exact quotient time / delta.
  std::vector<std::pair<Rational, BigInt>> justification;
};

// Largest usable quantum from the canonical rule: gcd of the (lowest-term)
// numerators of all nonzero times over the lcm of their denominators; an
// empty or all-zero set yields 1. Quotient integrality is verified for
// every time, zero included.
DeltaChoice select_delta(const std::vector<Rational> &times);

TemporalPlan lift_plan(const CompilationArtifacts &artifacts,
                       const PlusPlan &plus_plan);

struct LoweredPlan {
  PlusPlan plan;
  DeltaChoice delta;
  // Lowering an invalid temporal plan is permitted (useful for negative
  // tests) but flagged.
  bool source_plan_valid = true;
  std::string source_plan_diagnostic;
};

LoweredPlan lower_plan(const CompilationArtifacts &artifacts,
                       const TemporalPlan &temporal_plan);

} // namespace t2p
