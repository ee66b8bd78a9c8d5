#pragma once

// Discretized PDDL+ semantics with time quantum delta: states advance in
// steps of delta; at each step the validator runs an event completion
// (fixed point of firing applicable events), applies the plan's actions for
// that time in sequence with an event completion after each, and then
// integrates active process rates over one delta (an exact Euler step).

#include "t2p/model.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace t2p {

struct PlusValidatorOptions {
  Rational delta = Rational(1);
  // Event-completion firing budget is factor * |E|; exceeding it (or
  // revisiting a state, which under deterministic selection means a loop)
  // reports divergence.
  int firing_bound_factor = 4;
  // Re-runs every completion with the reverse event order and reports a
  // mismatch of fixed points instead of silently picking one.
  bool check_confluence = false;
  // Record intermediate states in the superdense log (memory-heavy).
  bool log_states = false;
  // Cap on makespan / delta; larger traces are refused as a resource error.
  long max_steps = 1000000;
};

// Events are tried in a fixed priority: the compiled lock-reset event
// first, then expirations, overall watchdogs and fixed-duration ends
// (recognized by their name prefixes), then everything else; ties break
// lexicographically by name.
int event_priority_class(const std::string &name);

struct FiredEvent {
  std::string name;
};

struct CompletionResult {
  State state;
  std::vector<FiredEvent> fired;
  bool diverged = false;
  bool order_sensitive = false;
  std::string detail;
};

CompletionResult event_completion(const State &s, std::span<const Event> events,
                                  const PlusValidatorOptions &options = {});

enum class PlusFailurePhase {
  IllFormed,
  EventCompletion,
  Action,
  Process,
  Goal,
  Divergence,
};

std::string phase_name(PlusFailurePhase phase);

struct PlusFailure {
  PlusFailurePhase phase;
  std::size_t step = 0;
  std::string action;
  std::string detail;
};

struct SuperdenseRecord {
  enum class Kind { EventK, ActionK };
  Kind kind;
  std::string name;
  std::optional<State> state_after; // only with log_states
};

struct StepLog {
  std::vector<SuperdenseRecord> entries;
};

struct DiscreteTrace {
  Rational delta;
  std::vector<State> states; // s_0 .. s_m
  std::vector<StepLog> logs; // one per step 0 .. m-1 (plus one for step m
                             // when actions sit at the makespan)

  bool event_fired(const std::string &name) const;
};

struct PlusValidationReport {
  bool valid = false;
  std::optional<PlusFailure> failure;
  DiscreteTrace trace;
};

struct SuperdenseResult {
  State state;
  StepLog log;
  std::optional<PlusFailure> failure;
};

// Runs one superdense sequence: completion, then each action (checked in
// the intermediate state right before it applies) followed by another
// completion.
SuperdenseResult superdense_step(const State &s,
                                 std::span<const InstantAction *const> actions,
                                 const PlusProblem &p, std::size_t step,
                                 const PlusValidatorOptions &options);

// Euler transition: booleans copy over, every numeric advances by the sum
// of active process rates (evaluated in `s`) times delta.
State integrate_processes(const State &s, std::span<const Process> processes,
                          const Rational &delta);

PlusValidationReport validate_plus(const PlusProblem &p, const PlusPlan &plan,
                                   const PlusValidatorOptions &options = {});

} // namespace t2p
