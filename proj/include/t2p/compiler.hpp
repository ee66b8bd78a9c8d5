#pragma once

// Translation from a ground temporal planning problem to a PDDL+ problem.
// Each durative action becomes a start action plus a clock process plus
// either a termination event (fixed duration) or a termination action
// (variable duration); an overall-condition watchdog event guards its
// invariant. Per-fluent read/assign/increase locks, reset by a dedicated
// event at the head of every time step, forbid interfering happenings at
// the same time point.

#include "t2p/model.hpp"

#include <map>
#include <string>

namespace t2p {

enum class ElementRole {
  Instant,
  Start,
  EndVar,
  EndFixEvent,
  OverallEvent,
  ExpireEvent,
  LockResetEvent,
  ClockProcess,
  GcProcess,
};

enum class FluentRole {
  Ok,
  Oc,
  Gc,
  Running,
  Clock,
  RLock,
  ALock,
  ILock,
};

std::string role_name(ElementRole role);
std::string role_name(FluentRole role);

struct ElementInfo {
  ElementRole role;
  std::string source; // source action name; empty for the lock-reset event
};

struct FluentInfo {
  FluentRole role;
  std::string source; // source fluent or action name; empty for ok/oc/gc
};

struct CompilerOptions {
  // Expire events cut off variable-duration actions that outlive their
  // upper bound. They are redundant for correctness (the open-action
  // counter already blocks the goal) but prune dead prefixes early.
  bool emit_expire_events = true;
};

// Per-source-fluent lock fluent ids, keyed by the source fluent index
// (which the compiled problem preserves).
struct LockTable {
  std::map<std::uint32_t, FluentId> rlock;
  std::map<std::uint32_t, FluentId> alock;
  std::map<std::uint32_t, FluentId> ilock;
};

struct CompilationArtifacts {
  PlusProblem result;
  TemporalProblem source;
  // Compiled action/event/process name -> provenance. Keys are unique
  // across the three element kinds.
  std::map<std::string, ElementInfo> elements;
  // Introduced fluent name -> provenance (source fluents are carried over
  // unchanged and not listed here).
  std::map<std::string, FluentInfo> fluent_roles;
  LockTable locks;
  CompilerOptions options;

  // Looks up the compiled name of (role, source action); throws if absent.
  const std::string &element_name(ElementRole role,
                                  const std::string &source) const;
};

// Lock precondition for an instantaneous action: reading demands the
// assign and increase locks of every fluent it reads, assigning demands
// all three locks, increasing demands the read and assign locks.
// Duplicate conjuncts (a fluent in several interference sets) are merged,
// keeping first occurrence order.
Formula lock_precondition(const InstantAction &a, const LockTable &locks);

// Lock effects: falsify the assign lock of assigned fluents, the increase
// lock of increased fluents and the read lock of read fluents.
std::vector<Effect> lock_effects(const InstantAction &a,
                                 const LockTable &locks);

CompilationArtifacts compile(const TemporalProblem &p,
                             const CompilerOptions &options = {});

struct CompileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

} // namespace t2p
