#pragma once

// Validity of a temporal plan: builds the happening timeline and the
// induced state sequence, then checks the six semantic conditions —
// (1) initial state and goal, (2) happening preconditions, (3) successor
// states by simultaneous happening application, (4) overall conditions
// over each action's open-at-start index window, (5) pairwise
// non-interference inside a happening, (6) non-self-overlap of ground
// durative actions.

#include "t2p/model.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace t2p {

enum class SnapKind { InstantK, StartK, EndK };

struct Happening {
  SnapKind kind;
  std::string display_name; // e.g. "a", "a-start", "a-end"
  std::size_t entry;        // index into the plan's entries
  const InstantAction *snap; // owned by the problem
};

struct HappeningTimeline {
  // times[0..m-1] carry happenings; times[m] is the appended final time.
  std::vector<Rational> times;
  std::vector<std::vector<Happening>> happenings;

  std::size_t step_count() const { return happenings.size(); }
  std::optional<std::size_t> index_of(const Rational &t) const;
};

struct TemporalViolation {
  // 0 marks an ill-formed plan (unknown action, duration out of bounds);
  // 1..6 are the semantic conditions.
  int condition = 0;
  std::size_t step = 0; // state index for 4, happening step for 2/3/5
  std::vector<std::string> actions;
  std::string detail;
};

struct TemporalValidationReport {
  bool valid = false;
  std::optional<TemporalViolation> violation;
  // States with their times, as far as construction got.
  std::vector<Rational> trace_times;
  std::vector<State> trace;
};

struct TemporalValidatorOptions {
  // Condition 3 allows any application order inside a happening; the
  // default is instantaneous actions, then start snaps, then end snaps,
  // each lexicographic. A seed shuffles the order instead, which is only
  // observable on plans violating condition 5.
  std::optional<std::uint64_t> shuffle_seed;
};

// Throws ModelError on unknown action names; duration-bound violations are
// reported through the returned report by validate_temporal instead.
HappeningTimeline build_timeline(const TemporalProblem &p,
                                 const TemporalPlan &plan);

TemporalValidationReport
validate_temporal(const TemporalProblem &p, const TemporalPlan &plan,
                  const TemporalValidatorOptions &options = {});

// Condition-4 check over a finished trace: one entry per violated window
// state, naming the durative action and the state index.
std::vector<TemporalViolation>
check_overall_windows(const TemporalProblem &p, const HappeningTimeline &tl,
                      const TemporalPlan &plan,
                      const std::vector<State> &trace);

// All condition-5 violations inside one happening set (pairs listed once).
std::vector<TemporalViolation>
check_interference(const std::vector<Happening> &happening, std::size_t step);

} // namespace t2p
