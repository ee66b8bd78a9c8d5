#include "t2p/plus_validator.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

namespace t2p {

std::string phase_name(PlusFailurePhase phase) {
  switch (phase) {
  case PlusFailurePhase::IllFormed:
    return "ill-formed";
  case PlusFailurePhase::EventCompletion:
    return "event-completion";
  case PlusFailurePhase::Action:
    return "action";
  case PlusFailurePhase::Process:
    return "process";
  case PlusFailurePhase::Goal:
    return "goal";
  case PlusFailurePhase::Divergence:
    return "divergence";
  }
  return "?";
}

int event_priority_class(const std::string &name) {
  auto has_prefix = [&](std::string_view prefix) {
    return name.rfind(prefix, 0) == 0;
  };
  if (has_prefix("e-lightning"))
    return 0;
  if (has_prefix("expire-"))
    return 1;
  if (has_prefix("inv-"))
    return 2;
  if (has_prefix("end-"))
    return 3;
  return 4;
}

namespace {

std::vector<const Event *> priority_order(std::span<const Event> events) {
  std::vector<const Event *> order;
  order.reserve(events.size());
  for (const auto &e : events)
    order.push_back(&e);
  std::stable_sort(order.begin(), order.end(),
                   [](const Event *a, const Event *b) {
                     int ca = event_priority_class(a->name);
                     int cb = event_priority_class(b->name);
                     if (ca != cb)
                       return ca < cb;
                     return a->name < b->name;
                   });
  return order;
}

CompletionResult run_completion(const State &start,
                                const std::vector<const Event *> &order,
                                long max_firings) {
  CompletionResult result;
  result.state = start;
  std::unordered_set<std::size_t> seen_hashes;
  std::vector<State> seen_states;
  seen_hashes.insert(result.state.hash());
  seen_states.push_back(result.state);
  long firings = 0;
  for (;;) {
    const Event *applicable = nullptr;
    for (const Event *e : order) {
      bool fire;
      try {
        fire = evaluate(result.state, e->pre);
      } catch (const EvalError &err) {
        throw EvalError(std::string("event ") + e->name + ": " + err.what());
      }
      if (fire) {
        applicable = e;
        break;
      }
    }
    if (!applicable)
      return result;
    if (++firings > max_firings) {
      result.diverged = true;
      result.detail = "event completion exceeded " +
                      std::to_string(max_firings) + " firings";
      return result;
    }
    result.state = apply(result.state, *applicable);
    result.fired.push_back(FiredEvent{applicable->name});
    // Deterministic selection means a revisited state is a guaranteed loop.
    std::size_t h = result.state.hash();
    if (seen_hashes.count(h)) {
      for (const auto &old : seen_states) {
        if (old == result.state) {
          result.diverged = true;
          result.detail = "event completion revisited a state after firing " +
                          applicable->name;
          return result;
        }
      }
    }
    seen_hashes.insert(h);
    seen_states.push_back(result.state);
  }
}

} // namespace

CompletionResult event_completion(const State &s, std::span<const Event> events,
                                  const PlusValidatorOptions &options) {
  auto order = priority_order(events);
  long max_firings =
      std::max<long>(1, options.firing_bound_factor *
                            static_cast<long>(events.size()));
  CompletionResult result = run_completion(s, order, max_firings);
  if (options.check_confluence && !result.diverged) {
    std::vector<const Event *> reversed(order.rbegin(), order.rend());
    CompletionResult alt = run_completion(s, reversed, max_firings);
    if (!alt.diverged && !(alt.state == result.state)) {
      result.order_sensitive = true;
      result.detail = "event completion is order-sensitive: fixed point "
                      "differs under reversed event order";
    }
  }
  return result;
}

State integrate_processes(const State &s, std::span<const Process> processes,
                          const Rational &delta) {
  // All rates are evaluated against the step's end state, then summed per
  // target fluent.
  std::map<std::uint32_t, Rational> deltas;
  for (const auto &p : processes) {
    bool active;
    try {
      active = evaluate(s, p.pre);
    } catch (const EvalError &err) {
      throw EvalError(std::string("process ") + p.name + ": " + err.what());
    }
    if (!active)
      continue;
    for (const auto &eff : p.effects) {
      Rational contribution;
      try {
        contribution = evaluate(s, eff.rate) * delta;
      } catch (const EvalError &err) {
        throw EvalError(std::string("process ") + p.name + ": " + err.what());
      }
      auto [it, fresh] = deltas.emplace(eff.target.index, contribution);
      if (!fresh)
        it->second += contribution;
    }
  }
  State out = s;
  for (const auto &[index, d] : deltas) {
    FluentId id{index};
    out.set(id, s.numeric(id) + d);
  }
  return out;
}

namespace {

// First conjunct of `pre` that is false in `s`, rendered for diagnostics.
std::string first_false_conjunct(const State &s, const Formula &pre,
                                 const std::vector<Fluent> &fluents) {
  if (pre.kind == Formula::Kind::And) {
    for (const auto &c : pre.children) {
      bool holds;
      try {
        holds = evaluate(s, c);
      } catch (const EvalError &err) {
        return std::string(err.what());
      }
      if (!holds)
        return to_string(c, fluents);
    }
  }
  return to_string(pre, fluents);
}

std::optional<PlusFailure> record_completion(const CompletionResult &done,
                                             std::size_t step, StepLog &log) {
  for (const auto &f : done.fired)
    log.entries.push_back(SuperdenseRecord{SuperdenseRecord::Kind::EventK,
                                           f.name, std::nullopt});
  if (done.diverged)
    return PlusFailure{PlusFailurePhase::Divergence, step, "", done.detail};
  if (done.order_sensitive)
    return PlusFailure{PlusFailurePhase::EventCompletion, step, "",
                       done.detail};
  return std::nullopt;
}

} // namespace

SuperdenseResult superdense_step(const State &s,
                                 std::span<const InstantAction *const> actions,
                                 const PlusProblem &p, std::size_t step,
                                 const PlusValidatorOptions &options) {
  SuperdenseResult result;
  CompletionResult completed;
  try {
    completed = event_completion(s, p.events, options);
  } catch (const EvalError &err) {
    result.state = s;
    result.failure = PlusFailure{PlusFailurePhase::EventCompletion, step, "",
                                 err.what()};
    return result;
  }
  result.state = std::move(completed.state);
  if (auto failure = record_completion(completed, step, result.log)) {
    result.failure = std::move(failure);
    return result;
  }
  for (const InstantAction *a : actions) {
    // Applicability is checked in the intermediate state the action
    // actually fires in, not once at the head of the step; the lock
    // machinery depends on sequential consumption.
    bool applicable;
    try {
      applicable = evaluate(result.state, a->pre);
    } catch (const EvalError &err) {
      result.failure = PlusFailure{PlusFailurePhase::Action, step, a->name,
                                   err.what()};
      return result;
    }
    if (!applicable) {
      result.failure =
          PlusFailure{PlusFailurePhase::Action, step, a->name,
                      "precondition not satisfied; first false conjunct: " +
                          first_false_conjunct(result.state, a->pre,
                                               p.fluents)};
      return result;
    }
    try {
      result.state = apply(result.state, *a);
    } catch (const EvalError &err) {
      result.failure = PlusFailure{PlusFailurePhase::Action, step, a->name,
                                   err.what()};
      return result;
    }
    result.log.entries.push_back(SuperdenseRecord{
        SuperdenseRecord::Kind::ActionK, a->name,
        options.log_states ? std::optional<State>(result.state)
                           : std::nullopt});
    try {
      completed = event_completion(result.state, p.events, options);
    } catch (const EvalError &err) {
      result.failure = PlusFailure{PlusFailurePhase::EventCompletion, step,
                                   a->name, err.what()};
      return result;
    }
    result.state = std::move(completed.state);
    if (auto failure = record_completion(completed, step, result.log)) {
      result.failure = std::move(failure);
      return result;
    }
  }
  return result;
}

bool DiscreteTrace::event_fired(const std::string &name) const {
  for (const auto &log : logs)
    for (const auto &rec : log.entries)
      if (rec.kind == SuperdenseRecord::Kind::EventK && rec.name == name)
        return true;
  return false;
}

PlusValidationReport validate_plus(const PlusProblem &p, const PlusPlan &plan,
                                   const PlusValidatorOptions &options) {
  PlusValidationReport report;
  report.trace.delta = options.delta;
  auto fail = [&](PlusFailure f) {
    report.valid = false;
    report.failure = std::move(f);
    return report;
  };

  if (!(options.delta > Rational(0)))
    return fail({PlusFailurePhase::IllFormed, 0, "", "delta must be positive"});

  // Well-formedness: the makespan and every step time must be a
  // non-negative multiple of delta, no later than the makespan.
  auto makespan_steps = plan.makespan.exact_quotient(options.delta);
  if (!makespan_steps || plan.makespan < Rational(0))
    return fail({PlusFailurePhase::IllFormed, 0, "",
                 "makespan " + plan.makespan.str() +
                     " is not a non-negative multiple of delta = " +
                     options.delta.str()});
  // Bucket plan actions per step, keeping the plan's sequence order.
  std::map<BigInt, std::vector<const InstantAction *>> buckets;
  for (const auto &s : plan.steps) {
    auto q = s.time.exact_quotient(options.delta);
    if (!q || s.time < Rational(0))
      return fail({PlusFailurePhase::IllFormed, 0, s.action,
                   "time " + s.time.str() + " is not a non-negative multiple "
                                            "of delta = " +
                       options.delta.str()});
    if (s.time > plan.makespan)
      return fail({PlusFailurePhase::IllFormed, 0, s.action,
                   "time " + s.time.str() + " is after the makespan " +
                       plan.makespan.str()});
    const InstantAction *a = p.find_action(s.action);
    if (!a)
      return fail({PlusFailurePhase::IllFormed, 0, s.action,
                   "unknown action"});
    buckets[*q].push_back(a);
  }

  const BigInt total_steps = *makespan_steps;
  if (total_steps > options.max_steps)
    return fail({PlusFailurePhase::Divergence, 0, "",
                 "trace needs " + total_steps.str() + " steps, above the " +
                     std::to_string(options.max_steps) + " step cap"});
  report.trace.states.push_back(p.init);

  for (BigInt j = 0; j <= total_steps; ++j) {
    std::size_t step = static_cast<std::size_t>(j);
    auto it = buckets.find(j);
    static const std::vector<const InstantAction *> kNoActions;
    const auto &actions = it == buckets.end() ? kNoActions : it->second;

    if (j == total_steps) {
      // The goal is evaluated on the raw final state. Actions placed
      // exactly at the makespan must still be applicable, but their
      // effects fall outside the trace.
      if (!actions.empty()) {
        SuperdenseResult end = superdense_step(report.trace.states.back(),
                                               actions, p, step, options);
        report.trace.logs.push_back(std::move(end.log));
        if (end.failure)
          return fail(std::move(*end.failure));
      }
      break;
    }

    SuperdenseResult sd = superdense_step(report.trace.states.back(), actions,
                                          p, step, options);
    report.trace.logs.push_back(std::move(sd.log));
    if (sd.failure)
      return fail(std::move(*sd.failure));

    State next;
    try {
      next = integrate_processes(sd.state, p.processes, options.delta);
    } catch (const EvalError &err) {
      return fail({PlusFailurePhase::Process, step, "", err.what()});
    }
    report.trace.states.push_back(std::move(next));
  }

  bool goal_ok;
  try {
    goal_ok = evaluate(report.trace.states.back(), p.goal);
  } catch (const EvalError &err) {
    return fail({PlusFailurePhase::Goal,
                 static_cast<std::size_t>(total_steps), "", err.what()});
  }
  if (!goal_ok)
    return fail({PlusFailurePhase::Goal, static_cast<std::size_t>(total_steps),
                 "",
                 "goal not satisfied in the final state"});
  report.valid = true;
  return report;
}

} // namespace t2p
