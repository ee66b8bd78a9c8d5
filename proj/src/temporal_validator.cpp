#include "t2p/temporal_validator.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace t2p {

std::optional<std::size_t>
HappeningTimeline::index_of(const Rational &t) const {
  auto it = std::lower_bound(times.begin(), times.end(), t);
  if (it == times.end() || !(*it == t))
    return std::nullopt;
  return static_cast<std::size_t>(it - times.begin());
}

HappeningTimeline build_timeline(const TemporalProblem &p,
                                 const TemporalPlan &plan) {
  struct TimedSnap {
    Rational time;
    Happening happening;
  };
  std::vector<TimedSnap> snaps;
  for (std::size_t i = 0; i < plan.entries.size(); ++i) {
    const auto &entry = plan.entries[i];
    if (const InstantAction *a = p.find_instant(entry.action)) {
      snaps.push_back(
          {entry.time, Happening{SnapKind::InstantK, a->name, i, a}});
      continue;
    }
    if (const DurativeAction *a = p.find_durative(entry.action)) {
      snaps.push_back({entry.time, Happening{SnapKind::StartK,
                                             entry.action + "-start", i,
                                             &a->start}});
      snaps.push_back({entry.time + entry.duration,
                       Happening{SnapKind::EndK, entry.action + "-end", i,
                                 &a->end}});
      continue;
    }
    throw ModelError("plan references unknown action " + entry.action);
  }

  HappeningTimeline tl;
  if (snaps.empty()) {
    tl.times = {Rational(0), Rational(1)};
    tl.happenings.push_back({});
    return tl;
  }
  std::vector<Rational> times;
  for (const auto &s : snaps)
    times.push_back(s.time);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  tl.times = times;
  tl.times.push_back(times.back() + Rational(1));
  tl.happenings.resize(times.size());
  for (auto &s : snaps) {
    auto idx = std::lower_bound(times.begin(), times.end(), s.time) -
               times.begin();
    tl.happenings[static_cast<std::size_t>(idx)].push_back(
        std::move(s.happening));
  }
  // Deterministic in-step order: instantaneous, starts, ends, each
  // lexicographic by display name. Happenings are sets, so the same snap
  // action occurring through several plan entries counts once.
  for (auto &h : tl.happenings) {
    std::sort(h.begin(), h.end(), [](const Happening &a, const Happening &b) {
      if (a.kind != b.kind)
        return static_cast<int>(a.kind) < static_cast<int>(b.kind);
      if (a.display_name != b.display_name)
        return a.display_name < b.display_name;
      return a.entry < b.entry;
    });
    h.erase(std::unique(h.begin(), h.end(),
                        [](const Happening &a, const Happening &b) {
                          return a.kind == b.kind && a.snap == b.snap;
                        }),
            h.end());
  }
  return tl;
}

std::vector<TemporalViolation>
check_interference(const std::vector<Happening> &happening, std::size_t step) {
  std::vector<TemporalViolation> out;
  std::vector<InterferenceSets> sets;
  sets.reserve(happening.size());
  for (const auto &h : happening)
    sets.push_back(interference_sets(*h.snap));
  for (std::size_t i = 0; i < happening.size(); ++i) {
    for (std::size_t j = i + 1; j < happening.size(); ++j) {
      if (!non_interfering(sets[i], sets[j]))
        out.push_back(TemporalViolation{
            5, step,
            {happening[i].display_name, happening[j].display_name},
            "interfering happenings at the same time"});
    }
  }
  return out;
}

std::vector<TemporalViolation>
check_overall_windows(const TemporalProblem &p, const HappeningTimeline &tl,
                      const TemporalPlan &plan,
                      const std::vector<State> &trace) {
  std::vector<TemporalViolation> out;
  for (const auto &entry : plan.entries) {
    const DurativeAction *a = p.find_durative(entry.action);
    if (!a)
      continue;
    auto start = tl.index_of(entry.time);
    auto end = tl.index_of(entry.time + entry.duration);
    if (!start || !end)
      continue;
    // The invariant must hold strictly after the start state, up to and
    // including the state the end snap fires in (before its effects).
    for (std::size_t w = *start + 1; w <= *end && w < trace.size(); ++w) {
      bool holds;
      try {
        holds = evaluate(trace[w], a->overall);
      } catch (const EvalError &err) {
        out.push_back(TemporalViolation{4, w, {entry.action}, err.what()});
        continue;
      }
      if (!holds)
        out.push_back(TemporalViolation{
            4, w, {entry.action},
            "overall condition violated in state " + std::to_string(w)});
    }
  }
  return out;
}

namespace {

std::optional<TemporalViolation> check_self_overlap(const TemporalProblem &p,
                                                    const TemporalPlan &plan) {
  // Only instances of the same ground action are constrained; the bound is
  // strict, so back-to-back instances of one action also overlap.
  for (std::size_t i = 0; i < plan.entries.size(); ++i) {
    for (std::size_t j = i + 1; j < plan.entries.size(); ++j) {
      const auto &a = plan.entries[i];
      const auto &b = plan.entries[j];
      if (a.action != b.action)
        continue;
      if (!p.find_durative(a.action))
        continue;
      bool separated =
          a.time > b.time + b.duration || b.time > a.time + a.duration;
      if (!separated)
        return TemporalViolation{
            6, 0,
            {a.action},
            "instances at " + a.time.str() + " and " + b.time.str() +
                " of the same action overlap"};
    }
  }
  return std::nullopt;
}

} // namespace

TemporalValidationReport
validate_temporal(const TemporalProblem &p, const TemporalPlan &plan,
                  const TemporalValidatorOptions &options) {
  TemporalValidationReport report;
  auto fail = [&](TemporalViolation v) {
    report.valid = false;
    report.violation = std::move(v);
    return report;
  };

  // Plan well-formedness per the plan definition: zero durations for
  // instantaneous actions, durations within declared bounds for durative
  // ones, no negative times.
  for (const auto &entry : plan.entries) {
    if (entry.time < Rational(0))
      return fail({0, 0, {entry.action}, "negative start time"});
    if (const DurativeAction *a = p.find_durative(entry.action)) {
      if (entry.duration < a->lower || entry.duration > a->upper)
        return fail({0, 0, {entry.action},
                     "duration " + entry.duration.str() + " outside [" +
                         a->lower.str() + ", " + a->upper.str() + "]"});
    } else if (p.find_instant(entry.action)) {
      if (!entry.duration.is_zero())
        return fail({0, 0, {entry.action},
                     "instantaneous action with nonzero duration"});
    } else {
      return fail({0, 0, {entry.action}, "unknown action"});
    }
  }

  HappeningTimeline tl = build_timeline(p, plan);
  const std::size_t m = tl.step_count();

  report.trace_times = tl.times;
  report.trace.push_back(p.init);

  std::optional<std::mt19937_64> rng;
  if (options.shuffle_seed)
    rng.emplace(*options.shuffle_seed);

  for (std::size_t j = 0; j < m; ++j) {
    const auto &happening = tl.happenings[j];

    // Condition 5 first: it licenses the arbitrary application order below.
    auto clashes = check_interference(happening, j);
    if (!clashes.empty())
      return fail(std::move(clashes.front()));

    // Condition 2: all preconditions hold in the pre-state of step j.
    const State &s = report.trace.back();
    for (const auto &h : happening) {
      bool applicable;
      try {
        applicable = evaluate(s, h.snap->pre);
      } catch (const EvalError &err) {
        return fail({2, j, {h.display_name}, err.what()});
      }
      if (!applicable)
        return fail({2, j, {h.display_name},
                     "precondition not satisfied at time " +
                         tl.times[j].str()});
    }

    // Condition 3: apply every happening; order is immaterial here because
    // condition 5 already passed.
    std::vector<const Happening *> order;
    order.reserve(happening.size());
    for (const auto &h : happening)
      order.push_back(&h);
    if (rng)
      std::shuffle(order.begin(), order.end(), *rng);
    State next = s;
    for (const Happening *h : order) {
      try {
        next = apply(next, *h->snap);
      } catch (const EvalError &err) {
        return fail({3, j, {h->display_name}, err.what()});
      }
    }
    report.trace.push_back(std::move(next));

    // Condition 4 for the state just produced (index j + 1).
    for (const auto &entry : plan.entries) {
      const DurativeAction *a = p.find_durative(entry.action);
      if (!a)
        continue;
      auto start = tl.index_of(entry.time);
      auto end = tl.index_of(entry.time + entry.duration);
      std::size_t w = j + 1;
      if (!start || !end || w <= *start || w > *end)
        continue;
      bool holds;
      try {
        holds = evaluate(report.trace[w], a->overall);
      } catch (const EvalError &err) {
        return fail({4, w, {entry.action}, err.what()});
      }
      if (!holds)
        return fail({4, w, {entry.action},
                     "overall condition violated in state " +
                         std::to_string(w) + " (time " + tl.times[w].str() +
                         ")"});
    }
  }

  // Condition 6: non-self-overlap over the raw plan triples.
  if (auto v = check_self_overlap(p, plan))
    return fail(std::move(*v));

  // Condition 1: goal in the final state (the initial-state half holds by
  // construction).
  bool goal_ok;
  try {
    goal_ok = evaluate(report.trace.back(), p.goal);
  } catch (const EvalError &err) {
    return fail({1, m, {}, err.what()});
  }
  if (!goal_ok)
    return fail({1, m, {}, "goal not satisfied in the final state"});

  report.valid = true;
  return report;
}

} // namespace t2p
