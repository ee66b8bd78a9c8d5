#include "t2p/plan_bridge.hpp"

#include "t2p/temporal_validator.hpp"

#include <algorithm>
#include <map>

namespace t2p {

DeltaChoice select_delta(const std::vector<Rational> &times) {
  // Zero times are skipped: they divide everything and their canonical 0/1
  // form would only feed a spurious 1 into the lcm.
  BigInt num_gcd = 0, den_lcm = 1;
  for (const auto &t : times) {
    if (t.is_zero())
      continue;
    if (t < Rational(0))
      throw PlanBridgeError("negative time " + t.str());
    num_gcd = big_gcd(num_gcd, t.numerator());
    den_lcm = big_lcm(den_lcm, t.denominator());
  }
  DeltaChoice choice;
  choice.delta = num_gcd == 0 ? Rational(1) : Rational(num_gcd, den_lcm);
  for (const auto &t : times) {
    auto q = t.exact_quotient(choice.delta);
    if (!q && !t.is_zero())
      throw PlanBridgeError("delta " + choice.delta.str() +
                            " does not divide " + t.str());
    choice.justification.emplace_back(t, t.is_zero() ? BigInt(0) : *q);
  }
  return choice;
}

TemporalPlan lift_plan(const CompilationArtifacts &artifacts,
                       const PlusPlan &plus_plan) {
  const TemporalProblem &src = artifacts.source;
  std::vector<TemporalPlanEntry> entries;

  struct TimedRef {
    Rational time;
    const ElementInfo *info;
  };
  std::vector<TimedRef> starts_of_var, ends_of_var;

  for (const auto &step : plus_plan.steps) {
    auto it = artifacts.elements.find(step.action);
    if (it == artifacts.elements.end())
      throw PlanBridgeError("plan references unknown compiled action " +
                            step.action);
    const ElementInfo &info = it->second;
    switch (info.role) {
    case ElementRole::Instant:
      entries.push_back({step.time, info.source, Rational(0)});
      break;
    case ElementRole::Start: {
      const DurativeAction *a = src.find_durative(info.source);
      if (!a)
        throw PlanBridgeError("compiled start " + step.action +
                              " has no source durative action");
      if (a->fixed_duration())
        entries.push_back({step.time, info.source, a->lower});
      else
        starts_of_var.push_back({step.time, &info});
      break;
    }
    case ElementRole::EndVar:
      ends_of_var.push_back({step.time, &info});
      break;
    default:
      throw PlanBridgeError("plan references " + step.action + " with role " +
                            role_name(info.role) +
                            ", which is not a compiled action");
    }
  }

  // Pair each variable-duration start with every later end of the same
  // action that has no other start of that action strictly in between.
  for (const auto &start : starts_of_var) {
    bool matched = false;
    for (const auto &end : ends_of_var) {
      if (end.info->source != start.info->source)
        continue;
      if (!(end.time > start.time))
        continue;
      bool intervening = false;
      for (const auto &other : starts_of_var) {
        if (other.info->source == start.info->source &&
            other.time > start.time && other.time < end.time) {
          intervening = true;
          break;
        }
      }
      if (intervening)
        continue;
      entries.push_back(
          {start.time, start.info->source, end.time - start.time});
      matched = true;
    }
    if (!matched)
      throw PlanBridgeError("start of variable-duration action " +
                            start.info->source + " at " + start.time.str() +
                            " has no pairing end");
  }

  return TemporalPlan::of(std::move(entries));
}

LoweredPlan lower_plan(const CompilationArtifacts &artifacts,
                       const TemporalPlan &temporal_plan) {
  const TemporalProblem &src = artifacts.source;
  LoweredPlan out;

  TemporalValidationReport check = validate_temporal(src, temporal_plan);
  out.source_plan_valid = check.valid;
  if (!check.valid && check.violation) {
    out.source_plan_diagnostic =
        "condition " + std::to_string(check.violation->condition) + ": " +
        check.violation->detail;
  }

  HappeningTimeline tl = build_timeline(src, temporal_plan);
  std::vector<PlusPlanStep> steps;
  for (std::size_t j = 0; j < tl.step_count(); ++j) {
    // build_timeline already orders each happening set: instantaneous
    // actions, then starts, then ends, each lexicographic — fixed ends map
    // to events and are skipped.
    for (const auto &h : tl.happenings[j]) {
      const Rational &t = tl.times[j];
      switch (h.kind) {
      case SnapKind::InstantK:
        steps.push_back(
            {t, artifacts.element_name(ElementRole::Instant, h.display_name)});
        break;
      case SnapKind::StartK: {
        const std::string &action =
            temporal_plan.entries[h.entry].action;
        steps.push_back(
            {t, artifacts.element_name(ElementRole::Start, action)});
        break;
      }
      case SnapKind::EndK: {
        const std::string &action = temporal_plan.entries[h.entry].action;
        const DurativeAction *a = src.find_durative(action);
        if (a && !a->fixed_duration())
          steps.push_back(
              {t, artifacts.element_name(ElementRole::EndVar, action)});
        break;
      }
      }
    }
  }

  // The makespan is the appended final timeline time; the quantum is
  // selected over the full timeline, so it divides the makespan too.
  out.delta = select_delta(tl.times);
  Rational makespan = tl.times.back();
  if (!makespan.exact_quotient(out.delta.delta))
    throw PlanBridgeError("internal: delta " + out.delta.delta.str() +
                          " does not divide the makespan " + makespan.str());
  out.plan = PlusPlan::of(std::move(steps), makespan);
  return out;
}

} // namespace t2p
