#include "support/builders.hpp"
#include "support/generators.hpp"

#include "t2p/compiler.hpp"
#include "t2p/plan_bridge.hpp"
#include "t2p/plus_validator.hpp"
#include "t2p/solver.hpp"
#include "t2p/temporal_validator.hpp"

#include <doctest.h>

#include <random>

using namespace t2p;
using namespace t2p::testing;

namespace {

// Independent check for select_delta: the largest rational dividing every
// time, found by brute force as (smallest nonzero time) / k for growing k.
Rational brute_force_delta(const std::vector<Rational> &times) {
  Rational smallest(0);
  for (const auto &t : times)
    if (!t.is_zero() && (smallest.is_zero() || t < smallest))
      smallest = t;
  if (smallest.is_zero())
    return Rational(1);
  for (long long k = 1;; ++k) {
    Rational candidate = smallest / Rational(k);
    bool divides_all = true;
    for (const auto &t : times)
      if (!t.exact_quotient(candidate)) {
        divides_all = false;
        break;
      }
    if (divides_all)
      return candidate;
  }
}

} // namespace

TEST_CASE("select_delta matches the gcd/lcm rule and the brute force") {
  SUBCASE("halves") {
    std::vector<Rational> times{rat(3, 2), rat(5, 2)};
    DeltaChoice c = select_delta(times);
    CHECK(c.delta == rat(1, 2));
    CHECK(c.delta == brute_force_delta(times));
    REQUIRE(c.justification.size() == 2);
    CHECK(c.justification[0].second == 3);
    CHECK(c.justification[1].second == 5);
  }
  SUBCASE("integers with a zero") {
    std::vector<Rational> times{rat(0), rat(4), rat(6)};
    DeltaChoice c = select_delta(times);
    CHECK(c.delta == rat(2));
    CHECK(c.delta == brute_force_delta(times));
    CHECK(c.justification[0].second == 0);
  }
  SUBCASE("thirds and halves") {
    std::vector<Rational> times{rat(1, 3), rat(1, 2)};
    DeltaChoice c = select_delta(times);
    CHECK(c.delta == rat(1, 6));
    CHECK(c.justification[0].second == 2);
    CHECK(c.justification[1].second == 3);
  }
  SUBCASE("all zero or empty defaults to one") {
    CHECK(select_delta({}).delta == Rational(1));
    CHECK(select_delta({rat(0)}).delta == Rational(1));
  }
  SUBCASE("quotients are integral on random rational sets") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 50; ++i) {
      std::vector<Rational> times;
      int n = 1 + static_cast<int>(rng() % 5);
      for (int k = 0; k < n; ++k)
        times.push_back(rat(static_cast<long long>(rng() % 30),
                            1 + static_cast<long long>(rng() % 6)));
      DeltaChoice c = select_delta(times);
      for (const auto &[t, q] : c.justification)
        CHECK(t == c.delta * Rational::from_raw(
                                 boost::multiprecision::cpp_rational(q)));
      CHECK(c.delta == brute_force_delta(times));
    }
  }
}

TEST_CASE("lift_plan maps compiled roles back to temporal triples") {
  TinyMatch fx = tiny_match();
  CompilationArtifacts art = compile(fx.problem);

  SUBCASE("fixed-duration start becomes a full triple") {
    PlusPlan pp = PlusPlan::of({{rat(0), "start-match"}}, rat(3));
    TemporalPlan lifted = lift_plan(art, pp);
    CHECK(lifted == plan({{rat(0), "match", rat(2)}}));
  }
  SUBCASE("empty plan lifts to an empty plan") {
    CHECK(lift_plan(art, PlusPlan::of({}, rat(1))).entries.empty());
  }
  SUBCASE("events in a plan are rejected") {
    PlusPlan pp = PlusPlan::of({{rat(0), "end-match"}}, rat(1));
    CHECK_THROWS_AS(lift_plan(art, pp), PlanBridgeError);
    PlusPlan pp2 = PlusPlan::of({{rat(0), "zzz"}}, rat(1));
    CHECK_THROWS_AS(lift_plan(art, pp2), PlanBridgeError);
  }
}

TEST_CASE("lift_plan pairs variable-duration starts with the next end") {
  TemporalProblem src;
  src.add_fluent("f", FluentKind::Boolean, false);
  src.durative_actions.push_back(durative("a", rat(1), rat(4),
                                          instant("", Formula::truth(), {}),
                                          instant("", Formula::truth(), {})));
  CompilationArtifacts art = compile(src);

  SUBCASE("two instances pair in order") {
    PlusPlan pp = PlusPlan::of({{rat(0), "start-a"},
                                {rat(3), "end-a"},
                                {rat(5), "start-a"},
                                {rat(7), "end-a"}},
                               rat(8));
    TemporalPlan lifted = lift_plan(art, pp);
    CHECK(lifted ==
          plan({{rat(0), "a", rat(3)}, {rat(5), "a", rat(2)}}));
  }
  SUBCASE("unmatched start is a structural error") {
    PlusPlan pp = PlusPlan::of({{rat(0), "start-a"}}, rat(2));
    CHECK_THROWS_WITH_AS(lift_plan(art, pp),
                         doctest::Contains("no pairing end"),
                         PlanBridgeError);
  }
}

TEST_CASE("lower_plan: fixed match example") {
  TinyMatch fx = tiny_match();
  CompilationArtifacts art = compile(fx.problem);
  LoweredPlan lowered = lower_plan(art, fx.good_plan);
  CHECK(lowered.source_plan_valid);
  CHECK(lowered.delta.delta == Rational(1));
  CHECK(lowered.plan.makespan == Rational(3));
  REQUIRE(lowered.plan.steps.size() == 1);
  CHECK(lowered.plan.steps[0].action == "start-match");
  CHECK(lowered.plan.steps[0].time == Rational(0));
}

TEST_CASE("lower_plan: variable duration with rational times") {
  TemporalProblem src;
  auto f = src.add_fluent("f", FluentKind::Boolean, false);
  src.durative_actions.push_back(durative(
      "a", rat(1), rat(2), instant("", Formula::truth(), {}),
      instant("", Formula::truth(), {Effect::assign_bool(f, true)})));
  src.goal = fref(f);
  CompilationArtifacts art = compile(src);
  LoweredPlan lowered = lower_plan(art, plan({{rat(0), "a", rat(3, 2)}}));
  CHECK(lowered.source_plan_valid);
  // Timeline times are 0, 3/2 and the final 5/2; the quantum must divide
  // them all.
  CHECK(lowered.delta.delta == rat(1, 2));
  CHECK(lowered.plan.makespan == rat(5, 2));
  REQUIRE(lowered.plan.steps.size() == 2);
  CHECK(lowered.plan.steps[0].action == "start-a");
  CHECK(lowered.plan.steps[1].action == "end-a");
  CHECK(lowered.plan.steps[1].time == rat(3, 2));
}

TEST_CASE("lower_plan: empty plan") {
  TinyMatch fx = tiny_match();
  fx.problem.goal = Formula::truth();
  CompilationArtifacts art = compile(fx.problem);
  LoweredPlan lowered = lower_plan(art, plan({}));
  CHECK(lowered.plan.steps.empty());
  CHECK(lowered.plan.makespan == Rational(1));
  CHECK(lowered.delta.delta == Rational(1));
}

TEST_CASE("lower_plan flags invalid source plans but still lowers") {
  TinyMatch fx = tiny_match();
  CompilationArtifacts art = compile(fx.problem);
  // Two overlapping instances of match: condition 6.
  LoweredPlan lowered = lower_plan(
      art, plan({{rat(0), "match", rat(2)}, {rat(1), "match", rat(2)}}));
  CHECK(!lowered.source_plan_valid);
  CHECK(lowered.source_plan_diagnostic.find("condition 6") !=
        std::string::npos);
  CHECK(lowered.plan.steps.size() == 2);
}

TEST_CASE("round trip B: hand-written valid plans survive lowering") {
  for (const auto &fx : hand_fixtures()) {
    CAPTURE(fx.name);
    CompilationArtifacts art = compile(fx.problem);
    for (const auto &tp : fx.valid_plans) {
      REQUIRE(validate_temporal(fx.problem, tp).valid);
      LoweredPlan lowered = lower_plan(art, tp);
      CHECK(lowered.source_plan_valid);
      PlusValidatorOptions options;
      options.delta = lowered.delta.delta;
      options.check_confluence = true;
      PlusValidationReport r =
          validate_plus(art.result, lowered.plan, options);
      CHECK(r.valid);
      if (!r.valid && r.failure)
        MESSAGE(fx.name, ": ", phase_name(r.failure->phase), " ",
                r.failure->action, " ", r.failure->detail);
    }
  }
}

TEST_CASE("round trip A: solved plus plans lift to valid temporal plans") {
  for (const auto &fx : hand_fixtures()) {
    CAPTURE(fx.name);
    CompilationArtifacts art = compile(fx.problem);
    SolverOptions options;
    options.delta = Rational(1);
    options.horizon = 12;
    SolveResult solved = solve(art.result, options);
    if (solved.status != SolveStatus::Found)
      continue; // rational-bound fixtures have no integer-grid plan
    TemporalPlan lifted = lift_plan(art, *solved.plan);
    TemporalValidationReport r = validate_temporal(fx.problem, lifted);
    CHECK(r.valid);
    if (!r.valid && r.violation)
      MESSAGE(fx.name, ": condition ", r.violation->condition, " ",
              r.violation->detail);
  }
}

TEST_CASE("lift after lower is the identity on valid plans") {
  for (const auto &fx : hand_fixtures()) {
    CAPTURE(fx.name);
    CompilationArtifacts art = compile(fx.problem);
    for (const auto &tp : fx.valid_plans) {
      LoweredPlan lowered = lower_plan(art, tp);
      TemporalPlan back = lift_plan(art, lowered.plan);
      CHECK(back == tp);
    }
  }
}
