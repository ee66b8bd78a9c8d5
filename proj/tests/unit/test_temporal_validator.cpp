#include "support/builders.hpp"
#include "support/generators.hpp"

#include "t2p/temporal_validator.hpp"

#include <doctest.h>

#include <random>

using namespace t2p;
using namespace t2p::testing;

TEST_CASE("build_timeline: durative entry contributes start and end") {
  TinyMatch fx = tiny_match();
  TemporalPlan p = plan({{rat(0), "match", rat(5)}});
  // Bounds are not build_timeline's business; only structure is.
  HappeningTimeline tl = build_timeline(fx.problem, p);
  REQUIRE(tl.times.size() == 3);
  CHECK(tl.times[0] == Rational(0));
  CHECK(tl.times[1] == Rational(5));
  CHECK(tl.times[2] == Rational(6));
  REQUIRE(tl.step_count() == 2);
  REQUIRE(tl.happenings[0].size() == 1);
  CHECK(tl.happenings[0][0].kind == SnapKind::StartK);
  CHECK(tl.happenings[1][0].kind == SnapKind::EndK);
}

TEST_CASE("build_timeline: instantaneous entry and empty plan") {
  TemporalProblem p;
  p.instant_actions.push_back(instant("i", Formula::truth(), {}));
  SUBCASE("single instantaneous") {
    HappeningTimeline tl = build_timeline(p, plan({{rat(1), "i", rat(0)}}));
    CHECK(tl.times == std::vector<Rational>{rat(1), rat(2)});
    CHECK(tl.happenings[0][0].kind == SnapKind::InstantK);
  }
  SUBCASE("empty plan") {
    HappeningTimeline tl = build_timeline(p, plan({}));
    CHECK(tl.times == std::vector<Rational>{rat(0), rat(1)});
    CHECK(tl.happenings[0].empty());
  }
  SUBCASE("unknown action") {
    CHECK_THROWS_AS(build_timeline(p, plan({{rat(0), "nope", rat(0)}})),
                    ModelError);
  }
}

TEST_CASE("build_timeline: simultaneous starts and ends share happenings") {
  TemporalProblem p;
  p.durative_actions.push_back(durative("a", rat(5), rat(5),
                                        instant("", Formula::truth(), {}),
                                        instant("", Formula::truth(), {})));
  p.durative_actions.push_back(durative("b", rat(5), rat(5),
                                        instant("", Formula::truth(), {}),
                                        instant("", Formula::truth(), {})));
  HappeningTimeline tl =
      build_timeline(p, plan({{rat(0), "a", rat(5)}, {rat(0), "b", rat(5)}}));
  REQUIRE(tl.step_count() == 2);
  CHECK(tl.happenings[0].size() == 2);
  CHECK(tl.happenings[0][0].display_name == "a-start");
  CHECK(tl.happenings[0][1].display_name == "b-start");
  CHECK(tl.happenings[1].size() == 2);
  CHECK(tl.happenings[1][0].display_name == "a-end");
}

TEST_CASE("validate_temporal: the match plan and its trace") {
  // One durative action [2,2] lighting at start, extinguishing at end.
  TemporalProblem p;
  auto lit = p.add_fluent("lit", FluentKind::Boolean, false);
  p.durative_actions.push_back(durative(
      "match", rat(2), rat(2),
      instant("", Formula::truth(), {Effect::assign_bool(lit, true)}),
      instant("", Formula::truth(), {Effect::assign_bool(lit, false)})));
  p.goal = fnot(fref(lit));
  TemporalValidationReport r =
      validate_temporal(p, plan({{rat(0), "match", rat(2)}}));
  CHECK(r.valid);
  REQUIRE(r.trace.size() == 3);
  CHECK(!r.trace[0].boolean(lit));
  CHECK(r.trace[1].boolean(lit));
  CHECK(!r.trace[2].boolean(lit));
  CHECK(r.trace_times ==
        std::vector<Rational>{rat(0), rat(2), rat(3)});
}

TEST_CASE("validate_temporal: interference at one time is condition 5") {
  TemporalProblem p;
  auto x = p.add_fluent("x", FluentKind::Numeric, Rational(0));
  p.instant_actions.push_back(
      instant("a", Formula::truth(), {Effect::assign_num(x, num(1))}));
  p.instant_actions.push_back(
      instant("b", Formula::truth(), {Effect::assign_num(x, num(2))}));
  TemporalValidationReport r = validate_temporal(
      p, plan({{rat(0), "a", rat(0)}, {rat(0), "b", rat(0)}}));
  CHECK(!r.valid);
  REQUIRE(r.violation);
  CHECK(r.violation->condition == 5);
  CHECK(r.violation->actions == std::vector<std::string>{"a", "b"});
}

TEST_CASE("validate_temporal: self overlap is condition 6") {
  TemporalProblem p;
  p.durative_actions.push_back(durative("a", rat(3), rat(3),
                                        instant("", Formula::truth(), {}),
                                        instant("", Formula::truth(), {})));
  TemporalValidationReport r = validate_temporal(
      p, plan({{rat(0), "a", rat(3)}, {rat(2), "a", rat(3)}}));
  CHECK(!r.valid);
  REQUIRE(r.violation);
  CHECK(r.violation->condition == 6);

  SUBCASE("back to back instances of one action also violate") {
    TemporalValidationReport r2 = validate_temporal(
        p, plan({{rat(0), "a", rat(3)}, {rat(3), "a", rat(3)}}));
    CHECK(!r2.valid);
    CHECK(r2.violation->condition == 6);
  }
  SUBCASE("different actions may meet") {
    TemporalProblem q = p;
    q.durative_actions.push_back(durative("b", rat(3), rat(3),
                                          instant("", Formula::truth(), {}),
                                          instant("", Formula::truth(), {})));
    TemporalValidationReport r3 = validate_temporal(
        q, plan({{rat(0), "a", rat(3)}, {rat(3), "b", rat(3)}}));
    CHECK(r3.valid);
  }
}

TEST_CASE("validate_temporal: duration bounds checked up front") {
  TinyMatch fx = tiny_match();
  TemporalValidationReport r =
      validate_temporal(fx.problem, plan({{rat(0), "match", rat(5)}}));
  CHECK(!r.valid);
  CHECK(r.violation->condition == 0);
  TemporalValidationReport r2 =
      validate_temporal(fx.problem, plan({{rat(0), "match", rat(2)},
                                          {rat(5), "nosuch", rat(0)}}));
  CHECK(!r2.valid);
  CHECK(r2.violation->condition == 0);
}

TEST_CASE("check_overall_windows") {
  TemporalProblem p;
  auto guard = p.add_fluent("guard", FluentKind::Boolean, true);
  auto done = p.add_fluent("done", FluentKind::Boolean, false);
  p.durative_actions.push_back(durative(
      "a", rat(4), rat(4), instant("", Formula::truth(), {}),
      instant("", Formula::truth(), {Effect::assign_bool(done, true)}),
      fref(guard)));
  p.instant_actions.push_back(
      instant("break", Formula::truth(), {Effect::assign_bool(guard, false)}));
  p.goal = Formula::truth();

  SUBCASE("falsified strictly inside the interval") {
    TemporalPlan bad = plan({{rat(0), "a", rat(4)}, {rat(2), "break", rat(0)}});
    TemporalValidationReport r = validate_temporal(p, bad);
    CHECK(!r.valid);
    REQUIRE(r.violation);
    CHECK(r.violation->condition == 4);
    CHECK(r.violation->step == 2); // state index where guard is false
    CHECK(r.violation->actions == std::vector<std::string>{"a"});

    // The standalone checker agrees and reports each bad window state.
    HappeningTimeline tl = build_timeline(p, bad);
    TemporalValidatorOptions opts;
    // Full trace regardless of validity: rebuild by applying steps.
    std::vector<State> trace{p.init};
    for (std::size_t j = 0; j < tl.step_count(); ++j) {
      State s = trace.back();
      for (const auto &h : tl.happenings[j])
        s = apply(s, *h.snap);
      trace.push_back(std::move(s));
    }
    auto violations = check_overall_windows(p, tl, bad, trace);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].step == 2);
  }
  SUBCASE("trivially true invariant never violates") {
    TemporalProblem q = p;
    q.durative_actions[0].overall = Formula::truth();
    TemporalValidationReport r = validate_temporal(
        q, plan({{rat(0), "a", rat(4)}, {rat(2), "break", rat(0)}}));
    CHECK(r.valid);
  }
  SUBCASE("end snap may falsify its own invariant") {
    TemporalProblem q;
    auto g2 = q.add_fluent("guard", FluentKind::Boolean, true);
    q.durative_actions.push_back(durative(
        "a", rat(4), rat(4), instant("", Formula::truth(), {}),
        instant("", Formula::truth(), {Effect::assign_bool(g2, false)}),
        fref(g2)));
    // The invariant is checked up to and including the state the end snap
    // fires in, before its effects.
    TemporalValidationReport r =
        validate_temporal(q, plan({{rat(0), "a", rat(4)}}));
    CHECK(r.valid);
  }
}

TEST_CASE("empty plan is valid exactly when the goal holds initially") {
  TemporalProblem p;
  auto f = p.add_fluent("f", FluentKind::Boolean, true);
  p.goal = fref(f);
  CHECK(validate_temporal(p, plan({})).valid);
  p.init.set(f, false);
  TemporalValidationReport r = validate_temporal(p, plan({}));
  CHECK(!r.valid);
  CHECK(r.violation->condition == 1);
}

TEST_CASE("division by zero during validation is reported, not thrown") {
  TemporalProblem p;
  auto x = p.add_fluent("x", FluentKind::Numeric, Rational(0));
  p.instant_actions.push_back(
      instant("i", Formula::truth(),
              {Effect::assign_num(
                  x, NumExpr::binary(NumOp::Div, num(1), nref(x)))}));
  TemporalValidationReport r =
      validate_temporal(p, plan({{rat(0), "i", rat(0)}}));
  CHECK(!r.valid);
  CHECK(r.violation->condition == 3);
  CHECK(r.violation->detail.find("division by zero") != std::string::npos);
}

TEST_CASE("order independence under permuted application") {
  std::mt19937_64 rng(1234);
  int compared = 0;
  for (int i = 0; i < 60; ++i) {
    TemporalProblem p = random_temporal_problem(rng);
    // Random plan: start everything at a couple of times.
    std::vector<TemporalPlanEntry> entries;
    for (const auto &a : p.instant_actions)
      entries.push_back({rat(rng() % 2), a.name, rat(0)});
    for (const auto &a : p.durative_actions)
      entries.push_back({rat(rng() % 2), a.name, a.lower});
    TemporalPlan tp = plan(std::move(entries));

    TemporalValidationReport base = validate_temporal(p, tp);
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      TemporalValidatorOptions opts;
      opts.shuffle_seed = seed;
      TemporalValidationReport shuffled = validate_temporal(p, tp, opts);
      CHECK(base.valid == shuffled.valid);
      if (base.valid) {
        ++compared;
        CHECK(base.trace == shuffled.trace);
      }
    }
  }
  CHECK(compared > 20);
}

TEST_CASE("removing a blamed entry cannot create interference among others") {
  std::mt19937_64 rng(77);
  int exercised = 0;
  for (int i = 0; i < 200 && exercised < 40; ++i) {
    ActionPairInstance inst = random_action_pair(rng);
    // Three copies of random actions at time zero via a third action.
    TemporalProblem &p = inst.problem;
    p.instant_actions.push_back(
        random_instant_action(rng, p, "c"));
    p.validate();
    TemporalPlan tp = plan({{rat(0), "a", rat(0)},
                            {rat(0), "b", rat(0)},
                            {rat(0), "c", rat(0)}});
    HappeningTimeline tl = build_timeline(p, tp);
    auto before = check_interference(tl.happenings[0], 0);
    if (before.empty())
      continue;
    ++exercised;
    // Drop one action named in the first violation; previously clean pairs
    // stay clean because the pairwise test only looks at the pair.
    std::string drop = before.front().actions[0];
    std::vector<TemporalPlanEntry> remaining;
    for (const auto &e : tp.entries)
      if (e.action != drop)
        remaining.push_back(e);
    HappeningTimeline tl2 = build_timeline(p, plan(remaining));
    auto after = check_interference(tl2.happenings[0], 0);
    for (const auto &v : after) {
      // Every violation after removal must already exist before it.
      bool existed = false;
      for (const auto &w : before)
        if (v.actions == w.actions)
          existed = true;
      CHECK(existed);
    }
  }
  CHECK(exercised > 0);
}
