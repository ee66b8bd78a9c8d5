#include "support/builders.hpp"

namespace t2p::testing {

std::string fixture_path(const std::string &file) {
#ifdef T2P_FIXTURE_DIR
  return std::string(T2P_FIXTURE_DIR) + "/" + file;
#else
  return "tests/fixtures/" + file;
#endif
}

TinyMatch tiny_match() {
  TinyMatch fx;
  fx.problem.name = "tiny-match";
  fx.lit = fx.problem.add_fluent("lit", FluentKind::Boolean, false);
  fx.used = fx.problem.add_fluent("used", FluentKind::Boolean, false);
  fx.problem.durative_actions.push_back(durative(
      "match", rat(2), rat(2),
      instant("", Formula::truth(),
              {Effect::assign_bool(fx.lit, true),
               Effect::assign_bool(fx.used, true)}),
      instant("", Formula::truth(), {Effect::assign_bool(fx.lit, false)})));
  fx.problem.goal = fand({fref(fx.used), fnot(fref(fx.lit))});
  fx.problem.validate();
  fx.good_plan = plan({{rat(0), "match", rat(2)}});
  return fx;
}

namespace {

const char *kMiniTankDomain = R"((define (domain minitank)
  (:requirements :typing :fluents :durative-actions)
  (:types tank)
  (:predicates (busy))
  (:functions (volume ?t - tank))
  (:durative-action fill
    :parameters (?t - tank)
    :duration (= ?duration 2)
    :condition (and (at start (not (busy))))
    :effect (and (at start (busy))
                 (at end (not (busy)))
                 (at end (increase (volume ?t) 5)))))
)";

const char *kMiniTankProblem = R"((define (problem minitank-1)
  (:domain minitank)
  (:objects t1 - tank)
  (:init (= (volume t1) 0))
  (:goal (>= (volume t1) 5)))
)";

HandFixture parsed_fixture(const std::string &name,
                           const std::string &domain_text,
                           const std::string &problem_text,
                           std::vector<TemporalPlan> plans) {
  HandFixture fx;
  fx.name = name;
  fx.problem = parse_temporal_problem(domain_text, problem_text);
  fx.valid_plans = std::move(plans);
  return fx;
}

} // namespace

std::vector<HandFixture> hand_fixtures() {
  std::vector<HandFixture> out;

  { // 1: fixed duration, start and end effects
    TinyMatch fx = tiny_match();
    out.push_back({"fixed-simple", fx.problem, {fx.good_plan}});
  }

  { // 2: variable duration, several admissible durations
    TemporalProblem p;
    p.name = "var-simple";
    auto fp = p.add_fluent("p", FluentKind::Boolean, false);
    auto fq = p.add_fluent("q", FluentKind::Boolean, false);
    p.durative_actions.push_back(durative(
        "a", rat(2), rat(4),
        instant("", Formula::truth(), {Effect::assign_bool(fp, true)}),
        instant("", Formula::truth(), {Effect::assign_bool(fq, true)})));
    p.goal = fand({fref(fp), fref(fq)});
    out.push_back({"var-simple", p,
                   {plan({{rat(0), "a", rat(3)}}),
                    plan({{rat(0), "a", rat(5, 2)}}),
                    plan({{rat(0), "a", rat(2)}})}});
  }

  { // 3: instantaneous chain through a numeric fluent
    TemporalProblem p;
    p.name = "instant-chain";
    auto fx = p.add_fluent("x", FluentKind::Numeric, Rational(0));
    auto fdone = p.add_fluent("done", FluentKind::Boolean, false);
    p.instant_actions.push_back(
        instant("bump", Formula::truth(), {Effect::increase(fx, num(1))}));
    p.instant_actions.push_back(instant("finish",
                                        cmp(CmpOp::Ge, nref(fx), num(1)),
                                        {Effect::assign_bool(fdone, true)}));
    p.goal = fand({fref(fdone), cmp(CmpOp::Eq, nref(fx), num(1))});
    out.push_back({"instant-chain", p,
                   {plan({{rat(0), "bump", rat(0)},
                          {rat(1), "finish", rat(0)}})}});
  }

  { // 4: two concurrent fixed-duration actions on disjoint fluents
    TemporalProblem p;
    p.name = "concurrent-two";
    auto fa = p.add_fluent("pa", FluentKind::Boolean, false);
    auto fb = p.add_fluent("pb", FluentKind::Boolean, false);
    p.durative_actions.push_back(
        durative("a", rat(2), rat(2), instant("", Formula::truth(), {}),
                 instant("", Formula::truth(),
                         {Effect::assign_bool(fa, true)})));
    p.durative_actions.push_back(
        durative("b", rat(3), rat(3), instant("", Formula::truth(), {}),
                 instant("", Formula::truth(),
                         {Effect::assign_bool(fb, true)})));
    p.goal = fand({fref(fa), fref(fb)});
    out.push_back({"concurrent-two", p,
                   {plan({{rat(0), "a", rat(2)}, {rat(0), "b", rat(3)}})}});
  }

  { // 5: overall condition maintained by a concurrent action
    TemporalProblem p;
    p.name = "overall-guard";
    auto flight = p.add_fluent("light", FluentKind::Boolean, false);
    auto fhand = p.add_fluent("handfree", FluentKind::Boolean, true);
    auto fmend = p.add_fluent("mended", FluentKind::Boolean, false);
    p.durative_actions.push_back(durative(
        "light-match", rat(6), rat(6),
        instant("", Formula::truth(), {Effect::assign_bool(flight, true)}),
        instant("", Formula::truth(), {Effect::assign_bool(flight, false)})));
    p.durative_actions.push_back(durative(
        "mend-fuse", rat(4), rat(4),
        instant("", fref(fhand), {Effect::assign_bool(fhand, false)}),
        instant("", Formula::truth(),
                {Effect::assign_bool(fhand, true),
                 Effect::assign_bool(fmend, true)}),
        fref(flight)));
    p.goal = fand({fref(fmend), fref(fhand), fnot(fref(flight))});
    out.push_back({"overall-guard", p,
                   {plan({{rat(0), "light-match", rat(6)},
                          {rat(1), "mend-fuse", rat(4)}})}});
  }

  { // 6: rational start time and duration
    TemporalProblem p;
    p.name = "rational-times";
    auto fr = p.add_fluent("r", FluentKind::Boolean, false);
    p.durative_actions.push_back(durative(
        "a", rat(1), rat(2), instant("", Formula::truth(), {}),
        instant("", Formula::truth(), {Effect::assign_bool(fr, true)})));
    p.goal = fref(fr);
    out.push_back({"rational-times", p,
                   {plan({{rat(3, 2), "a", rat(3, 2)}})}});
  }

  { // 7: the same instantaneous action at two times, increase semantics
    TemporalProblem p;
    p.name = "numeric-counter";
    auto fx = p.add_fluent("x", FluentKind::Numeric, Rational(0));
    p.instant_actions.push_back(
        instant("inc", Formula::truth(), {Effect::increase(fx, num(2))}));
    p.goal = cmp(CmpOp::Eq, nref(fx), num(4));
    out.push_back({"numeric-counter", p,
                   {plan({{rat(0), "inc", rat(0)}, {rat(1), "inc", rat(0)}})}});
  }

  { // 8: durative end enables a later instantaneous action
    TemporalProblem p;
    p.name = "chain-durative-instant";
    auto fp = p.add_fluent("p", FluentKind::Boolean, false);
    auto fq = p.add_fluent("q", FluentKind::Boolean, false);
    p.durative_actions.push_back(durative(
        "a", rat(1), rat(1), instant("", Formula::truth(), {}),
        instant("", Formula::truth(), {Effect::assign_bool(fp, true)})));
    p.instant_actions.push_back(
        instant("i", fref(fp), {Effect::assign_bool(fq, true)}));
    p.goal = fand({fref(fp), fref(fq)});
    out.push_back({"chain-durative-instant", p,
                   {plan({{rat(0), "a", rat(1)}, {rat(2), "i", rat(0)}})}});
  }

  { // 9: second durative starts after the first ends
    TemporalProblem p;
    p.name = "sequential-meet";
    auto fa = p.add_fluent("pa", FluentKind::Boolean, false);
    auto fb = p.add_fluent("pb", FluentKind::Boolean, false);
    p.durative_actions.push_back(
        durative("a", rat(2), rat(2), instant("", Formula::truth(), {}),
                 instant("", Formula::truth(),
                         {Effect::assign_bool(fa, true)})));
    p.durative_actions.push_back(
        durative("b", rat(2), rat(2), instant("", fref(fa), {}),
                 instant("", Formula::truth(),
                         {Effect::assign_bool(fb, true)})));
    p.goal = fand({fref(fa), fref(fb)});
    out.push_back({"sequential-meet", p,
                   {plan({{rat(0), "a", rat(2)}, {rat(3), "b", rat(2)}})}});
  }

  { // 10: two non-overlapping instances of one durative action
    TemporalProblem p;
    p.name = "self-sequential";
    auto fx = p.add_fluent("x", FluentKind::Numeric, Rational(0));
    p.durative_actions.push_back(durative(
        "a", rat(1), rat(1), instant("", Formula::truth(), {}),
        instant("", Formula::truth(), {Effect::increase(fx, num(1))})));
    p.goal = cmp(CmpOp::Eq, nref(fx), num(2));
    out.push_back({"self-sequential", p,
                   {plan({{rat(0), "a", rat(1)}, {rat(3), "a", rat(1)}})}});
  }

  { // 11: variable duration at both bounds
    TemporalProblem p;
    p.name = "var-bounds-edge";
    auto fp = p.add_fluent("p", FluentKind::Boolean, false);
    p.durative_actions.push_back(durative(
        "a", rat(2), rat(4), instant("", Formula::truth(), {}),
        instant("", Formula::truth(), {Effect::assign_bool(fp, true)})));
    p.goal = fref(fp);
    out.push_back({"var-bounds-edge", p,
                   {plan({{rat(0), "a", rat(2)}}),
                    plan({{rat(0), "a", rat(4)}})}});
  }

  { // 12: concurrent increases of the same fluent are compatible
    TemporalProblem p;
    p.name = "increase-concurrent";
    auto fx = p.add_fluent("x", FluentKind::Numeric, Rational(0));
    p.instant_actions.push_back(
        instant("i1", Formula::truth(), {Effect::increase(fx, num(1))}));
    p.instant_actions.push_back(
        instant("i2", Formula::truth(), {Effect::increase(fx, num(1))}));
    p.goal = cmp(CmpOp::Eq, nref(fx), num(2));
    out.push_back({"increase-concurrent", p,
                   {plan({{rat(0), "i1", rat(0)}, {rat(0), "i2", rat(0)}})}});
  }

  { // 13: instantaneous action concurrent with a durative start
    TemporalProblem p;
    p.name = "mixed-same-time";
    auto fp = p.add_fluent("p", FluentKind::Boolean, false);
    auto fq = p.add_fluent("q", FluentKind::Boolean, false);
    p.instant_actions.push_back(
        instant("i", Formula::truth(), {Effect::assign_bool(fp, true)}));
    p.durative_actions.push_back(durative(
        "a", rat(2), rat(2),
        instant("", Formula::truth(), {Effect::assign_bool(fq, true)}),
        instant("", Formula::truth(), {})));
    p.goal = fand({fref(fp), fref(fq)});
    out.push_back({"mixed-same-time", p,
                   {plan({{rat(0), "i", rat(0)}, {rat(0), "a", rat(2)}})}});
  }

  { // 14: invariant holds up to the end state; falsified only afterwards
    TemporalProblem p;
    p.name = "overall-end-boundary";
    auto fp = p.add_fluent("p", FluentKind::Boolean, true);
    auto fdone = p.add_fluent("done", FluentKind::Boolean, false);
    p.durative_actions.push_back(durative(
        "a", rat(2), rat(2), instant("", Formula::truth(), {}),
        instant("", Formula::truth(), {Effect::assign_bool(fdone, true)}),
        fref(fp)));
    p.instant_actions.push_back(
        instant("i", Formula::truth(), {Effect::assign_bool(fp, false)}));
    p.goal = fand({fref(fdone), fnot(fref(fp))});
    out.push_back({"overall-end-boundary", p,
                   {plan({{rat(0), "a", rat(2)}, {rat(2), "i", rat(0)}})}});
  }

  { // 15: interleaved variable-duration actions
    TemporalProblem p;
    p.name = "two-var-interleaved";
    auto fa = p.add_fluent("pa", FluentKind::Boolean, false);
    auto fb = p.add_fluent("pb", FluentKind::Boolean, false);
    p.durative_actions.push_back(
        durative("a", rat(1), rat(3), instant("", Formula::truth(), {}),
                 instant("", Formula::truth(),
                         {Effect::assign_bool(fa, true)})));
    p.durative_actions.push_back(
        durative("b", rat(1), rat(3), instant("", Formula::truth(), {}),
                 instant("", Formula::truth(),
                         {Effect::assign_bool(fb, true)})));
    p.goal = fand({fref(fa), fref(fb)});
    out.push_back({"two-var-interleaved", p,
                   {plan({{rat(0), "a", rat(2)}, {rat(1), "b", rat(2)}})}});
  }

  { // 16: the matchcellar fixture files, through parser and grounder
    out.push_back(parsed_fixture(
        "parsed-matchcellar",
        read_file(fixture_path("matchcellar_domain.pddl")),
        read_file(fixture_path("matchcellar_problem.pddl")),
        {plan({{rat(0), "light-match_m1", rat(6)},
               {rat(1), "mend-fuse_f1", rat(4)}})}));
  }

  { // 17: parsed numeric fixture with an at-end increase
    out.push_back(parsed_fixture("parsed-minitank", kMiniTankDomain,
                                 kMiniTankProblem,
                                 {plan({{rat(0), "fill_t1", rat(2)}})}));
  }

  { // 18: three compatible instantaneous actions at time zero
    TemporalProblem p;
    p.name = "three-at-zero";
    auto f1 = p.add_fluent("p1", FluentKind::Boolean, false);
    auto f2 = p.add_fluent("p2", FluentKind::Boolean, false);
    auto f3 = p.add_fluent("p3", FluentKind::Boolean, false);
    p.instant_actions.push_back(
        instant("i1", Formula::truth(), {Effect::assign_bool(f1, true)}));
    p.instant_actions.push_back(
        instant("i2", Formula::truth(), {Effect::assign_bool(f2, true)}));
    p.instant_actions.push_back(
        instant("i3", Formula::truth(), {Effect::assign_bool(f3, true)}));
    p.goal = fand({fref(f1), fref(f2), fref(f3)});
    out.push_back({"three-at-zero", p,
                   {plan({{rat(0), "i1", rat(0)},
                          {rat(0), "i2", rat(0)},
                          {rat(0), "i3", rat(0)}})}});
  }

  { // 19: longer fixed duration
    TemporalProblem p;
    p.name = "long-horizon";
    auto fp = p.add_fluent("p", FluentKind::Boolean, false);
    p.durative_actions.push_back(durative(
        "a", rat(5), rat(5), instant("", Formula::truth(), {}),
        instant("", Formula::truth(), {Effect::assign_bool(fp, true)})));
    p.goal = fref(fp);
    out.push_back({"long-horizon", p, {plan({{rat(0), "a", rat(5)}})}});
  }

  { // 20: sub-unit rational bounds and times
    TemporalProblem p;
    p.name = "half-delta";
    auto fp = p.add_fluent("p", FluentKind::Boolean, false);
    auto fq = p.add_fluent("q", FluentKind::Boolean, false);
    p.durative_actions.push_back(durative(
        "a", rat(1, 2), rat(3, 2),
        instant("", Formula::truth(), {Effect::assign_bool(fp, true)}),
        instant("", Formula::truth(), {Effect::assign_bool(fq, true)})));
    p.goal = fand({fref(fp), fref(fq)});
    out.push_back({"half-delta", p, {plan({{rat(1, 2), "a", rat(1)}})}});
  }

  for (auto &fx : out)
    fx.problem.validate();
  return out;
}

} // namespace t2p::testing
