#include "support/builders.hpp"

#include "t2p/compiler.hpp"

#include <doctest.h>

using namespace t2p;
using namespace t2p::testing;

namespace {

std::string matchcellar_domain() {
  return read_file(fixture_path("matchcellar_domain.pddl"));
}
std::string matchcellar_problem() {
  return read_file(fixture_path("matchcellar_problem.pddl"));
}

} // namespace

TEST_CASE("parse matchcellar-style durative schemas") {
  LiftedDomain d = parse_domain(matchcellar_domain());
  CHECK(d.name == "matchcellar");
  REQUIRE(d.durative_actions.size() == 2);
  const auto &lm = d.durative_actions[0];
  CHECK(lm.name == "light-match");
  CHECK(lm.lower == Rational(6));
  CHECK(lm.upper == Rational(6)); // (= ?duration 6) pins both bounds
  const auto &mf = d.durative_actions[1];
  CHECK(mf.over_all.kind == LiftedFormula::Kind::Atom);
}

TEST_CASE("duration bounds in either order") {
  LiftedDomain d = parse_domain(R"(
    (define (domain dd)
      (:requirements :durative-actions :duration-inequalities)
      (:predicates (p))
      (:durative-action a
        :parameters ()
        :duration (and (<= ?duration 4) (>= ?duration 2))
        :condition (and)
        :effect (and (at end (p))))))");
  CHECK(d.durative_actions[0].lower == Rational(2));
  CHECK(d.durative_actions[0].upper == Rational(4));
}

TEST_CASE("malformed durative action names the action") {
  CHECK_THROWS_WITH_AS(parse_domain(R"(
    (define (domain dd)
      (:predicates (p))
      (:durative-action broken
        :parameters ()
        :condition (and)
        :effect (and (at end (p))))))"),
                       doctest::Contains("broken"), ParseError);
}

TEST_CASE("unsupported features are rejected by name") {
  CHECK_THROWS_WITH_AS(
      parse_domain("(define (domain d) (:requirements :conditional-effects))"),
      doctest::Contains(":conditional-effects"), UnsupportedFeature);
  CHECK_THROWS_WITH_AS(parse_domain(R"(
    (define (domain d)
      (:predicates (p) (q))
      (:action a :parameters ()
        :precondition (and)
        :effect (when (p) (q)))))"),
                       doctest::Contains("conditional"), UnsupportedFeature);
  CHECK_THROWS_WITH_AS(parse_problem(R"(
    (define (problem p) (:domain d)
      (:init (at 5 (p)))
      (:goal (and))))"),
                       doctest::Contains("timed initial literals"),
                       UnsupportedFeature);
  CHECK_THROWS_WITH_AS(parse_problem(R"(
    (define (problem p) (:domain d)
      (:goal (and)) (:metric minimize (total-time))))"),
                       doctest::Contains(":metric"), UnsupportedFeature);
  // Continuous (level 4) durative effects are out of the supported subset.
  CHECK_THROWS_AS(parse_domain(R"(
    (define (domain d)
      (:functions (x))
      (:durative-action a :parameters ()
        :duration (= ?duration 1)
        :condition (and)
        :effect (and (increase (x) (* #t 1))))))"),
                  UnsupportedFeature);
}

TEST_CASE("grounding instantiates typed schemas exhaustively") {
  const char *domain = R"(
    (define (domain g)
      (:requirements :typing :durative-actions)
      (:types block)
      (:predicates (done ?b - block))
      (:durative-action doit
        :parameters (?b - block)
        :duration (= ?duration 1)
        :condition (and)
        :effect (and (at end (done ?b))))))";
  SUBCASE("three objects, three instances") {
    TemporalProblem p = parse_temporal_problem(domain, R"(
      (define (problem g1) (:domain g)
        (:objects b1 b2 b3 - block)
        (:goal (and))))");
    REQUIRE(p.durative_actions.size() == 3);
    CHECK(p.durative_actions[0].name == "doit_b1");
    CHECK(p.durative_actions[2].name == "doit_b3");
    CHECK(p.fluents.size() == 3);
  }
  SUBCASE("zero objects, zero instances") {
    TemporalProblem p = parse_temporal_problem(domain, R"(
      (define (problem g0) (:domain g) (:goal (and))))");
    CHECK(p.durative_actions.empty());
    CHECK(p.fluents.empty());
  }
}

TEST_CASE("init defaults: unmentioned fluents are false / zero") {
  TemporalProblem p = parse_temporal_problem(R"(
    (define (domain d)
      (:predicates (p) (q))
      (:functions (x) (y))
      (:action a :parameters () :precondition (and) :effect (and (p)))))",
                                             R"(
    (define (problem i) (:domain d)
      (:init (p) (= (x) 3/2))
      (:goal (and))))");
  CHECK(p.init.boolean(*p.find_fluent("p")));
  CHECK(!p.init.boolean(*p.find_fluent("q")));
  CHECK(p.init.numeric(*p.find_fluent("x")) == *Rational::parse("3/2"));
  CHECK(p.init.numeric(*p.find_fluent("y")) == Rational(0));
}

TEST_CASE("goal over unknown ground fluent is an error") {
  CHECK_THROWS_WITH_AS(parse_temporal_problem(R"(
    (define (domain d) (:predicates (p))
      (:action a :parameters () :precondition (and) :effect (and (p)))))",
                                              R"(
    (define (problem i) (:domain d) (:goal (q))))"),
                       doctest::Contains("unknown"), GroundError);
}

TEST_CASE("static object equality folds at grounding") {
  TemporalProblem p = parse_temporal_problem(R"(
    (define (domain d)
      (:requirements :typing :equality)
      (:types thing)
      (:predicates (marked ?a - thing))
      (:action mark :parameters (?a ?b - thing)
        :precondition (not (= ?a ?b))
        :effect (and (marked ?a)))))",
                                             R"(
    (define (problem i) (:domain d)
      (:objects t1 t2 - thing)
      (:goal (and))))");
  REQUIRE(p.instant_actions.size() == 4);
  // mark_t1_t1 has precondition (not true) = false; mark_t1_t2 is (not false).
  CHECK(p.instant_actions[0].name == "mark_t1_t1");
  CHECK(!evaluate(p.init, p.instant_actions[0].pre));
  CHECK(evaluate(p.init, p.instant_actions[1].pre));
}

TEST_CASE("print_plus emits the lightning process as expected") {
  TinyMatch fx = tiny_match();
  CompilationArtifacts art = compile(fx.problem);
  PlusText text = print_plus(art.result);
  CHECK(text.domain.find("(:process p-lightning\n"
                         "   :parameters ()\n"
                         "   :precondition (ok)\n"
                         "   :effect (and (increase (gc) (* #t 1))))") !=
        std::string::npos);
  CHECK(text.problem.find("(= (gc) 0)") != std::string::npos);
}

TEST_CASE("print_plus omits event blocks when there are no events") {
  PlusProblem p;
  p.name = "noev";
  auto x = p.add_fluent("x", FluentKind::Numeric, Rational(0));
  Process proc;
  proc.name = "grow";
  proc.effects.push_back(ProcessEffect{x, NumExpr::number(Rational(1))});
  p.processes.push_back(proc);
  PlusText text = print_plus(p);
  CHECK(text.domain.find(":event") == std::string::npos);
  CHECK(text.domain.find("(:process grow") != std::string::npos);
}

TEST_CASE("print_plus sanitizes illegal names deterministically") {
  PlusProblem p;
  p.name = "weird";
  p.add_fluent("has space", FluentKind::Boolean, true);
  p.add_fluent("has_space", FluentKind::Boolean, false);
  PlusText text = print_plus(p);
  CHECK(text.domain.find("(has_space)") != std::string::npos);
  CHECK(text.domain.find("(has_space-2)") != std::string::npos);
  // Round trip still parses.
  PlusProblem back = parse_plus_problem(text.domain, text.problem);
  CHECK(back.fluents.size() == 2);
  CHECK(back.init.boolean(*back.find_fluent("has_space")));
  CHECK(!back.init.boolean(*back.find_fluent("has_space-2")));
}

TEST_CASE("print -> parse -> print is a fixed point on a compiled problem") {
  TemporalProblem mc = parse_temporal_problem(matchcellar_domain(),
                                              matchcellar_problem());
  PlusProblem compiled = compile(mc).result;
  PlusText once = print_plus(compiled);
  PlusProblem reparsed = parse_plus_problem(once.domain, once.problem);
  PlusText twice = print_plus(reparsed);
  CHECK(once.domain == twice.domain);
  CHECK(once.problem == twice.problem);
  // Names were already legal, so the round trip is exact.
  CHECK(reparsed.actions == compiled.actions);
  CHECK(reparsed.events == compiled.events);
  CHECK(reparsed.processes == compiled.processes);
  CHECK(reparsed.init == compiled.init);
  CHECK(reparsed.goal == compiled.goal);
}

TEST_CASE("grounding is deterministic") {
  TemporalProblem a = parse_temporal_problem(matchcellar_domain(),
                                             matchcellar_problem());
  TemporalProblem b = parse_temporal_problem(matchcellar_domain(),
                                             matchcellar_problem());
  CHECK(a.fluents.size() == b.fluents.size());
  for (std::size_t i = 0; i < a.fluents.size(); ++i)
    CHECK(a.fluents[i].name == b.fluents[i].name);
  CHECK(a.durative_actions == b.durative_actions);
}

TEST_CASE("temporal plan files") {
  SUBCASE("durative entry") {
    TemporalPlan p = parse_temporal_plan("0: (a) [5]\n");
    REQUIRE(p.entries.size() == 1);
    CHECK(p.entries[0].time == Rational(0));
    CHECK(p.entries[0].action == "a");
    CHECK(p.entries[0].duration == Rational(5));
  }
  SUBCASE("instantaneous entry and multi-token names") {
    TemporalPlan p = parse_temporal_plan("1: (move t1 t2)\n");
    CHECK(p.entries[0].duration == Rational(0));
    CHECK(p.entries[0].action == "move_t1_t2");
  }
  SUBCASE("duplicate triples collapse") {
    TemporalPlan p = parse_temporal_plan("0: (a) [5]\n0: (a) [5]\n");
    CHECK(p.entries.size() == 1);
  }
  SUBCASE("errors carry line numbers") {
    CHECK_THROWS_WITH_AS(parse_temporal_plan("0: (a)\nnonsense\n"),
                         doctest::Contains("2:"), ParseError);
  }
}

TEST_CASE("plus plan files") {
  PlusPlan p = parse_plus_plan("3/2: (b)\n;; makespan 2\n");
  REQUIRE(p.steps.size() == 1);
  CHECK(p.steps[0].time == *Rational::parse("3/2"));
  CHECK(p.steps[0].action == "b");
  CHECK(p.makespan == Rational(2));
  CHECK_THROWS_WITH_AS(parse_plus_plan("0: (a)\n"),
                       doctest::Contains("makespan"), ParseError);
}

TEST_CASE("plan print/parse round trip") {
  TemporalPlan tp = plan({{rat(0), "a", rat(5)},
                          {rat(3, 2), "b", rat(0)},
                          {rat(2), "c", rat(7, 2)}});
  CHECK(parse_temporal_plan(print_plan(tp)) == tp);
  CHECK(print_plan(parse_temporal_plan(print_plan(tp))) == print_plan(tp));

  PlusPlan pp = PlusPlan::of({{rat(0), "x"}, {rat(3, 2), "y"}}, rat(2));
  CHECK(parse_plus_plan(print_plan(pp)) == pp);
  CHECK(print_plan(parse_plus_plan(print_plan(pp))) == print_plan(pp));
}

TEST_CASE("ground_temporal rejects PDDL+ constructs and vice versa") {
  const char *plus_domain = R"(
    (define (domain pd)
      (:requirements :time)
      (:functions (x))
      (:process grow :parameters ()
        :precondition (and)
        :effect (increase (x) (* #t 1)))))";
  const char *problem = "(define (problem p) (:domain pd) (:goal (and)))";
  CHECK_THROWS_AS(parse_temporal_problem(plus_domain, problem), GroundError);

  CHECK_THROWS_AS(parse_plus_problem(matchcellar_domain(),
                                     matchcellar_problem()),
                  GroundError);
}
