#pragma once

// Front end for a PDDL 2.1 level-3 subset (typed domains with instantaneous
// and durative actions, numeric fluents, constant duration bounds) and for
// the PDDL+ fragment emitted by the compiler (:process / :event blocks with
// #t-rate effects). The compilation itself is defined on ground problems;
// this module grounds lifted input exhaustively and prints/parses ground
// PDDL+ text and plan files.

#include "t2p/model.hpp"
#include "t2p/sexpr.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace t2p {

struct UnsupportedFeature : ParseError {
  UnsupportedFeature(SourcePos pos, const std::string &feature)
      : ParseError(pos, "unsupported feature: " + feature) {}
};

struct GroundError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Lifted AST

struct TypedName {
  std::string name;
  std::string type = "object";
  SourcePos pos;
};

struct LiftedTerm {
  std::string name; // "?x" keeps its question mark
  bool is_variable = false;
  SourcePos pos;
};

struct LiftedAtom {
  std::string head;
  std::vector<LiftedTerm> args;
  SourcePos pos;
};

struct LiftedNumExpr {
  enum class Kind { Constant, FluentRef, Binary, Negate };
  Kind kind = Kind::Constant;
  Rational constant;
  LiftedAtom fluent;
  NumOp op = NumOp::Add;
  std::vector<LiftedNumExpr> kids;
  SourcePos pos;
};

struct LiftedFormula {
  enum class Kind { Constant, Atom, ObjectEq, Compare, Not, And, Or };
  Kind kind = Kind::Constant;
  bool const_value = true;
  LiftedAtom atom;
  LiftedTerm eq_lhs, eq_rhs;
  CmpOp cmp = CmpOp::Eq;
  std::vector<LiftedNumExpr> terms;
  std::vector<LiftedFormula> children;
  SourcePos pos;
};

struct LiftedEffect {
  enum class Kind { Add, Delete, AssignNum, Increase };
  Kind kind = Kind::Add;
  LiftedAtom target;
  LiftedNumExpr value; // AssignNum / Increase
  SourcePos pos;
};

struct PredicateSchema {
  std::string name;
  std::vector<TypedName> params;
  SourcePos pos;
};

struct FunctionSchema {
  std::string name;
  std::vector<TypedName> params;
  SourcePos pos;
};

struct InstantSchema {
  std::string name;
  std::vector<TypedName> params;
  LiftedFormula pre;
  std::vector<LiftedEffect> effects;
  SourcePos pos;
};

struct DurativeSchema {
  std::string name;
  std::vector<TypedName> params;
  Rational lower, upper; // constant bounds
  LiftedFormula at_start, over_all, at_end;
  std::vector<LiftedEffect> start_effects, end_effects;
  SourcePos pos;
};

struct ProcessSchema {
  std::string name;
  std::vector<TypedName> params;
  LiftedFormula pre;
  std::vector<std::pair<LiftedAtom, LiftedNumExpr>> rates;
  SourcePos pos;
};

struct EventSchema {
  std::string name;
  std::vector<TypedName> params;
  LiftedFormula pre;
  std::vector<LiftedEffect> effects;
  SourcePos pos;
};

struct LiftedDomain {
  std::string name;
  std::vector<std::string> requirements;
  std::vector<TypedName> types; // name + parent type
  std::vector<TypedName> constants;
  std::vector<PredicateSchema> predicates;
  std::vector<FunctionSchema> functions;
  std::vector<InstantSchema> actions;
  std::vector<DurativeSchema> durative_actions;
  std::vector<ProcessSchema> processes;
  std::vector<EventSchema> events;

  bool has_plus_constructs() const {
    return !processes.empty() || !events.empty();
  }
};

struct ProblemSpec {
  std::string name;
  std::string domain_name;
  std::vector<TypedName> objects;
  std::vector<LiftedAtom> bool_init;
  std::vector<std::pair<LiftedAtom, Rational>> num_init;
  LiftedFormula goal;
};

// ---------------------------------------------------------------------------
// Parsing and grounding

LiftedDomain parse_domain(std::string_view text);
ProblemSpec parse_problem(std::string_view text);

TemporalProblem ground_temporal(const LiftedDomain &domain,
                                const ProblemSpec &problem);
PlusProblem ground_plus(const LiftedDomain &domain, const ProblemSpec &problem);

TemporalProblem parse_temporal_problem(std::string_view domain_text,
                                       std::string_view problem_text);
PlusProblem parse_plus_problem(std::string_view domain_text,
                               std::string_view problem_text);

// ---------------------------------------------------------------------------
// Printing

struct PlusText {
  std::string domain;
  std::string problem;
};

// Ground PDDL+ text. Names are sanitized to legal PDDL symbols with a
// deterministic collision check; parsing the output yields a problem equal
// to the input up to that renaming, and print(parse(print(p))) == print(p).
PlusText print_plus(const PlusProblem &p);

// ---------------------------------------------------------------------------
// Plan files
//
// Temporal plans:  one entry per line, "<time>: (<name>) [<duration>]",
// with the bracketed duration omitted when it is zero. PDDL+ plans: one
// "<time>: (<name>)" line per step plus a trailing ";; makespan <t>"
// directive. Times accept decimals and p/q rationals. Multi-token names
// inside parentheses are joined with '_' to match ground action names.

TemporalPlan parse_temporal_plan(std::string_view text);
PlusPlan parse_plus_plan(std::string_view text);

std::string print_plan(const TemporalPlan &plan);
std::string print_plan(const PlusPlan &plan);

// Shared helper: reads a whole file, throwing std::runtime_error with the
// path on failure.
std::string read_file(const std::string &path);
void write_file(const std::string &path, std::string_view content);

} // namespace t2p
