#pragma once

// Ground data model shared by the whole toolkit: fluents, numeric
// expressions, formulas, effects, actions, processes, events, states and
// plans. Everything here is an immutable value after construction and all
// operations over it are pure, so instances can be shared freely across
// threads.

#include "t2p/rational.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace t2p {

enum class FluentKind { Boolean, Numeric };

struct Fluent {
  std::string name;
  FluentKind kind;
};

// Index into the owning problem's fluent table. The compiler appends its
// bookkeeping fluents after the source ones, so ids stay valid across the
// translation and source formulas can be reused verbatim.
struct FluentId {
  std::uint32_t index = 0;
  bool operator==(const FluentId &) const = default;
  auto operator<=>(const FluentId &) const = default;
};

// ---------------------------------------------------------------------------
// Numeric expressions

enum class NumOp { Add, Sub, Mul, Div };

struct NumExpr {
  enum class Kind { Constant, FluentRef, Binary, Negate };

  Kind kind = Kind::Constant;
  Rational constant;
  FluentId fluent;
  NumOp op = NumOp::Add;
  std::vector<NumExpr> kids; // Binary: {lhs, rhs}; Negate: {child}

  static NumExpr number(Rational v) {
    NumExpr e;
    e.kind = Kind::Constant;
    e.constant = std::move(v);
    return e;
  }
  static NumExpr ref(FluentId f) {
    NumExpr e;
    e.kind = Kind::FluentRef;
    e.fluent = f;
    return e;
  }
  static NumExpr binary(NumOp op, NumExpr lhs, NumExpr rhs) {
    NumExpr e;
    e.kind = Kind::Binary;
    e.op = op;
    e.kids.push_back(std::move(lhs));
    e.kids.push_back(std::move(rhs));
    return e;
  }
  static NumExpr negate(NumExpr child) {
    NumExpr e;
    e.kind = Kind::Negate;
    e.kids.push_back(std::move(child));
    return e;
  }

  bool operator==(const NumExpr &) const = default;
};

// ---------------------------------------------------------------------------
// Formulas

enum class CmpOp { Lt, Le, Eq, Ge, Gt };

struct Formula {
  enum class Kind { Constant, FluentRef, Compare, Not, And, Or };

  Kind kind = Kind::Constant;
  bool const_value = true;
  FluentId fluent;
  CmpOp cmp = CmpOp::Eq;
  std::vector<NumExpr> terms;    // Compare: {lhs, rhs}
  std::vector<Formula> children; // Not: {child}; And/Or: n-ary

  static Formula constant(bool v) {
    Formula f;
    f.kind = Kind::Constant;
    f.const_value = v;
    return f;
  }
  static Formula truth() { return constant(true); }
  static Formula falsity() { return constant(false); }
  static Formula ref(FluentId id) {
    Formula f;
    f.kind = Kind::FluentRef;
    f.fluent = id;
    return f;
  }
  static Formula compare(CmpOp op, NumExpr lhs, NumExpr rhs) {
    Formula f;
    f.kind = Kind::Compare;
    f.cmp = op;
    f.terms.push_back(std::move(lhs));
    f.terms.push_back(std::move(rhs));
    return f;
  }
  static Formula negate(Formula child) {
    Formula f;
    f.kind = Kind::Not;
    f.children.push_back(std::move(child));
    return f;
  }
  static Formula conj(std::vector<Formula> children) {
    Formula f;
    f.kind = Kind::And;
    f.children = std::move(children);
    return f;
  }
  static Formula disj(std::vector<Formula> children) {
    Formula f;
    f.kind = Kind::Or;
    f.children = std::move(children);
    return f;
  }

  bool is_truth() const {
    return (kind == Kind::Constant && const_value) ||
           (kind == Kind::And && children.empty());
  }

  bool operator==(const Formula &) const = default;
};

// ---------------------------------------------------------------------------
// Effects and actions

enum class EffectOp { AssignBool, AssignNum, Increase };

struct Effect {
  FluentId target;
  EffectOp op = EffectOp::AssignBool;
  bool bool_value = false; // AssignBool
  NumExpr expr;            // AssignNum / Increase

  static Effect assign_bool(FluentId f, bool v) {
    Effect e;
    e.target = f;
    e.op = EffectOp::AssignBool;
    e.bool_value = v;
    return e;
  }
  static Effect assign_num(FluentId f, NumExpr v) {
    Effect e;
    e.target = f;
    e.op = EffectOp::AssignNum;
    e.expr = std::move(v);
    return e;
  }
  static Effect increase(FluentId f, NumExpr v) {
    Effect e;
    e.target = f;
    e.op = EffectOp::Increase;
    e.expr = std::move(v);
    return e;
  }

  bool operator==(const Effect &) const = default;
};

struct InstantAction {
  std::string name;
  Formula pre = Formula::truth();
  std::vector<Effect> effects;

  bool operator==(const InstantAction &) const = default;
};

// Events share the shape of instantaneous actions: a precondition that
// triggers them and a set of discrete effects.
using Event = InstantAction;

struct DurativeAction {
  std::string name;
  Rational lower;
  Rational upper;
  InstantAction start; // snap action at the start timepoint
  InstantAction end;   // snap action at the end timepoint
  Formula overall = Formula::truth();

  bool fixed_duration() const { return lower == upper; }

  bool operator==(const DurativeAction &) const = default;
};

struct ProcessEffect {
  FluentId target; // numeric
  NumExpr rate;

  bool operator==(const ProcessEffect &) const = default;
};

struct Process {
  std::string name;
  Formula pre = Formula::truth();
  std::vector<ProcessEffect> effects;

  bool operator==(const Process &) const = default;
};

// ---------------------------------------------------------------------------
// States

using Value = std::variant<bool, Rational>;

// Total assignment over a problem's fluent table, indexed by FluentId.
struct State {
  std::vector<Value> values;

  const Value &at(FluentId f) const { return values.at(f.index); }
  bool boolean(FluentId f) const { return std::get<bool>(at(f)); }
  const Rational &numeric(FluentId f) const { return std::get<Rational>(at(f)); }
  void set(FluentId f, Value v) { values.at(f.index) = std::move(v); }

  std::size_t hash() const;
  bool operator==(const State &) const = default;
};

// ---------------------------------------------------------------------------
// Problems

struct TemporalProblem {
  std::string name = "anonymous";
  std::vector<Fluent> fluents;
  State init;
  std::vector<InstantAction> instant_actions;
  std::vector<DurativeAction> durative_actions;
  Formula goal = Formula::truth();

  FluentId add_fluent(std::string n, FluentKind kind, Value initial);
  std::optional<FluentId> find_fluent(const std::string &n) const;

  const InstantAction *find_instant(const std::string &n) const;
  const DurativeAction *find_durative(const std::string &n) const;

  // Checks totality of the initial state, closure and kind-correctness of
  // every formula/effect, duration bounds 0 < lb <= ub, name uniqueness and
  // the at-most-one-assign-per-fluent rule. Throws ModelError on violation.
  void validate() const;
};

struct PlusProblem {
  std::string name = "anonymous";
  std::vector<Fluent> fluents;
  State init;
  Formula goal = Formula::truth();
  std::vector<InstantAction> actions;
  std::vector<Event> events;
  std::vector<Process> processes;

  FluentId add_fluent(std::string n, FluentKind kind, Value initial);
  std::optional<FluentId> find_fluent(const std::string &n) const;
  const InstantAction *find_action(const std::string &n) const;

  void validate() const;
};

// ---------------------------------------------------------------------------
// Plans

struct TemporalPlanEntry {
  Rational time;
  std::string action;
  Rational duration;

  bool operator==(const TemporalPlanEntry &) const = default;
  auto operator<=>(const TemporalPlanEntry &) const = default;
};

// A temporal plan is a finite *set* of (time, action, duration) triples;
// construction canonicalizes to sorted order with exact duplicates removed.
struct TemporalPlan {
  std::vector<TemporalPlanEntry> entries;

  static TemporalPlan of(std::vector<TemporalPlanEntry> raw);

  bool operator==(const TemporalPlan &) const = default;
};

struct PlusPlanStep {
  Rational time;
  std::string action;

  bool operator==(const PlusPlanStep &) const = default;
};

// Timed action sequence plus a makespan; steps are kept sorted by time
// (stable, so the relative order of simultaneous actions is preserved).
struct PlusPlan {
  std::vector<PlusPlanStep> steps;
  Rational makespan;

  static PlusPlan of(std::vector<PlusPlanStep> steps, Rational makespan);

  bool operator==(const PlusPlan &) const = default;
};

// ---------------------------------------------------------------------------
// Errors

struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised by evaluate/apply when a division by zero is hit; the message
// carries the offending subexpression.
struct EvalError : std::runtime_error {
  explicit EvalError(const std::string &msg) : std::runtime_error(msg) {}
};

// ---------------------------------------------------------------------------
// Core operations (all pure)

Rational evaluate(const State &s, const NumExpr &e);
bool evaluate(const State &s, const Formula &f);

// Applies all effects simultaneously: every right-hand side is read from the
// pre-state, assignments overwrite, increases accumulate additively.
State apply(const State &s, const InstantAction &a);

struct InterferenceSets {
  std::set<FluentId> read;
  std::set<FluentId> assign;
  std::set<FluentId> increase;

  std::set<FluentId> write() const;
};

InterferenceSets interference_sets(const InstantAction &a);

// Fluents mentioned anywhere in a formula / expression.
void collect_fluents(const NumExpr &e, std::set<FluentId> &out);
void collect_fluents(const Formula &f, std::set<FluentId> &out);

// Pairwise non-interference test between two instantaneous actions:
// neither may read what the other writes, and an assignment conflicts with
// any other write of the same fluent. Increases of the same fluent are
// compatible (they commute), which makes this the exact condition under
// which the two actions commute and exactly what the per-fluent lock
// machinery enforces.
bool non_interfering(const InterferenceSets &a, const InterferenceSets &b);

// S-expression style rendering used in diagnostics and PDDL output. The
// fluent table supplies names.
std::string to_string(const NumExpr &e, const std::vector<Fluent> &fluents);
std::string to_string(const Formula &f, const std::vector<Fluent> &fluents);
std::string to_string(const Effect &e, const std::vector<Fluent> &fluents);

} // namespace t2p
