#include "t2p/model.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_set>

namespace t2p {

namespace {

const char *cmp_symbol(CmpOp op) {
  switch (op) {
  case CmpOp::Lt:
    return "<";
  case CmpOp::Le:
    return "<=";
  case CmpOp::Eq:
    return "=";
  case CmpOp::Ge:
    return ">=";
  case CmpOp::Gt:
    return ">";
  }
  return "?";
}

const char *num_symbol(NumOp op) {
  switch (op) {
  case NumOp::Add:
    return "+";
  case NumOp::Sub:
    return "-";
  case NumOp::Mul:
    return "*";
  case NumOp::Div:
    return "/";
  }
  return "?";
}

std::string fluent_name(FluentId id, const std::vector<Fluent> &fluents) {
  if (id.index < fluents.size())
    return fluents[id.index].name;
  return "#" + std::to_string(id.index);
}

} // namespace

std::size_t State::hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ull;
  for (const auto &v : values) {
    std::size_t piece;
    if (std::holds_alternative<bool>(v))
      piece = std::get<bool>(v) ? 0x2545f4914f6cdd1dull : 0x9e3779b9ull;
    else
      piece = std::get<Rational>(v).hash();
    h ^= piece + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

// ---------------------------------------------------------------------------
// evaluate

Rational evaluate(const State &s, const NumExpr &e) {
  switch (e.kind) {
  case NumExpr::Kind::Constant:
    return e.constant;
  case NumExpr::Kind::FluentRef: {
    const Value &v = s.at(e.fluent);
    if (!std::holds_alternative<Rational>(v))
      throw EvalError("numeric reference to boolean fluent #" +
                      std::to_string(e.fluent.index));
    return std::get<Rational>(v);
  }
  case NumExpr::Kind::Negate:
    return -evaluate(s, e.kids[0]);
  case NumExpr::Kind::Binary: {
    Rational lhs = evaluate(s, e.kids[0]);
    Rational rhs = evaluate(s, e.kids[1]);
    switch (e.op) {
    case NumOp::Add:
      return lhs + rhs;
    case NumOp::Sub:
      return lhs - rhs;
    case NumOp::Mul:
      return lhs * rhs;
    case NumOp::Div:
      if (rhs.is_zero())
        throw EvalError("division by zero in " + to_string(e, {}));
      return lhs / rhs;
    }
    break;
  }
  }
  throw EvalError("malformed numeric expression");
}

bool evaluate(const State &s, const Formula &f) {
  switch (f.kind) {
  case Formula::Kind::Constant:
    return f.const_value;
  case Formula::Kind::FluentRef: {
    const Value &v = s.at(f.fluent);
    if (!std::holds_alternative<bool>(v))
      throw EvalError("boolean reference to numeric fluent #" +
                      std::to_string(f.fluent.index));
    return std::get<bool>(v);
  }
  case Formula::Kind::Compare: {
    Rational lhs = evaluate(s, f.terms[0]);
    Rational rhs = evaluate(s, f.terms[1]);
    switch (f.cmp) {
    case CmpOp::Lt:
      return lhs < rhs;
    case CmpOp::Le:
      return lhs <= rhs;
    case CmpOp::Eq:
      return lhs == rhs;
    case CmpOp::Ge:
      return lhs >= rhs;
    case CmpOp::Gt:
      return lhs > rhs;
    }
    break;
  }
  case Formula::Kind::Not:
    return !evaluate(s, f.children[0]);
  case Formula::Kind::And:
    for (const auto &c : f.children)
      if (!evaluate(s, c))
        return false;
    return true;
  case Formula::Kind::Or:
    for (const auto &c : f.children)
      if (evaluate(s, c))
        return true;
    return false;
  }
  throw EvalError("malformed formula");
}

// ---------------------------------------------------------------------------
// apply

State apply(const State &s, const InstantAction &a) {
  // Evaluate all right-hand sides against the pre-state first, then write.
  std::vector<std::pair<FluentId, Value>> assigns;
  std::map<std::uint32_t, Rational> increments;
  for (const Effect &e : a.effects) {
    switch (e.op) {
    case EffectOp::AssignBool:
      assigns.emplace_back(e.target, e.bool_value);
      break;
    case EffectOp::AssignNum:
      assigns.emplace_back(e.target, evaluate(s, e.expr));
      break;
    case EffectOp::Increase: {
      Rational delta = evaluate(s, e.expr);
      auto [it, fresh] = increments.emplace(e.target.index, delta);
      if (!fresh)
        it->second += delta;
      break;
    }
    }
  }
  State out = s;
  for (auto &[id, v] : assigns)
    out.set(id, std::move(v));
  for (auto &[index, delta] : increments) {
    FluentId id{index};
    out.set(id, s.numeric(id) + delta);
  }
  return out;
}

// ---------------------------------------------------------------------------
// interference sets

void collect_fluents(const NumExpr &e, std::set<FluentId> &out) {
  if (e.kind == NumExpr::Kind::FluentRef)
    out.insert(e.fluent);
  for (const auto &k : e.kids)
    collect_fluents(k, out);
}

void collect_fluents(const Formula &f, std::set<FluentId> &out) {
  if (f.kind == Formula::Kind::FluentRef)
    out.insert(f.fluent);
  for (const auto &t : f.terms)
    collect_fluents(t, out);
  for (const auto &c : f.children)
    collect_fluents(c, out);
}

InterferenceSets interference_sets(const InstantAction &a) {
  InterferenceSets sets;
  collect_fluents(a.pre, sets.read);
  for (const Effect &e : a.effects) {
    switch (e.op) {
    case EffectOp::AssignBool:
      sets.assign.insert(e.target);
      break;
    case EffectOp::AssignNum:
      sets.assign.insert(e.target);
      collect_fluents(e.expr, sets.read);
      break;
    case EffectOp::Increase:
      sets.increase.insert(e.target);
      collect_fluents(e.expr, sets.read);
      break;
    }
  }
  return sets;
}

std::set<FluentId> InterferenceSets::write() const {
  std::set<FluentId> out = assign;
  out.insert(increase.begin(), increase.end());
  return out;
}

bool non_interfering(const InterferenceSets &a, const InterferenceSets &b) {
  auto disjoint = [](const std::set<FluentId> &x, const std::set<FluentId> &y) {
    for (const auto &f : x)
      if (y.count(f))
        return false;
    return true;
  };
  return disjoint(a.read, b.write()) && disjoint(b.read, a.write()) &&
         disjoint(a.assign, b.write()) && disjoint(b.assign, a.write());
}

// ---------------------------------------------------------------------------
// problems

namespace {

FluentId add_fluent_impl(std::vector<Fluent> &fluents, State &init,
                         std::string name, FluentKind kind, Value initial) {
  bool kind_ok = (kind == FluentKind::Boolean &&
                  std::holds_alternative<bool>(initial)) ||
                 (kind == FluentKind::Numeric &&
                  std::holds_alternative<Rational>(initial));
  if (!kind_ok)
    throw ModelError("initial value has wrong kind for fluent " + name);
  fluents.push_back(Fluent{std::move(name), kind});
  init.values.push_back(std::move(initial));
  return FluentId{static_cast<std::uint32_t>(fluents.size() - 1)};
}

std::optional<FluentId> find_fluent_impl(const std::vector<Fluent> &fluents,
                                         const std::string &name) {
  for (std::uint32_t i = 0; i < fluents.size(); ++i)
    if (fluents[i].name == name)
      return FluentId{i};
  return std::nullopt;
}

struct Checker {
  const std::vector<Fluent> &fluents;
  std::string context;

  void fail(const std::string &msg) const {
    throw ModelError(context + ": " + msg);
  }

  void check_id(FluentId id, std::optional<FluentKind> want) const {
    if (id.index >= fluents.size())
      fail("fluent index " + std::to_string(id.index) + " out of range");
    if (want && fluents[id.index].kind != *want)
      fail("fluent " + fluents[id.index].name + " has the wrong kind");
  }

  void check(const NumExpr &e) const {
    switch (e.kind) {
    case NumExpr::Kind::Constant:
      break;
    case NumExpr::Kind::FluentRef:
      check_id(e.fluent, FluentKind::Numeric);
      break;
    case NumExpr::Kind::Negate:
      if (e.kids.size() != 1)
        fail("negation arity");
      check(e.kids[0]);
      break;
    case NumExpr::Kind::Binary:
      if (e.kids.size() != 2)
        fail("binary arity");
      check(e.kids[0]);
      check(e.kids[1]);
      break;
    }
  }

  void check(const Formula &f) const {
    switch (f.kind) {
    case Formula::Kind::Constant:
      break;
    case Formula::Kind::FluentRef:
      check_id(f.fluent, FluentKind::Boolean);
      break;
    case Formula::Kind::Compare:
      if (f.terms.size() != 2)
        fail("comparison arity");
      check(f.terms[0]);
      check(f.terms[1]);
      break;
    case Formula::Kind::Not:
      if (f.children.size() != 1)
        fail("negation arity");
      check(f.children[0]);
      break;
    case Formula::Kind::And:
    case Formula::Kind::Or:
      for (const auto &c : f.children)
        check(c);
      break;
    }
  }

  void check(const InstantAction &a) const {
    check(a.pre);
    std::set<std::uint32_t> assigned, increased;
    for (const Effect &e : a.effects) {
      switch (e.op) {
      case EffectOp::AssignBool:
        check_id(e.target, FluentKind::Boolean);
        if (!assigned.insert(e.target.index).second)
          fail("fluent " + fluents[e.target.index].name +
               " assigned twice in one action");
        break;
      case EffectOp::AssignNum:
        check_id(e.target, FluentKind::Numeric);
        check(e.expr);
        if (!assigned.insert(e.target.index).second)
          fail("fluent " + fluents[e.target.index].name +
               " assigned twice in one action");
        break;
      case EffectOp::Increase:
        check_id(e.target, FluentKind::Numeric);
        check(e.expr);
        increased.insert(e.target.index);
        break;
      }
    }
    for (auto idx : increased)
      if (assigned.count(idx))
        fail("fluent " + fluents[idx].name +
             " both assigned and increased in one action");
  }
};

void check_state_total(const std::vector<Fluent> &fluents, const State &s,
                       const std::string &what) {
  if (s.values.size() != fluents.size())
    throw ModelError(what + " is not a total assignment (" +
                     std::to_string(s.values.size()) + " values for " +
                     std::to_string(fluents.size()) + " fluents)");
  for (std::size_t i = 0; i < fluents.size(); ++i) {
    bool ok = (fluents[i].kind == FluentKind::Boolean &&
               std::holds_alternative<bool>(s.values[i])) ||
              (fluents[i].kind == FluentKind::Numeric &&
               std::holds_alternative<Rational>(s.values[i]));
    if (!ok)
      throw ModelError(what + " has a wrong-kind value for fluent " +
                       fluents[i].name);
  }
}

void check_unique_names(const std::vector<Fluent> &fluents) {
  std::unordered_set<std::string> seen;
  for (const auto &f : fluents)
    if (!seen.insert(f.name).second)
      throw ModelError("duplicate fluent name " + f.name);
}

} // namespace

FluentId TemporalProblem::add_fluent(std::string n, FluentKind kind,
                                     Value initial) {
  return add_fluent_impl(fluents, init, std::move(n), kind,
                         std::move(initial));
}

std::optional<FluentId>
TemporalProblem::find_fluent(const std::string &n) const {
  return find_fluent_impl(fluents, n);
}

const InstantAction *TemporalProblem::find_instant(const std::string &n) const {
  for (const auto &a : instant_actions)
    if (a.name == n)
      return &a;
  return nullptr;
}

const DurativeAction *
TemporalProblem::find_durative(const std::string &n) const {
  for (const auto &a : durative_actions)
    if (a.name == n)
      return &a;
  return nullptr;
}

void TemporalProblem::validate() const {
  check_unique_names(fluents);
  check_state_total(fluents, init, "initial state of " + name);
  std::unordered_set<std::string> action_names;
  for (const auto &a : instant_actions) {
    if (!action_names.insert(a.name).second)
      throw ModelError("duplicate action name " + a.name);
    Checker{fluents, "action " + a.name}.check(a);
  }
  for (const auto &a : durative_actions) {
    if (!action_names.insert(a.name).second)
      throw ModelError("duplicate action name " + a.name);
    Checker checker{fluents, "durative action " + a.name};
    if (!(Rational(0) < a.lower && a.lower <= a.upper))
      checker.fail("duration bounds must satisfy 0 < lb <= ub");
    checker.check(a.start);
    checker.check(a.end);
    checker.check(a.overall);
  }
  Checker{fluents, "goal"}.check(goal);
}

FluentId PlusProblem::add_fluent(std::string n, FluentKind kind,
                                 Value initial) {
  return add_fluent_impl(fluents, init, std::move(n), kind,
                         std::move(initial));
}

std::optional<FluentId> PlusProblem::find_fluent(const std::string &n) const {
  return find_fluent_impl(fluents, n);
}

const InstantAction *PlusProblem::find_action(const std::string &n) const {
  for (const auto &a : actions)
    if (a.name == n)
      return &a;
  return nullptr;
}

void PlusProblem::validate() const {
  check_unique_names(fluents);
  check_state_total(fluents, init, "initial state of " + name);
  std::unordered_set<std::string> names;
  for (const auto &a : actions) {
    if (!names.insert(a.name).second)
      throw ModelError("duplicate action name " + a.name);
    Checker{fluents, "action " + a.name}.check(a);
  }
  std::unordered_set<std::string> event_names;
  for (const auto &e : events) {
    if (!event_names.insert(e.name).second)
      throw ModelError("duplicate event name " + e.name);
    Checker{fluents, "event " + e.name}.check(e);
  }
  std::unordered_set<std::string> process_names;
  for (const auto &p : processes) {
    if (!process_names.insert(p.name).second)
      throw ModelError("duplicate process name " + p.name);
    Checker checker{fluents, "process " + p.name};
    checker.check(p.pre);
    for (const auto &pe : p.effects) {
      checker.check_id(pe.target, FluentKind::Numeric);
      checker.check(pe.rate);
      std::set<FluentId> rate_fluents;
      collect_fluents(pe.rate, rate_fluents);
      for (FluentId f : rate_fluents)
        checker.check_id(f, FluentKind::Numeric);
    }
  }
  Checker{fluents, "goal"}.check(goal);
}

// ---------------------------------------------------------------------------
// plans

TemporalPlan TemporalPlan::of(std::vector<TemporalPlanEntry> raw) {
  std::sort(raw.begin(), raw.end());
  raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
  return TemporalPlan{std::move(raw)};
}

PlusPlan PlusPlan::of(std::vector<PlusPlanStep> steps, Rational makespan) {
  std::stable_sort(steps.begin(), steps.end(),
                   [](const PlusPlanStep &a, const PlusPlanStep &b) {
                     return a.time < b.time;
                   });
  return PlusPlan{std::move(steps), std::move(makespan)};
}

// ---------------------------------------------------------------------------
// rendering

std::string to_string(const NumExpr &e, const std::vector<Fluent> &fluents) {
  switch (e.kind) {
  case NumExpr::Kind::Constant:
    return e.constant.str();
  case NumExpr::Kind::FluentRef:
    return "(" + fluent_name(e.fluent, fluents) + ")";
  case NumExpr::Kind::Negate:
    return "(- " + to_string(e.kids[0], fluents) + ")";
  case NumExpr::Kind::Binary:
    return std::string("(") + num_symbol(e.op) + " " +
           to_string(e.kids[0], fluents) + " " + to_string(e.kids[1], fluents) +
           ")";
  }
  return "?";
}

std::string to_string(const Formula &f, const std::vector<Fluent> &fluents) {
  switch (f.kind) {
  case Formula::Kind::Constant:
    return f.const_value ? "(and)" : "(or)";
  case Formula::Kind::FluentRef:
    return "(" + fluent_name(f.fluent, fluents) + ")";
  case Formula::Kind::Compare:
    return std::string("(") + cmp_symbol(f.cmp) + " " +
           to_string(f.terms[0], fluents) + " " +
           to_string(f.terms[1], fluents) + ")";
  case Formula::Kind::Not:
    return "(not " + to_string(f.children[0], fluents) + ")";
  case Formula::Kind::And:
  case Formula::Kind::Or: {
    std::string out = f.kind == Formula::Kind::And ? "(and" : "(or";
    for (const auto &c : f.children)
      out += " " + to_string(c, fluents);
    return out + ")";
  }
  }
  return "?";
}

std::string to_string(const Effect &e, const std::vector<Fluent> &fluents) {
  std::string target = "(" + fluent_name(e.target, fluents) + ")";
  switch (e.op) {
  case EffectOp::AssignBool:
    return e.bool_value ? target : "(not " + target + ")";
  case EffectOp::AssignNum:
    return "(assign " + target + " " + to_string(e.expr, fluents) + ")";
  case EffectOp::Increase:
    return "(increase " + target + " " + to_string(e.expr, fluents) + ")";
  }
  return "?";
}

} // namespace t2p
