#include "t2p/compiler.hpp"

#include <algorithm>
#include <unordered_set>

namespace t2p {

std::string role_name(ElementRole role) {
  switch (role) {
  case ElementRole::Instant:
    return "instant";
  case ElementRole::Start:
    return "start";
  case ElementRole::EndVar:
    return "end-var";
  case ElementRole::EndFixEvent:
    return "end-fix-event";
  case ElementRole::OverallEvent:
    return "overall-event";
  case ElementRole::ExpireEvent:
    return "expire-event";
  case ElementRole::LockResetEvent:
    return "lock-reset-event";
  case ElementRole::ClockProcess:
    return "clock-process";
  case ElementRole::GcProcess:
    return "gc-process";
  }
  return "?";
}

std::string role_name(FluentRole role) {
  switch (role) {
  case FluentRole::Ok:
    return "ok";
  case FluentRole::Oc:
    return "oc";
  case FluentRole::Gc:
    return "gc";
  case FluentRole::Running:
    return "running";
  case FluentRole::Clock:
    return "clock";
  case FluentRole::RLock:
    return "rlock";
  case FluentRole::ALock:
    return "alock";
  case FluentRole::ILock:
    return "ilock";
  }
  return "?";
}

const std::string &
CompilationArtifacts::element_name(ElementRole role,
                                   const std::string &source) const {
  for (const auto &[name, info] : elements)
    if (info.role == role && info.source == source)
      return name;
  throw CompileError("no compiled element with role " + role_name(role) +
                     " for source " + source);
}

namespace {

// Keeps introduced names distinct from source names and from each other by
// appending -2, -3, ... on collision.
class NamePool {
public:
  void reserve(const std::string &name) { used_.insert(name); }

  std::string fresh(const std::string &wanted) {
    if (used_.insert(wanted).second)
      return wanted;
    for (int i = 2;; ++i) {
      std::string candidate = wanted + "-" + std::to_string(i);
      if (used_.insert(candidate).second)
        return candidate;
    }
  }

private:
  std::unordered_set<std::string> used_;
};

struct LockConjunct {
  std::uint32_t source_index;
  FluentId lock;
};

} // namespace

Formula lock_precondition(const InstantAction &a, const LockTable &locks) {
  InterferenceSets sets = interference_sets(a);
  std::vector<LockConjunct> conjuncts;
  auto add = [&](FluentId f, const std::map<std::uint32_t, FluentId> &table) {
    FluentId lock = table.at(f.index);
    for (const auto &c : conjuncts)
      if (c.lock == lock)
        return;
    conjuncts.push_back({f.index, lock});
  };
  for (FluentId f : sets.read) {
    add(f, locks.alock);
    add(f, locks.ilock);
  }
  for (FluentId f : sets.assign) {
    add(f, locks.rlock);
    add(f, locks.ilock);
    add(f, locks.alock);
  }
  for (FluentId f : sets.increase) {
    add(f, locks.rlock);
    add(f, locks.alock);
  }
  if (conjuncts.empty())
    return Formula::truth();
  std::vector<Formula> atoms;
  atoms.reserve(conjuncts.size());
  for (const auto &c : conjuncts)
    atoms.push_back(Formula::ref(c.lock));
  if (atoms.size() == 1)
    return atoms[0];
  return Formula::conj(std::move(atoms));
}

std::vector<Effect> lock_effects(const InstantAction &a,
                                 const LockTable &locks) {
  InterferenceSets sets = interference_sets(a);
  std::vector<Effect> out;
  for (FluentId f : sets.assign)
    out.push_back(Effect::assign_bool(locks.alock.at(f.index), false));
  for (FluentId f : sets.increase)
    out.push_back(Effect::assign_bool(locks.ilock.at(f.index), false));
  for (FluentId f : sets.read)
    out.push_back(Effect::assign_bool(locks.rlock.at(f.index), false));
  return out;
}

namespace {

// Flattens (pre ∧ extras...) without rewriting the source formula: a
// trivially-true source precondition is dropped, everything else becomes
// one conjunct.
Formula with_conjuncts(const Formula &pre, std::vector<Formula> extras) {
  std::vector<Formula> parts;
  if (!pre.is_truth())
    parts.push_back(pre);
  for (auto &e : extras) {
    if (e.is_truth())
      continue;
    if (e.kind == Formula::Kind::And) {
      for (auto &c : e.children)
        parts.push_back(std::move(c));
    } else {
      parts.push_back(std::move(e));
    }
  }
  if (parts.empty())
    return Formula::truth();
  if (parts.size() == 1)
    return parts[0];
  return Formula::conj(std::move(parts));
}

} // namespace

CompilationArtifacts compile(const TemporalProblem &p,
                             const CompilerOptions &options) {
  p.validate();

  CompilationArtifacts art;
  art.source = p;
  art.options = options;
  PlusProblem &out = art.result;
  out.name = p.name;

  NamePool names;
  for (const auto &f : p.fluents)
    names.reserve(f.name);

  // Source fluents come first so FluentIds from the source problem remain
  // valid in the compiled one.
  out.fluents = p.fluents;
  out.init = p.init;

  auto introduce = [&](const std::string &wanted, FluentKind kind,
                       Value initial, FluentRole role,
                       const std::string &source) {
    std::string name = names.fresh(wanted);
    FluentId id = out.add_fluent(name, kind, std::move(initial));
    art.fluent_roles.emplace(name, FluentInfo{role, source});
    return id;
  };

  FluentId ok = introduce("ok", FluentKind::Boolean, true, FluentRole::Ok, "");
  std::map<std::string, FluentId> running, clock;
  for (const auto &a : p.durative_actions)
    running.emplace(a.name, introduce("running-" + a.name,
                                      FluentKind::Boolean, false,
                                      FluentRole::Running, a.name));
  for (std::uint32_t i = 0; i < p.fluents.size(); ++i) {
    const std::string &f = p.fluents[i].name;
    art.locks.rlock.emplace(
        i, introduce("rlock-" + f, FluentKind::Boolean, true, FluentRole::RLock,
                     f));
    art.locks.alock.emplace(
        i, introduce("alock-" + f, FluentKind::Boolean, true, FluentRole::ALock,
                     f));
    art.locks.ilock.emplace(
        i, introduce("ilock-" + f, FluentKind::Boolean, true, FluentRole::ILock,
                     f));
  }
  FluentId oc =
      introduce("oc", FluentKind::Numeric, Rational(0), FluentRole::Oc, "");
  FluentId gc =
      introduce("gc", FluentKind::Numeric, Rational(0), FluentRole::Gc, "");
  for (const auto &a : p.durative_actions)
    clock.emplace(a.name, introduce("clock-" + a.name, FluentKind::Numeric,
                                    Rational(0), FluentRole::Clock, a.name));

  const LockTable &locks = art.locks;
  Formula ok_ref = Formula::ref(ok);

  NamePool element_names;
  for (const auto &a : p.instant_actions)
    element_names.reserve(a.name);
  auto register_element = [&](std::string wanted, ElementRole role,
                              const std::string &source) {
    std::string name = role == ElementRole::Instant
                           ? wanted
                           : element_names.fresh(wanted);
    art.elements.emplace(name, ElementInfo{role, source});
    return name;
  };

  // Goal: source goal plus ok plus a closed open-action counter.
  out.goal = with_conjuncts(
      p.goal, {ok_ref, Formula::compare(CmpOp::Eq, NumExpr::ref(oc),
                                        NumExpr::number(0))});

  // Actions.
  for (const auto &a : p.instant_actions) {
    InstantAction compiled;
    compiled.name = register_element(a.name, ElementRole::Instant, a.name);
    compiled.pre = with_conjuncts(a.pre, {ok_ref, lock_precondition(a, locks)});
    compiled.effects = a.effects;
    for (auto &e : lock_effects(a, locks))
      compiled.effects.push_back(std::move(e));
    out.actions.push_back(std::move(compiled));
  }
  for (const auto &a : p.durative_actions) {
    InstantAction start;
    start.name = register_element("start-" + a.name, ElementRole::Start,
                                  a.name);
    start.pre = with_conjuncts(
        a.start.pre, {ok_ref, lock_precondition(a.start, locks),
                      Formula::negate(Formula::ref(running.at(a.name)))});
    start.effects = a.start.effects;
    for (auto &e : lock_effects(a.start, locks))
      start.effects.push_back(std::move(e));
    start.effects.push_back(Effect::assign_bool(running.at(a.name), true));
    start.effects.push_back(
        Effect::assign_num(clock.at(a.name), NumExpr::number(0)));
    start.effects.push_back(Effect::increase(oc, NumExpr::number(1)));
    out.actions.push_back(std::move(start));
  }
  for (const auto &a : p.durative_actions) {
    if (a.fixed_duration())
      continue;
    InstantAction end;
    end.name = register_element("end-" + a.name, ElementRole::EndVar, a.name);
    end.pre = with_conjuncts(
        a.end.pre,
        {ok_ref, Formula::ref(running.at(a.name)),
         Formula::compare(CmpOp::Ge, NumExpr::ref(clock.at(a.name)),
                          NumExpr::number(a.lower)),
         Formula::compare(CmpOp::Le, NumExpr::ref(clock.at(a.name)),
                          NumExpr::number(a.upper)),
         lock_precondition(a.end, locks)});
    end.effects = a.end.effects;
    for (auto &e : lock_effects(a.end, locks))
      end.effects.push_back(std::move(e));
    end.effects.push_back(Effect::assign_bool(running.at(a.name), false));
    end.effects.push_back(Effect::increase(oc, NumExpr::number(-1)));
    out.actions.push_back(std::move(end));
  }

  // Events, emitted in the order the validator fires them: lock reset,
  // expirations, overall-condition watchdogs, fixed-duration terminations.
  {
    Event reset;
    reset.name = register_element("e-lightning", ElementRole::LockResetEvent,
                                  "");
    reset.pre = with_conjuncts(
        ok_ref, {Formula::compare(CmpOp::Gt, NumExpr::ref(gc),
                                  NumExpr::number(0))});
    reset.effects.push_back(Effect::assign_num(gc, NumExpr::number(0)));
    for (std::uint32_t i = 0; i < p.fluents.size(); ++i) {
      reset.effects.push_back(Effect::assign_bool(locks.rlock.at(i), true));
      reset.effects.push_back(Effect::assign_bool(locks.alock.at(i), true));
      reset.effects.push_back(Effect::assign_bool(locks.ilock.at(i), true));
    }
    out.events.push_back(std::move(reset));
  }
  if (options.emit_expire_events) {
    for (const auto &a : p.durative_actions) {
      if (a.fixed_duration())
        continue;
      Event expire;
      expire.name = register_element("expire-" + a.name,
                                     ElementRole::ExpireEvent, a.name);
      expire.pre = with_conjuncts(
          ok_ref, {Formula::ref(running.at(a.name)),
                   Formula::compare(CmpOp::Gt, NumExpr::ref(clock.at(a.name)),
                                    NumExpr::number(a.upper))});
      expire.effects.push_back(Effect::assign_bool(ok, false));
      out.events.push_back(std::move(expire));
    }
  }
  for (const auto &a : p.durative_actions) {
    Event watchdog;
    watchdog.name = register_element("inv-" + a.name,
                                     ElementRole::OverallEvent, a.name);
    watchdog.pre = with_conjuncts(ok_ref, {Formula::ref(running.at(a.name)),
                                           Formula::negate(a.overall)});
    watchdog.effects.push_back(Effect::assign_bool(ok, false));
    out.events.push_back(std::move(watchdog));
  }
  for (const auto &a : p.durative_actions) {
    if (!a.fixed_duration())
      continue;
    Event end;
    end.name = register_element("end-" + a.name, ElementRole::EndFixEvent,
                                a.name);
    end.pre = with_conjuncts(
        a.end.pre,
        {ok_ref, Formula::ref(running.at(a.name)),
         Formula::compare(CmpOp::Eq, NumExpr::ref(clock.at(a.name)),
                          NumExpr::number(a.lower)),
         lock_precondition(a.end, locks),
         Formula::compare(CmpOp::Eq, NumExpr::ref(gc), NumExpr::number(0))});
    end.effects = a.end.effects;
    for (auto &e : lock_effects(a.end, locks))
      end.effects.push_back(std::move(e));
    end.effects.push_back(Effect::assign_bool(running.at(a.name), false));
    end.effects.push_back(Effect::increase(oc, NumExpr::number(-1)));
    out.events.push_back(std::move(end));
  }

  // Processes: one clock per durative action plus the step gauge.
  for (const auto &a : p.durative_actions) {
    Process proc;
    proc.name = register_element("p-" + a.name, ElementRole::ClockProcess,
                                 a.name);
    proc.pre = with_conjuncts(ok_ref, {Formula::ref(running.at(a.name))});
    proc.effects.push_back(ProcessEffect{clock.at(a.name), NumExpr::number(1)});
    out.processes.push_back(std::move(proc));
  }
  {
    Process gauge;
    gauge.name = register_element("p-lightning", ElementRole::GcProcess, "");
    gauge.pre = ok_ref;
    gauge.effects.push_back(ProcessEffect{gc, NumExpr::number(1)});
    out.processes.push_back(std::move(gauge));
  }

  out.validate();
  return art;
}

} // namespace t2p
