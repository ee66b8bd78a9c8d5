#include "t2p/pddl.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace t2p {

namespace {

// Shared grounding machinery: type closure, object enumeration, fluent
// table construction and formula/effect instantiation under a parameter
// binding.
class Grounder {
public:
  Grounder(const LiftedDomain &domain, const ProblemSpec &problem)
      : domain_(domain), problem_(problem) {
    build_types();
    build_objects();
  }

  void build_fluent_table(std::vector<Fluent> &fluents, State &init) {
    auto add = [&](const std::string &name, FluentKind kind) {
      std::string unique = fluent_names_.fresh(name);
      fluents.push_back(Fluent{unique, kind});
      init.values.push_back(kind == FluentKind::Boolean ? Value(false)
                                                        : Value(Rational(0)));
      return FluentId{static_cast<std::uint32_t>(fluents.size() - 1)};
    };
    for (const auto &schema : domain_.predicates) {
      for (const auto &args : bindings(schema.params)) {
        FluentId id = add(flat_name(schema.name, args), FluentKind::Boolean);
        bool_index_.emplace(key(schema.name, args), id);
      }
    }
    for (const auto &schema : domain_.functions) {
      for (const auto &args : bindings(schema.params)) {
        FluentId id = add(flat_name(schema.name, args), FluentKind::Numeric);
        num_index_.emplace(key(schema.name, args), id);
      }
    }
    // Initial values; unmentioned fluents keep the false/zero default.
    for (const auto &atom : problem_.bool_init) {
      FluentId id = resolve_bool(atom, {}, "init");
      init.values.at(id.index) = true;
    }
    std::unordered_set<std::uint32_t> num_seen;
    for (const auto &[atom, value] : problem_.num_init) {
      FluentId id = resolve_num(atom, {}, "init");
      if (!num_seen.insert(id.index).second &&
          std::get<Rational>(init.values.at(id.index)) != value)
        throw GroundError("conflicting init values for " +
                          flat_name_of(atom, {}));
      init.values.at(id.index) = value;
    }
  }

  using Binding = std::map<std::string, std::string>; // ?var -> object

  // All typed argument tuples for a parameter list, each returned as a
  // vector of object names aligned with the parameters.
  std::vector<std::vector<std::string>>
  bindings(const std::vector<TypedName> &params) const {
    std::vector<std::vector<std::string>> out;
    std::vector<std::string> current(params.size());
    enumerate(params, 0, current, out);
    return out;
  }

  FluentId resolve_bool(const LiftedAtom &atom, const Binding &b,
                        const char *where) const {
    auto it = bool_index_.find(key_of(atom, b));
    if (it == bool_index_.end())
      throw GroundError(std::string(where) + " mentions unknown fluent " +
                        flat_name_of(atom, b));
    return it->second;
  }

  FluentId resolve_num(const LiftedAtom &atom, const Binding &b,
                       const char *where) const {
    auto it = num_index_.find(key_of(atom, b));
    if (it == num_index_.end())
      throw GroundError(std::string(where) + " mentions unknown numeric "
                                             "fluent " +
                        flat_name_of(atom, b));
    return it->second;
  }

  NumExpr ground(const LiftedNumExpr &e, const Binding &b,
                 const char *where) const {
    switch (e.kind) {
    case LiftedNumExpr::Kind::Constant:
      return NumExpr::number(e.constant);
    case LiftedNumExpr::Kind::FluentRef:
      return NumExpr::ref(resolve_num(e.fluent, b, where));
    case LiftedNumExpr::Kind::Negate:
      return NumExpr::negate(ground(e.kids[0], b, where));
    case LiftedNumExpr::Kind::Binary:
      return NumExpr::binary(e.op, ground(e.kids[0], b, where),
                             ground(e.kids[1], b, where));
    }
    throw GroundError("malformed numeric expression");
  }

  Formula ground(const LiftedFormula &f, const Binding &b,
                 const char *where) const {
    switch (f.kind) {
    case LiftedFormula::Kind::Constant:
      return Formula::constant(f.const_value);
    case LiftedFormula::Kind::Atom:
      return Formula::ref(resolve_bool(f.atom, b, where));
    case LiftedFormula::Kind::ObjectEq:
      return Formula::constant(substitute(f.eq_lhs, b) ==
                               substitute(f.eq_rhs, b));
    case LiftedFormula::Kind::Compare:
      return Formula::compare(f.cmp, ground(f.terms[0], b, where),
                              ground(f.terms[1], b, where));
    case LiftedFormula::Kind::Not:
      return Formula::negate(ground(f.children[0], b, where));
    case LiftedFormula::Kind::And:
    case LiftedFormula::Kind::Or: {
      std::vector<Formula> kids;
      kids.reserve(f.children.size());
      for (const auto &c : f.children)
        kids.push_back(ground(c, b, where));
      return f.kind == LiftedFormula::Kind::And ? Formula::conj(std::move(kids))
                                                : Formula::disj(std::move(kids));
    }
    }
    throw GroundError("malformed formula");
  }

  std::vector<Effect> ground(const std::vector<LiftedEffect> &effects,
                             const Binding &b, const char *where) const {
    std::vector<Effect> out;
    out.reserve(effects.size());
    for (const auto &e : effects) {
      switch (e.kind) {
      case LiftedEffect::Kind::Add:
        out.push_back(Effect::assign_bool(resolve_bool(e.target, b, where),
                                          true));
        break;
      case LiftedEffect::Kind::Delete:
        out.push_back(Effect::assign_bool(resolve_bool(e.target, b, where),
                                          false));
        break;
      case LiftedEffect::Kind::AssignNum:
        out.push_back(Effect::assign_num(resolve_num(e.target, b, where),
                                         ground(e.value, b, where)));
        break;
      case LiftedEffect::Kind::Increase:
        out.push_back(Effect::increase(resolve_num(e.target, b, where),
                                       ground(e.value, b, where)));
        break;
      }
    }
    return out;
  }

  static Binding bind(const std::vector<TypedName> &params,
                      const std::vector<std::string> &args) {
    Binding b;
    for (std::size_t i = 0; i < params.size(); ++i)
      b.emplace(params[i].name, args[i]);
    return b;
  }

  std::string flat_name(const std::string &head,
                        const std::vector<std::string> &args) const {
    std::string out = head;
    for (const auto &a : args)
      out += "_" + a;
    return out;
  }

  std::string ground_name(const std::string &schema,
                          const std::vector<std::string> &args) {
    return action_names_.fresh(flat_name(schema, args));
  }

private:
  // Deterministic collision-avoiding names (e.g. schema "a" over object
  // "b_c" vs schema "a_b" over "c").
  class NamePool {
  public:
    std::string fresh(const std::string &wanted) {
      if (used_.insert(wanted).second)
        return wanted;
      for (int i = 2;; ++i) {
        std::string c = wanted + "-" + std::to_string(i);
        if (used_.insert(c).second)
          return c;
      }
    }

  private:
    std::unordered_set<std::string> used_;
  };

  void build_types() {
    parent_.emplace("object", "object");
    for (const auto &t : domain_.types) {
      if (!parent_.emplace(t.name, t.type).second)
        throw GroundError("type " + t.name + " declared twice");
    }
    // Referenced parent types are implicitly declared.
    for (const auto &t : domain_.types)
      parent_.emplace(t.type, "object");
  }

  bool is_subtype(std::string type, const std::string &ancestor) const {
    for (;;) {
      if (type == ancestor)
        return true;
      auto it = parent_.find(type);
      if (it == parent_.end() || it->second == type)
        return type == ancestor;
      if (it->first == "object")
        return ancestor == "object";
      type = it->second;
    }
  }

  void build_objects() {
    auto add = [&](const TypedName &o) {
      if (!parent_.count(o.type))
        throw GroundError("object " + o.name + " has unknown type " + o.type);
      if (!object_types_.emplace(o.name, o.type).second)
        throw GroundError("object " + o.name + " declared twice");
      object_order_.push_back(o.name);
    };
    for (const auto &c : domain_.constants)
      add(c);
    for (const auto &o : problem_.objects)
      add(o);
    std::sort(object_order_.begin(), object_order_.end());
  }

  std::vector<std::string> objects_of(const std::string &type) const {
    std::vector<std::string> out;
    for (const auto &name : object_order_)
      if (is_subtype(object_types_.at(name), type))
        out.push_back(name);
    return out;
  }

  void enumerate(const std::vector<TypedName> &params, std::size_t i,
                 std::vector<std::string> &current,
                 std::vector<std::vector<std::string>> &out) const {
    if (i == params.size()) {
      out.push_back(current);
      return;
    }
    if (!parent_.count(params[i].type))
      throw GroundError("parameter " + params[i].name + " has unknown type " +
                        params[i].type);
    for (const auto &obj : objects_of(params[i].type)) {
      current[i] = obj;
      enumerate(params, i + 1, current, out);
    }
  }

  std::string substitute(const LiftedTerm &t, const Binding &b) const {
    if (!t.is_variable) {
      if (!object_types_.count(t.name))
        throw GroundError("unknown object " + t.name);
      return t.name;
    }
    auto it = b.find(t.name);
    if (it == b.end())
      throw GroundError("unbound variable " + t.name);
    return it->second;
  }

  std::string key(const std::string &head,
                  const std::vector<std::string> &args) const {
    std::string out = head;
    for (const auto &a : args) {
      out += ' ';
      out += a;
    }
    return out;
  }

  std::string key_of(const LiftedAtom &atom, const Binding &b) const {
    std::string out = atom.head;
    for (const auto &t : atom.args) {
      out += ' ';
      out += substitute(t, b);
    }
    return out;
  }

  std::string flat_name_of(const LiftedAtom &atom, const Binding &b) const {
    std::string out = atom.head;
    for (const auto &t : atom.args)
      out += "_" + substitute(t, b);
    return out;
  }

  const LiftedDomain &domain_;
  const ProblemSpec &problem_;
  std::unordered_map<std::string, std::string> parent_;
  std::unordered_map<std::string, std::string> object_types_;
  std::vector<std::string> object_order_;
  std::unordered_map<std::string, FluentId> bool_index_;
  std::unordered_map<std::string, FluentId> num_index_;
  NamePool fluent_names_;
  NamePool action_names_;
};

// Ground instances sorted lexicographically on (schema name, argument
// tuple); enumerate() already yields argument tuples in sorted object
// order, so sorting the schema list by name is enough.
template <typename Schema>
std::vector<const Schema *> sorted_schemas(const std::vector<Schema> &in) {
  std::vector<const Schema *> out;
  out.reserve(in.size());
  for (const auto &s : in)
    out.push_back(&s);
  std::stable_sort(out.begin(), out.end(),
                   [](const Schema *a, const Schema *b) {
                     return a->name < b->name;
                   });
  return out;
}

void check_domain_match(const LiftedDomain &domain,
                        const ProblemSpec &problem) {
  if (!problem.domain_name.empty() && problem.domain_name != domain.name)
    throw GroundError("problem targets domain '" + problem.domain_name +
                      "' but got '" + domain.name + "'");
}

} // namespace

TemporalProblem ground_temporal(const LiftedDomain &domain,
                                const ProblemSpec &problem) {
  check_domain_match(domain, problem);
  if (domain.has_plus_constructs())
    throw GroundError("domain " + domain.name +
                      " contains :process/:event blocks; expected a temporal "
                      "(PDDL 2.1) domain");
  Grounder g(domain, problem);
  TemporalProblem out;
  out.name = problem.name;
  g.build_fluent_table(out.fluents, out.init);

  for (const auto *schema : sorted_schemas(domain.actions)) {
    for (const auto &args : g.bindings(schema->params)) {
      auto b = Grounder::bind(schema->params, args);
      InstantAction a;
      a.name = g.ground_name(schema->name, args);
      const char *where = a.name.c_str();
      a.pre = g.ground(schema->pre, b, where);
      a.effects = g.ground(schema->effects, b, where);
      out.instant_actions.push_back(std::move(a));
    }
  }
  for (const auto *schema : sorted_schemas(domain.durative_actions)) {
    for (const auto &args : g.bindings(schema->params)) {
      auto b = Grounder::bind(schema->params, args);
      DurativeAction a;
      a.name = g.ground_name(schema->name, args);
      const char *where = a.name.c_str();
      a.lower = schema->lower;
      a.upper = schema->upper;
      a.start.name = a.name + "-start";
      a.start.pre = g.ground(schema->at_start, b, where);
      a.start.effects = g.ground(schema->start_effects, b, where);
      a.end.name = a.name + "-end";
      a.end.pre = g.ground(schema->at_end, b, where);
      a.end.effects = g.ground(schema->end_effects, b, where);
      a.overall = g.ground(schema->over_all, b, where);
      out.durative_actions.push_back(std::move(a));
    }
  }
  out.goal = g.ground(problem.goal, {}, "goal");
  out.validate();
  return out;
}

PlusProblem ground_plus(const LiftedDomain &domain,
                        const ProblemSpec &problem) {
  check_domain_match(domain, problem);
  if (!domain.durative_actions.empty())
    throw GroundError("domain " + domain.name +
                      " contains :durative-action blocks; expected a PDDL+ "
                      "domain");
  Grounder g(domain, problem);
  PlusProblem out;
  out.name = problem.name;
  g.build_fluent_table(out.fluents, out.init);

  for (const auto *schema : sorted_schemas(domain.actions)) {
    for (const auto &args : g.bindings(schema->params)) {
      auto b = Grounder::bind(schema->params, args);
      InstantAction a;
      a.name = g.ground_name(schema->name, args);
      const char *where = a.name.c_str();
      a.pre = g.ground(schema->pre, b, where);
      a.effects = g.ground(schema->effects, b, where);
      out.actions.push_back(std::move(a));
    }
  }
  for (const auto *schema : sorted_schemas(domain.events)) {
    for (const auto &args : g.bindings(schema->params)) {
      auto b = Grounder::bind(schema->params, args);
      Event e;
      e.name = g.ground_name(schema->name, args);
      const char *where = e.name.c_str();
      e.pre = g.ground(schema->pre, b, where);
      e.effects = g.ground(schema->effects, b, where);
      out.events.push_back(std::move(e));
    }
  }
  for (const auto *schema : sorted_schemas(domain.processes)) {
    for (const auto &args : g.bindings(schema->params)) {
      auto b = Grounder::bind(schema->params, args);
      Process p;
      p.name = g.ground_name(schema->name, args);
      const char *where = p.name.c_str();
      p.pre = g.ground(schema->pre, b, where);
      for (const auto &[atom, rate] : schema->rates)
        p.effects.push_back(ProcessEffect{g.resolve_num(atom, b, where),
                                          g.ground(rate, b, where)});
      out.processes.push_back(std::move(p));
    }
  }
  out.goal = g.ground(problem.goal, {}, "goal");
  out.validate();
  return out;
}

TemporalProblem parse_temporal_problem(std::string_view domain_text,
                                       std::string_view problem_text) {
  return ground_temporal(parse_domain(domain_text),
                         parse_problem(problem_text));
}

PlusProblem parse_plus_problem(std::string_view domain_text,
                               std::string_view problem_text) {
  return ground_plus(parse_domain(domain_text), parse_problem(problem_text));
}

} // namespace t2p
