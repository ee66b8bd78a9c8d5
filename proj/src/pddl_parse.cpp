#include "t2p/pddl.hpp"

#include <set>

namespace t2p {

namespace {

const std::set<std::string> kSupportedRequirements = {
    ":strips",          ":typing",
    ":equality",        ":fluents",
    ":numeric-fluents", ":durative-actions",
    ":duration-inequalities", ":negative-preconditions",
    ":time",            ":processes",
    ":events"};

[[noreturn]] void unsupported(SourcePos pos, const std::string &feature) {
  throw UnsupportedFeature(pos, feature);
}

std::string expect_symbol(const SExpr &e, const char *what) {
  if (e.kind != SExpr::Kind::Symbol)
    throw ParseError(e.pos, std::string("expected ") + what);
  return e.symbol;
}

// Parses "n1 n2 - type n3 n4 - type2 n5" lists (types default to object).
std::vector<TypedName> parse_typed_list(const std::vector<SExpr> &items,
                                        std::size_t begin, bool variables) {
  std::vector<TypedName> out;
  std::vector<std::size_t> pending;
  for (std::size_t i = begin; i < items.size(); ++i) {
    const SExpr &item = items[i];
    if (item.is_symbol("-")) {
      if (i + 1 >= items.size())
        throw ParseError(item.pos, "missing type after '-'");
      std::string type = expect_symbol(items[i + 1], "type name");
      for (std::size_t idx : pending)
        out[idx].type = type;
      pending.clear();
      ++i;
      continue;
    }
    std::string name = expect_symbol(item, variables ? "variable" : "name");
    if (variables && name[0] != '?')
      throw ParseError(item.pos, "expected variable, got '" + name + "'");
    if (!variables && name[0] == '?')
      throw ParseError(item.pos, "unexpected variable '" + name + "'");
    pending.push_back(out.size());
    out.push_back(TypedName{name, "object", item.pos});
  }
  return out;
}

LiftedTerm parse_term(const SExpr &e) {
  std::string name = expect_symbol(e, "term");
  return LiftedTerm{name, name[0] == '?', e.pos};
}

LiftedAtom parse_atom(const SExpr &e) {
  if (!e.is_list() || e.items.empty())
    throw ParseError(e.pos, "expected an atom");
  LiftedAtom atom;
  atom.head = expect_symbol(e.items[0], "predicate or function name");
  atom.pos = e.pos;
  for (std::size_t i = 1; i < e.items.size(); ++i)
    atom.args.push_back(parse_term(e.items[i]));
  return atom;
}

bool is_num_op(const std::string &s) {
  return s == "+" || s == "-" || s == "*" || s == "/";
}

LiftedNumExpr parse_num_expr(const SExpr &e) {
  LiftedNumExpr out;
  out.pos = e.pos;
  if (e.kind == SExpr::Kind::Number) {
    out.kind = LiftedNumExpr::Kind::Constant;
    out.constant = e.number;
    return out;
  }
  if (e.kind == SExpr::Kind::Symbol) {
    if (e.symbol == "#t")
      unsupported(e.pos, "continuous effects (#t outside a process)");
    throw ParseError(e.pos, "expected numeric expression, got '" + e.symbol +
                                "'");
  }
  if (e.items.empty())
    throw ParseError(e.pos, "empty numeric expression");
  const SExpr &head = e.items[0];
  if (head.kind == SExpr::Kind::Symbol && is_num_op(head.symbol)) {
    std::string op = head.symbol;
    std::size_t argc = e.items.size() - 1;
    if (op == "-" && argc == 1) {
      out.kind = LiftedNumExpr::Kind::Negate;
      out.kids.push_back(parse_num_expr(e.items[1]));
      return out;
    }
    if (argc < 2)
      throw ParseError(e.pos, "operator '" + op + "' needs two arguments");
    if ((op == "-" || op == "/") && argc != 2)
      throw ParseError(e.pos, "operator '" + op + "' takes two arguments");
    out.kind = LiftedNumExpr::Kind::Binary;
    out.op = op == "+"   ? NumOp::Add
             : op == "-" ? NumOp::Sub
             : op == "*" ? NumOp::Mul
                         : NumOp::Div;
    // n-ary + and * fold left.
    LiftedNumExpr acc = parse_num_expr(e.items[1]);
    for (std::size_t i = 2; i < e.items.size(); ++i) {
      LiftedNumExpr next;
      next.pos = e.pos;
      next.kind = LiftedNumExpr::Kind::Binary;
      next.op = out.op;
      next.kids.push_back(std::move(acc));
      next.kids.push_back(parse_num_expr(e.items[i]));
      acc = std::move(next);
    }
    return acc;
  }
  out.kind = LiftedNumExpr::Kind::FluentRef;
  out.fluent = parse_atom(e);
  return out;
}

std::optional<CmpOp> comparison_op(const std::string &s) {
  if (s == "<")
    return CmpOp::Lt;
  if (s == "<=")
    return CmpOp::Le;
  if (s == "=")
    return CmpOp::Eq;
  if (s == ">=")
    return CmpOp::Ge;
  if (s == ">")
    return CmpOp::Gt;
  return std::nullopt;
}

LiftedFormula parse_formula(const SExpr &e) {
  LiftedFormula out;
  out.pos = e.pos;
  if (!e.is_list())
    throw ParseError(e.pos, "expected a condition");
  if (e.items.empty()) {
    out.kind = LiftedFormula::Kind::Constant;
    out.const_value = true;
    return out;
  }
  const SExpr &head = e.items[0];
  if (head.kind != SExpr::Kind::Symbol)
    throw ParseError(head.pos, "expected a condition head symbol");
  const std::string &h = head.symbol;
  if (h == "forall" || h == "exists")
    unsupported(head.pos, "quantified conditions (" + h + ")");
  if (h == "imply")
    unsupported(head.pos, "imply conditions");
  if (h == "preference")
    unsupported(head.pos, "preferences");
  if (h == "and" || h == "or") {
    if (e.items.size() == 1) {
      // (and) and (or) are the boolean constants.
      out.kind = LiftedFormula::Kind::Constant;
      out.const_value = h == "and";
      return out;
    }
    out.kind = h == "and" ? LiftedFormula::Kind::And : LiftedFormula::Kind::Or;
    for (std::size_t i = 1; i < e.items.size(); ++i)
      out.children.push_back(parse_formula(e.items[i]));
    return out;
  }
  if (h == "not") {
    if (e.items.size() != 2)
      throw ParseError(e.pos, "'not' takes one argument");
    out.kind = LiftedFormula::Kind::Not;
    out.children.push_back(parse_formula(e.items[1]));
    return out;
  }
  if (auto cmp = comparison_op(h)) {
    if (e.items.size() != 3)
      throw ParseError(e.pos, "comparison takes two arguments");
    const SExpr &lhs = e.items[1];
    const SExpr &rhs = e.items[2];
    // "=" doubles as object equality when neither side is numeric-shaped.
    if (*cmp == CmpOp::Eq && lhs.kind == SExpr::Kind::Symbol &&
        rhs.kind == SExpr::Kind::Symbol) {
      out.kind = LiftedFormula::Kind::ObjectEq;
      out.eq_lhs = parse_term(lhs);
      out.eq_rhs = parse_term(rhs);
      return out;
    }
    if (lhs.kind == SExpr::Kind::Symbol || rhs.kind == SExpr::Kind::Symbol)
      throw ParseError(e.pos, "comparison mixes objects and numbers");
    out.kind = LiftedFormula::Kind::Compare;
    out.cmp = *cmp;
    out.terms.push_back(parse_num_expr(lhs));
    out.terms.push_back(parse_num_expr(rhs));
    return out;
  }
  out.kind = LiftedFormula::Kind::Atom;
  out.atom = parse_atom(e);
  return out;
}

void parse_effect_into(const SExpr &e, std::vector<LiftedEffect> &out) {
  if (!e.is_list())
    throw ParseError(e.pos, "expected an effect");
  if (e.items.empty())
    return; // (and) — empty effect
  const SExpr &head = e.items[0];
  if (head.kind != SExpr::Kind::Symbol)
    throw ParseError(head.pos, "expected an effect head symbol");
  const std::string &h = head.symbol;
  if (h == "when")
    unsupported(head.pos, "conditional effects");
  if (h == "forall")
    unsupported(head.pos, "quantified effects");
  if (h == "scale-up" || h == "scale-down")
    unsupported(head.pos, h + " effects");
  if (h == "and") {
    for (std::size_t i = 1; i < e.items.size(); ++i)
      parse_effect_into(e.items[i], out);
    return;
  }
  LiftedEffect eff;
  eff.pos = e.pos;
  if (h == "not") {
    if (e.items.size() != 2)
      throw ParseError(e.pos, "'not' effect takes one argument");
    eff.kind = LiftedEffect::Kind::Delete;
    eff.target = parse_atom(e.items[1]);
    out.push_back(std::move(eff));
    return;
  }
  if (h == "assign" || h == "increase" || h == "decrease") {
    if (e.items.size() != 3)
      throw ParseError(e.pos, "'" + h + "' takes a fluent and an expression");
    eff.target = parse_atom(e.items[1]);
    eff.value = parse_num_expr(e.items[2]);
    if (h == "assign") {
      eff.kind = LiftedEffect::Kind::AssignNum;
    } else {
      eff.kind = LiftedEffect::Kind::Increase;
      if (h == "decrease") {
        LiftedNumExpr neg;
        neg.pos = eff.value.pos;
        neg.kind = LiftedNumExpr::Kind::Negate;
        neg.kids.push_back(std::move(eff.value));
        eff.value = std::move(neg);
      }
    }
    out.push_back(std::move(eff));
    return;
  }
  eff.kind = LiftedEffect::Kind::Add;
  eff.target = parse_atom(e);
  out.push_back(std::move(eff));
}

// Durative action conditions: (and ...) over (at start c) / (over all c) /
// (at end c) wrappers, or a single wrapper.
struct DurativeCondition {
  std::vector<LiftedFormula> at_start, over_all, at_end;
};

void parse_durative_condition_into(const SExpr &e, DurativeCondition &out) {
  if (!e.is_list())
    throw ParseError(e.pos, "expected a durative condition");
  if (e.items.empty())
    return;
  if (e.items[0].is_symbol("and")) {
    for (std::size_t i = 1; i < e.items.size(); ++i)
      parse_durative_condition_into(e.items[i], out);
    return;
  }
  if (e.items[0].is_symbol("at") && e.items.size() == 3) {
    const std::string tag = expect_symbol(e.items[1], "'start' or 'end'");
    if (tag == "start") {
      out.at_start.push_back(parse_formula(e.items[2]));
      return;
    }
    if (tag == "end") {
      out.at_end.push_back(parse_formula(e.items[2]));
      return;
    }
    throw ParseError(e.items[1].pos, "expected 'start' or 'end'");
  }
  if (e.items[0].is_symbol("over") && e.items.size() == 3) {
    if (!e.items[1].is_symbol("all"))
      throw ParseError(e.items[1].pos, "expected 'all'");
    out.over_all.push_back(parse_formula(e.items[2]));
    return;
  }
  throw ParseError(e.pos,
                   "durative conditions must be wrapped in (at start ...), "
                   "(over all ...) or (at end ...)");
}

struct DurativeEffects {
  std::vector<LiftedEffect> at_start, at_end;
};

void parse_durative_effect_into(const SExpr &e, DurativeEffects &out) {
  if (!e.is_list())
    throw ParseError(e.pos, "expected a durative effect");
  if (e.items.empty())
    return;
  if (e.items[0].is_symbol("and")) {
    for (std::size_t i = 1; i < e.items.size(); ++i)
      parse_durative_effect_into(e.items[i], out);
    return;
  }
  if (e.items[0].is_symbol("at") && e.items.size() == 3) {
    const std::string tag = expect_symbol(e.items[1], "'start' or 'end'");
    if (tag != "start" && tag != "end")
      throw ParseError(e.items[1].pos, "expected 'start' or 'end'");
    std::vector<LiftedEffect> effects;
    parse_effect_into(e.items[2], effects);
    auto &bucket = tag == "start" ? out.at_start : out.at_end;
    for (auto &eff : effects)
      bucket.push_back(std::move(eff));
    return;
  }
  if (e.items[0].is_symbol("increase") || e.items[0].is_symbol("decrease"))
    unsupported(e.pos, "continuous durative effects");
  throw ParseError(e.pos, "durative effects must be wrapped in "
                          "(at start ...) or (at end ...)");
}

LiftedFormula conj_of(std::vector<LiftedFormula> parts, SourcePos pos) {
  if (parts.empty()) {
    LiftedFormula t;
    t.kind = LiftedFormula::Kind::Constant;
    t.const_value = true;
    t.pos = pos;
    return t;
  }
  if (parts.size() == 1)
    return parts[0];
  LiftedFormula out;
  out.kind = LiftedFormula::Kind::And;
  out.children = std::move(parts);
  out.pos = pos;
  return out;
}

Rational constant_value(const LiftedNumExpr &e, const char *what) {
  switch (e.kind) {
  case LiftedNumExpr::Kind::Constant:
    return e.constant;
  case LiftedNumExpr::Kind::Negate:
    return -constant_value(e.kids[0], what);
  case LiftedNumExpr::Kind::Binary: {
    Rational lhs = constant_value(e.kids[0], what);
    Rational rhs = constant_value(e.kids[1], what);
    switch (e.op) {
    case NumOp::Add:
      return lhs + rhs;
    case NumOp::Sub:
      return lhs - rhs;
    case NumOp::Mul:
      return lhs * rhs;
    case NumOp::Div:
      if (rhs.is_zero())
        throw ParseError(e.pos, std::string(what) + " divides by zero");
      return lhs / rhs;
    }
    break;
  }
  case LiftedNumExpr::Kind::FluentRef:
    break;
  }
  throw ParseError(e.pos, std::string(what) + " must be a constant");
}

// (= ?duration c) | (and (>= ?duration l) (<= ?duration u)) in either order.
void parse_duration(const SExpr &e, const std::string &action,
                    Rational &lower, Rational &upper) {
  auto parse_bound = [&](const SExpr &bound, std::optional<Rational> &lo,
                         std::optional<Rational> &hi) {
    if (!bound.is_list() || bound.items.size() != 3)
      throw ParseError(bound.pos, "malformed duration constraint in "
                                  "durative-action " + action);
    std::string op = expect_symbol(bound.items[0], "duration operator");
    if (!bound.items[1].is_symbol("?duration"))
      throw ParseError(bound.items[1].pos,
                       "duration constraint must bound ?duration (action " +
                           action + ")");
    Rational v = constant_value(parse_num_expr(bound.items[2]),
                                "duration bound");
    if (op == "=") {
      lo = v;
      hi = v;
    } else if (op == ">=") {
      lo = v;
    } else if (op == "<=") {
      hi = v;
    } else {
      unsupported(bound.items[0].pos,
                  "duration constraint '" + op + "' (action " + action + ")");
    }
  };
  std::optional<Rational> lo, hi;
  if (e.is_call("and")) {
    for (std::size_t i = 1; i < e.items.size(); ++i)
      parse_bound(e.items[i], lo, hi);
  } else {
    parse_bound(e, lo, hi);
  }
  if (!lo || !hi)
    throw ParseError(e.pos, "durative-action " + action +
                                " needs both duration bounds");
  lower = *lo;
  upper = *hi;
}

std::vector<TypedName> parse_params(const SExpr &e) {
  if (!e.is_list())
    throw ParseError(e.pos, "expected a parameter list");
  return parse_typed_list(e.items, 0, /*variables=*/true);
}

// Walks ":key value" sections of an action-like block.
struct SectionReader {
  const SExpr &block;
  std::size_t index;

  std::optional<std::pair<std::string, const SExpr *>> next() {
    if (index >= block.items.size())
      return std::nullopt;
    std::string key = expect_symbol(block.items[index], "section keyword");
    if (key.empty() || key[0] != ':')
      throw ParseError(block.items[index].pos,
                       "expected a :keyword, got '" + key + "'");
    if (index + 1 >= block.items.size())
      throw ParseError(block.items[index].pos,
                       "missing value after " + key);
    const SExpr *value = &block.items[index + 1];
    index += 2;
    return std::make_pair(key, value);
  }
};

} // namespace

LiftedDomain parse_domain(std::string_view text) {
  SExpr root = parse_sexpr(text);
  if (!root.is_call("define"))
    throw ParseError(root.pos, "expected (define (domain ...) ...)");
  if (root.items.size() < 2 || !root.items[1].is_call("domain"))
    throw ParseError(root.pos, "expected (domain <name>)");
  LiftedDomain domain;
  domain.name = expect_symbol(root.items[1].at(1), "domain name");

  for (std::size_t i = 2; i < root.items.size(); ++i) {
    const SExpr &block = root.items[i];
    if (!block.is_list() || block.items.empty())
      throw ParseError(block.pos, "expected a domain block");
    std::string key = expect_symbol(block.items[0], "block keyword");

    if (key == ":requirements") {
      for (std::size_t k = 1; k < block.items.size(); ++k) {
        std::string req = expect_symbol(block.items[k], "requirement");
        if (!kSupportedRequirements.count(req))
          unsupported(block.items[k].pos, req);
        domain.requirements.push_back(req);
      }
    } else if (key == ":types") {
      domain.types = parse_typed_list(block.items, 1, false);
    } else if (key == ":constants") {
      domain.constants = parse_typed_list(block.items, 1, false);
    } else if (key == ":predicates") {
      for (std::size_t k = 1; k < block.items.size(); ++k) {
        const SExpr &p = block.items[k];
        if (!p.is_list() || p.items.empty())
          throw ParseError(p.pos, "expected a predicate declaration");
        PredicateSchema schema;
        schema.name = expect_symbol(p.items[0], "predicate name");
        schema.params = parse_typed_list(p.items, 1, true);
        schema.pos = p.pos;
        domain.predicates.push_back(std::move(schema));
      }
    } else if (key == ":functions") {
      // A trailing "- number" type marker is tolerated and ignored.
      std::vector<SExpr> entries;
      for (std::size_t k = 1; k < block.items.size(); ++k) {
        const SExpr &f = block.items[k];
        if (f.is_symbol("-")) {
          if (k + 1 < block.items.size() &&
              block.items[k + 1].is_symbol("number")) {
            ++k;
            continue;
          }
          throw ParseError(f.pos, "unexpected '-' in :functions");
        }
        if (!f.is_list() || f.items.empty())
          throw ParseError(f.pos, "expected a function declaration");
        FunctionSchema schema;
        schema.name = expect_symbol(f.items[0], "function name");
        schema.params = parse_typed_list(f.items, 1, true);
        schema.pos = f.pos;
        domain.functions.push_back(std::move(schema));
      }
    } else if (key == ":action") {
      InstantSchema schema;
      schema.name = expect_symbol(block.at(1), "action name");
      schema.pos = block.pos;
      SectionReader reader{block, 2};
      bool saw_effect = false;
      while (auto section = reader.next()) {
        auto [k, value] = *section;
        if (k == ":parameters")
          schema.params = parse_params(*value);
        else if (k == ":precondition")
          schema.pre = parse_formula(*value);
        else if (k == ":effect") {
          parse_effect_into(*value, schema.effects);
          saw_effect = true;
        } else
          throw ParseError(value->pos, "unexpected section " + k +
                                           " in action " + schema.name);
      }
      if (!saw_effect)
        throw ParseError(block.pos, "action " + schema.name +
                                        " is missing :effect");
      domain.actions.push_back(std::move(schema));
    } else if (key == ":durative-action") {
      DurativeSchema schema;
      schema.name = expect_symbol(block.at(1), "durative-action name");
      schema.pos = block.pos;
      SectionReader reader{block, 2};
      bool saw_duration = false;
      DurativeCondition cond;
      DurativeEffects eff;
      while (auto section = reader.next()) {
        auto [k, value] = *section;
        if (k == ":parameters")
          schema.params = parse_params(*value);
        else if (k == ":duration") {
          parse_duration(*value, schema.name, schema.lower, schema.upper);
          saw_duration = true;
        } else if (k == ":condition")
          parse_durative_condition_into(*value, cond);
        else if (k == ":effect")
          parse_durative_effect_into(*value, eff);
        else
          throw ParseError(value->pos, "unexpected section " + k +
                                           " in durative-action " +
                                           schema.name);
      }
      if (!saw_duration)
        throw ParseError(block.pos, "durative-action " + schema.name +
                                        " is missing :duration");
      schema.at_start = conj_of(std::move(cond.at_start), block.pos);
      schema.over_all = conj_of(std::move(cond.over_all), block.pos);
      schema.at_end = conj_of(std::move(cond.at_end), block.pos);
      schema.start_effects = std::move(eff.at_start);
      schema.end_effects = std::move(eff.at_end);
      domain.durative_actions.push_back(std::move(schema));
    } else if (key == ":process") {
      ProcessSchema schema;
      schema.name = expect_symbol(block.at(1), "process name");
      schema.pos = block.pos;
      SectionReader reader{block, 2};
      while (auto section = reader.next()) {
        auto [k, value] = *section;
        if (k == ":parameters")
          schema.params = parse_params(*value);
        else if (k == ":precondition")
          schema.pre = parse_formula(*value);
        else if (k == ":effect") {
          // (and (increase (f) (* #t rate)) ...) or a single increase
          auto parse_rate = [&](const SExpr &inc) {
            if (!inc.is_call("increase") || inc.items.size() != 3)
              throw ParseError(inc.pos,
                               "process effects must be (increase (f) (* #t "
                               "rate))");
            LiftedAtom target = parse_atom(inc.items[1]);
            const SExpr &product = inc.items[2];
            if (!product.is_call("*") || product.items.size() != 3)
              throw ParseError(product.pos,
                               "process rate must be (* #t rate)");
            const SExpr *rate = nullptr;
            if (product.items[1].is_symbol("#t"))
              rate = &product.items[2];
            else if (product.items[2].is_symbol("#t"))
              rate = &product.items[1];
            else
              throw ParseError(product.pos, "process rate must mention #t");
            schema.rates.emplace_back(std::move(target),
                                      parse_num_expr(*rate));
          };
          if (value->is_call("and")) {
            for (std::size_t k2 = 1; k2 < value->items.size(); ++k2)
              parse_rate(value->items[k2]);
          } else {
            parse_rate(*value);
          }
        } else
          throw ParseError(value->pos, "unexpected section " + k +
                                           " in process " + schema.name);
      }
      domain.processes.push_back(std::move(schema));
    } else if (key == ":event") {
      EventSchema schema;
      schema.name = expect_symbol(block.at(1), "event name");
      schema.pos = block.pos;
      SectionReader reader{block, 2};
      while (auto section = reader.next()) {
        auto [k, value] = *section;
        if (k == ":parameters")
          schema.params = parse_params(*value);
        else if (k == ":precondition")
          schema.pre = parse_formula(*value);
        else if (k == ":effect")
          parse_effect_into(*value, schema.effects);
        else
          throw ParseError(value->pos, "unexpected section " + k +
                                           " in event " + schema.name);
      }
      domain.events.push_back(std::move(schema));
    } else if (key == ":derived") {
      unsupported(block.pos, ":derived predicates");
    } else if (key == ":constraints") {
      unsupported(block.pos, ":constraints");
    } else {
      throw ParseError(block.pos, "unknown domain block " + key);
    }
  }
  return domain;
}

ProblemSpec parse_problem(std::string_view text) {
  SExpr root = parse_sexpr(text);
  if (!root.is_call("define"))
    throw ParseError(root.pos, "expected (define (problem ...) ...)");
  if (root.items.size() < 2 || !root.items[1].is_call("problem"))
    throw ParseError(root.pos, "expected (problem <name>)");
  ProblemSpec spec;
  spec.name = expect_symbol(root.items[1].at(1), "problem name");
  spec.goal.kind = LiftedFormula::Kind::Constant;
  spec.goal.const_value = true;

  for (std::size_t i = 2; i < root.items.size(); ++i) {
    const SExpr &block = root.items[i];
    if (!block.is_list() || block.items.empty())
      throw ParseError(block.pos, "expected a problem block");
    std::string key = expect_symbol(block.items[0], "block keyword");

    if (key == ":domain") {
      spec.domain_name = expect_symbol(block.at(1), "domain name");
    } else if (key == ":objects") {
      spec.objects = parse_typed_list(block.items, 1, false);
    } else if (key == ":init") {
      for (std::size_t k = 1; k < block.items.size(); ++k) {
        const SExpr &entry = block.items[k];
        if (!entry.is_list() || entry.items.empty())
          throw ParseError(entry.pos, "expected an init entry");
        if (entry.items[0].kind == SExpr::Kind::Number ||
            (entry.is_call("at") && entry.items.size() == 3 &&
             entry.items[1].kind == SExpr::Kind::Number))
          unsupported(entry.pos, "timed initial literals");
        if (entry.is_call("not"))
          continue; // explicit negative init literal: already the default
        if (entry.is_call("=")) {
          if (entry.items.size() != 3 ||
              entry.items[2].kind != SExpr::Kind::Number)
            throw ParseError(entry.pos,
                             "numeric init must be (= (f ...) <number>)");
          spec.num_init.emplace_back(parse_atom(entry.items[1]),
                                     entry.items[2].number);
          continue;
        }
        spec.bool_init.push_back(parse_atom(entry));
      }
    } else if (key == ":goal") {
      spec.goal = parse_formula(block.at(1));
    } else if (key == ":metric") {
      unsupported(block.pos, ":metric");
    } else if (key == ":constraints") {
      unsupported(block.pos, ":constraints");
    } else {
      throw ParseError(block.pos, "unknown problem block " + key);
    }
  }
  return spec;
}

} // namespace t2p
