#include "t2p/pddl.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace t2p {

namespace {

// Legal PDDL symbol: letter first, then letters/digits/-/_ . Anything else
// is mapped deterministically, with a collision-avoiding suffix.
class Sanitizer {
public:
  std::string rename(const std::string &name) {
    std::string cleaned;
    for (char c : name) {
      unsigned char u = static_cast<unsigned char>(c);
      if (std::isalnum(u) || c == '-' || c == '_')
        cleaned.push_back(static_cast<char>(std::tolower(u)));
      else
        cleaned.push_back('_');
    }
    if (cleaned.empty() || !std::isalpha(static_cast<unsigned char>(cleaned[0])))
      cleaned = "x" + cleaned;
    if (used_.insert(cleaned).second)
      return cleaned;
    for (int i = 2;; ++i) {
      std::string candidate = cleaned + "-" + std::to_string(i);
      if (used_.insert(candidate).second)
        return candidate;
    }
  }

private:
  std::unordered_set<std::string> used_;
};

// Copy of the problem with all names made PDDL-legal. Fluent ids are
// positional, so formulas and effects carry over unchanged.
PlusProblem sanitized(const PlusProblem &p) {
  PlusProblem out = p;
  Sanitizer fluent_names;
  for (auto &f : out.fluents)
    f.name = fluent_names.rename(f.name);
  Sanitizer element_names;
  for (auto &a : out.actions)
    a.name = element_names.rename(a.name);
  for (auto &e : out.events)
    e.name = element_names.rename(e.name);
  for (auto &pr : out.processes)
    pr.name = element_names.rename(pr.name);
  Sanitizer problem_names;
  out.name = problem_names.rename(out.name);
  return out;
}

std::string effect_block(const std::vector<Effect> &effects,
                         const std::vector<Fluent> &fluents) {
  std::string out = "(and";
  for (const auto &e : effects)
    out += " " + to_string(e, fluents);
  return out + ")";
}

} // namespace

PlusText print_plus(const PlusProblem &input) {
  PlusProblem p = sanitized(input);
  const auto &fluents = p.fluents;

  std::ostringstream dom;
  dom << "(define (domain " << p.name << ")\n";
  dom << "  (:requirements :fluents :time :negative-preconditions)\n";
  bool any_bool = false, any_num = false;
  for (const auto &f : fluents) {
    if (f.kind == FluentKind::Boolean)
      any_bool = true;
    else
      any_num = true;
  }
  if (any_bool) {
    dom << "  (:predicates";
    for (const auto &f : fluents)
      if (f.kind == FluentKind::Boolean)
        dom << " (" << f.name << ")";
    dom << ")\n";
  }
  if (any_num) {
    dom << "  (:functions";
    for (const auto &f : fluents)
      if (f.kind == FluentKind::Numeric)
        dom << " (" << f.name << ")";
    dom << ")\n";
  }
  for (const auto &a : p.actions) {
    dom << "  (:action " << a.name << "\n";
    dom << "   :parameters ()\n";
    dom << "   :precondition " << to_string(a.pre, fluents) << "\n";
    dom << "   :effect " << effect_block(a.effects, fluents) << ")\n";
  }
  for (const auto &e : p.events) {
    dom << "  (:event " << e.name << "\n";
    dom << "   :parameters ()\n";
    dom << "   :precondition " << to_string(e.pre, fluents) << "\n";
    dom << "   :effect " << effect_block(e.effects, fluents) << ")\n";
  }
  for (const auto &proc : p.processes) {
    dom << "  (:process " << proc.name << "\n";
    dom << "   :parameters ()\n";
    dom << "   :precondition " << to_string(proc.pre, fluents) << "\n";
    dom << "   :effect (and";
    for (const auto &eff : proc.effects)
      dom << " (increase (" << fluents[eff.target.index].name << ") (* #t "
          << to_string(eff.rate, fluents) << "))";
    dom << "))\n";
  }
  dom << ")\n";

  std::ostringstream prob;
  prob << "(define (problem " << p.name << ")\n";
  prob << "  (:domain " << p.name << ")\n";
  prob << "  (:init";
  for (std::size_t i = 0; i < fluents.size(); ++i) {
    const Value &v = p.init.values[i];
    if (std::holds_alternative<bool>(v)) {
      if (std::get<bool>(v))
        prob << " (" << fluents[i].name << ")";
    } else {
      prob << " (= (" << fluents[i].name << ") "
           << std::get<Rational>(v).str() << ")";
    }
  }
  prob << ")\n";
  prob << "  (:goal " << to_string(p.goal, fluents) << ")\n";
  prob << ")\n";

  return PlusText{dom.str(), prob.str()};
}

// ---------------------------------------------------------------------------
// Plan files

namespace {

struct PlanLine {
  Rational time;
  std::string name;
  std::optional<Rational> duration;
  int line_no;
};

[[noreturn]] void plan_error(int line, const std::string &msg) {
  throw ParseError(SourcePos{line, 1}, msg);
}

std::string trim(std::string s) {
  auto issp = [](char c) { return std::isspace(static_cast<unsigned char>(c)); };
  while (!s.empty() && issp(s.front()))
    s.erase(s.begin());
  while (!s.empty() && issp(s.back()))
    s.pop_back();
  return s;
}

// "<time>: (<tok> <tok> ...) [<duration>]" — bracketed duration optional.
std::optional<PlanLine> parse_plan_line(std::string raw, int line_no) {
  std::string line = raw;
  // The makespan directive is handled by the caller; other comments are
  // stripped here.
  if (auto semi = line.find(';'); semi != std::string::npos)
    line = line.substr(0, semi);
  line = trim(std::move(line));
  if (line.empty())
    return std::nullopt;

  auto colon = line.find(':');
  if (colon == std::string::npos)
    plan_error(line_no, "plan entry is missing ':' after the time");
  auto time = Rational::parse(trim(line.substr(0, colon)));
  if (!time)
    plan_error(line_no, "invalid time '" + trim(line.substr(0, colon)) + "'");

  auto open = line.find('(', colon);
  if (open == std::string::npos)
    plan_error(line_no, "plan entry is missing '(action)'");
  auto close = line.find(')', open);
  if (close == std::string::npos)
    plan_error(line_no, "plan entry has an unterminated '('");
  std::istringstream tokens(line.substr(open + 1, close - open - 1));
  std::string tok, name;
  while (tokens >> tok) {
    if (!name.empty())
      name += '_';
    for (char c : tok)
      name.push_back(
          static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (name.empty())
    plan_error(line_no, "plan entry names no action");

  PlanLine out{*time, name, std::nullopt, line_no};
  std::string rest = trim(line.substr(close + 1));
  if (!rest.empty()) {
    if (rest.front() != '[' || rest.back() != ']')
      plan_error(line_no, "trailing text after action: '" + rest + "'");
    auto d = Rational::parse(trim(rest.substr(1, rest.size() - 2)));
    if (!d)
      plan_error(line_no, "invalid duration '" + rest + "'");
    out.duration = *d;
  }
  return out;
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::string current;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  lines.push_back(current);
  return lines;
}

std::optional<Rational> makespan_directive(const std::string &raw, int line_no) {
  std::string line = trim(raw);
  if (line.rfind(";;", 0) != 0)
    return std::nullopt;
  std::istringstream in(line.substr(2));
  std::string word;
  if (!(in >> word) || word != "makespan")
    return std::nullopt;
  std::string value;
  if (!(in >> value))
    plan_error(line_no, "';; makespan' needs a value");
  auto t = Rational::parse(value);
  if (!t)
    plan_error(line_no, "invalid makespan '" + value + "'");
  return t;
}

} // namespace

TemporalPlan parse_temporal_plan(std::string_view text) {
  std::vector<TemporalPlanEntry> entries;
  int line_no = 0;
  for (const auto &raw : split_lines(text)) {
    ++line_no;
    if (makespan_directive(raw, line_no))
      plan_error(line_no, "makespan directive in a temporal plan");
    if (auto parsed = parse_plan_line(raw, line_no))
      entries.push_back(TemporalPlanEntry{
          parsed->time, parsed->name,
          parsed->duration.value_or(Rational(0))});
  }
  return TemporalPlan::of(std::move(entries));
}

PlusPlan parse_plus_plan(std::string_view text) {
  std::vector<PlusPlanStep> steps;
  std::optional<Rational> makespan;
  int line_no = 0;
  for (const auto &raw : split_lines(text)) {
    ++line_no;
    if (auto m = makespan_directive(raw, line_no)) {
      if (makespan)
        plan_error(line_no, "duplicate makespan directive");
      makespan = m;
      continue;
    }
    if (auto parsed = parse_plan_line(raw, line_no)) {
      if (parsed->duration)
        plan_error(line_no, "durations are not allowed in a PDDL+ plan");
      steps.push_back(PlusPlanStep{parsed->time, parsed->name});
    }
  }
  if (!makespan)
    throw ParseError(SourcePos{line_no, 1},
                     "PDDL+ plan is missing the ';; makespan <t>' line");
  return PlusPlan::of(std::move(steps), *makespan);
}

std::string print_plan(const TemporalPlan &plan) {
  std::ostringstream out;
  for (const auto &e : plan.entries) {
    out << e.time.str() << ": (" << e.action << ")";
    if (!e.duration.is_zero())
      out << " [" << e.duration.str() << "]";
    out << "\n";
  }
  return out.str();
}

std::string print_plan(const PlusPlan &plan) {
  std::ostringstream out;
  for (const auto &s : plan.steps)
    out << s.time.str() << ": (" << s.action << ")\n";
  out << ";; makespan " << plan.makespan.str() << "\n";
  return out.str();
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string &path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot write file: " + path);
  out << content;
}

} // namespace t2p
