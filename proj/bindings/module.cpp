// Python bindings for the core pipeline. Problems and compilations are
// opaque handles; plans cross the boundary as plan-file text, rationals as
// exact strings, and reports as plain dicts mirroring the CLI JSON.

#include "t2p/compiler.hpp"
#include "t2p/pddl.hpp"
#include "t2p/plan_bridge.hpp"
#include "t2p/plus_validator.hpp"
#include "t2p/reports.hpp"
#include "t2p/solver.hpp"
#include "t2p/temporal_validator.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace t2p;

namespace {

py::object json_to_py(const Json &j) {
  switch (j.type()) {
  case Json::value_t::null:
    return py::none();
  case Json::value_t::boolean:
    return py::bool_(j.get<bool>());
  case Json::value_t::number_integer:
    return py::int_(j.get<long long>());
  case Json::value_t::number_unsigned:
    return py::int_(j.get<unsigned long long>());
  case Json::value_t::number_float:
    return py::float_(j.get<double>());
  case Json::value_t::string:
    return py::str(j.get<std::string>());
  case Json::value_t::array: {
    py::list out;
    for (const auto &item : j)
      out.append(json_to_py(item));
    return out;
  }
  case Json::value_t::object: {
    py::dict out;
    for (auto it = j.begin(); it != j.end(); ++it)
      out[py::str(it.key())] = json_to_py(it.value());
    return out;
  }
  default:
    return py::none();
  }
}

Rational delta_from(const std::string &text) {
  auto d = Rational::parse(text);
  if (!d || !(*d > Rational(0)))
    throw std::invalid_argument("delta must be a positive rational, got '" +
                                text + "'");
  return *d;
}

py::dict validate_plus_impl(const PlusProblem &p, const std::string &plan_text,
                            const std::string &delta, bool trace) {
  PlusPlan plan = parse_plus_plan(plan_text);
  PlusValidatorOptions options;
  options.delta = delta_from(delta);
  options.check_confluence = true;
  PlusValidationReport report = validate_plus(p, plan, options);
  return json_to_py(to_json(report, p, trace));
}

py::dict solve_impl(const PlusProblem &p, const std::string &delta,
                    int horizon, int max_actions_per_step,
                    std::uint64_t node_budget) {
  SolverOptions options;
  options.delta = delta_from(delta);
  options.horizon = horizon;
  options.max_actions_per_step = max_actions_per_step;
  options.node_budget = node_budget;
  SolveResult result = solve(p, options);
  py::dict out;
  out["status"] = result.status == SolveStatus::Found ? "found"
                  : result.status == SolveStatus::Exhausted
                      ? "exhausted"
                      : "budget-exceeded";
  if (result.plan)
    out["plan"] = print_plan(*result.plan);
  out["stats"] = json_to_py(to_json(result.stats));
  return out;
}

class Compilation {
public:
  Compilation(const TemporalProblem &source, bool expire_events) {
    CompilerOptions options;
    options.emit_expire_events = expire_events;
    artifacts_ = compile(source, options);
    text_ = print_plus(artifacts_.result);
  }

  std::string domain_text() const { return text_.domain; }
  std::string problem_text() const { return text_.problem; }
  py::dict name_map() const {
    return json_to_py(name_map_json(artifacts_));
  }
  const PlusProblem &result() const { return artifacts_.result; }

  std::string lift(const std::string &plus_plan_text) const {
    return print_plan(lift_plan(artifacts_, parse_plus_plan(plus_plan_text)));
  }

  py::dict lower(const std::string &temporal_plan_text) const {
    LoweredPlan lowered =
        lower_plan(artifacts_, parse_temporal_plan(temporal_plan_text));
    py::dict out;
    out["plan"] = print_plan(lowered.plan);
    out["delta"] = lowered.delta.delta.str();
    out["source_plan_valid"] = lowered.source_plan_valid;
    if (!lowered.source_plan_diagnostic.empty())
      out["source_plan_diagnostic"] = lowered.source_plan_diagnostic;
    return out;
  }

  py::dict validate_plus(const std::string &plan_text,
                         const std::string &delta, bool trace) const {
    return validate_plus_impl(artifacts_.result, plan_text, delta, trace);
  }

  py::dict solve(const std::string &delta, int horizon,
                 int max_actions_per_step, std::uint64_t node_budget) const {
    return solve_impl(artifacts_.result, delta, horizon, max_actions_per_step,
                      node_budget);
  }

private:
  CompilationArtifacts artifacts_;
  PlusText text_;
};

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Temporal-planning-to-PDDL+ compiler, validators and solver";

  py::register_exception<ParseError>(m, "PddlParseError");
  py::register_exception<GroundError>(m, "PddlGroundError");
  py::register_exception<ModelError>(m, "ModelValidationError");
  py::register_exception<PlanBridgeError>(m, "PlanBridgeError");
  py::register_exception<SolverError>(m, "SolverRuntimeError");

  py::class_<TemporalProblem>(m, "TemporalProblem")
      .def_property_readonly("name",
                             [](const TemporalProblem &p) { return p.name; })
      .def("fluent_names",
           [](const TemporalProblem &p) {
             std::vector<std::string> names;
             for (const auto &f : p.fluents)
               names.push_back(f.name);
             return names;
           })
      .def("instant_action_names",
           [](const TemporalProblem &p) {
             std::vector<std::string> names;
             for (const auto &a : p.instant_actions)
               names.push_back(a.name);
             return names;
           })
      .def("durative_action_names", [](const TemporalProblem &p) {
        std::vector<std::string> names;
        for (const auto &a : p.durative_actions)
          names.push_back(a.name);
        return names;
      });

  py::class_<PlusProblem>(m, "PlusProblem")
      .def_property_readonly("name",
                             [](const PlusProblem &p) { return p.name; })
      .def("action_names",
           [](const PlusProblem &p) {
             std::vector<std::string> names;
             for (const auto &a : p.actions)
               names.push_back(a.name);
             return names;
           })
      .def("event_names",
           [](const PlusProblem &p) {
             std::vector<std::string> names;
             for (const auto &e : p.events)
               names.push_back(e.name);
             return names;
           })
      .def("process_names", [](const PlusProblem &p) {
        std::vector<std::string> names;
        for (const auto &pr : p.processes)
          names.push_back(pr.name);
        return names;
      });

  py::class_<Compilation>(m, "Compilation")
      .def_property_readonly("result", &Compilation::result,
                             py::return_value_policy::reference_internal)
      .def("domain_text", &Compilation::domain_text)
      .def("problem_text", &Compilation::problem_text)
      .def("name_map", &Compilation::name_map)
      .def("lift", &Compilation::lift, py::arg("plus_plan"))
      .def("lower", &Compilation::lower, py::arg("temporal_plan"))
      .def("validate_plus", &Compilation::validate_plus, py::arg("plan"),
           py::arg("delta") = "1", py::arg("trace") = false)
      .def("solve", &Compilation::solve, py::arg("delta") = "1",
           py::arg("horizon") = 20, py::arg("max_actions_per_step") = 0,
           py::arg("node_budget") = 0);

  m.def(
      "parse_temporal",
      [](const std::string &domain, const std::string &problem) {
        return parse_temporal_problem(domain, problem);
      },
      py::arg("domain"), py::arg("problem"),
      "Parse and ground a PDDL 2.1 domain/problem pair");

  m.def(
      "parse_plus",
      [](const std::string &domain, const std::string &problem) {
        return parse_plus_problem(domain, problem);
      },
      py::arg("domain"), py::arg("problem"),
      "Parse and ground a PDDL+ domain/problem pair");

  m.def(
      "compile",
      [](const TemporalProblem &p, bool expire_events) {
        return Compilation(p, expire_events);
      },
      py::arg("problem"), py::arg("expire_events") = true,
      "Compile a temporal problem into PDDL+");

  m.def(
      "print_plus",
      [](const PlusProblem &p) {
        PlusText text = print_plus(p);
        py::dict out;
        out["domain"] = text.domain;
        out["problem"] = text.problem;
        return out;
      },
      py::arg("problem"));

  m.def(
      "validate_temporal",
      [](const TemporalProblem &p, const std::string &plan_text, bool trace) {
        TemporalPlan plan = parse_temporal_plan(plan_text);
        TemporalValidationReport report = validate_temporal(p, plan);
        return json_to_py(to_json(report, p, trace));
      },
      py::arg("problem"), py::arg("plan"), py::arg("trace") = false);

  m.def("validate_plus", &validate_plus_impl, py::arg("problem"),
        py::arg("plan"), py::arg("delta") = "1", py::arg("trace") = false);

  m.def("solve", &solve_impl, py::arg("problem"), py::arg("delta") = "1",
        py::arg("horizon") = 20, py::arg("max_actions_per_step") = 0,
        py::arg("node_budget") = 0);

  m.def(
      "select_delta",
      [](const std::vector<std::string> &times) {
        std::vector<Rational> parsed;
        for (const auto &t : times) {
          auto r = Rational::parse(t);
          if (!r)
            throw std::invalid_argument("invalid rational '" + t + "'");
          parsed.push_back(*r);
        }
        return json_to_py(to_json(select_delta(parsed)));
      },
      py::arg("times"),
      "Largest quantum dividing every time, with per-time quotients");
}
