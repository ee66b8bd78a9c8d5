// Command-line front end: compile a temporal domain/problem to PDDL+,
// validate plans under either semantics, translate plans across the
// compilation, run the bounded solver, and check the full round trip.
//
// Exit codes: 0 success / valid plan, 1 invalid plan, 2 input error,
// 3 resource limit or divergence. Reports go to stdout as JSON
// (schema 1); diagnostics go to stderr.

#include "t2p/compiler.hpp"
#include "t2p/pddl.hpp"
#include "t2p/plan_bridge.hpp"
#include "t2p/plus_validator.hpp"
#include "t2p/reports.hpp"
#include "t2p/solver.hpp"
#include "t2p/temporal_validator.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

constexpr int kExitValid = 0;
constexpr int kExitInvalidPlan = 1;
constexpr int kExitInputError = 2;
constexpr int kExitResource = 3;

using namespace t2p;

Rational parse_delta(const std::string &text) {
  auto d = Rational::parse(text);
  if (!d || !(*d > Rational(0)))
    throw std::runtime_error("--delta must be a positive rational, got '" +
                             text + "'");
  return *d;
}

void emit(const Json &report) { std::cout << report.dump(2) << "\n"; }

struct CompileArgs {
  std::string domain, problem;
  std::string out_domain, out_problem, name_map;
  bool no_expire = false;
};

int run_compile(const CompileArgs &args) {
  TemporalProblem source = parse_temporal_problem(read_file(args.domain),
                                                  read_file(args.problem));
  CompilerOptions options;
  options.emit_expire_events = !args.no_expire;
  CompilationArtifacts artifacts = compile(source, options);
  PlusText text = print_plus(artifacts.result);
  if (!args.out_domain.empty())
    write_file(args.out_domain, text.domain);
  if (!args.out_problem.empty())
    write_file(args.out_problem, text.problem);
  if (!args.name_map.empty())
    write_file(args.name_map, name_map_json(artifacts).dump(2) + "\n");

  Json report;
  report["schema"] = 1;
  report["kind"] = "compile";
  report["fluents"] = artifacts.result.fluents.size();
  report["actions"] = artifacts.result.actions.size();
  report["events"] = artifacts.result.events.size();
  report["processes"] = artifacts.result.processes.size();
  if (args.out_domain.empty())
    report["domain"] = text.domain;
  if (args.out_problem.empty())
    report["problem"] = text.problem;
  emit(report);
  return kExitValid;
}

struct ValidateArgs {
  std::string domain, problem, plan;
  std::string delta = "1";
  std::string trace_out;
};

int run_validate_temporal(const ValidateArgs &args) {
  TemporalProblem p = parse_temporal_problem(read_file(args.domain),
                                             read_file(args.problem));
  TemporalPlan plan = parse_temporal_plan(read_file(args.plan));
  TemporalValidationReport report = validate_temporal(p, plan);
  emit(to_json(report, p, false));
  if (!args.trace_out.empty())
    write_file(args.trace_out, to_json(report, p, true).dump(2) + "\n");
  return report.valid ? kExitValid : kExitInvalidPlan;
}

int run_validate_plus(const ValidateArgs &args) {
  PlusProblem p =
      parse_plus_problem(read_file(args.domain), read_file(args.problem));
  PlusPlan plan = parse_plus_plan(read_file(args.plan));
  PlusValidatorOptions options;
  options.delta = parse_delta(args.delta);
  options.check_confluence = true;
  PlusValidationReport report = validate_plus(p, plan, options);
  emit(to_json(report, p, false));
  if (!args.trace_out.empty())
    write_file(args.trace_out, to_json(report, p, true).dump(2) + "\n");
  if (report.valid)
    return kExitValid;
  return report.failure->phase == PlusFailurePhase::Divergence
             ? kExitResource
             : kExitInvalidPlan;
}

struct SolveArgs {
  std::string domain, problem;
  std::string delta = "1";
  int horizon = 20;
  int max_actions_per_step = 0;
  std::string plan_out, stats_out;
};

int run_solve(const SolveArgs &args) {
  PlusProblem p =
      parse_plus_problem(read_file(args.domain), read_file(args.problem));
  SolverOptions options;
  options.delta = parse_delta(args.delta);
  options.horizon = args.horizon;
  options.max_actions_per_step = args.max_actions_per_step;
  SolveResult result = solve(p, options);

  Json report;
  report["schema"] = 1;
  report["kind"] = "solve";
  report["status"] = result.status == SolveStatus::Found ? "found"
                     : result.status == SolveStatus::Exhausted
                         ? "exhausted"
                         : "budget-exceeded";
  report["stats"] = to_json(result.stats);
  if (result.plan) {
    report["plan"] = print_plan(*result.plan);
    if (!args.plan_out.empty())
      write_file(args.plan_out, print_plan(*result.plan));
  }
  if (!args.stats_out.empty())
    write_file(args.stats_out, to_json(result.stats).dump(2) + "\n");
  emit(report);
  return result.status == SolveStatus::Found ? kExitValid : kExitResource;
}

struct RoundtripArgs {
  std::string domain, problem;
  std::string delta = "1";
  int horizon = 20;
  std::string temporal_plan;
  bool no_expire = false;
};

int run_roundtrip(const RoundtripArgs &args) {
  Json report;
  report["schema"] = 1;
  report["kind"] = "roundtrip";
  Json stages = Json::array();
  auto stage = [&](const std::string &name, const std::string &status,
                   Json extra = Json::object()) {
    Json s = std::move(extra);
    s["name"] = name;
    s["status"] = status;
    stages.push_back(std::move(s));
  };

  TemporalProblem source = parse_temporal_problem(read_file(args.domain),
                                                  read_file(args.problem));
  CompilerOptions coptions;
  coptions.emit_expire_events = !args.no_expire;
  CompilationArtifacts artifacts = compile(source, coptions);
  stage("compile", "ok");

  int exit_code = kExitValid;
  bool all_agree = true;

  // Forward direction: solve the compiled problem, lift, validate.
  SolverOptions soptions;
  soptions.delta = parse_delta(args.delta);
  soptions.horizon = args.horizon;
  SolveResult solved = solve(artifacts.result, soptions);
  if (solved.status != SolveStatus::Found) {
    stage("solve",
          solved.status == SolveStatus::Exhausted ? "exhausted"
                                                  : "budget-exceeded");
    report["stages"] = std::move(stages);
    report["agree"] = false;
    emit(report);
    return kExitResource;
  }
  stage("solve", "found", Json{{"plan", print_plan(*solved.plan)}});

  PlusValidatorOptions voptions;
  voptions.delta = soptions.delta;
  voptions.check_confluence = true;
  PlusValidationReport plus_report =
      validate_plus(artifacts.result, *solved.plan, voptions);
  stage("validate-plus", plus_report.valid ? "valid" : "invalid");
  if (!plus_report.valid) {
    all_agree = false;
    exit_code = kExitInvalidPlan;
  }

  TemporalPlan lifted = lift_plan(artifacts, *solved.plan);
  stage("lift", "ok", Json{{"plan", print_plan(lifted)}});
  TemporalValidationReport lifted_report = validate_temporal(source, lifted);
  stage("validate-temporal", lifted_report.valid ? "valid" : "invalid");
  if (!lifted_report.valid) {
    all_agree = false;
    exit_code = kExitInvalidPlan;
  }

  // Reverse direction, when a temporal plan is supplied: validate, lower,
  // validate under the compiled semantics.
  if (!args.temporal_plan.empty()) {
    TemporalPlan input = parse_temporal_plan(read_file(args.temporal_plan));
    TemporalValidationReport input_report = validate_temporal(source, input);
    stage("validate-temporal-input",
          input_report.valid ? "valid" : "invalid");
    if (!input_report.valid) {
      all_agree = false;
      exit_code = kExitInvalidPlan;
    } else {
      LoweredPlan lowered = lower_plan(artifacts, input);
      stage("lower", "ok",
            Json{{"plan", print_plan(lowered.plan)},
                 {"delta", lowered.delta.delta.str()}});
      PlusValidatorOptions lowered_options;
      lowered_options.delta = lowered.delta.delta;
      lowered_options.check_confluence = true;
      PlusValidationReport lowered_report =
          validate_plus(artifacts.result, lowered.plan, lowered_options);
      stage("validate-plus-lowered",
            lowered_report.valid ? "valid" : "invalid");
      if (!lowered_report.valid) {
        all_agree = false;
        exit_code = kExitInvalidPlan;
      }
    }
  }

  report["stages"] = std::move(stages);
  report["agree"] = all_agree;
  emit(report);
  return exit_code;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Temporal planning to PDDL+ compiler and plan toolkit"};
  app.require_subcommand(1);

  CompileArgs compile_args;
  auto *cmd_compile =
      app.add_subcommand("compile", "Compile a temporal problem to PDDL+");
  cmd_compile->add_option("domain", compile_args.domain)->required();
  cmd_compile->add_option("problem", compile_args.problem)->required();
  cmd_compile->add_option("--out-domain", compile_args.out_domain);
  cmd_compile->add_option("--out-problem", compile_args.out_problem);
  cmd_compile->add_option("--name-map", compile_args.name_map);
  cmd_compile->add_flag("--no-expire", compile_args.no_expire);

  ValidateArgs vt_args;
  auto *cmd_vt = app.add_subcommand("validate-temporal",
                                    "Validate a temporal plan");
  cmd_vt->add_option("domain", vt_args.domain)->required();
  cmd_vt->add_option("problem", vt_args.problem)->required();
  cmd_vt->add_option("plan", vt_args.plan)->required();
  cmd_vt->add_option("--trace", vt_args.trace_out);

  ValidateArgs vp_args;
  auto *cmd_vp = app.add_subcommand("validate-plus",
                                    "Validate a PDDL+ plan");
  cmd_vp->add_option("domain", vp_args.domain)->required();
  cmd_vp->add_option("problem", vp_args.problem)->required();
  cmd_vp->add_option("plan", vp_args.plan)->required();
  cmd_vp->add_option("--delta", vp_args.delta);
  cmd_vp->add_option("--trace", vp_args.trace_out);

  SolveArgs solve_args;
  auto *cmd_solve = app.add_subcommand("solve",
                                       "Bounded search for a PDDL+ plan");
  cmd_solve->add_option("domain", solve_args.domain)->required();
  cmd_solve->add_option("problem", solve_args.problem)->required();
  cmd_solve->add_option("--delta", solve_args.delta);
  cmd_solve->add_option("--horizon", solve_args.horizon);
  cmd_solve->add_option("--max-actions-per-step",
                        solve_args.max_actions_per_step);
  cmd_solve->add_option("--out", solve_args.plan_out);
  cmd_solve->add_option("--stats", solve_args.stats_out);

  RoundtripArgs rt_args;
  auto *cmd_rt = app.add_subcommand(
      "roundtrip", "Compile, solve, lift and cross-validate");
  cmd_rt->add_option("domain", rt_args.domain)->required();
  cmd_rt->add_option("problem", rt_args.problem)->required();
  cmd_rt->add_option("--delta", rt_args.delta);
  cmd_rt->add_option("--horizon", rt_args.horizon);
  cmd_rt->add_option("--plan", rt_args.temporal_plan);
  cmd_rt->add_flag("--no-expire", rt_args.no_expire);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e) == 0 ? 0 : kExitInputError;
  }

  try {
    if (cmd_compile->parsed())
      return run_compile(compile_args);
    if (cmd_vt->parsed())
      return run_validate_temporal(vt_args);
    if (cmd_vp->parsed())
      return run_validate_plus(vp_args);
    if (cmd_solve->parsed())
      return run_solve(solve_args);
    if (cmd_rt->parsed())
      return run_roundtrip(rt_args);
  } catch (const SolverError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
