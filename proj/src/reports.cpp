#include "t2p/reports.hpp"

namespace t2p {

Json state_json(const State &s, const std::vector<Fluent> &fluents) {
  Json out = Json::object();
  for (std::size_t i = 0; i < fluents.size() && i < s.values.size(); ++i) {
    const Value &v = s.values[i];
    if (std::holds_alternative<bool>(v))
      out[fluents[i].name] = std::get<bool>(v);
    else
      out[fluents[i].name] = std::get<Rational>(v).str();
  }
  return out;
}

Json to_json(const TemporalValidationReport &report,
             const TemporalProblem &problem, bool include_trace) {
  Json out;
  out["schema"] = 1;
  out["kind"] = "temporal";
  out["verdict"] = report.valid ? "valid" : "invalid";
  if (report.violation) {
    Json v;
    v["condition"] = report.violation->condition;
    v["reason"] = report.violation->condition == 0 ? "ill-formed"
                                                   : "condition-" +
                      std::to_string(report.violation->condition);
    v["step"] = report.violation->step;
    v["actions"] = report.violation->actions;
    v["detail"] = report.violation->detail;
    out["violation"] = std::move(v);
  }
  if (include_trace) {
    Json trace = Json::array();
    for (std::size_t i = 0; i < report.trace.size(); ++i) {
      Json entry;
      entry["time"] = i < report.trace_times.size()
                          ? report.trace_times[i].str()
                          : std::string("?");
      entry["state"] = state_json(report.trace[i], problem.fluents);
      trace.push_back(std::move(entry));
    }
    out["trace"] = std::move(trace);
  }
  return out;
}

Json to_json(const PlusValidationReport &report, const PlusProblem &problem,
             bool include_trace) {
  Json out;
  out["schema"] = 1;
  out["kind"] = "plus";
  out["delta"] = report.trace.delta.str();
  out["steps"] = report.trace.states.empty()
                     ? 0
                     : report.trace.states.size() - 1;
  out["verdict"] = !report.failure ? "valid"
                   : (report.failure->phase == PlusFailurePhase::Divergence
                          ? "error"
                          : "invalid");
  if (report.failure) {
    Json f;
    f["phase"] = phase_name(report.failure->phase);
    f["step"] = report.failure->step;
    if (!report.failure->action.empty())
      f["action"] = report.failure->action;
    f["detail"] = report.failure->detail;
    out["failure"] = std::move(f);
  }
  if (include_trace) {
    Json trace = Json::array();
    for (std::size_t i = 0; i < report.trace.states.size(); ++i) {
      Json entry;
      entry["time"] =
          (report.trace.delta * Rational(static_cast<long long>(i))).str();
      entry["state"] = state_json(report.trace.states[i], problem.fluents);
      if (i < report.trace.logs.size()) {
        Json log = Json::array();
        for (const auto &rec : report.trace.logs[i].entries) {
          Json r;
          r["kind"] = rec.kind == SuperdenseRecord::Kind::EventK ? "event"
                                                                 : "action";
          r["name"] = rec.name;
          log.push_back(std::move(r));
        }
        entry["happenings"] = std::move(log);
      }
      trace.push_back(std::move(entry));
    }
    out["trace"] = std::move(trace);
  }
  return out;
}

Json name_map_json(const CompilationArtifacts &artifacts) {
  Json out;
  out["schema"] = 1;
  Json elements = Json::object();
  for (const auto &[name, info] : artifacts.elements) {
    Json e;
    e["role"] = role_name(info.role);
    if (!info.source.empty())
      e["source"] = info.source;
    elements[name] = std::move(e);
  }
  out["elements"] = std::move(elements);
  Json fluents = Json::object();
  for (const auto &[name, info] : artifacts.fluent_roles) {
    Json f;
    f["role"] = role_name(info.role);
    if (!info.source.empty())
      f["source"] = info.source;
    fluents[name] = std::move(f);
  }
  out["fluents"] = std::move(fluents);
  return out;
}

Json to_json(const DeltaChoice &choice) {
  Json out;
  out["schema"] = 1;
  out["delta"] = choice.delta.str();
  Json times = Json::array();
  for (const auto &[time, quotient] : choice.justification) {
    Json t;
    t["time"] = time.str();
    t["quotient"] = quotient.str();
    times.push_back(std::move(t));
  }
  out["times"] = std::move(times);
  return out;
}

Json to_json(const SolverStats &stats) {
  Json out;
  out["schema"] = 1;
  out["expanded"] = stats.expanded;
  out["generated"] = stats.generated;
  out["duplicates"] = stats.duplicates;
  out["wall_seconds"] = stats.wall_seconds;
  return out;
}

} // namespace t2p
