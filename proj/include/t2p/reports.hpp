#pragma once

// JSON views of validation reports, compilation name maps and solver
// results. All documents carry "schema": 1; rationals are serialized as
// exact strings ("3/2"), never as floats.

#include "t2p/compiler.hpp"
#include "t2p/plan_bridge.hpp"
#include "t2p/plus_validator.hpp"
#include "t2p/solver.hpp"
#include "t2p/temporal_validator.hpp"

#include <json.hpp>

namespace t2p {

using Json = nlohmann::json;

Json to_json(const TemporalValidationReport &report,
             const TemporalProblem &problem, bool include_trace);
Json to_json(const PlusValidationReport &report, const PlusProblem &problem,
             bool include_trace);
Json name_map_json(const CompilationArtifacts &artifacts);
Json to_json(const DeltaChoice &choice);
Json to_json(const SolverStats &stats);

Json state_json(const State &s, const std::vector<Fluent> &fluents);

} // namespace t2p
