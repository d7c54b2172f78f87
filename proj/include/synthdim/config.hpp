// config.hpp — Run configuration files and artifact emission

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "synthdim/dynamics.hpp"
#include "synthdim/scenarios.hpp"

namespace synthdim {

// One run request: a scenario id with overrides, or a fully explicit run
// record. Parsed from a strict JSON object: the schema field is required,
// unknown keys are errors, and exactly one of scenario / run must be set.
struct RunConfig {
    int schema{1};
    std::string scenario;                                // set xor run
    std::optional<RunRecord> run;
    Overrides overrides;                                 // scenario knobs only
    std::string out_dir{"."};
    std::vector<std::string> formats{"csv", "records"};  // subset of csv, records, svg
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// Merges one --set KEY=VALUE pair; rejected for explicit-record configs.
void apply_set(RunConfig& cfg, const std::string& pair);

// Runs the configured simulation without touching the filesystem.
ScenarioResult resolve_config(const RunConfig& cfg);

// Writes the selected artifacts for an already-computed result and returns
// their paths. The metadata record is itself a valid config; re-running it
// reproduces the trajectory CSV byte for byte.
std::vector<std::string> write_artifacts(const RunConfig& cfg, const ScenarioResult& res);

// resolve_config followed by write_artifacts.
std::vector<std::string> execute_run(const RunConfig& cfg);

}  // namespace synthdim
