// scenarios.hpp — Registry of named experiment presets

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "synthdim/dynamics.hpp"

namespace synthdim {

struct Scenario {
    std::string id;
    std::string description;
    std::string figure;   // panel this preset regenerates
};

// All bundled presets in a fixed deterministic order.
const std::vector<Scenario>& list_scenarios();

// String-valued overrides layered on top of a preset. Numeric keys (N, g,
// eta, delta, theta, lambda, m_tot, t_end, dt, sample_stride) and the label
// key "init" where a preset has a single run. Unknown keys are errors.
using Overrides = std::map<std::string, std::string>;

struct ScenarioResult {
    std::vector<Trajectory> trajectories;                      // first one is the panel's primary
    std::vector<std::pair<std::string, double>> observables;   // named scalars, fixed order
    int span_max{0};                                           // rightmost coupling site
};

ScenarioResult run_scenario(const std::string& id, const Overrides& overrides = {});

// Rebuilds the generator described by a resolved run record. Together with
// the recorded initial label and integrator settings this reproduces the
// trajectory exactly.
Generator build_from_record(const RunRecord& rec);
StateVector initial_from_record(const RunRecord& rec, const Generator& g);

// FNV-1a digest over every preset's resolved parameter set (fig2a taken at
// N=2). Changes exactly when a frozen preset definition changes.
std::uint64_t registry_checksum();

}  // namespace synthdim
