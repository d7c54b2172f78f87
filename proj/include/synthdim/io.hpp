// io.hpp — Deterministic serialization: CSV trajectories, JSON records, SVG plots

#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "synthdim/dynamics.hpp"

namespace synthdim {

// Shortest decimal form that round-trips to the same double, locale
// independent. NaN prints as "nan".
std::string format_double(double v);

// Header "t,<label>,<label>,..." followed by one row per retained sample.
void write_trajectory_csv(std::ostream& os, const Trajectory& tr);
std::string trajectory_csv(const Trajectory& tr);

// Resolved run description; feeding it back through record_from_json and the
// model builders reproduces the trajectory byte for byte.
nlohmann::ordered_json record_to_json(const RunRecord& rec);
RunRecord record_from_json(const nlohmann::ordered_json& j);

// Per-site population heatmap (time on x, modes on y) with atomic levels
// drawn as line traces underneath.
std::string svg_heatmap(const Trajectory& tr);

// Population-versus-time polylines for every non-lattice label plus the
// total lattice population.
std::string svg_lines(const Trajectory& tr);

}  // namespace synthdim
