// config.cpp — Strict JSON run configs and deterministic artifact files

#include "synthdim/config.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <stdexcept>

#include <json.hpp>

#include "synthdim/io.hpp"
#include "synthdim/model.hpp"
#include "synthdim/version.hpp"

namespace synthdim {

namespace {

using nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& what) { throw std::invalid_argument("config: " + what); }

std::string override_value(const ordered_json& v, const std::string& key) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number()) return format_double(v.get<double>());
    bad("override " + key + " must be a string or a number");
}

std::vector<std::string> read_formats(const ordered_json& v) {
    if (!v.is_array() || v.empty()) bad("formats must be a non-empty array");
    std::vector<std::string> out;
    for (const auto& item : v) {
        if (!item.is_string()) bad("formats entries must be strings");
        const std::string f = item.get<std::string>();
        if (f != "csv" && f != "records" && f != "svg") bad("unknown format: " + f);
        if (std::find(out.begin(), out.end(), f) != out.end()) bad("duplicate format: " + f);
        out.push_back(f);
    }
    return out;
}

// Rightmost coupling site recorded in the parameters, if any.
int span_from(const RunRecord& rec) {
    double n = 0.0;
    double offset = 0.0;
    for (const auto& [key, value] : rec.params) {
        if (key == "N") n = value;
        if (key == "offset_b") offset = value;
    }
    return static_cast<int>(n + offset);
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        bad(e.what());
    }
    if (!j.is_object()) bad("top level must be an object");

    RunConfig cfg;
    bool saw_schema = false;
    for (const auto& [key, value] : j.items()) {
        if (key == "schema") {
            if (!value.is_number_integer()) bad("schema must be an integer");
            if (value.get<int>() != 1) bad("unsupported schema version " + value.dump());
            saw_schema = true;
        } else if (key == "version") {
            if (!value.is_string()) bad("version must be a string");
        } else if (key == "scenario") {
            if (!value.is_string()) bad("scenario must be a string");
            cfg.scenario = value.get<std::string>();
        } else if (key == "run") {
            if (!value.is_object()) bad("run must be an object");
            cfg.run = record_from_json(value);
        } else if (key == "overrides") {
            if (!value.is_object()) bad("overrides must be an object");
            for (const auto& [k, v] : value.items()) cfg.overrides[k] = override_value(v, k);
        } else if (key == "out") {
            if (!value.is_string()) bad("out must be a string");
            cfg.out_dir = value.get<std::string>();
        } else if (key == "formats") {
            cfg.formats = read_formats(value);
        } else {
            bad("unknown key: " + key);
        }
    }
    if (!saw_schema) bad("missing schema field");
    if (cfg.scenario.empty() && !cfg.run) bad("one of scenario or run is required");
    if (!cfg.scenario.empty() && cfg.run) bad("scenario and run are mutually exclusive");
    if (cfg.run && !cfg.overrides.empty()) bad("overrides apply to scenario runs only");
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::invalid_argument("config: cannot read " + path);
    return parse_config(std::string(std::istreambuf_iterator<char>(f),
                                    std::istreambuf_iterator<char>()));
}

void apply_set(RunConfig& cfg, const std::string& pair) {
    const auto eq = pair.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == pair.size())
        throw std::invalid_argument("--set expects KEY=VALUE, got: " + pair);
    if (cfg.run) throw std::invalid_argument("--set applies to scenario runs only");
    cfg.overrides[pair.substr(0, eq)] = pair.substr(eq + 1);
}

ScenarioResult resolve_config(const RunConfig& cfg) {
    if (!cfg.scenario.empty()) return run_scenario(cfg.scenario, cfg.overrides);

    const RunRecord& rec = *cfg.run;
    const Generator g = build_from_record(rec);
    Trajectory tr = propagate(g, initial_from_record(rec, g), rec.cfg);
    tr.meta = rec;
    tr.name = "run";

    ScenarioResult res;
    res.span_max = span_from(rec);
    res.trajectories.push_back(std::move(tr));
    return res;
}

std::vector<std::string> write_artifacts(const RunConfig& cfg, const ScenarioResult& res) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.out_dir);
    const fs::path dir(cfg.out_dir);

    std::vector<std::string> written;
    const auto emit = [&written](const fs::path& p, const std::string& content) {
        std::ofstream f(p, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + p.string());
        f << content;
        f.close();
        if (!f) throw std::runtime_error("short write: " + p.string());
        written.push_back(p.string());
    };

    for (const auto& tr : res.trajectories) {
        for (const auto& fmt : cfg.formats) {
            if (fmt == "csv") {
                emit(dir / (tr.name + ".csv"), trajectory_csv(tr));
            } else if (fmt == "records") {
                ordered_json doc;
                doc["schema"] = 1;
                doc["version"] = kVersion;
                doc["run"] = record_to_json(tr.meta);
                emit(dir / (tr.name + ".record.json"), doc.dump(2) + "\n");
            } else {
                emit(dir / (tr.name + ".heatmap.svg"), svg_heatmap(tr));
                emit(dir / (tr.name + ".lines.svg"), svg_lines(tr));
            }
        }
    }
    return written;
}

std::vector<std::string> execute_run(const RunConfig& cfg) {
    return write_artifacts(cfg, resolve_config(cfg));
}

}  // namespace synthdim
