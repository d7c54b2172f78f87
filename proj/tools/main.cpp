// main.cpp — synthdim CLI: run scenarios, sweep parameters, validate, list

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "synthdim/acceptance.hpp"
#include "synthdim/config.hpp"
#include "synthdim/dynamics.hpp"
#include "synthdim/io.hpp"
#include "synthdim/scenarios.hpp"
#include "synthdim/version.hpp"

namespace {

namespace fs = std::filesystem;
using namespace synthdim;

struct CommonFlags {
    std::string scenario;
    std::string config_path;
    std::vector<std::string> sets;
    std::string out_dir;
    std::vector<std::string> formats;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool with_scenario) {
    if (with_scenario) cmd->add_option("scenario", f.scenario, "scenario id (see: list)");
    cmd->add_option("--config", f.config_path, "JSON config file");
    cmd->add_option("--set", f.sets, "override KEY=VALUE (repeatable)");
    cmd->add_option("--out", f.out_dir, "output directory");
    cmd->add_option("--format", f.formats, "artifact format: csv, records or svg (repeatable)")
        ->check(CLI::IsMember({"csv", "records", "svg"}));
}

// Builds the run config from either the positional scenario or --config,
// then folds in the remaining flags.
RunConfig assemble(const CommonFlags& f) {
    if (f.scenario.empty() == f.config_path.empty())
        throw std::invalid_argument("exactly one of a scenario id or --config is required");
    RunConfig cfg;
    if (!f.config_path.empty()) {
        cfg = load_config(f.config_path);
    } else {
        cfg.scenario = f.scenario;
    }
    for (const std::string& pair : f.sets) apply_set(cfg, pair);
    if (!f.out_dir.empty()) cfg.out_dir = f.out_dir;
    if (!f.formats.empty()) cfg.formats = f.formats;
    return cfg;
}

unsigned thread_cap(std::size_t jobs) {
    unsigned cap = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("SYNTHDIM_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 1)
            throw std::invalid_argument(std::string("SYNTHDIM_THREADS must be a positive integer, got: ") + env);
        cap = static_cast<unsigned>(v);
    }
    return static_cast<unsigned>(std::min<std::size_t>(cap, jobs));
}

double find_observable(const std::vector<std::pair<std::string, double>>& obs,
                       const std::string& name) {
    for (const auto& [key, value] : obs)
        if (key == name) return value;
    return std::numeric_limits<double>::quiet_NaN();
}

int cmd_run(const CommonFlags& f) {
    const RunConfig cfg = assemble(f);
    for (const std::string& path : execute_run(cfg)) std::cout << "wrote " << path << "\n";
    return 0;
}

int cmd_sweep(const CommonFlags& f, const std::string& param,
              const std::vector<std::string>& values) {
    const RunConfig base = assemble(f);
    if (base.scenario.empty())
        throw std::invalid_argument("sweep needs a scenario config, not an explicit run record");
    if (values.empty()) throw std::invalid_argument("sweep needs at least one value");

    struct Row {
        std::vector<std::pair<std::string, double>> obs;
        int code{0};
        std::string error;
    };
    std::vector<Row> rows(values.size());
    std::atomic<std::size_t> next{0};

    const auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= values.size()) return;
            Row& row = rows[i];
            try {
                RunConfig per = base;
                per.overrides[param] = values[i];
                per.out_dir = (fs::path(base.out_dir) / (param + "=" + values[i])).string();
                const ScenarioResult res = resolve_config(per);
                write_artifacts(per, res);
                row.obs = res.observables;
            } catch (const NormDriftError& e) {
                row.code = 2;
                row.error = e.what();
            } catch (const std::exception& e) {
                row.code = 1;
                row.error = e.what();
            }
        }
    };

    const unsigned n_threads = thread_cap(values.size());
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();

    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].code != 0) {
            std::cerr << "error: " << param << "=" << values[i] << ": " << rows[i].error << "\n";
            return rows[i].code;
        }
    }

    fs::create_directories(base.out_dir);
    const fs::path summary_path = fs::path(base.out_dir) / "summary.csv";
    std::ofstream summary(summary_path, std::ios::binary);
    if (!summary) throw std::runtime_error("cannot write " + summary_path.string());
    summary << param << ",P_e_final,decay_rate,asymmetry\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        summary << values[i] << ',' << format_double(find_observable(rows[i].obs, "P_e_final"))
                << ',' << format_double(find_observable(rows[i].obs, "decay_rate")) << ','
                << format_double(find_observable(rows[i].obs, "asymmetry")) << '\n';
    }
    summary.close();
    if (!summary) throw std::runtime_error("short write: " + summary_path.string());
    std::cout << "wrote " << summary_path.string() << "\n";
    return 0;
}

int cmd_validate(const std::string& out_dir) {
    const AcceptanceReport report = run_acceptance();
    const std::string text = render_report(report);
    std::cout << text;
    fs::create_directories(out_dir);
    const fs::path path = fs::path(out_dir) / "acceptance.txt";
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << text;
    f.close();
    if (!f) throw std::runtime_error("short write: " + path.string());
    return report.all_passed() ? 0 : 1;
}

int cmd_list() {
    for (const Scenario& sc : list_scenarios())
        std::cout << sc.id << "\t" << sc.figure << "\t" << sc.description << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"synthetic-frequency-lattice giant-atom simulator"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    CommonFlags run_flags;
    CLI::App* run = app.add_subcommand("run", "run one scenario or config and write artifacts");
    add_common(run, run_flags, true);

    CommonFlags sweep_flags;
    std::string sweep_param;
    std::vector<std::string> sweep_values;
    CLI::App* sweep = app.add_subcommand("sweep", "run a scenario once per parameter value");
    add_common(sweep, sweep_flags, true);
    sweep->add_option("--param", sweep_param, "override key to vary")->required();
    sweep->add_option("--values", sweep_values, "comma-separated values to sweep over")
        ->required()
        ->delimiter(',');

    std::string validate_out{"."};
    CLI::App* validate = app.add_subcommand("validate", "run the acceptance suite");
    validate->add_option("--out", validate_out, "directory for acceptance.txt");

    CLI::App* list = app.add_subcommand("list", "list the scenario registry");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (app.got_subcommand(run)) return cmd_run(run_flags);
        if (app.got_subcommand(sweep)) return cmd_sweep(sweep_flags, sweep_param, sweep_values);
        if (app.got_subcommand(validate)) return cmd_validate(validate_out);
        if (app.got_subcommand(list)) return cmd_list();
    } catch (const NormDriftError& e) {
        std::cerr << "numerical abort: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
