// test_io_cli.cpp — serialization formats, config handling, and CLI behavior

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <json.hpp>

#include "synthdim/config.hpp"
#include "synthdim/io.hpp"
#include "synthdim/scenarios.hpp"

using namespace synthdim;
namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

const std::string kRunBody =
    R"({"model":"lattice","params":{"J":1,"m_min":0,"m_max":1},)"
    R"("initial":"m0","dt":0.05,"t_end":0.1,"sample_stride":1,"method":"rk4"})";

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    REQUIRE_MESSAGE(f.good(), "cannot open " << p.string());
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::vector<std::string> lines_of(const std::string& text) {
    auto out = split(text, '\n');
    if (!out.empty() && out.back().empty()) out.pop_back();
    return out;
}

Trajectory run_record(const RunRecord& rec) {
    const Generator g = build_from_record(rec);
    Trajectory tr = propagate(g, initial_from_record(rec, g), rec.cfg);
    tr.meta = rec;
    return tr;
}

struct CliResult {
    int code{-1};
    std::string out;
    std::string err;
};

CliResult run_cli(const std::string& args, const std::string& env = {}) {
    static int counter = 0;
    fs::create_directories("cli_scratch");
    const fs::path out_file = fs::path("cli_scratch") / ("out" + std::to_string(counter) + ".txt");
    const fs::path err_file = fs::path("cli_scratch") / ("err" + std::to_string(counter) + ".txt");
    ++counter;
    std::string cmd;
    if (!env.empty()) cmd += env + " ";
    cmd += "\"" + std::string(SYNTHDIM_CLI_PATH) + "\" " + args;
    cmd += " > " + out_file.string() + " 2> " + err_file.string();
    const int status = std::system(cmd.c_str());
    CliResult r;
    if (WIFEXITED(status)) r.code = WEXITSTATUS(status);
    r.out = slurp(out_file);
    r.err = slurp(err_file);
    return r;
}

}  // namespace

TEST_CASE("doubles print as shortest round-trip decimals") {
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(-2.5) == "-2.5");
    CHECK(format_double(1e100) == "1e+100");
    CHECK(format_double(0.1 + 0.2) == "0.30000000000000004");
    CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
    const double x = 2.0 / 3.0;
    CHECK(std::strtod(format_double(x).c_str(), nullptr) == x);
}

TEST_CASE("trajectory csv lists time then every basis label") {
    const RunRecord rec = record_from_json(ordered_json::parse(kRunBody));
    const Trajectory tr = run_record(rec);
    const auto rows = lines_of(trajectory_csv(tr));
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == "t,m0,m1");
    CHECK(rows[1] == "0,1,0");
    CHECK(split(rows[2], ',')[0] == "0.05");
    CHECK(split(rows[3], ',')[0] == "0.1");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto f = split(rows[i], ',');
        REQUIRE(f.size() == 3);
        const double total = std::strtod(f[1].c_str(), nullptr) + std::strtod(f[2].c_str(), nullptr);
        CHECK(std::abs(total - 1.0) < 1e-8);
    }
}

TEST_CASE("run records parse strictly and default the optional fields") {
    const RunRecord rec = record_from_json(ordered_json::parse(kRunBody));
    CHECK(rec.model == "lattice");
    CHECK(rec.initial == "m0");
    CHECK(rec.params.size() == 3);
    CHECK(rec.cfg.dt == 0.05);
    CHECK(rec.cfg.sample_stride == 1);
    CHECK(rec.cfg.method == "rk4");

    const auto parse = [](const std::string& text) {
        return record_from_json(ordered_json::parse(text));
    };
    const RunRecord d = parse(
        R"({"model":"lattice","params":{"J":1,"m_min":0,"m_max":1},"initial":"m0","dt":0.05,"t_end":0.1})");
    CHECK(d.cfg.sample_stride == 0);
    CHECK(d.cfg.method == "rk4");

    CHECK_THROWS_AS(parse("[]"), std::invalid_argument);
    CHECK_THROWS_AS(parse(R"({"params":{},"initial":"m0","dt":1,"t_end":1})"), std::invalid_argument);
    CHECK_THROWS_AS(
        parse(R"({"model":"lattice","params":{"J":"x"},"initial":"m0","dt":1,"t_end":1})"),
        std::invalid_argument);
    CHECK_THROWS_AS(
        parse(R"({"model":"lattice","params":{},"initial":"m0","dt":1,"t_end":1,"spin":3})"),
        std::invalid_argument);
    CHECK_THROWS_AS(
        parse(R"({"model":"lattice","params":{},"initial":"m0","dt":1,"t_end":1,"eta_schedule":[[0,1],[2]]})"),
        std::invalid_argument);
}

TEST_CASE("svg plots render populations and reject underfilled series") {
    const RunRecord rec = record_from_json(ordered_json::parse(kRunBody));
    const Trajectory tr = run_record(rec);
    const std::string heat = svg_heatmap(tr);
    CHECK(heat.find("<svg") != std::string::npos);
    CHECK(heat == svg_heatmap(tr));
    const std::string lines = svg_lines(tr);
    CHECK(lines.find("<svg") != std::string::npos);
    CHECK(lines.find("polyline") != std::string::npos);
    CHECK(lines == svg_lines(tr));

    RunRecord flat = rec;
    flat.cfg.t_end = 0.0;
    const Trajectory single = run_record(flat);
    REQUIRE(single.times.size() == 1);
    CHECK_THROWS_AS(svg_heatmap(single), std::invalid_argument);
    CHECK_THROWS_AS(svg_lines(single), std::invalid_argument);
}

TEST_CASE("configs validate schema, exclusivity, and formats") {
    const RunConfig sc = parse_config(
        R"({"schema":1,"scenario":"fig2a","overrides":{"N":2,"t_end":"1"},"out":"x","formats":["svg"]})");
    CHECK(sc.scenario == "fig2a");
    CHECK(sc.run.has_value() == false);
    CHECK(sc.overrides.at("N") == "2");
    CHECK(sc.overrides.at("t_end") == "1");
    CHECK(sc.out_dir == "x");
    CHECK(sc.formats == std::vector<std::string>{"svg"});

    const RunConfig defaults = parse_config(R"({"schema":1,"scenario":"fig2a"})");
    CHECK(defaults.out_dir == ".");
    CHECK(defaults.formats == std::vector<std::string>({"csv", "records"}));

    const RunConfig rr = parse_config(R"({"schema":1,"run":)" + kRunBody + "}");
    REQUIRE(rr.run.has_value());
    CHECK(rr.run->model == "lattice");

    CHECK_THROWS_AS(parse_config("not json"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config("[]"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config("{}"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config(R"({"schema":2,"scenario":"fig2a"})"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config(R"({"schema":1})"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config(R"({"schema":1,"scenario":"fig2a","run":)" + kRunBody + "}"),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        parse_config(R"({"schema":1,"run":)" + kRunBody + R"(,"overrides":{"N":3}})"),
        std::invalid_argument);
    CHECK_THROWS_AS(parse_config(R"({"schema":1,"scenario":"fig2a","seed":7})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_config(R"({"schema":1,"scenario":"fig2a","formats":[]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_config(R"({"schema":1,"scenario":"fig2a","formats":["png"]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_config(R"({"schema":1,"scenario":"fig2a","formats":["csv","csv"]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_config(R"({"schema":1,"scenario":"fig2a","overrides":{"N":true}})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(load_config("no_such_file.json"), std::invalid_argument);

    RunConfig tweak = parse_config(R"({"schema":1,"scenario":"fig2a"})");
    apply_set(tweak, "N=3");
    CHECK(tweak.overrides.at("N") == "3");
    CHECK_THROWS_AS(apply_set(tweak, "=3"), std::invalid_argument);
    CHECK_THROWS_AS(apply_set(tweak, "N="), std::invalid_argument);
    CHECK_THROWS_AS(apply_set(tweak, "N"), std::invalid_argument);
    RunConfig fixed = parse_config(R"({"schema":1,"run":)" + kRunBody + "}");
    CHECK_THROWS_AS(apply_set(fixed, "J=2"), std::invalid_argument);
}

TEST_CASE("run execution writes artifacts and records reproduce them") {
    fs::remove_all("io_scratch");
    const RunConfig cfg = parse_config(R"({"schema":1,"run":)" + kRunBody +
                                       R"(,"out":"io_scratch/d0","formats":["csv","records","svg"]})");
    const auto written = execute_run(cfg);
    CHECK(written.size() == 4);
    CHECK(fs::exists("io_scratch/d0/run.csv"));
    CHECK(fs::exists("io_scratch/d0/run.record.json"));
    CHECK(fs::exists("io_scratch/d0/run.heatmap.svg"));
    CHECK(fs::exists("io_scratch/d0/run.lines.svg"));

    RunConfig again = load_config("io_scratch/d0/run.record.json");
    again.out_dir = "io_scratch/d1";
    again.formats = {"csv"};
    execute_run(again);
    CHECK(slurp("io_scratch/d1/run.csv") == slurp("io_scratch/d0/run.csv"));
}

TEST_CASE("command line runs scenarios, records, and sweeps") {
    fs::remove_all("cli_scratch");

    const CliResult ver = run_cli("--version");
    CHECK(ver.code == 0);
    CHECK(ver.out.find("0.1.0") != std::string::npos);

    const CliResult ls = run_cli("list");
    CHECK(ls.code == 0);
    const auto rows = lines_of(ls.out);
    CHECK(rows.size() == 20);
    REQUIRE(!rows.empty());
    CHECK(rows.front().rfind("fig2a\t", 0) == 0);
    for (const auto& row : rows) CHECK(split(row, '\t').size() == 3);

    const CliResult bad_id = run_cli("run fig9z --out cli_scratch/x");
    CHECK(bad_id.code == 1);
    CHECK(bad_id.err.find("unknown scenario") != std::string::npos);

    const CliResult neither = run_cli("run");
    CHECK(neither.code == 1);
    CHECK(neither.err.find("exactly one of") != std::string::npos);

    const CliResult bad_set = run_cli("run fig2a --set N --out cli_scratch/x");
    CHECK(bad_set.code == 1);

    const CliResult bad_fmt = run_cli("run fig2a --format png --out cli_scratch/x");
    CHECK(bad_fmt.code == 1);

    const std::string common = "run fig2a --set N=2 --set m_tot=15 --set t_end=1 ";
    const CliResult r1 = run_cli(common + "--out cli_scratch/d1");
    CHECK(r1.code == 0);
    CHECK(r1.err.empty());
    CHECK(fs::exists("cli_scratch/d1/full.csv"));
    CHECK(fs::exists("cli_scratch/d1/full.record.json"));
    CHECK(fs::exists("cli_scratch/d1/real_space.csv"));
    CHECK(fs::exists("cli_scratch/d1/real_space.record.json"));
    int wrote = 0;
    for (const auto& row : lines_of(r1.out))
        if (row.rfind("wrote ", 0) == 0) ++wrote;
    CHECK(wrote == 4);

    const CliResult r2 = run_cli(common + "--out cli_scratch/d2");
    CHECK(r2.code == 0);
    CHECK(slurp("cli_scratch/d2/full.csv") == slurp("cli_scratch/d1/full.csv"));

    const auto csv_rows = lines_of(slurp("cli_scratch/d1/full.csv"));
    REQUIRE(csv_rows.size() >= 2);
    const auto head = split(csv_rows[0], ',');
    const auto first = split(csv_rows[1], ',');
    REQUIRE(head.size() == first.size());
    CHECK(head[0] == "t");
    CHECK(first[0] == "0");
    bool found_atom = false;
    for (std::size_t i = 1; i < head.size(); ++i) {
        if (head[i] == "atom_e") {
            found_atom = true;
            CHECK(first[i] == "1");
        } else {
            CHECK(first[i] == "0");
        }
    }
    CHECK(found_atom);

    const CliResult r3 =
        run_cli("run --config cli_scratch/d1/full.record.json --out cli_scratch/d3 --format csv");
    CHECK(r3.code == 0);
    CHECK(slurp("cli_scratch/d3/run.csv") == slurp("cli_scratch/d1/full.csv"));

    {
        std::ofstream f("cli_scratch/drift.json", std::ios::binary);
        f << R"({"schema":1,"run":{"model":"lattice","params":{"J":1,"m_min":0,"m_max":1},)"
          << R"("initial":"m0","dt":0.1,"t_end":50},"out":"cli_scratch/d4"})";
    }
    const CliResult drift = run_cli("run --config cli_scratch/drift.json");
    CHECK(drift.code == 2);
    CHECK(drift.err.find("numerical abort") != std::string::npos);

    const CliResult sw = run_cli(
        "sweep fig4a --param theta --values 1.5707963267948966,-1.5707963267948966 "
        "--out cli_scratch/sw",
        "SYNTHDIM_THREADS=1");
    CHECK(sw.code == 0);
    const auto srows = lines_of(slurp("cli_scratch/sw/summary.csv"));
    REQUIRE(srows.size() == 3);
    CHECK(srows[0] == "theta,P_e_final,decay_rate,asymmetry");
    const auto row_a = split(srows[1], ',');
    const auto row_b = split(srows[2], ',');
    REQUIRE(row_a.size() == 4);
    REQUIRE(row_b.size() == 4);
    CHECK(row_a[0] == "1.5707963267948966");
    CHECK(row_b[0] == "-1.5707963267948966");
    const double asym_a = std::strtod(row_a[3].c_str(), nullptr);
    const double asym_b = std::strtod(row_b[3].c_str(), nullptr);
    CHECK(asym_a > 0.6);
    CHECK(asym_b < -0.6);
    CHECK(std::abs(asym_a + asym_b) < 0.05);
    CHECK(fs::exists("cli_scratch/sw/theta=1.5707963267948966/full.csv"));
    CHECK(fs::exists("cli_scratch/sw/theta=-1.5707963267948966/full.csv"));

    const CliResult sw_rec = run_cli(
        "sweep --config cli_scratch/drift.json --param J --values 1,2 --out cli_scratch/swbad");
    CHECK(sw_rec.code == 1);
    CHECK(sw_rec.err.find("scenario") != std::string::npos);

    const CliResult bad_threads = run_cli(
        "sweep fig4a --param theta --values 0 --out cli_scratch/swthr", "SYNTHDIM_THREADS=zero");
    CHECK(bad_threads.code == 1);
    CHECK(bad_threads.err.find("SYNTHDIM_THREADS") != std::string::npos);
}
