// io.cpp — Deterministic serialization helpers

#include "synthdim/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace synthdim {

namespace {

using json = nlohmann::ordered_json;

// Piecewise-linear colour map from dark blue through teal to yellow.
void heat_colour(double u, int& r, int& g, int& b) {
    u = std::clamp(u, 0.0, 1.0);
    static const int stops[5][3] = {
        {13, 8, 135}, {126, 3, 168}, {204, 71, 120}, {248, 149, 64}, {240, 249, 33}};
    const double x = u * 4.0;
    const int i = std::min(3, static_cast<int>(x));
    const double f = x - i;
    r = static_cast<int>(std::lround(stops[i][0] + f * (stops[i + 1][0] - stops[i][0])));
    g = static_cast<int>(std::lround(stops[i][1] + f * (stops[i + 1][1] - stops[i][1])));
    b = static_cast<int>(std::lround(stops[i][2] + f * (stops[i + 1][2] - stops[i][2])));
}

std::string rgb(int r, int g, int b) {
    std::ostringstream os;
    os << "rgb(" << r << "," << g << "," << b << ")";
    return os.str();
}

// Fixed palette for line traces.
const char* line_colour(std::size_t i) {
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    return palette[i % (sizeof(palette) / sizeof(palette[0]))];
}

double json_number(const json& j, const char* key) {
    if (!j.contains(key)) throw std::invalid_argument(std::string("record: missing key ") + key);
    const auto& v = j.at(key);
    if (!v.is_number()) throw std::invalid_argument(std::string("record: key is not numeric: ") + key);
    return v.get<double>();
}

std::string json_string(const json& j, const char* key) {
    if (!j.contains(key)) throw std::invalid_argument(std::string("record: missing key ") + key);
    const auto& v = j.at(key);
    if (!v.is_string()) throw std::invalid_argument(std::string("record: key is not a string: ") + key);
    return v.get<std::string>();
}

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    if (res.ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, res.ptr);
}

void write_trajectory_csv(std::ostream& os, const Trajectory& tr) {
    os << "t";
    for (const auto& label : tr.basis.labels()) os << ',' << label.name();
    os << '\n';
    const auto samples = static_cast<Eigen::Index>(tr.times.size());
    if (tr.probs.rows() != samples)
        throw std::invalid_argument("trajectory csv: sample count mismatch");
    for (Eigen::Index s = 0; s < samples; ++s) {
        os << format_double(tr.times[static_cast<std::size_t>(s)]);
        for (Eigen::Index j = 0; j < tr.probs.cols(); ++j) os << ',' << format_double(tr.probs(s, j));
        os << '\n';
    }
}

std::string trajectory_csv(const Trajectory& tr) {
    std::ostringstream os;
    write_trajectory_csv(os, tr);
    return os.str();
}

nlohmann::ordered_json record_to_json(const RunRecord& rec) {
    json j;
    j["model"] = rec.model;
    json params = json::object();
    for (const auto& [name, value] : rec.params) params[name] = value;
    j["params"] = std::move(params);
    if (!rec.eta_schedule.empty()) {
        json sched = json::array();
        for (const auto& [t0, amp] : rec.eta_schedule) sched.push_back(json::array({t0, amp}));
        j["eta_schedule"] = std::move(sched);
    }
    j["initial"] = rec.initial;
    j["dt"] = rec.cfg.dt;
    j["t_end"] = rec.cfg.t_end;
    j["sample_stride"] = rec.cfg.sample_stride;
    j["method"] = rec.cfg.method;
    return j;
}

RunRecord record_from_json(const nlohmann::ordered_json& j) {
    if (!j.is_object()) throw std::invalid_argument("record: expected a JSON object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        static const char* known[] = {"model",  "params", "eta_schedule", "initial",
                                      "dt",     "t_end",  "sample_stride", "method"};
        if (std::find_if(std::begin(known), std::end(known),
                         [&](const char* k) { return key == k; }) == std::end(known))
            throw std::invalid_argument("record: unknown key: " + key);
    }
    RunRecord rec;
    rec.model = json_string(j, "model");
    if (!j.contains("params") || !j.at("params").is_object())
        throw std::invalid_argument("record: missing params object");
    for (const auto& [name, value] : j.at("params").items()) {
        if (!value.is_number()) throw std::invalid_argument("record: non-numeric param: " + name);
        rec.params.emplace_back(name, value.get<double>());
    }
    if (j.contains("eta_schedule")) {
        const auto& sched = j.at("eta_schedule");
        if (!sched.is_array()) throw std::invalid_argument("record: eta_schedule must be an array");
        for (const auto& piece : sched) {
            if (!piece.is_array() || piece.size() != 2)
                throw std::invalid_argument("record: eta_schedule pieces are [t, amplitude]");
            rec.eta_schedule.emplace_back(piece.at(0).get<double>(), piece.at(1).get<double>());
        }
    }
    rec.initial = json_string(j, "initial");
    rec.cfg.dt = json_number(j, "dt");
    rec.cfg.t_end = json_number(j, "t_end");
    rec.cfg.sample_stride = j.contains("sample_stride")
                                ? static_cast<int>(json_number(j, "sample_stride"))
                                : 0;
    rec.cfg.method = j.contains("method") ? json_string(j, "method") : "rk4";
    return rec;
}

std::string svg_heatmap(const Trajectory& tr) {
    const auto& labels = tr.basis.labels();
    std::vector<Eigen::Index> sites;
    std::vector<Eigen::Index> others;
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(labels.size()); ++i) {
        if (labels[static_cast<std::size_t>(i)].kind == BasisLabel::Kind::LatticeSite)
            sites.push_back(i);
        else
            others.push_back(i);
    }
    const std::size_t samples = tr.times.size();
    if (sites.empty() || samples < 2) throw std::invalid_argument("svg heatmap: nothing to draw");

    // Stride the time axis down to at most 250 columns.
    std::vector<std::size_t> cols;
    const std::size_t stride = std::max<std::size_t>(1, samples / 250);
    for (std::size_t s = 0; s < samples; s += stride) cols.push_back(s);

    const int cell_w = 3;
    const int cell_h = 4;
    const int margin = 40;
    const int map_w = cell_w * static_cast<int>(cols.size());
    const int map_h = cell_h * static_cast<int>(sites.size());
    const int trace_h = others.empty() ? 0 : 120;
    const int width = margin * 2 + map_w;
    const int height = margin * 2 + map_h + (trace_h ? trace_h + margin : 0);

    double vmax = 0.0;
    for (std::size_t c : cols)
        for (Eigen::Index i : sites)
            vmax = std::max(vmax, tr.probs(static_cast<Eigen::Index>(c), i));
    if (vmax <= 0.0) vmax = 1.0;

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
       << height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (std::size_t ci = 0; ci < cols.size(); ++ci) {
        for (std::size_t si = 0; si < sites.size(); ++si) {
            const double v = tr.probs(static_cast<Eigen::Index>(cols[ci]),
                                      sites[sites.size() - 1 - si]);
            int r, g, b;
            heat_colour(v / vmax, r, g, b);
            os << "<rect x=\"" << margin + cell_w * static_cast<int>(ci) << "\" y=\""
               << margin + cell_h * static_cast<int>(si) << "\" width=\"" << cell_w
               << "\" height=\"" << cell_h << "\" fill=\"" << rgb(r, g, b) << "\"/>\n";
        }
    }
    os << "<text x=\"" << margin << "\" y=\"" << margin - 10 << "\" font-size=\"12\">"
       << (tr.name.empty() ? std::string("site populations") : tr.name)
       << " (max " << format_double(vmax) << ")</text>\n";
    os << "<text x=\"" << margin << "\" y=\"" << margin + map_h + 16
       << "\" font-size=\"11\">t = " << format_double(tr.times.front()) << " .. "
       << format_double(tr.times.back()) << ", modes " << labels[static_cast<std::size_t>(sites.front())].name()
       << " .. " << labels[static_cast<std::size_t>(sites.back())].name() << "</text>\n";

    if (!others.empty()) {
        const int top = margin + map_h + margin;
        os << "<rect x=\"" << margin << "\" y=\"" << top << "\" width=\"" << map_w
           << "\" height=\"" << trace_h << "\" fill=\"none\" stroke=\"#999\"/>\n";
        for (std::size_t oi = 0; oi < others.size(); ++oi) {
            os << "<polyline fill=\"none\" stroke=\"" << line_colour(oi)
               << "\" stroke-width=\"1.5\" points=\"";
            for (std::size_t ci = 0; ci < cols.size(); ++ci) {
                const double v = tr.probs(static_cast<Eigen::Index>(cols[ci]), others[oi]);
                os << margin + cell_w * static_cast<int>(ci) + cell_w / 2.0 << ','
                   << top + trace_h - v * trace_h << ' ';
            }
            os << "\"/>\n";
            os << "<text x=\"" << margin + map_w + 4 << "\" y=\"" << top + 12 + 14 * static_cast<int>(oi)
               << "\" font-size=\"11\" fill=\"" << line_colour(oi) << "\">"
               << labels[static_cast<std::size_t>(others[oi])].name() << "</text>\n";
        }
    }
    os << "</svg>\n";
    return os.str();
}

std::string svg_lines(const Trajectory& tr) {
    const auto& labels = tr.basis.labels();
    const std::size_t samples = tr.times.size();
    if (samples < 2) throw std::invalid_argument("svg lines: need at least two samples");

    std::vector<std::pair<std::string, std::vector<double>>> series;
    std::vector<double> lattice(samples, 0.0);
    bool any_site = false;
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(labels.size()); ++i) {
        const auto& label = labels[static_cast<std::size_t>(i)];
        if (label.kind == BasisLabel::Kind::LatticeSite) {
            any_site = true;
            for (std::size_t s = 0; s < samples; ++s)
                lattice[s] += tr.probs(static_cast<Eigen::Index>(s), i);
        } else {
            std::vector<double> v(samples);
            for (std::size_t s = 0; s < samples; ++s)
                v[s] = tr.probs(static_cast<Eigen::Index>(s), i);
            series.emplace_back(label.name(), std::move(v));
        }
    }
    if (any_site) series.emplace_back("lattice", std::move(lattice));

    const int width = 800;
    const int height = 400;
    const int margin = 50;
    const double t0 = tr.times.front();
    const double t1 = tr.times.back();
    const double span = t1 > t0 ? t1 - t0 : 1.0;

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
       << height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << width - 2 * margin
       << "\" height=\"" << height - 2 * margin << "\" fill=\"none\" stroke=\"#333\"/>\n";
    for (int tick = 0; tick <= 4; ++tick) {
        const double frac = tick / 4.0;
        const double x = margin + frac * (width - 2 * margin);
        const double y = height - margin + 16;
        os << "<text x=\"" << x << "\" y=\"" << y << "\" font-size=\"11\" text-anchor=\"middle\">"
           << format_double(t0 + frac * span) << "</text>\n";
        os << "<text x=\"" << margin - 8 << "\" y=\"" << height - margin - frac * (height - 2 * margin) + 4
           << "\" font-size=\"11\" text-anchor=\"end\">" << format_double(frac) << "</text>\n";
    }
    for (std::size_t k = 0; k < series.size(); ++k) {
        os << "<polyline fill=\"none\" stroke=\"" << line_colour(k)
           << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t s = 0; s < samples; ++s) {
            const double x = margin + (tr.times[s] - t0) / span * (width - 2 * margin);
            const double y = height - margin - std::clamp(series[k].second[s], 0.0, 1.0) *
                                                  (height - 2 * margin);
            os << x << ',' << y << ' ';
        }
        os << "\"/>\n";
        os << "<text x=\"" << width - margin + 6 << "\" y=\"" << margin + 14 * static_cast<int>(k) + 10
           << "\" font-size=\"11\" fill=\"" << line_colour(k) << "\">" << series[k].first
           << "</text>\n";
    }
    if (!tr.name.empty())
        os << "<text x=\"" << margin << "\" y=\"" << margin - 10 << "\" font-size=\"12\">" << tr.name
           << "</text>\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace synthdim
