// scenarios.cpp — Preset experiments, override handling, record round-trip

#include "synthdim/scenarios.hpp"

#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <set>
#include <stdexcept>

#include "synthdim/io.hpp"
#include "synthdim/model.hpp"
#include "synthdim/observables.hpp"
#include "synthdim/phase.hpp"

namespace synthdim {

namespace {

// Typed access to the string override map; every provided key must be
// consumed by the preset or finish() rejects it.
class OvReader {
  public:
    explicit OvReader(const Overrides& ov) : ov_(ov) {}

    bool has(const std::string& key) const { return ov_.count(key) > 0; }

    double num(const std::string& key, double fallback) {
        auto it = ov_.find(key);
        if (it == ov_.end()) return fallback;
        used_.insert(key);
        const char* s = it->second.c_str();
        char* end = nullptr;
        const double v = std::strtod(s, &end);
        if (end == s || *end != '\0')
            throw std::invalid_argument("override " + key + ": not a number: " + it->second);
        return v;
    }

    int integer(const std::string& key, int fallback) {
        const double v = num(key, static_cast<double>(fallback));
        if (v != std::nearbyint(v))
            throw std::invalid_argument("override " + key + ": expected an integer");
        return static_cast<int>(v);
    }

    std::string str(const std::string& key, const std::string& fallback) {
        auto it = ov_.find(key);
        if (it == ov_.end()) return fallback;
        used_.insert(key);
        return it->second;
    }

    void finish() const {
        for (const auto& [key, value] : ov_) {
            (void)value;
            if (!used_.count(key)) throw std::invalid_argument("unknown override: " + key);
        }
    }

  private:
    const Overrides& ov_;
    std::set<std::string> used_;
};

// Shared numeric knobs of the atom-on-lattice presets.
struct Knobs {
    double g{3.0};
    double eta{2.0};
    double delta{60.0};
    double theta{0.0};
    int N{2};
    int m_tot{25};
    double t_end{5.0};
    double dt{1e-4};
    int stride{0};
    std::string init{"atom_e"};
    double lambda{-1.0};   // two-level coupling; negative: derive g*eta/delta

    void apply(OvReader& ov, bool allow_init) {
        N = ov.integer("N", N);
        g = ov.num("g", g);
        eta = ov.num("eta", eta);
        delta = ov.num("delta", delta);
        theta = ov.num("theta", theta);
        if (ov.has("lambda")) lambda = ov.num("lambda", lambda);
        m_tot = ov.integer("m_tot", m_tot);
        t_end = ov.num("t_end", t_end);
        dt = ov.num("dt", dt);
        stride = ov.integer("sample_stride", stride);
        if (allow_init) init = ov.str("init", init);
    }

    double lam() const { return lambda >= 0.0 ? lambda : g * eta / delta; }
};

ModelParams to_params(const Knobs& k, int span_max) {
    ModelParams p;
    p.g1 = p.g2 = k.g;
    p.eta1 = p.eta2 = k.eta;
    p.delta1 = p.delta2 = k.delta;
    p.theta = k.theta;
    p.N = k.N;
    const auto [lo, hi] = centered_extent(k.m_tot, span_max);
    p.m_min = lo;
    p.m_max = hi;
    return p;
}

IntegratorConfig to_cfg(const Knobs& k) {
    IntegratorConfig cfg;
    cfg.dt = k.dt;
    cfg.t_end = k.t_end;
    cfg.sample_stride = k.stride;
    return cfg;
}

RunRecord atom_record(const std::string& model, const Knobs& k, const std::string& init) {
    const ModelParams p = to_params(k, k.N);
    RunRecord r;
    r.model = model;
    r.params = {{"J", p.J},           {"g1", p.g1},       {"g2", p.g2},
                {"eta1", p.eta1},     {"eta2", p.eta2},   {"delta1", p.delta1},
                {"delta2", p.delta2}, {"theta", p.theta}, {"N", static_cast<double>(p.N)},
                {"m_min", static_cast<double>(p.m_min)},  {"m_max", static_cast<double>(p.m_max)}};
    r.initial = init;
    r.cfg = to_cfg(k);
    return r;
}

RunRecord real_space_record(const Knobs& k, const std::string& init) {
    const auto [lo, hi] = centered_extent(k.m_tot, k.N);
    RunRecord r;
    r.model = "real_space";
    r.params = {{"J", 1.0},
                {"lambda1", k.lam()},
                {"lambda2", k.lam()},
                {"N", static_cast<double>(k.N)},
                {"m_min", static_cast<double>(lo)},
                {"m_max", static_cast<double>(hi)}};
    r.initial = init;
    r.cfg = to_cfg(k);
    return r;
}

RunRecord cascaded_record(const Knobs& k, int offset_b, const std::string& init) {
    RunRecord r = atom_record("cascaded_pair", k, init);
    // recentre on the wider two-atom span
    const auto [lo, hi] = centered_extent(k.m_tot, offset_b + k.N);
    for (auto& [name, value] : r.params) {
        if (name == "m_min") value = lo;
        if (name == "m_max") value = hi;
    }
    r.params.emplace_back("offset_b", static_cast<double>(offset_b));
    return r;
}

struct Resolved {
    std::vector<std::pair<std::string, RunRecord>> runs;
    int span_max{0};
};

struct Preset {
    Scenario info;
    std::function<Resolved(const Overrides&)> resolve;
};

Resolved resolve_fig2(const Overrides& ov, bool require_n) {
    OvReader r(ov);
    if (require_n && !r.has("N"))
        throw std::invalid_argument("fig2a needs an N override (documented set: 2, 3, 4)");
    Knobs k;   // g=3, eta=2, delta=60, theta=0, dt=1e-4
    k.apply(r, true);
    r.finish();
    Resolved res;
    res.runs.emplace_back("full", atom_record("full_static", k, k.init));
    res.runs.emplace_back("real_space", real_space_record(k, k.init));
    res.span_max = k.N;
    return res;
}

Resolved resolve_fig3(const Overrides& ov, int n, bool aux_primary) {
    OvReader r(ov);
    Knobs k;
    k.g = 60.0;
    k.eta = 5.0;
    k.delta = 200.0;
    k.N = n;
    k.dt = 5e-5;
    k.init = "m1";
    k.apply(r, true);
    r.finish();
    Resolved res;
    auto aux = std::make_pair(std::string("auxiliary"), atom_record("auxiliary", k, k.init));
    auto two = std::make_pair(std::string("real_space"), real_space_record(k, k.init));
    if (aux_primary) {
        res.runs = {std::move(aux), std::move(two)};
    } else {
        res.runs = {std::move(two), std::move(aux)};
    }
    res.span_max = k.N;
    return res;
}

Resolved resolve_fig3e(const Overrides& ov) {
    OvReader r(ov);
    Knobs k;
    k.g = 60.0;
    k.eta = 5.0;
    k.delta = 200.0;
    k.N = 2;
    k.dt = 5e-5;
    k.init = "m1";
    k.apply(r, true);
    r.finish();
    RunRecord rec = atom_record("auxiliary", k, k.init);
    rec.eta_schedule = {{0.0, k.eta}, {3.0, 0.0}};
    Resolved res;
    res.runs.emplace_back("auxiliary", std::move(rec));
    res.span_max = k.N;
    return res;
}

Resolved resolve_fig4a(const Overrides& ov) {
    OvReader r(ov);
    Knobs k;
    k.theta = kHalfPi;
    k.N = 3;
    k.dt = 2e-4;
    k.apply(r, true);
    r.finish();
    Resolved res;
    res.runs.emplace_back("full", atom_record("full_static", k, k.init));
    res.span_max = k.N;
    return res;
}

Resolved resolve_fig4b(const Overrides& ov) {
    OvReader r(ov);
    Knobs k;
    k.theta = kHalfPi;
    k.N = 3;
    k.dt = 2e-4;
    k.apply(r, false);
    r.finish();
    Resolved res;
    for (int m : {2, 4, 5})
        res.runs.emplace_back("from_m" + std::to_string(m),
                              atom_record("full_static", k, "m" + std::to_string(m)));
    res.span_max = k.N;
    return res;
}

Resolved resolve_fig4c(const Overrides& ov) {
    OvReader r(ov);
    Knobs k;
    k.g = 40.0;
    k.eta = 5.0;
    k.delta = 200.0;
    k.N = 3;
    k.dt = 5e-5;
    k.apply(r, false);
    r.finish();
    struct Variant {
        const char* name;
        double theta;
        const char* init;
    };
    const Variant variants[] = {{"theta_plus_from_m2", kHalfPi, "m2"},
                                {"theta_minus_from_m1", -kHalfPi, "m1"},
                                {"theta_minus_from_m2", -kHalfPi, "m2"}};
    Resolved res;
    for (const auto& v : variants) {
        Knobs kv = k;
        kv.theta = v.theta;
        res.runs.emplace_back(v.name, atom_record("auxiliary", kv, v.init));
    }
    res.span_max = k.N;
    return res;
}

Resolved resolve_figs1(const Overrides& ov, bool strong, int n) {
    OvReader r(ov);
    Knobs k;
    if (strong) {
        k.g = 40.0;
        k.eta = 5.0;
        k.delta = 200.0;
        k.dt = 5e-5;
    } else {
        k.dt = 2e-4;
    }
    k.N = n;
    k.init = "m1";
    k.apply(r, true);
    r.finish();
    Resolved res;
    res.runs.emplace_back("full", atom_record("full_static", k, k.init));
    res.span_max = k.N;
    return res;
}

Resolved resolve_figs2(const Overrides& ov, int m_tot, double t_end, double dt) {
    OvReader r(ov);
    Knobs k;
    k.theta = kHalfPi;
    k.N = 3;
    k.m_tot = m_tot;
    k.t_end = t_end;
    k.dt = dt;
    k.apply(r, true);
    r.finish();
    Resolved res;
    res.runs.emplace_back("full", atom_record("full_static", k, k.init));
    res.span_max = k.N;
    return res;
}

Resolved resolve_figs3(const Overrides& ov, const char* init) {
    OvReader r(ov);
    Knobs k;
    k.g = 10.0;
    k.eta = 4.0;
    k.delta = 100.0;
    k.theta = kHalfPi;
    k.N = 3;
    k.m_tot = 45;
    k.t_end = 10.0;
    k.dt = 1.25e-4;
    k.init = init;
    k.apply(r, true);
    r.finish();
    const int offset_b = 4;
    Resolved res;
    res.runs.emplace_back("pair", cascaded_record(k, offset_b, k.init));
    res.span_max = offset_b + k.N;
    return res;
}

const std::vector<Preset>& presets() {
    static const std::vector<Preset> table = [] {
        std::vector<Preset> t;
        auto add = [&t](const char* id, const char* figure, const char* desc,
                        std::function<Resolved(const Overrides&)> fn) {
            t.push_back({{id, desc, figure}, std::move(fn)});
        };
        add("fig2a", "2(a)",
            "atom retention vs coupling separation, four-level model next to its two-level "
            "reduction; N is a required override (documented set: 2, 3, 4)",
            [](const Overrides& ov) { return resolve_fig2(ov, true); });
        add("fig2b", "2(b)",
            "atom retention at N=2; sweep the delta override (30, 60, 100) to see the trend",
            [](const Overrides& ov) { return resolve_fig2(ov, false); });
        add("fig3a", "3(a)",
            "site-1 photon confined by the compensated strong-coupling atom, N=2",
            [](const Overrides& ov) { return resolve_fig3(ov, 2, true); });
        add("fig3b", "3(b)", "same as fig3a with N=4: the photon diffuses away",
            [](const Overrides& ov) { return resolve_fig3(ov, 4, true); });
        add("fig3c", "3(c)", "two-level reduction of fig3a",
            [](const Overrides& ov) { return resolve_fig3(ov, 2, false); });
        add("fig3d", "3(d)", "two-level reduction of fig3b",
            [](const Overrides& ov) { return resolve_fig3(ov, 4, false); });
        add("fig3e", "3(e)", "confined photon released by switching the drives off at t=3",
            [](const Overrides& ov) { return resolve_fig3e(ov); });
        add("fig3f", "3(f)",
            "release run again; site profiles at chosen moments come from the same samples",
            [](const Overrides& ov) { return resolve_fig3e(ov); });
        add("fig4a", "4(a)", "chiral emission at theta=pi/2, N=3: radiation goes right",
            [](const Overrides& ov) { return resolve_fig4a(ov); });
        add("fig4b", "4(b)", "atom response to photons launched at sites 2, 4 and 5",
            [](const Overrides& ov) { return resolve_fig4b(ov); });
        add("fig4c", "4(c)",
            "asymmetric diffusion profiles for three phase/launch-site combinations",
            [](const Overrides& ov) { return resolve_fig4c(ov); });
        add("figS1a", "S1(a)", "weak couplings: a site-1 photon diffuses almost freely, N=4",
            [](const Overrides& ov) { return resolve_figs1(ov, false, 4); });
        add("figS1b", "S1(b)",
            "strong couplings without compensation, N=4: level shifts confine the photon",
            [](const Overrides& ov) { return resolve_figs1(ov, true, 4); });
        add("figS1c", "S1(c)", "same as figS1b with N=3",
            [](const Overrides& ov) { return resolve_figs1(ov, true, 3); });
        add("figS1d", "S1(d)", "same as figS1b with N=2",
            [](const Overrides& ov) { return resolve_figs1(ov, true, 2); });
        add("figS2a", "S2(a)", "chiral emission on 25 sites to t=5",
            [](const Overrides& ov) { return resolve_figs2(ov, 25, 5.0, 2e-4); });
        add("figS2b", "S2(b)", "chiral emission on 65 sites to t=15",
            [](const Overrides& ov) { return resolve_figs2(ov, 65, 15.0, 2.5e-4); });
        add("figS2c", "S2(c)", "chiral emission on 105 sites to t=25",
            [](const Overrides& ov) { return resolve_figs2(ov, 105, 25.0, 2.5e-4); });
        add("figS3a", "S3(a)", "cascaded pair with atom A excited: transfer toward atom B",
            [](const Overrides& ov) { return resolve_figs3(ov, "atom_e"); });
        add("figS3b", "S3(b)", "cascaded pair with atom B excited: atom A stays dark",
            [](const Overrides& ov) { return resolve_figs3(ov, "atomB_e"); });
        return t;
    }();
    return table;
}

const Preset& find_preset(const std::string& id) {
    for (const auto& p : presets())
        if (p.info.id == id) return p;
    std::string known;
    for (const auto& p : presets()) {
        if (!known.empty()) known += ", ";
        known += p.info.id;
    }
    throw std::invalid_argument("unknown scenario: " + id + " (known: " + known + ")");
}

// Reads the ordered parameter list of a record; every entry must be consumed.
class ParamReader {
  public:
    explicit ParamReader(const RunRecord& rec) : rec_(rec), used_(rec.params.size(), false) {}

    double num(const char* key) {
        for (std::size_t i = 0; i < rec_.params.size(); ++i) {
            if (rec_.params[i].first == key) {
                used_[i] = true;
                return rec_.params[i].second;
            }
        }
        throw std::invalid_argument("record " + rec_.model + ": missing parameter " + key);
    }

    int integer(const char* key) {
        const double v = num(key);
        if (v != std::nearbyint(v))
            throw std::invalid_argument("record " + rec_.model + ": parameter " + key +
                                        " must be an integer");
        return static_cast<int>(v);
    }

    void finish() const {
        for (std::size_t i = 0; i < used_.size(); ++i)
            if (!used_[i])
                throw std::invalid_argument("record " + rec_.model + ": unused parameter " +
                                            rec_.params[i].first);
    }

  private:
    const RunRecord& rec_;
    std::vector<bool> used_;
};

struct Regions {
    double left{0.0};
    double between{0.0};
    double right{0.0};
    double non_lattice{0.0};
};

Regions regions_at(const Trajectory& tr, int span_max, Eigen::Index row) {
    Regions out;
    const auto& labels = tr.basis.labels();
    for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(labels.size()); ++j) {
        const auto& l = labels[static_cast<std::size_t>(j)];
        const double p = tr.probs(row, j);
        if (l.kind != BasisLabel::Kind::LatticeSite)
            out.non_lattice += p;
        else if (l.site < 0)
            out.left += p;
        else if (l.site <= span_max)
            out.between += p;
        else
            out.right += p;
    }
    return out;
}

double final_pop(const Trajectory& tr, const BasisLabel& label) {
    const Eigen::Index col = tr.label_col(label);
    return tr.probs(tr.probs.rows() - 1, col);
}

bool has_label(const Basis& b, const BasisLabel& label) { return b.find(label).has_value(); }

}  // namespace

const std::vector<Scenario>& list_scenarios() {
    static const std::vector<Scenario> table = [] {
        std::vector<Scenario> t;
        for (const auto& p : presets()) t.push_back(p.info);
        return t;
    }();
    return table;
}

ScenarioResult run_scenario(const std::string& id, const Overrides& overrides) {
    const Preset& preset = find_preset(id);
    Resolved res = preset.resolve(overrides);
    ScenarioResult out;
    out.span_max = res.span_max;
    for (auto& [name, rec] : res.runs) {
        const Generator g = build_from_record(rec);
        const StateVector psi0 = initial_from_record(rec, g);
        Trajectory tr = propagate(g, psi0, rec.cfg);
        tr.meta = rec;
        tr.name = name;
        tr.scenario_id = id;
        out.trajectories.push_back(std::move(tr));
    }

    const BasisLabel atom_e = BasisLabel::atom_level(Level::e, 0);
    const BasisLabel atom_b_e = BasisLabel::atom_level(Level::e, 1);
    auto& obs = out.observables;
    for (const auto& tr : out.trajectories) {
        const Eigen::Index last = tr.probs.rows() - 1;
        const Regions r = regions_at(tr, out.span_max, last);
        if (has_label(tr.basis, atom_e))
            obs.emplace_back(tr.name + ".P_e_final", final_pop(tr, atom_e));
        if (has_label(tr.basis, atom_b_e))
            obs.emplace_back(tr.name + ".P_eB_final", final_pop(tr, atom_b_e));
        obs.emplace_back(tr.name + ".between_final", r.between);
        obs.emplace_back(tr.name + ".confined_final", r.between + r.non_lattice);
        const double lat = r.left + r.right;
        obs.emplace_back(tr.name + ".asymmetry_final", lat > 0.0 ? (r.right - r.left) / lat : 0.0);
    }

    const Trajectory& primary = out.trajectories.front();
    if (has_label(primary.basis, atom_e)) {
        obs.emplace_back("P_e_final", final_pop(primary, atom_e));
        double rate = std::numeric_limits<double>::quiet_NaN();
        try {
            rate = fit_decay(population_series(primary, {atom_e}), 0.9, 0.05).rate;
        } catch (const std::exception&) {
        }
        obs.emplace_back("decay_rate", rate);
    }
    {
        const Eigen::Index last = primary.probs.rows() - 1;
        const Regions r = regions_at(primary, out.span_max, last);
        const double lat = r.left + r.right;
        obs.emplace_back("asymmetry", lat > 0.0 ? (r.right - r.left) / lat : 0.0);
    }
    return out;
}

Generator build_from_record(const RunRecord& rec) {
    if (!rec.eta_schedule.empty() && rec.model != "full_static" && rec.model != "auxiliary")
        throw std::invalid_argument("eta_schedule is only supported by full_static and auxiliary");
    std::optional<DriveSchedule> sched;
    if (!rec.eta_schedule.empty()) {
        DriveSchedule s;
        s.pieces = rec.eta_schedule;
        sched = std::move(s);
    }

    ParamReader pr(rec);
    auto atom_params = [&pr] {
        ModelParams p;
        p.J = pr.num("J");
        p.g1 = pr.num("g1");
        p.g2 = pr.num("g2");
        p.eta1 = pr.num("eta1");
        p.eta2 = pr.num("eta2");
        p.delta1 = pr.num("delta1");
        p.delta2 = pr.num("delta2");
        p.theta = pr.num("theta");
        p.N = pr.integer("N");
        p.m_min = pr.integer("m_min");
        p.m_max = pr.integer("m_max");
        return p;
    };

    Generator g = [&]() -> Generator {
        if (rec.model == "lattice")
            return build_lattice(pr.num("J"), pr.integer("m_min"), pr.integer("m_max"));
        if (rec.model == "full_static") return build_full_static(atom_params(), sched);
        if (rec.model == "full_td") return build_full_td(atom_params());
        if (rec.model == "real_space")
            return build_real_space(pr.num("J"), pr.num("lambda1"), pr.num("lambda2"),
                                    pr.integer("N"), pr.integer("m_min"), pr.integer("m_max"));
        if (rec.model == "auxiliary") return build_auxiliary(atom_params(), sched);
        if (rec.model == "giant_small")
            return build_giant_small(pr.num("J"), pr.num("g"), pr.num("xi"), pr.num("theta"),
                                     pr.integer("N"), pr.integer("M"), pr.num("omega0"),
                                     pr.integer("m_min"), pr.integer("m_max"));
        if (rec.model == "ladder_td") return build_ladder_td(atom_params());
        if (rec.model == "ladder_effective") return ladder_effective(atom_params());
        if (rec.model == "effective") {
            EffectiveParams ep;
            ep.g_e1 = pr.num("g_e1");
            ep.g_e2 = pr.num("g_e2");
            ep.delta_ee = pr.num("delta_ee");
            ep.delta_e1 = pr.num("delta_e1");
            ep.delta_e2 = pr.num("delta_e2");
            ep.theta = pr.num("theta");
            return build_effective_generator(ep, pr.num("J"), pr.integer("N"),
                                             pr.integer("m_min"), pr.integer("m_max"),
                                             pr.integer("include_shifts") != 0);
        }
        if (rec.model == "cascaded_pair")
            return build_cascaded_pair(atom_params(), pr.integer("offset_b"));
        throw std::invalid_argument("unknown model id: " + rec.model);
    }();
    pr.finish();
    return g;
}

StateVector initial_from_record(const RunRecord& rec, const Generator& g) {
    const auto label = parse_label(rec.initial);
    if (!label) throw std::invalid_argument("record: bad initial label: " + rec.initial);
    return init_state(g.basis(), *label);
}

std::uint64_t registry_checksum() {
    std::string blob;
    for (const auto& sc : list_scenarios()) {
        Overrides ov;
        if (sc.id == "fig2a") ov["N"] = "2";
        const Resolved res = find_preset(sc.id).resolve(ov);
        blob += sc.id;
        blob += '{';
        for (const auto& [name, rec] : res.runs) {
            blob += name;
            blob += ':';
            blob += rec.model;
            blob += ';';
            for (const auto& [key, value] : rec.params) {
                blob += key;
                blob += '=';
                blob += format_double(value);
                blob += ',';
            }
            for (const auto& [t0, amp] : rec.eta_schedule) {
                blob += '(';
                blob += format_double(t0);
                blob += ' ';
                blob += format_double(amp);
                blob += ')';
            }
            blob += rec.initial;
            blob += ';';
            blob += format_double(rec.cfg.dt);
            blob += ';';
            blob += format_double(rec.cfg.t_end);
            blob += '}';
        }
    }
    std::uint64_t h = 1469598103934665603ull;
    for (const unsigned char c : blob) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace synthdim
