#include "synthdim/observables.hpp"

#include <cmath>
#include <stdexcept>

namespace synthdim {

namespace {

std::size_t nearest_sample(const std::vector<double>& times, double t) {
    if (times.empty()) throw std::invalid_argument("observables: empty trajectory");
    if (t < times.front() - 1e-9 || t > times.back() + 1e-9)
        throw std::invalid_argument("observables: time outside the sampled range");
    std::size_t best = 0;
    double dist = std::abs(times[0] - t);
    for (std::size_t i = 1; i < times.size(); ++i) {
        const double d = std::abs(times[i] - t);
        if (d < dist) {
            dist = d;
            best = i;
        }
    }
    return best;
}

}  // namespace

Series population_series(const Trajectory& tr, const std::vector<BasisLabel>& labels) {
    Series s;
    s.times = tr.times;
    s.values.assign(tr.times.size(), 0.0);
    for (const auto& l : labels) {
        const Eigen::Index c = tr.label_col(l);
        for (std::size_t i = 0; i < s.values.size(); ++i)
            s.values[i] += tr.probs(static_cast<Eigen::Index>(i), c);
    }
    return s;
}

ChiralityReport chirality(const Trajectory& tr, int N, double t) {
    if (N < 0) throw std::invalid_argument("chirality: negative N");
    const auto row = static_cast<Eigen::Index>(nearest_sample(tr.times, t));
    ChiralityReport rep;
    for (std::size_t i = 0; i < tr.basis.size(); ++i) {
        const double p = tr.probs(row, static_cast<Eigen::Index>(i));
        const BasisLabel& l = tr.basis[i];
        if (l.kind != BasisLabel::Kind::LatticeSite) {
            rep.atom_mass += p;
        } else if (l.site < 0) {
            rep.left_mass += p;
        } else if (l.site > N) {
            rep.right_mass += p;
        } else {
            rep.between_mass += p;
        }
    }
    const double denom = rep.right_mass + rep.left_mass;
    rep.asymmetry = denom == 0.0 ? 0.0 : (rep.right_mass - rep.left_mass) / denom;
    return rep;
}

DecayFit fit_decay(const Series& s, double p_hi, double p_lo) {
    if (!(p_lo > 0.0) || !(p_hi > p_lo))
        throw std::invalid_argument("fit_decay: need 0 < p_lo < p_hi");
    std::vector<double> ts, ys;
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        const double p = s.values[i];
        if (p >= p_lo && p <= p_hi) {
            ts.push_back(s.times[i]);
            ys.push_back(-std::log(p));
        }
    }
    if (ts.size() < 10)
        throw std::invalid_argument("fit_decay: fewer than 10 samples inside the window");

    const auto n = static_cast<double>(ts.size());
    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        st += ts[i];
        sy += ys[i];
        stt += ts[i] * ts[i];
        sty += ts[i] * ys[i];
    }
    const double det = n * stt - st * st;
    if (det == 0.0) throw std::invalid_argument("fit_decay: degenerate time grid");
    const double rate = (n * sty - st * sy) / det;
    const double intercept = (sy - rate * st) / n;

    double ss = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double r = ys[i] - (intercept + rate * ts[i]);
        ss += r * r;
    }
    return {rate, std::sqrt(ss / n), ts.size()};
}

double max_deviation(const Trajectory& a, const Trajectory& b,
                     const std::vector<BasisLabel>& labels) {
    if (a.times.size() != b.times.size())
        throw std::invalid_argument("max_deviation: sample counts differ");
    for (std::size_t i = 0; i < a.times.size(); ++i)
        if (std::abs(a.times[i] - b.times[i]) > 1e-12)
            throw std::invalid_argument("max_deviation: sample grids differ");
    double dev = 0.0;
    for (const auto& l : labels) {
        const Eigen::Index ca = a.label_col(l);
        const Eigen::Index cb = b.label_col(l);
        const double d = (a.probs.col(ca) - b.probs.col(cb)).cwiseAbs().maxCoeff();
        dev = std::max(dev, d);
    }
    return dev;
}

double boundary_contamination(const Trajectory& tr, int edge_width) {
    if (!tr.basis.has_sites())
        throw std::invalid_argument("boundary_contamination: basis has no lattice block");
    const auto n_sites = static_cast<int>(tr.basis.site_count());
    if (edge_width < 1 || 2 * edge_width > n_sites)
        throw std::invalid_argument("boundary_contamination: edge width exceeds half the lattice");
    double worst = 0.0;
    for (Eigen::Index row = 0; row < tr.probs.rows(); ++row) {
        double mass = 0.0;
        for (int i = 0; i < edge_width; ++i) {
            mass += tr.probs(row, i);
            mass += tr.probs(row, n_sites - 1 - i);
        }
        worst = std::max(worst, mass);
    }
    return worst;
}

}  // namespace synthdim
