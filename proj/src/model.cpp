#include "synthdim/model.hpp"

#include <cmath>
#include <stdexcept>

namespace synthdim {

using cd = std::complex<double>;

namespace {

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) throw std::invalid_argument(std::string("model: non-finite ") + name);
}

void check_extent(int m_min, int m_max) {
    if (m_min >= m_max) throw std::invalid_argument("model: lattice extent needs m_min < m_max");
}

void check_contains(int m_min, int m_max, int site) {
    if (site < m_min || site > m_max)
        throw std::invalid_argument("model: coupling site " + std::to_string(site) +
                                    " outside lattice extent");
}

std::vector<BasisLabel> site_labels(int m_min, int m_max) {
    std::vector<BasisLabel> labels;
    labels.reserve(static_cast<std::size_t>(m_max - m_min + 1));
    for (int m = m_min; m <= m_max; ++m) labels.push_back(BasisLabel::lattice_site(m));
    return labels;
}

void fill_lattice(Eigen::MatrixXcd& h, const Basis& b, double J) {
    const auto n = static_cast<Eigen::Index>(b.site_count());
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        h(i, i + 1) += J;
        h(i + 1, i) += J;
    }
}

void add_coupling(Eigen::MatrixXcd& h, const Basis& b, const BasisLabel& row,
                  const BasisLabel& col, cd v) {
    const auto i = static_cast<Eigen::Index>(b.index_of(row));
    const auto j = static_cast<Eigen::Index>(b.index_of(col));
    h(i, j) += v;
    h(j, i) += std::conj(v);
}

Eigen::SparseMatrix<cd> one_entry(const Basis& b, const BasisLabel& row, const BasisLabel& col,
                                  cd v) {
    Eigen::SparseMatrix<cd> m(static_cast<Eigen::Index>(b.size()),
                              static_cast<Eigen::Index>(b.size()));
    m.insert(static_cast<Eigen::Index>(b.index_of(row)),
             static_cast<Eigen::Index>(b.index_of(col))) = v;
    m.makeCompressed();
    return m;
}

// Appends the drive legs |e><f1|, |e><f2| of one atom. Without a schedule
// the legs are static with amplitudes eta1/eta2; with one, both legs become
// zero-frequency oscillating terms whose amplitude is the schedule itself.
void add_drive_legs(Eigen::MatrixXcd& h, std::vector<TdTerm>& td, const Basis& b,
                    const ModelParams& p, const std::optional<DriveSchedule>& sched, int atom) {
    const BasisLabel e = BasisLabel::atom_level(Level::e, atom);
    const BasisLabel f1 = BasisLabel::atom_level(Level::f1, atom);
    const BasisLabel f2 = BasisLabel::atom_level(Level::f2, atom);
    const cd leg1 = std::polar(1.0, p.theta);
    if (!sched) {
        add_coupling(h, b, e, f1, p.eta1 * leg1);
        add_coupling(h, b, e, f2, cd(p.eta2, 0.0));
        return;
    }
    sched->validate();
    for (int leg = 0; leg < 2; ++leg) {
        TdTerm term;
        term.op = one_entry(b, e, leg == 0 ? f1 : f2, leg == 0 ? leg1 : cd(1.0, 0.0));
        term.frequency = 0.0;
        term.schedule = *sched;
        td.push_back(std::move(term));
    }
}

}  // namespace

void ModelParams::validate() const {
    require_finite(J, "J");
    require_finite(g1, "g1");
    require_finite(g2, "g2");
    require_finite(eta1, "eta1");
    require_finite(eta2, "eta2");
    require_finite(delta1, "delta1");
    require_finite(delta2, "delta2");
    require_finite(theta, "theta");
    if (N < 0) throw std::invalid_argument("model: N must be nonnegative");
    check_extent(m_min, m_max);
    check_contains(m_min, m_max, 0);
    check_contains(m_min, m_max, N);
}

std::pair<int, int> centered_extent(int m_tot, int span_max) {
    if (span_max < 0) throw std::invalid_argument("centered_extent: negative span");
    if (m_tot <= span_max + 1)
        throw std::invalid_argument("centered_extent: window smaller than the coupling span");
    const int m_min = -((m_tot - span_max - 1) / 2);
    return {m_min, m_min + m_tot - 1};
}

Generator build_lattice(double J, int m_min, int m_max) {
    require_finite(J, "J");
    check_extent(m_min, m_max);
    Basis b(site_labels(m_min, m_max));
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(b.size(), b.size());
    fill_lattice(h, b, J);
    return Generator(std::move(b), std::move(h));
}

Generator build_full_static(const ModelParams& p, const std::optional<DriveSchedule>& eta_schedule) {
    p.validate();
    auto labels = site_labels(p.m_min, p.m_max);
    labels.push_back(BasisLabel::atom_level(Level::e));
    labels.push_back(BasisLabel::atom_level(Level::f1));
    labels.push_back(BasisLabel::atom_level(Level::f2));
    Basis b(std::move(labels));

    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(b.size(), b.size());
    fill_lattice(h, b, p.J);
    const BasisLabel f1 = BasisLabel::atom_level(Level::f1);
    const BasisLabel f2 = BasisLabel::atom_level(Level::f2);
    h(b.index_of(f1), b.index_of(f1)) = -p.delta1;
    h(b.index_of(f2), b.index_of(f2)) = -p.delta2;
    add_coupling(h, b, BasisLabel::lattice_site(0), f1, cd(p.g1, 0.0));
    add_coupling(h, b, BasisLabel::lattice_site(p.N), f2, cd(p.g2, 0.0));

    std::vector<TdTerm> td;
    add_drive_legs(h, td, b, p, eta_schedule, 0);
    return Generator(std::move(b), std::move(h), std::move(td));
}

Generator build_full_td(const ModelParams& p) {
    p.validate();
    auto labels = site_labels(p.m_min, p.m_max);
    labels.push_back(BasisLabel::atom_level(Level::e));
    labels.push_back(BasisLabel::atom_level(Level::f1));
    labels.push_back(BasisLabel::atom_level(Level::f2));
    Basis b(std::move(labels));

    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(b.size(), b.size());
    fill_lattice(h, b, p.J);

    const BasisLabel e = BasisLabel::atom_level(Level::e);
    const BasisLabel f1 = BasisLabel::atom_level(Level::f1);
    const BasisLabel f2 = BasisLabel::atom_level(Level::f2);
    std::vector<TdTerm> td;
    td.push_back({one_entry(b, BasisLabel::lattice_site(0), f1, cd(1.0, 0.0)), p.delta1,
                  DriveSchedule::constant(p.g1)});
    td.push_back({one_entry(b, BasisLabel::lattice_site(p.N), f2, cd(1.0, 0.0)), p.delta2,
                  DriveSchedule::constant(p.g2)});
    td.push_back({one_entry(b, e, f1, std::polar(1.0, p.theta)), p.delta1,
                  DriveSchedule::constant(p.eta1)});
    td.push_back({one_entry(b, e, f2, cd(1.0, 0.0)), p.delta2, DriveSchedule::constant(p.eta2)});
    return Generator(std::move(b), std::move(h), std::move(td));
}

Generator build_real_space(double J, double lambda1, double lambda2, int N, int m_min, int m_max) {
    require_finite(J, "J");
    require_finite(lambda1, "lambda1");
    require_finite(lambda2, "lambda2");
    if (N < 0) throw std::invalid_argument("model: N must be nonnegative");
    check_extent(m_min, m_max);
    check_contains(m_min, m_max, 0);
    check_contains(m_min, m_max, N);

    auto labels = site_labels(m_min, m_max);
    labels.push_back(BasisLabel::atom_level(Level::e));
    Basis b(std::move(labels));

    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(b.size(), b.size());
    fill_lattice(h, b, J);
    const BasisLabel e = BasisLabel::atom_level(Level::e);
    add_coupling(h, b, e, BasisLabel::lattice_site(0), cd(lambda1, 0.0));
    add_coupling(h, b, e, BasisLabel::lattice_site(N), cd(lambda2, 0.0));
    return Generator(std::move(b), std::move(h));
}

Generator build_auxiliary(const ModelParams& p, const std::optional<DriveSchedule>& eta_schedule) {
    p.validate();
    auto labels = site_labels(p.m_min, p.m_max);
    labels.push_back(BasisLabel::atom_level(Level::e));
    labels.push_back(BasisLabel::atom_level(Level::f1));
    labels.push_back(BasisLabel::atom_level(Level::f2));
    labels.push_back(BasisLabel::aux_mode(1));
    labels.push_back(BasisLabel::aux_mode(2));
    Basis b(std::move(labels));

    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(b.size(), b.size());
    fill_lattice(h, b, p.J);
    const BasisLabel f1 = BasisLabel::atom_level(Level::f1);
    const BasisLabel f2 = BasisLabel::atom_level(Level::f2);
    const BasisLabel b1 = BasisLabel::aux_mode(1);
    const BasisLabel b2 = BasisLabel::aux_mode(2);
    h(b.index_of(f1), b.index_of(f1)) = -p.delta1;
    h(b.index_of(f2), b.index_of(f2)) = -p.delta2;
    h(b.index_of(b1), b.index_of(b1)) = p.delta1;
    h(b.index_of(b2), b.index_of(b2)) = p.delta2;
    add_coupling(h, b, BasisLabel::lattice_site(0), f1, cd(p.g1, 0.0));
    add_coupling(h, b, BasisLabel::lattice_site(p.N), f2, cd(p.g2, 0.0));
    add_coupling(h, b, BasisLabel::lattice_site(0), b1, cd(p.g1, 0.0));
    add_coupling(h, b, BasisLabel::lattice_site(p.N), b2, cd(p.g2, 0.0));

    std::vector<TdTerm> td;
    add_drive_legs(h, td, b, p, eta_schedule, 0);
    return Generator(std::move(b), std::move(h), std::move(td));
}

Generator build_giant_small(double J, double g, double xi, double theta, int N, int M,
                            double omega0, int m_min, int m_max) {
    require_finite(J, "J");
    require_finite(g, "g");
    require_finite(xi, "xi");
    require_finite(theta, "theta");
    require_finite(omega0, "omega0");
    if (N < 0) throw std::invalid_argument("model: N must be nonnegative");
    check_extent(m_min, m_max);
    check_contains(m_min, m_max, 0);
    check_contains(m_min, m_max, N);
    check_contains(m_min, m_max, M);

    auto labels = site_labels(m_min, m_max);
    labels.push_back(BasisLabel::atom_level(Level::e, 0));  // giant atom b
    labels.push_back(BasisLabel::atom_level(Level::e, 1));  // small atom c
    Basis bb(std::move(labels));

    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(bb.size(), bb.size());
    fill_lattice(h, bb, J);
    const BasisLabel lb = BasisLabel::atom_level(Level::e, 0);
    const BasisLabel lc = BasisLabel::atom_level(Level::e, 1);
    h(bb.index_of(lb), bb.index_of(lb)) = omega0;
    h(bb.index_of(lc), bb.index_of(lc)) = omega0;
    add_coupling(h, bb, lb, BasisLabel::lattice_site(0), g * std::polar(1.0, theta));
    add_coupling(h, bb, lb, BasisLabel::lattice_site(N), cd(g, 0.0));
    add_coupling(h, bb, lc, BasisLabel::lattice_site(M), cd(xi, 0.0));
    return Generator(std::move(bb), std::move(h));
}

Generator build_ladder_td(const ModelParams& p) {
    p.validate();
    auto labels = site_labels(p.m_min, p.m_max);
    labels.push_back(BasisLabel::atom_level(Level::e));
    labels.push_back(BasisLabel::atom_level(Level::f));
    Basis b(std::move(labels));

    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(b.size(), b.size());
    fill_lattice(h, b, p.J);

    const BasisLabel e = BasisLabel::atom_level(Level::e);
    const BasisLabel f = BasisLabel::atom_level(Level::f);
    std::vector<TdTerm> td;
    td.push_back({one_entry(b, BasisLabel::lattice_site(0), f, cd(1.0, 0.0)), p.delta1,
                  DriveSchedule::constant(p.g1)});
    td.push_back({one_entry(b, BasisLabel::lattice_site(p.N), f, cd(1.0, 0.0)), p.delta2,
                  DriveSchedule::constant(p.g2)});
    td.push_back({one_entry(b, e, f, std::polar(1.0, p.theta)), p.delta1,
                  DriveSchedule::constant(p.eta1)});
    td.push_back({one_entry(b, e, f, cd(1.0, 0.0)), p.delta2, DriveSchedule::constant(p.eta2)});
    return Generator(std::move(b), std::move(h), std::move(td));
}

Generator build_cascaded_pair(const ModelParams& p, int offset_b) {
    p.validate();
    check_contains(p.m_min, p.m_max, offset_b);
    check_contains(p.m_min, p.m_max, offset_b + p.N);

    auto labels = site_labels(p.m_min, p.m_max);
    for (int atom = 0; atom < 2; ++atom) {
        labels.push_back(BasisLabel::atom_level(Level::e, atom));
        labels.push_back(BasisLabel::atom_level(Level::f1, atom));
        labels.push_back(BasisLabel::atom_level(Level::f2, atom));
    }
    Basis b(std::move(labels));

    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(b.size(), b.size());
    fill_lattice(h, b, p.J);
    for (int atom = 0; atom < 2; ++atom) {
        const int base = atom == 0 ? 0 : offset_b;
        const BasisLabel e = BasisLabel::atom_level(Level::e, atom);
        const BasisLabel f1 = BasisLabel::atom_level(Level::f1, atom);
        const BasisLabel f2 = BasisLabel::atom_level(Level::f2, atom);
        h(b.index_of(f1), b.index_of(f1)) = -p.delta1;
        h(b.index_of(f2), b.index_of(f2)) = -p.delta2;
        add_coupling(h, b, BasisLabel::lattice_site(base), f1, cd(p.g1, 0.0));
        add_coupling(h, b, BasisLabel::lattice_site(base + p.N), f2, cd(p.g2, 0.0));
        add_coupling(h, b, e, f1, p.eta1 * std::polar(1.0, p.theta));
        add_coupling(h, b, e, f2, cd(p.eta2, 0.0));
    }
    return Generator(std::move(b), std::move(h));
}

StateVector init_state(const Basis& basis, const BasisLabel& label) {
    Eigen::VectorXcd a = Eigen::VectorXcd::Zero(basis.size());
    a[static_cast<Eigen::Index>(basis.index_of(label))] = 1.0;
    return StateVector(basis, std::move(a));
}

}  // namespace synthdim
