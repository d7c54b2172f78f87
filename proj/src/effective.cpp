#include "synthdim/effective.hpp"

#include <cmath>
#include <stdexcept>

#include "synthdim/phase.hpp"

namespace synthdim {

using cd = std::complex<double>;

EffectiveParams derive_effective(const ModelParams& p) {
    p.validate();
    if (p.delta1 == 0.0 || p.delta2 == 0.0)
        throw std::invalid_argument("derive_effective: detunings must be nonzero");
    EffectiveParams ep;
    ep.g_e1 = p.g1 * p.eta1 / p.delta1;
    ep.g_e2 = p.g2 * p.eta2 / p.delta2;
    ep.delta_ee = (p.eta1 * p.eta1 * p.delta2 + p.eta2 * p.eta2 * p.delta1) / (p.delta1 * p.delta2);
    ep.delta_e1 = p.g1 * p.g1 / p.delta1;
    ep.delta_e2 = p.g2 * p.g2 / p.delta2;
    ep.theta = p.theta;
    return ep;
}

Generator build_effective_generator(const EffectiveParams& ep, double J, int N, int m_min,
                                    int m_max, bool include_shifts) {
    if (N < 0) throw std::invalid_argument("build_effective_generator: N must be nonnegative");
    if (m_min >= m_max) throw std::invalid_argument("build_effective_generator: bad extent");
    if (0 < m_min || N > m_max)
        throw std::invalid_argument("build_effective_generator: coupling sites outside extent");

    std::vector<BasisLabel> labels;
    for (int m = m_min; m <= m_max; ++m) labels.push_back(BasisLabel::lattice_site(m));
    labels.push_back(BasisLabel::atom_level(Level::e));
    Basis b(std::move(labels));

    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(b.size(), b.size());
    const auto ns = static_cast<Eigen::Index>(b.site_count());
    for (Eigen::Index i = 0; i + 1 < ns; ++i) {
        h(i, i + 1) += J;
        h(i + 1, i) += J;
    }
    const auto ie = static_cast<Eigen::Index>(b.index_of(BasisLabel::atom_level(Level::e)));
    const auto i0 = static_cast<Eigen::Index>(b.index_of(BasisLabel::lattice_site(0)));
    const auto iN = static_cast<Eigen::Index>(b.index_of(BasisLabel::lattice_site(N)));
    h(ie, ie) = ep.delta_ee;
    const cd c1 = ep.g_e1 * std::polar(1.0, ep.theta);
    h(ie, i0) += c1;
    h(i0, ie) += std::conj(c1);
    h(ie, iN) += ep.g_e2;
    h(iN, ie) += ep.g_e2;
    if (include_shifts) {
        h(i0, i0) += ep.delta_e1;
        h(iN, iN) += ep.delta_e2;
    }
    return Generator(std::move(b), std::move(h));
}

MarkovRates MarkovRates::from_couplings(double g, double xi, double v0, double k0) {
    if (!(v0 > 0.0)) throw std::invalid_argument("MarkovRates: v0 must be positive");
    MarkovRates r;
    r.gamma_b = g * g / v0;
    r.gamma_c = xi * xi / v0;
    r.gamma_bc = g * xi / v0;
    r.v0 = v0;
    r.k0 = k0;
    r.validate();
    return r;
}

void MarkovRates::validate() const {
    if (!(v0 > 0.0)) throw std::invalid_argument("MarkovRates: v0 must be positive");
    if (gamma_b < 0.0 || gamma_c < 0.0)
        throw std::invalid_argument("MarkovRates: negative decay rate");
    const double scale = std::max({1e-300, gamma_b * gamma_c});
    if (std::abs(gamma_bc * gamma_bc - gamma_b * gamma_c) > 1e-9 * std::max(1.0, scale))
        throw std::invalid_argument("MarkovRates: gamma_bc^2 must equal gamma_b gamma_c");
    if (!std::isfinite(k0)) throw std::invalid_argument("MarkovRates: non-finite k0");
}

void validate_side(Side side, int M, int D) {
    if (M == 0 && D == 0) return;  // formal no-delay limit
    switch (side) {
        case Side::Between:
            if (M <= 0 || D <= 0)
                throw std::invalid_argument("markov side Between needs 0 < M < N");
            return;
        case Side::Left:
            if (M >= 0 || D <= 0) throw std::invalid_argument("markov side Left needs M < 0");
            return;
        case Side::Right:
            if (D >= 0 || M <= 0) throw std::invalid_argument("markov side Right needs M > N");
            return;
    }
    throw std::invalid_argument("markov: unknown side");
}

std::complex<double> markov_coupling(Direction dir, Side side, int M, int D, double theta,
                                     double k0) {
    validate_side(side, M, D);
    const int Mr = side == Side::Left ? std::abs(M) : M;
    const int Dr = side == Side::Right ? std::abs(D) : D;
    const double sign = dir == Direction::GiantToSmall ? -1.0 : 1.0;
    const double qk = k0 / kHalfPi;
    const double qt = theta / kHalfPi;
    return unit_phase_quarter(qk * Mr + sign * qt) + unit_phase_quarter(qk * Dr);
}

double giant_decay_rate(double gamma_b, double theta, int N, double k0) {
    if (gamma_b < 0.0) throw std::invalid_argument("giant_decay_rate: negative gamma_b");
    if (N < 0) throw std::invalid_argument("giant_decay_rate: negative N");
    const double qk = k0 / kHalfPi;
    const double qt = theta / kHalfPi;
    return 2.0 * gamma_b * (1.0 + cos_quarter(qt) * cos_quarter(qk * N));
}

Eigen::MatrixXcd effective_hamiltonian(const std::vector<EffectiveTerm>& terms) {
    if (terms.empty()) throw std::invalid_argument("effective_hamiltonian: no terms");
    const Eigen::Index n = terms.front().op.rows();
    for (const auto& t : terms) {
        if (t.op.rows() != n || t.op.cols() != n)
            throw std::invalid_argument("effective_hamiltonian: operator dimensions differ");
        if (t.detuning == 0.0 || !std::isfinite(t.detuning))
            throw std::invalid_argument("effective_hamiltonian: detunings must be nonzero finite");
    }
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
    for (const auto& tm : terms) {
        for (const auto& tn : terms) {
            const double inv = 1.0 / tn.detuning;
            if (tm.detuning + tn.detuning == 0.0) {
                h.noalias() -= inv * (tm.op * tn.op);
                h.noalias() += inv * (tm.op.adjoint() * tn.op.adjoint());
            }
            if (tm.detuning - tn.detuning == 0.0) {
                h.noalias() -= inv * (tm.op.adjoint() * tn.op);
                h.noalias() += inv * (tm.op * tn.op.adjoint());
            }
        }
    }
    return h;
}

Generator ladder_effective(const ModelParams& p) {
    p.validate();
    if (p.delta1 == 0.0 || p.delta2 == 0.0)
        throw std::invalid_argument("ladder_effective: detunings must be nonzero");
    if (p.delta1 == p.delta2)
        throw std::invalid_argument("ladder_effective: needs delta1 != delta2");

    std::vector<BasisLabel> labels;
    for (int m = p.m_min; m <= p.m_max; ++m) labels.push_back(BasisLabel::lattice_site(m));
    labels.push_back(BasisLabel::atom_level(Level::e));
    labels.push_back(BasisLabel::atom_level(Level::f));
    Basis b(std::move(labels));

    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(b.size(), b.size());
    const auto ns = static_cast<Eigen::Index>(b.site_count());
    for (Eigen::Index i = 0; i + 1 < ns; ++i) {
        h(i, i + 1) += p.J;
        h(i + 1, i) += p.J;
    }
    const auto ie = static_cast<Eigen::Index>(b.index_of(BasisLabel::atom_level(Level::e)));
    const auto i0 = static_cast<Eigen::Index>(b.index_of(BasisLabel::lattice_site(0)));
    const auto iN = static_cast<Eigen::Index>(b.index_of(BasisLabel::lattice_site(p.N)));
    h(ie, ie) = p.eta1 * p.eta1 / p.delta1 + p.eta2 * p.eta2 / p.delta2;
    h(i0, i0) += p.g1 * p.g1 / p.delta1;
    h(iN, iN) += p.g2 * p.g2 / p.delta2;
    const cd c1 = (p.g1 * p.eta1 / p.delta1) * std::polar(1.0, p.theta);
    h(ie, i0) += c1;
    h(i0, ie) += std::conj(c1);
    const double c2 = p.g2 * p.eta2 / p.delta2;
    h(ie, iN) += c2;
    h(iN, ie) += c2;
    return Generator(std::move(b), std::move(h));
}

}  // namespace synthdim
