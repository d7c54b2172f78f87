#include <doctest.h>

#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "synthdim/effective.hpp"
#include "synthdim/model.hpp"
#include "synthdim/phase.hpp"

using namespace synthdim;
using cd = std::complex<double>;

namespace {

ModelParams weak_params() {
    ModelParams p;
    p.g1 = p.g2 = 3.0;
    p.eta1 = p.eta2 = 2.0;
    p.delta1 = p.delta2 = 60.0;
    p.N = 2;
    p.m_min = -3;
    p.m_max = 4;
    return p;
}

Eigen::MatrixXcd unit_op(int n, int row, int col, cd v) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    m(row, col) = v;
    return m;
}

}  // namespace

TEST_CASE("adiabatic elimination of the intermediate levels") {
    const EffectiveParams ep = derive_effective(weak_params());
    CHECK(ep.g_e1 == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(ep.g_e2 == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(ep.delta_ee == doctest::Approx(2.0 / 15.0).epsilon(1e-14));
    CHECK(ep.delta_e1 == doctest::Approx(0.15).epsilon(1e-14));
    CHECK(ep.theta == 0.0);

    ModelParams zero = weak_params();
    zero.delta1 = 0.0;
    CHECK_THROWS_AS(derive_effective(zero), std::invalid_argument);
}

TEST_CASE("reduced generator carries the eliminated couplings and shifts") {
    ModelParams p = weak_params();
    p.theta = 1.1;
    const EffectiveParams ep = derive_effective(p);
    const Generator g = build_effective_generator(ep, 1.0, 2, -3, 4, true);
    const Basis& b = g.basis();
    const auto ie = static_cast<Eigen::Index>(b.index_of(BasisLabel::atom_level(Level::e)));
    const auto i0 = static_cast<Eigen::Index>(b.index_of(BasisLabel::lattice_site(0)));
    const auto i2 = static_cast<Eigen::Index>(b.index_of(BasisLabel::lattice_site(2)));
    const Eigen::MatrixXcd& h = g.static_part();
    CHECK(std::abs(h(ie, ie) - cd(2.0 / 15.0, 0.0)) < 1e-14);
    CHECK(std::abs(h(ie, i0) - 0.1 * std::polar(1.0, 1.1)) < 1e-14);
    CHECK(std::abs(h(ie, i2) - cd(0.1, 0.0)) < 1e-14);
    CHECK(std::abs(h(i0, i0) - cd(0.15, 0.0)) < 1e-14);
    const Generator bare = build_effective_generator(ep, 1.0, 2, -3, 4, false);
    CHECK(bare.static_part()(i0, i0) == cd(0.0, 0.0));
}

TEST_CASE("combinator: lone term yields the level repulsion of its pair") {
    const cd amp = 0.5 * std::polar(1.0, 0.3);
    const std::vector<EffectiveTerm> terms{{unit_op(2, 0, 1, amp), 10.0}};
    const Eigen::MatrixXcd h = effective_hamiltonian(terms);
    Eigen::MatrixXcd want = Eigen::MatrixXcd::Zero(2, 2);
    want(0, 0) = 0.025;
    want(1, 1) = -0.025;
    CHECK((h - want).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("combinator: equal detunings generate the two-photon coupling") {
    const double g = 2.0, eta = 3.0, d = 10.0;
    const std::vector<EffectiveTerm> terms{
        {unit_op(3, 0, 2, cd(g, 0.0)), d},
        {unit_op(3, 1, 2, cd(eta, 0.0)), d},
    };
    const Eigen::MatrixXcd h = effective_hamiltonian(terms);
    Eigen::MatrixXcd want = Eigen::MatrixXcd::Zero(3, 3);
    want(0, 0) = g * g / d;
    want(1, 1) = eta * eta / d;
    want(0, 1) = want(1, 0) = g * eta / d;
    want(2, 2) = -(g * g + eta * eta) / d;
    CHECK((h - want).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("combinator: opposite detunings pair creation with annihilation") {
    const double a = 1.0, b = 2.0, d = 4.0;
    const std::vector<EffectiveTerm> terms{
        {unit_op(3, 0, 1, cd(a, 0.0)), d},
        {unit_op(3, 1, 2, cd(b, 0.0)), -d},
    };
    const Eigen::MatrixXcd h = effective_hamiltonian(terms);
    Eigen::MatrixXcd want = Eigen::MatrixXcd::Zero(3, 3);
    want(0, 0) = a * a / d;
    want(1, 1) = -(a * a + b * b) / d;
    want(2, 2) = b * b / d;
    want(0, 2) = want(2, 0) = a * b / d;
    CHECK((h - want).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("combinator: off-resonant cross pairs are dropped") {
    const std::vector<EffectiveTerm> terms{
        {unit_op(3, 0, 1, cd(1.0, 0.0)), 3.0},
        {unit_op(3, 1, 2, cd(1.0, 0.0)), 5.0},
    };
    const Eigen::MatrixXcd h = effective_hamiltonian(terms);
    Eigen::MatrixXcd want = Eigen::MatrixXcd::Zero(3, 3);
    want(0, 0) = 1.0 / 3.0;
    want(1, 1) = -1.0 / 3.0 + 1.0 / 5.0;
    want(2, 2) = -1.0 / 5.0;
    CHECK((h - want).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("combinator input validation") {
    CHECK_THROWS_AS(effective_hamiltonian({}), std::invalid_argument);
    CHECK_THROWS_AS(effective_hamiltonian({{unit_op(2, 0, 1, cd(1.0, 0.0)), 0.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(effective_hamiltonian({{unit_op(2, 0, 1, cd(1.0, 0.0)), 5.0},
                                           {unit_op(3, 0, 1, cd(1.0, 0.0)), 5.0}}),
                    std::invalid_argument);
}

TEST_CASE("combinator applied to the ladder drives matches the closed form") {
    ModelParams p;
    p.g1 = 1.3;
    p.g2 = 0.8;
    p.eta1 = 0.6;
    p.eta2 = 0.9;
    p.delta1 = 17.0;
    p.delta2 = -23.0;
    p.theta = 0.5;
    p.N = 2;
    p.m_min = -2;
    p.m_max = 4;

    const Generator lad = build_ladder_td(p);
    std::vector<EffectiveTerm> terms;
    for (const auto& t : lad.td_terms())
        terms.push_back({t.schedule.at(0.0) * Eigen::MatrixXcd(t.op), t.frequency});
    const Eigen::MatrixXcd comb = effective_hamiltonian(terms);

    ModelParams bare = p;
    bare.g1 = bare.g2 = bare.eta1 = bare.eta2 = 0.0;
    Eigen::MatrixXcd diff =
        ladder_effective(p).static_part() - ladder_effective(bare).static_part() - comb;
    const auto f = static_cast<Eigen::Index>(
        lad.basis().index_of(BasisLabel::atom_level(Level::f)));
    diff(f, f) = 0.0;
    CHECK(diff.cwiseAbs().maxCoeff() <= 1e-12);

    ModelParams same = p;
    same.delta2 = same.delta1;
    CHECK_THROWS_AS(ladder_effective(same), std::invalid_argument);
}

TEST_CASE("opposite detunings cancel the induced level shifts exactly") {
    ModelParams q;
    q.g1 = q.g2 = 1.7;
    q.eta1 = q.eta2 = 0.9;
    q.delta1 = 37.0;
    q.delta2 = -37.0;
    q.theta = kHalfPi;
    q.N = 2;
    q.m_min = -2;
    q.m_max = 4;
    const Generator lad = build_ladder_td(q);
    std::vector<EffectiveTerm> terms;
    for (const auto& t : lad.td_terms())
        terms.push_back({t.schedule.at(0.0) * Eigen::MatrixXcd(t.op), t.frequency});
    const Eigen::MatrixXcd comb = effective_hamiltonian(terms);
    const Basis& b = lad.basis();
    const auto ie = static_cast<Eigen::Index>(b.index_of(BasisLabel::atom_level(Level::e)));
    const auto i0 = static_cast<Eigen::Index>(b.index_of(BasisLabel::lattice_site(0)));
    const auto i2 = static_cast<Eigen::Index>(b.index_of(BasisLabel::lattice_site(2)));
    CHECK(std::abs(comb(ie, ie)) == 0.0);
    CHECK(std::abs(comb(i0, i0) + comb(i2, i2)) == 0.0);
}

TEST_CASE("quarter-turn phases are exact") {
    CHECK(unit_phase_quarter(0.0) == cd(1.0, 0.0));
    CHECK(unit_phase_quarter(1.0) == cd(0.0, 1.0));
    CHECK(unit_phase_quarter(-1.0) == cd(0.0, -1.0));
    CHECK(unit_phase_quarter(-2.0) == cd(-1.0, 0.0));
    CHECK(unit_phase_quarter(6.0) == cd(-1.0, 0.0));
    CHECK(cos_quarter(-3.0) == 0.0);
    CHECK(std::abs(unit_phase_quarter(0.5) - std::polar(1.0, 0.25 * 3.141592653589793)) < 1e-15);
}

TEST_CASE("directional coupling factor vanishes at the protected points") {
    const double k0 = -kHalfPi;
    CHECK(markov_coupling(Direction::Symmetric, Side::Between, 1, 3, 0.0, k0) == cd(0.0, 0.0));
    CHECK(markov_coupling(Direction::GiantToSmall, Side::Left, -2, 5, kHalfPi, k0) ==
          cd(0.0, 0.0));
    CHECK(markov_coupling(Direction::SmallToGiant, Side::Right, 5, -2, kHalfPi, k0) ==
          cd(0.0, 0.0));
    CHECK(markov_coupling(Direction::Symmetric, Side::Between, 1, 1, 0.0, k0) == cd(0.0, -2.0));
}

TEST_CASE("side bookkeeping rejects inconsistent positions") {
    CHECK_THROWS_AS(validate_side(Side::Between, 0, 3), std::invalid_argument);
    CHECK_THROWS_AS(validate_side(Side::Left, 1, 2), std::invalid_argument);
    CHECK_THROWS_AS(validate_side(Side::Right, 4, 1), std::invalid_argument);
    CHECK_NOTHROW(validate_side(Side::Left, -2, 5));
    CHECK_NOTHROW(validate_side(Side::Right, 0, 0));
}

TEST_CASE("lone giant atom decay rate and its interference zeros") {
    CHECK(giant_decay_rate(0.7, 0.0, 2, -kHalfPi) == 0.0);
    CHECK(giant_decay_rate(0.7, kHalfPi, 5, -kHalfPi) == doctest::Approx(1.4).epsilon(1e-14));
    CHECK(giant_decay_rate(0.005, 0.0, 3, -kHalfPi) == doctest::Approx(0.01).epsilon(1e-14));
    CHECK(giant_decay_rate(0.5, 0.0, 0, -kHalfPi) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK_THROWS_AS(giant_decay_rate(-0.1, 0.0, 2, -kHalfPi), std::invalid_argument);
}

TEST_CASE("band-center rates from couplings") {
    const MarkovRates r = MarkovRates::from_couplings(0.1, 0.2);
    CHECK(r.gamma_b == doctest::Approx(0.005).epsilon(1e-14));
    CHECK(r.gamma_c == doctest::Approx(0.02).epsilon(1e-14));
    CHECK(r.gamma_bc == doctest::Approx(0.01).epsilon(1e-14));
    CHECK_NOTHROW(MarkovRates::from_couplings(0.1, 0.0).validate());

    MarkovRates bad;
    bad.gamma_b = 0.1;
    bad.gamma_c = 0.1;
    bad.gamma_bc = 0.2;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    CHECK_THROWS_AS(MarkovRates::from_couplings(0.1, 0.1, 0.0), std::invalid_argument);
}
