#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "synthdim/dynamics.hpp"
#include "synthdim/effective.hpp"
#include "synthdim/model.hpp"
#include "synthdim/phase.hpp"

using namespace synthdim;
using cd = std::complex<double>;

TEST_CASE("integrator config validation") {
    IntegratorConfig cfg;
    cfg.dt = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = IntegratorConfig{};
    cfg.t_end = -1.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = IntegratorConfig{};
    cfg.sample_stride = -2;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = IntegratorConfig{};
    cfg.method = "euler";
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("two coupled modes oscillate as sin^2") {
    const Generator g = build_lattice(1.0, 0, 1);
    const StateVector psi0 = init_state(g.basis(), BasisLabel::lattice_site(0));
    IntegratorConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 2.0;
    const Trajectory tr = propagate(g, psi0, cfg);
    const auto c1 = tr.label_col(BasisLabel::lattice_site(1));
    const double got = tr.probs(tr.probs.rows() - 1, c1);
    const double s = std::sin(2.0);
    CHECK(std::abs(got - s * s) < 1e-9);
    for (Eigen::Index i = 0; i < tr.probs.rows(); ++i)
        CHECK(std::abs(tr.probs.row(i).sum() - 1.0) < 1e-9);
}

TEST_CASE("resonant drive between two atomic levels") {
    ModelParams p;
    p.J = 0.0;
    p.eta1 = 0.7;
    p.N = 1;
    p.m_min = -1;
    p.m_max = 1;
    const Generator g = build_full_static(p);
    const StateVector psi0 = init_state(g.basis(), BasisLabel::atom_level(Level::e));
    IntegratorConfig cfg;
    cfg.dt = 0.01;
    cfg.t_end = 3.0;
    const Trajectory tr = propagate(g, psi0, cfg);
    const auto cf = tr.label_col(BasisLabel::atom_level(Level::f1));
    const double s = std::sin(2.1);
    CHECK(std::abs(tr.probs(tr.probs.rows() - 1, cf) - s * s) < 1e-9);
}

TEST_CASE("halving the step leaves the trajectory unchanged at the shared samples") {
    ModelParams p;
    p.g1 = p.g2 = 3.0;
    p.eta1 = p.eta2 = 2.0;
    p.delta1 = p.delta2 = 60.0;
    p.N = 2;
    const auto [lo, hi] = centered_extent(15, p.N);
    p.m_min = lo;
    p.m_max = hi;
    const Generator g = build_full_static(p);
    const StateVector psi0 = init_state(g.basis(), BasisLabel::atom_level(Level::e));

    IntegratorConfig coarse;
    coarse.dt = 2e-4;
    coarse.t_end = 2.0;
    IntegratorConfig fine = coarse;
    fine.dt = 1e-4;
    const Trajectory a = propagate(g, psi0, coarse);
    const Trajectory b = propagate(g, psi0, fine);
    REQUIRE(a.times.size() == b.times.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < a.times.size(); ++i) {
        REQUIRE(a.times[i] == doctest::Approx(b.times[i]).epsilon(1e-12));
        worst = std::max(worst, (a.probs.row(static_cast<Eigen::Index>(i)) -
                                 b.probs.row(static_cast<Eigen::Index>(i)))
                                    .cwiseAbs()
                                    .maxCoeff());
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("sampling follows the requested stride and always keeps the endpoint") {
    const Generator g = build_lattice(0.25, 0, 1);
    const StateVector psi0 = init_state(g.basis(), BasisLabel::lattice_site(0));
    IntegratorConfig cfg;
    cfg.dt = 0.25;
    cfg.t_end = 1.0;
    cfg.sample_stride = 3;
    const Trajectory tr = propagate(g, psi0, cfg);
    REQUIRE(tr.times.size() == 3);
    CHECK(tr.times[0] == 0.0);
    CHECK(tr.times[1] == doctest::Approx(0.75));
    CHECK(tr.times[2] == doctest::Approx(1.0));
}

TEST_CASE("zero-length run records just the initial state") {
    const Generator g = build_lattice(1.0, 0, 1);
    const StateVector psi0 = init_state(g.basis(), BasisLabel::lattice_site(1));
    IntegratorConfig cfg;
    cfg.t_end = 0.0;
    const Trajectory tr = propagate(g, psi0, cfg);
    REQUIRE(tr.times.size() == 1);
    CHECK(tr.probs(0, 1) == 1.0);
}

TEST_CASE("amplitude recording is optional and consistent with populations") {
    const Generator g = build_lattice(1.0, 0, 2);
    const StateVector psi0 = init_state(g.basis(), BasisLabel::lattice_site(1));
    IntegratorConfig cfg;
    cfg.dt = 0.01;
    cfg.t_end = 1.0;
    CHECK_FALSE(propagate(g, psi0, cfg).amps.has_value());
    cfg.record_amps = true;
    const Trajectory tr = propagate(g, psi0, cfg);
    REQUIRE(tr.amps.has_value());
    CHECK(tr.amps->row(0)(1) == cd(1.0, 0.0));
    const Eigen::MatrixXd back = tr.amps->cwiseAbs2();
    CHECK((back - tr.probs).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("oversized steps are rejected up front") {
    const Generator g = build_lattice(1.0, 0, 1);
    const StateVector psi0 = init_state(g.basis(), BasisLabel::lattice_site(0));
    IntegratorConfig cfg;
    cfg.dt = 0.2;
    CHECK_THROWS_AS(propagate(g, psi0, cfg), std::invalid_argument);
}

TEST_CASE("state from a different basis is rejected") {
    const Generator g2 = build_lattice(1.0, 0, 1);
    const Generator g3 = build_lattice(1.0, 0, 2);
    const StateVector psi0 = init_state(g3.basis(), BasisLabel::lattice_site(0));
    IntegratorConfig cfg;
    CHECK_THROWS_AS(propagate(g2, psi0, cfg), std::invalid_argument);
}

TEST_CASE("slow norm drift aborts the run with time and size attached") {
    const Generator g = build_lattice(1.0, 0, 1);
    const StateVector psi0 = init_state(g.basis(), BasisLabel::lattice_site(0));
    IntegratorConfig cfg;
    cfg.dt = 0.1;  // right at the stability limit: accepted but lossy
    cfg.t_end = 50.0;
    CHECK_THROWS_AS(propagate(g, psi0, cfg), NormDriftError);
    try {
        propagate(g, psi0, cfg);
    } catch (const NormDriftError& e) {
        CHECK(e.drift > 1e-6);
        CHECK(e.t > 1.0);
        CHECK(e.t < 50.0);
    }
}

TEST_CASE("delay-free pair equations reproduce the complex decay rate") {
    const MarkovRates r = MarkovRates::from_couplings(0.1, 0.0);
    IntegratorConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 2.0;
    const TwoAtomSeries s =
        integrate_markov(r, 1, 3, 0.0, Side::Between, cd(1.0, 0.0), cd(0.0, 0.0), cfg);
    const cd want = std::exp(cd(-0.02, -0.02));
    CHECK(std::abs(s.u_b.back() - want) < 1e-12);
    CHECK(std::abs(s.u_c.back()) == 0.0);
    CHECK(s.times.back() == doctest::Approx(2.0));
}

TEST_CASE("protected phase keeps emission one-way between the atoms") {
    const MarkovRates r = MarkovRates::from_couplings(0.2, 0.3);
    IntegratorConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 2.0;
    const int M = -1, N = 3;

    const TwoAtomSeries fwd =
        integrate_markov(r, M, N, kHalfPi, Side::Left, cd(1.0, 0.0), cd(0.0, 0.0), cfg);
    for (const cd& v : fwd.u_c) CHECK(std::abs(v) == 0.0);
    CHECK(std::abs(fwd.u_b.back() - std::exp(cd(-0.08, 0.0))) < 1e-12);

    const TwoAtomSeries rev =
        integrate_markov(r, M, N, kHalfPi, Side::Left, cd(0.0, 0.0), cd(1.0, 0.0), cfg);
    const double a = 0.04, c = 0.045;
    const double amp = 12.0 * (std::exp(-c * 2.0) - std::exp(-a * 2.0));
    CHECK(std::abs(rev.u_b.back() - cd(amp, 0.0)) < 1e-10);
    CHECK(std::abs(rev.u_c.back() - std::exp(cd(-0.09, 0.0))) < 1e-12);
}

TEST_CASE("retarded self-interaction switches on after one round trip") {
    const MarkovRates r = MarkovRates::from_couplings(0.1, 0.0);
    IntegratorConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 2.0;
    cfg.sample_stride = 1000;
    const TwoAtomSeries s =
        integrate_dde(r, 1, 3, 0.0, Side::Between, cd(1.0, 0.0), cd(0.0, 0.0), cfg);
    REQUIRE(s.times.size() == 3);

    // before the round trip: plain exponential at the instantaneous rate
    const double a = 0.01;
    CHECK(std::abs(s.u_b[1] - cd(std::exp(-a), 0.0)) < 1e-12);

    // after it: the retarded branch adds a linearly growing correction
    const double tau = 1.5;
    const cd B(0.0, -0.01);
    const cd want = std::exp(-a * 2.0) * (1.0 + B * std::exp(a * tau) * (2.0 - tau));
    CHECK(std::abs(s.u_b[2] - want) < 1e-5);
    CHECK(std::abs(s.u_b[2].imag() + 5.0e-3) < 1e-4);
}

TEST_CASE("delay equations reduce to the delay-free form at zero distance") {
    const MarkovRates r = MarkovRates::from_couplings(0.2, 0.1);
    IntegratorConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 2.0;
    const TwoAtomSeries m =
        integrate_markov(r, 0, 0, 0.3, Side::Between, cd(1.0, 0.0), cd(0.0, 0.0), cfg);
    const TwoAtomSeries d =
        integrate_dde(r, 0, 0, 0.3, Side::Between, cd(1.0, 0.0), cd(0.0, 0.0), cfg);
    REQUIRE(m.times.size() == d.times.size());
    for (std::size_t i = 0; i < m.times.size(); ++i) {
        CHECK(std::abs(m.u_b[i] - d.u_b[i]) < 1e-12);
        CHECK(std::abs(m.u_c[i] - d.u_c[i]) < 1e-12);
    }
}

TEST_CASE("delays that miss the step grid are rejected") {
    const MarkovRates r = MarkovRates::from_couplings(0.1, 0.1);
    IntegratorConfig cfg;
    cfg.dt = 3e-3;
    cfg.t_end = 1.0;
    CHECK_THROWS_AS(
        integrate_dde(r, -1, 1, 0.0, Side::Left, cd(1.0, 0.0), cd(0.0, 0.0), cfg),
        std::invalid_argument);
}
