// effective.hpp — Reduced descriptions: adiabatic elimination, second-order
// combinator, and the Markovian rates of the giant/small-atom pair

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "synthdim/generator.hpp"
#include "synthdim/params.hpp"

namespace synthdim {

// Couplings and level shifts left after eliminating the far-detuned
// intermediate levels of the four-level scheme.
struct EffectiveParams {
    double g_e1{0.0};      // g1 eta1 / delta1
    double g_e2{0.0};      // g2 eta2 / delta2
    double delta_ee{0.0};  // (eta1^2 delta2 + eta2^2 delta1) / (delta1 delta2)
    double delta_e1{0.0};  // g1^2 / delta1, shift of site 0
    double delta_e2{0.0};  // g2^2 / delta2, shift of site N
    double theta{0.0};
};

// Requires nonzero detunings; does not check that they are large.
EffectiveParams derive_effective(const ModelParams& p);

// Two-level giant atom with the eliminated-level parameters: couplings
// g_e1 e^{i theta} (site 0) and g_e2 (site N), diagonal delta_ee on e, and
// optionally the site shifts delta_e1/delta_e2.
Generator build_effective_generator(const EffectiveParams& ep, double J, int N, int m_min,
                                    int m_max, bool include_shifts);

enum class Side { Between, Left, Right };           // small atom inside / left of / right of [0, N]
enum class Direction { GiantToSmall, SmallToGiant, Symmetric };

// Band-center Markov rates for couplings g (giant) and xi (small):
// gamma_b = g^2 / v0, gamma_c = xi^2 / v0, gamma_bc = g xi / v0.
struct MarkovRates {
    double gamma_b{0.0};
    double gamma_c{0.0};
    double gamma_bc{0.0};
    double v0{2.0};        // group velocity at band center, 2J with J = 1
    double k0{-1.5707963267948966};  // band-center wavenumber -pi/2

    static MarkovRates from_couplings(double g, double xi, double v0 = 2.0,
                                      double k0 = -1.5707963267948966);
    void validate() const;
};

// Rejects index combinations inconsistent with the side (Between needs
// 0 < M < N, Left needs M < 0, Right needs M > N); M = D = 0 passes as the
// formal no-delay limit.
void validate_side(Side side, int M, int D);

// Interference factor e^{i(k0 M' +/- theta)} + e^{i k0 D'} governing the
// directional coupling between the atoms, with M' and D' the side-resolved
// absolute distances (M' = |M| on the left, D' = |D| on the right) and the
// phase sign +theta toward the giant atom, -theta away from it. Exactly zero
// whenever the two unit phases cancel on quarter-turn angles.
std::complex<double> markov_coupling(Direction dir, Side side, int M, int D, double theta,
                                     double k0);

// Amplitude decay rate of the giant atom alone:
// Re[2 gamma_b (1 + cos(theta) e^{i k0 N})]. Exactly zero at the
// interference-protected points (theta = 0, k0 = -pi/2, N = 2 mod 4).
double giant_decay_rate(double gamma_b, double theta, int N, double k0);

// One oscillating term h^dagger e^{+i detuning t} + h.c. of a drive
// Hamiltonian, given by the operator multiplying the positive-frequency
// exponential.
struct EffectiveTerm {
    Eigen::MatrixXcd op;   // h^dagger
    double detuning{0.0};  // must be nonzero
};

// Second-order time-averaged Hamiltonian of sum_m (h_m^dag e^{i D_m t} + h.c.):
// keeps only exactly resonant pairs, contributing
//   -(1/D_n) (h_m^dag h_n^dag - h_m h_n)   when D_m + D_n = 0,
//   -(1/D_n) (h_m h_n^dag - h_m^dag h_n)   when D_m - D_n = 0.
// Resonance is exact floating-point zero; no tolerance window.
Eigen::MatrixXcd effective_hamiltonian(const std::vector<EffectiveTerm>& terms);

// Closed form of the combinator applied to the ladder scheme, assuming
// delta1 != delta2 and both nonzero: couplings g1 eta1/delta1 e^{i theta}
// (site 0) and g2 eta2/delta2 (site N), level shifts eta1^2/delta1 +
// eta2^2/delta2 on e and g1^2/delta1, g2^2/delta2 on the coupling sites.
// The shift of the idle intermediate level is dropped.
Generator ladder_effective(const ModelParams& p);

}  // namespace synthdim
