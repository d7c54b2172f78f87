// model.hpp — Hamiltonian builders for giant atoms on a synthetic mode lattice

#pragma once

#include <optional>

#include "synthdim/generator.hpp"
#include "synthdim/params.hpp"

namespace synthdim {

// Bare tight-binding chain of modes m_min..m_max with hopping J between
// neighbours. Open boundaries; spectrum lies inside [-2J, 2J].
Generator build_lattice(double J, int m_min, int m_max);

// Four-level atom in the frame where both drives are static: detunings
// -delta1, -delta2 on the intermediate levels, couplings g1 (site 0),
// g2 (site N), eta1 e^{i theta} and eta2 on the upper transition. When an
// eta schedule is given it replaces both constant drive amplitudes: the legs
// become zero-frequency oscillating terms that follow the schedule.
Generator build_full_static(const ModelParams& p,
                            const std::optional<DriveSchedule>& eta_schedule = std::nullopt);

// Same model with all four couplings kept explicitly time dependent: the
// lattice is the only static block and the legs oscillate at delta1/delta2.
// Related to build_full_static by a frame transformation that leaves every
// population unchanged.
Generator build_full_td(const ModelParams& p);

// Two-level giant atom coupled directly to sites 0 and N with strengths
// lambda1, lambda2 and no detuning.
Generator build_real_space(double J, double lambda1, double lambda2, int N, int m_min, int m_max);

// Full model extended by two auxiliary modes at +delta1/+delta2 coupled to
// sites 0 and N with g1/g2. Their level shifts cancel the ones induced by
// the intermediate levels at the coupling sites.
Generator build_auxiliary(const ModelParams& p,
                          const std::optional<DriveSchedule>& eta_schedule = std::nullopt);

// Giant two-level atom b (coupling points 0 and N, phase theta on the site-0
// leg) sharing the lattice with a small atom c at site M, both at energy
// omega0.
Generator build_giant_small(double J, double g, double xi, double theta, int N, int M,
                            double omega0, int m_min, int m_max);

// Ladder variant: one intermediate level f shared by both legs, all four
// couplings time dependent (g-legs at delta1/delta2 toward sites 0/N, drive
// legs at the same frequencies toward e).
Generator build_ladder_td(const ModelParams& p);

// Two identical four-level atoms sharing the lattice: atom A couples at
// sites {0, N}, atom B at {offset_b, offset_b + N}.
Generator build_cascaded_pair(const ModelParams& p, int offset_b);

// Unit excitation in the given basis state.
StateVector init_state(const Basis& basis, const BasisLabel& label);

}  // namespace synthdim
