// observables.hpp — Derived quantities on sampled trajectories

#pragma once

#include <cstddef>
#include <vector>

#include "synthdim/dynamics.hpp"

namespace synthdim {

struct Series {
    std::vector<double> times;
    std::vector<double> values;
};

// Total probability in the given labels at each sample time.
Series population_series(const Trajectory& tr, const std::vector<BasisLabel>& labels);

// Lattice mass split around the coupling span [0, N] at the sample nearest t,
// plus everything that is not a lattice site. asymmetry is
// (right - left) / (right + left) with 0/0 mapped to 0.
struct ChiralityReport {
    double left_mass{0.0};     // sites m < 0
    double between_mass{0.0};  // sites 0 <= m <= N
    double right_mass{0.0};    // sites m > N
    double atom_mass{0.0};     // atomic levels and auxiliary modes
    double asymmetry{0.0};
};

ChiralityReport chirality(const Trajectory& tr, int N, double t);

// Least-squares exponential fit: slope of -log P over the samples with
// p_lo <= P <= p_hi. Needs at least 10 such samples.
struct DecayFit {
    double rate{0.0};
    double residual{0.0};  // rms deviation of -log P from the fitted line
    std::size_t n_samples{0};
};

DecayFit fit_decay(const Series& s, double p_hi = 0.9, double p_lo = 0.05);

// Largest pointwise probability difference over the labels; the two
// trajectories must share the same sample grid.
double max_deviation(const Trajectory& a, const Trajectory& b,
                     const std::vector<BasisLabel>& labels);

// Largest total probability within edge_width sites of either lattice edge
// over all samples; a guard against boundary reflections.
double boundary_contamination(const Trajectory& tr, int edge_width);

}  // namespace synthdim
