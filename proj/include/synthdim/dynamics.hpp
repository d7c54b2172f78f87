// dynamics.hpp — Fixed-step propagation and the reduced two-atom integrators

#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "synthdim/effective.hpp"
#include "synthdim/generator.hpp"

namespace synthdim {

struct IntegratorConfig {
    double dt{1e-3};
    double t_end{5.0};
    int sample_stride{0};          // 0: pick a stride giving about 500 samples
    std::string method{"rk4"};     // classical fixed-step 4th-order Runge-Kutta is the only scheme
    bool record_amps{false};

    void validate() const;
};

// Thrown when the propagated state loses or gains more than 1e-6 norm,
// which means the step size was too large for the generator.
struct NormDriftError : std::runtime_error {
    double t;
    double drift;
    NormDriftError(double t_, double drift_);
};

// Fully resolved description of one run: enough to rebuild the generator,
// the initial state and the integrator and reproduce the trajectory.
struct RunRecord {
    std::string model;                                     // builder id
    std::vector<std::pair<std::string, double>> params;    // ordered numeric parameters
    std::vector<std::pair<double, double>> eta_schedule;   // empty: constant drives
    std::string initial;                                   // label name
    IntegratorConfig cfg;
};

struct Trajectory {
    Basis basis;
    std::vector<double> times;
    Eigen::MatrixXd probs;                  // one row per sample, one column per label
    std::optional<Eigen::MatrixXcd> amps;   // present when cfg.record_amps
    RunRecord meta;
    std::string name;
    std::string scenario_id;

    Eigen::Index label_col(const BasisLabel& l) const;
};

// Integrates i d/dt psi = H(t) psi with fixed-step RK4. Requires
// dt <= 0.1 / max(frequency bound, 1e-12) and aborts on norm drift.
Trajectory propagate(const Generator& g, const StateVector& psi0, const IntegratorConfig& cfg);

struct TwoAtomSeries {
    std::vector<double> times;
    std::vector<std::complex<double>> u_b;  // giant-atom amplitude
    std::vector<std::complex<double>> u_c;  // small-atom amplitude
};

// Delay-free amplitude equations for the giant/small atom pair: the giant
// atom decays with the complex rate 2 gamma_b (1 + cos(theta) e^{i k0 N})
// and the cross couplings are gamma_bc times the side-resolved interference
// factors. M = 0, N = 0 is allowed as the formal no-delay limit.
TwoAtomSeries integrate_markov(const MarkovRates& r, int M, int N, double theta, Side side,
                               std::complex<double> ub0, std::complex<double> uc0,
                               const IntegratorConfig& cfg);

// Same equations with the retarded arguments kept: each travel delay
// (N, |M|, |N - M|) / v0 enters as u(t - tau) gated by a step function that
// is already active at t = tau. Delays must sit on the dt grid within 1e-9.
TwoAtomSeries integrate_dde(const MarkovRates& r, int M, int N, double theta, Side side,
                            std::complex<double> ub0, std::complex<double> uc0,
                            const IntegratorConfig& cfg);

}  // namespace synthdim
