// generator.hpp — Hamiltonian container: static matrix plus oscillating drive terms

#pragma once

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "synthdim/basis.hpp"

namespace synthdim {

// Piecewise-constant drive amplitude. Evaluation at t returns the amplitude
// of the last piece whose start time is <= t, so a switch scheduled at t0
// already applies at t = t0.
struct DriveSchedule {
    std::vector<std::pair<double, double>> pieces;  // (t_start, amplitude), ascending, first at 0

    static DriveSchedule constant(double amplitude);
    static DriveSchedule step_off(double amplitude, double t_off);

    double at(double t) const;
    bool is_constant() const;
    void validate() const;
};

// One oscillating coupling. The matrix carries the unit-amplitude structure
// (including any fixed phase); the schedule carries the real amplitude. The
// term contributes schedule(t) * (op e^{+i f t} + op^dagger e^{-i f t}).
struct TdTerm {
    Eigen::SparseMatrix<std::complex<double>> op;
    double frequency{0.0};
    DriveSchedule schedule;
};

class Generator {
public:
    Generator(Basis basis, Eigen::MatrixXcd static_part, std::vector<TdTerm> td_terms = {});

    const Basis& basis() const { return basis_; }
    const Eigen::MatrixXcd& static_part() const { return static_; }
    const std::vector<TdTerm>& td_terms() const { return td_; }
    std::size_t dim() const { return basis_.size(); }
    bool time_dependent() const { return !td_.empty(); }

    Eigen::MatrixXcd instantaneous(double t) const;

    // max(row-sum norm of the static part, largest |drive frequency|); an
    // upper bound on the fastest angular frequency in the dynamics, used for
    // the step-size check.
    double frequency_bound() const;

private:
    Basis basis_;
    Eigen::MatrixXcd static_;
    std::vector<TdTerm> td_;
};

// Unit excitation in one basis state; throws if the label is not in the basis.
struct StateVector {
    Basis basis;
    Eigen::VectorXcd amplitudes;

    StateVector(Basis b, Eigen::VectorXcd a);
};

}  // namespace synthdim
