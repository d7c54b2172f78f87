#include "synthdim/generator.hpp"

#include <cmath>
#include <stdexcept>

namespace synthdim {

DriveSchedule DriveSchedule::constant(double amplitude) {
    DriveSchedule s;
    s.pieces = {{0.0, amplitude}};
    return s;
}

DriveSchedule DriveSchedule::step_off(double amplitude, double t_off) {
    DriveSchedule s;
    s.pieces = {{0.0, amplitude}, {t_off, 0.0}};
    s.validate();
    return s;
}

double DriveSchedule::at(double t) const {
    double a = 0.0;
    for (const auto& [t0, amp] : pieces) {
        if (t0 > t) break;
        a = amp;
    }
    return a;
}

bool DriveSchedule::is_constant() const { return pieces.size() == 1; }

void DriveSchedule::validate() const {
    if (pieces.empty()) throw std::invalid_argument("DriveSchedule: no pieces");
    if (pieces.front().first != 0.0)
        throw std::invalid_argument("DriveSchedule: first piece must start at t = 0");
    for (std::size_t i = 1; i < pieces.size(); ++i)
        if (!(pieces[i].first > pieces[i - 1].first))
            throw std::invalid_argument("DriveSchedule: piece start times must ascend");
    for (const auto& [t0, amp] : pieces)
        if (!std::isfinite(t0) || !std::isfinite(amp))
            throw std::invalid_argument("DriveSchedule: non-finite piece");
}

Generator::Generator(Basis basis, Eigen::MatrixXcd static_part, std::vector<TdTerm> td_terms)
    : basis_(std::move(basis)), static_(std::move(static_part)), td_(std::move(td_terms)) {
    const auto n = static_cast<Eigen::Index>(basis_.size());
    if (n == 0) throw std::invalid_argument("Generator: empty basis");
    if (static_.rows() != n || static_.cols() != n)
        throw std::invalid_argument("Generator: static part does not match basis dimension");
    const double scale = std::max(1.0, static_.cwiseAbs().maxCoeff());
    const double herm = (static_ - static_.adjoint()).cwiseAbs().maxCoeff();
    if (herm > 1e-12 * scale)
        throw std::invalid_argument("Generator: static part is not Hermitian");
    for (const auto& term : td_) {
        if (term.op.rows() != n || term.op.cols() != n)
            throw std::invalid_argument("Generator: drive term does not match basis dimension");
        if (!std::isfinite(term.frequency))
            throw std::invalid_argument("Generator: non-finite drive frequency");
        term.schedule.validate();
    }
}

Eigen::MatrixXcd Generator::instantaneous(double t) const {
    Eigen::MatrixXcd h = static_;
    for (const auto& term : td_) {
        const double a = term.schedule.at(t);
        if (a == 0.0) continue;
        const std::complex<double> ph = std::polar(1.0, term.frequency * t);
        const Eigen::MatrixXcd dense = Eigen::MatrixXcd(term.op);
        h.noalias() += a * ph * dense;
        h.noalias() += a * std::conj(ph) * dense.adjoint();
    }
    return h;
}

double Generator::frequency_bound() const {
    double bound = static_.cwiseAbs().rowwise().sum().maxCoeff();
    for (const auto& term : td_) bound = std::max(bound, std::abs(term.frequency));
    return bound;
}

StateVector::StateVector(Basis b, Eigen::VectorXcd a)
    : basis(std::move(b)), amplitudes(std::move(a)) {
    if (amplitudes.size() != static_cast<Eigen::Index>(basis.size()))
        throw std::invalid_argument("StateVector: amplitude count does not match basis");
    if (std::abs(amplitudes.norm() - 1.0) > 1e-9)
        throw std::invalid_argument("StateVector: state is not normalized");
}

}  // namespace synthdim
