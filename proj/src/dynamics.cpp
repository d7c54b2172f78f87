#include "synthdim/dynamics.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "synthdim/phase.hpp"

namespace synthdim {

using cd = std::complex<double>;

void IntegratorConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw std::invalid_argument("IntegratorConfig: dt must be positive");
    if (t_end < 0.0 || !std::isfinite(t_end))
        throw std::invalid_argument("IntegratorConfig: t_end must be nonnegative");
    if (sample_stride < 0) throw std::invalid_argument("IntegratorConfig: negative sample stride");
    if (method != "rk4")
        throw std::invalid_argument("IntegratorConfig: unknown method '" + method + "'");
}

NormDriftError::NormDriftError(double t_, double drift_)
    : std::runtime_error([&] {
          std::ostringstream os;
          os << "norm drift " << drift_ << " at t = " << t_
             << " exceeds 1e-6; reduce dt";
          return os.str();
      }()),
      t(t_),
      drift(drift_) {}

Eigen::Index Trajectory::label_col(const BasisLabel& l) const {
    return static_cast<Eigen::Index>(basis.index_of(l));
}

namespace {

long step_count(double t_end, double dt) {
    if (t_end == 0.0) return 0;
    return static_cast<long>(std::ceil(t_end / dt - 1e-9));
}

long pick_stride(long steps, int requested) {
    if (requested > 0) return requested;
    return std::max<long>(1, steps / 500);
}

std::vector<long> sample_steps(long steps, long stride) {
    std::vector<long> out;
    for (long k = 0; k <= steps; k += stride) out.push_back(k);
    if (out.back() != steps) out.push_back(steps);
    return out;
}

}  // namespace

Trajectory propagate(const Generator& g, const StateVector& psi0, const IntegratorConfig& cfg) {
    cfg.validate();
    if (!(psi0.basis == g.basis()))
        throw std::invalid_argument("propagate: state basis does not match generator basis");
    const double bound = std::max(g.frequency_bound(), 1e-12);
    if (cfg.dt > 0.1 / bound) {
        std::ostringstream os;
        os << "propagate: dt = " << cfg.dt << " exceeds stability limit " << 0.1 / bound;
        throw std::invalid_argument(os.str());
    }

    const long steps = step_count(cfg.t_end, cfg.dt);
    const long stride = pick_stride(steps, cfg.sample_stride);
    const auto samples = sample_steps(steps, stride);
    const auto dim = static_cast<Eigen::Index>(g.dim());

    struct Drive {
        Eigen::SparseMatrix<cd> op, adj;
        double freq;
        const DriveSchedule* sched;
    };
    std::vector<Drive> drives;
    drives.reserve(g.td_terms().size());
    for (const auto& term : g.td_terms())
        drives.push_back({term.op, term.op.adjoint(), term.frequency, &term.schedule});
    const Eigen::MatrixXcd& h0 = g.static_part();

    Eigen::VectorXcd tmp(dim);
    auto rhs = [&](double t, const Eigen::VectorXcd& x, Eigen::VectorXcd& out) {
        out.noalias() = h0 * x;
        for (const auto& d : drives) {
            const double a = d.sched->at(t);
            if (a == 0.0) continue;
            const cd ph = std::polar(1.0, d.freq * t);
            tmp.noalias() = d.op * x;
            out.noalias() += (a * ph) * tmp;
            tmp.noalias() = d.adj * x;
            out.noalias() += (a * std::conj(ph)) * tmp;
        }
        out *= cd(0.0, -1.0);
    };

    Trajectory tr;
    tr.basis = g.basis();
    tr.times.reserve(samples.size());
    tr.probs.resize(static_cast<Eigen::Index>(samples.size()), dim);
    if (cfg.record_amps)
        tr.amps.emplace(static_cast<Eigen::Index>(samples.size()), dim);

    Eigen::VectorXcd y = psi0.amplitudes;
    Eigen::VectorXcd k1(dim), k2(dim), k3(dim), k4(dim), ytmp(dim);

    std::size_t next_sample = 0;
    auto record = [&](long k) {
        const double t = static_cast<double>(k) * cfg.dt;
        const double drift = std::abs(y.norm() - 1.0);
        if (drift > 1e-6) throw NormDriftError(t, drift);
        const auto row = static_cast<Eigen::Index>(next_sample);
        tr.times.push_back(t);
        tr.probs.row(row) = y.cwiseAbs2().transpose();
        if (tr.amps) tr.amps->row(row) = y.transpose();
        ++next_sample;
    };

    record(0);
    const double dt = cfg.dt;
    for (long k = 0; k < steps; ++k) {
        const double t = static_cast<double>(k) * dt;
        rhs(t, y, k1);
        ytmp.noalias() = y + (0.5 * dt) * k1;
        rhs(t + 0.5 * dt, ytmp, k2);
        ytmp.noalias() = y + (0.5 * dt) * k2;
        rhs(t + 0.5 * dt, ytmp, k3);
        ytmp.noalias() = y + dt * k3;
        rhs(t + dt, ytmp, k4);
        y.noalias() += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (next_sample < samples.size() && samples[next_sample] == k + 1) record(k + 1);
    }
    return tr;
}

namespace {

struct PairCoeffs {
    cd self_b;   // -2 gamma_b (1 + cos(theta) e^{i k0 N}), Markov form
    cd self_c;   // -gamma_c
    cd inst_b;   // -2 gamma_b, instantaneous part used by the delay form
    cd ret_b;    // -2 gamma_b cos(theta) e^{i k0 N}, retarded part
    cd cross_bM, cross_bD;  // u_c terms in the u_b equation
    cd cross_cM, cross_cD;  // u_b terms in the u_c equation
};

PairCoeffs pair_coeffs(const MarkovRates& r, int M, int N, double theta, Side side) {
    r.validate();
    if (N < 0) throw std::invalid_argument("pair integrators: negative N");
    const int D = N - M;
    validate_side(side, M, D);
    const int Mr = side == Side::Left ? std::abs(M) : M;
    const int Dr = side == Side::Right ? std::abs(D) : D;
    const double qk = r.k0 / kHalfPi;
    const double qt = theta / kHalfPi;
    PairCoeffs c;
    c.ret_b = -2.0 * r.gamma_b * cos_quarter(qt) * unit_phase_quarter(qk * N);
    c.inst_b = -2.0 * r.gamma_b;
    c.self_b = c.inst_b + c.ret_b;
    c.self_c = -r.gamma_c;
    c.cross_bM = -r.gamma_bc * unit_phase_quarter(qk * Mr + qt);
    c.cross_bD = -r.gamma_bc * unit_phase_quarter(qk * Dr);
    c.cross_cM = -r.gamma_bc * unit_phase_quarter(qk * Mr - qt);
    c.cross_cD = -r.gamma_bc * unit_phase_quarter(qk * Dr);
    return c;
}

using Pair = std::array<cd, 2>;

Pair axpy(const Pair& y, double a, const Pair& k) {
    return {y[0] + a * k[0], y[1] + a * k[1]};
}

template <typename Rhs>
TwoAtomSeries run_pair(Rhs&& rhs, cd ub0, cd uc0, const IntegratorConfig& cfg,
                       std::vector<Pair>* hist_out) {
    const long steps = step_count(cfg.t_end, cfg.dt);
    const long stride = pick_stride(steps, cfg.sample_stride);
    const auto samples = sample_steps(steps, stride);
    const double dt = cfg.dt;

    TwoAtomSeries out;
    out.times.reserve(samples.size());
    out.u_b.reserve(samples.size());
    out.u_c.reserve(samples.size());

    Pair y{ub0, uc0};
    if (hist_out) hist_out->push_back(y);
    std::size_t next_sample = 0;
    auto record = [&](long k) {
        out.times.push_back(static_cast<double>(k) * dt);
        out.u_b.push_back(y[0]);
        out.u_c.push_back(y[1]);
        ++next_sample;
    };
    record(0);
    for (long n = 0; n < steps; ++n) {
        const Pair k1 = rhs(n, 0, y);
        const Pair k2 = rhs(n, 1, axpy(y, 0.5 * dt, k1));
        const Pair k3 = rhs(n, 1, axpy(y, 0.5 * dt, k2));
        const Pair k4 = rhs(n, 2, axpy(y, dt, k3));
        y = {y[0] + dt / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
             y[1] + dt / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])};
        if (hist_out) hist_out->push_back(y);
        if (next_sample < samples.size() && samples[next_sample] == n + 1) record(n + 1);
    }
    return out;
}

long delay_steps(double tau, double dt) {
    const double x = tau / dt;
    const long r = std::llround(x);
    if (std::abs(x - static_cast<double>(r)) > 1e-9 * std::max(1.0, std::abs(x)))
        throw std::invalid_argument("integrate_dde: delay does not sit on the dt grid");
    return r;
}

}  // namespace

TwoAtomSeries integrate_markov(const MarkovRates& r, int M, int N, double theta, Side side,
                               cd ub0, cd uc0, const IntegratorConfig& cfg) {
    cfg.validate();
    const PairCoeffs c = pair_coeffs(r, M, N, theta, side);
    auto rhs = [&](long, int, const Pair& y) -> Pair {
        return {c.self_b * y[0] + (c.cross_bM + c.cross_bD) * y[1],
                c.self_c * y[1] + (c.cross_cM + c.cross_cD) * y[0]};
    };
    return run_pair(rhs, ub0, uc0, cfg, nullptr);
}

TwoAtomSeries integrate_dde(const MarkovRates& r, int M, int N, double theta, Side side,
                            cd ub0, cd uc0, const IntegratorConfig& cfg) {
    cfg.validate();
    const PairCoeffs c = pair_coeffs(r, M, N, theta, side);
    const int D = N - M;
    const long kN = delay_steps(static_cast<double>(N) / r.v0, cfg.dt);
    const long kM = delay_steps(std::abs(M) / r.v0, cfg.dt);
    const long kD = delay_steps(std::abs(D) / r.v0, cfg.dt);

    std::vector<Pair> hist;
    hist.reserve(static_cast<std::size_t>(step_count(cfg.t_end, cfg.dt)) + 2);

    // Retarded value of component comp at stage h (half-steps 0,1,2) of step n
    // with a delay of k grid steps. Gated by the step function: zero before
    // the delay has elapsed, active from t = tau on. Midpoint stages read the
    // linear interpolant of the stored grid values.
    auto delayed = [&](const Pair& y_stage, int comp, long n, int h, long k) -> cd {
        if (k == 0) return y_stage[static_cast<std::size_t>(comp)];
        const long ih = 2 * (n - k) + h;
        if (ih < 0) return 0.0;
        if (ih % 2 == 0) return hist[static_cast<std::size_t>(ih / 2)][comp];
        return 0.5 * (hist[static_cast<std::size_t>((ih - 1) / 2)][comp] +
                      hist[static_cast<std::size_t>((ih + 1) / 2)][comp]);
    };

    auto rhs = [&](long n, int h, const Pair& y) -> Pair {
        const cd ub_N = delayed(y, 0, n, h, kN);
        const cd uc_M = delayed(y, 1, n, h, kM);
        const cd uc_D = delayed(y, 1, n, h, kD);
        const cd ub_M = delayed(y, 0, n, h, kM);
        const cd ub_D = delayed(y, 0, n, h, kD);
        return {c.inst_b * y[0] + c.ret_b * ub_N + c.cross_bM * uc_M + c.cross_bD * uc_D,
                c.self_c * y[1] + c.cross_cM * ub_M + c.cross_cD * ub_D};
    };
    return run_pair(rhs, ub0, uc0, cfg, &hist);
}

}  // namespace synthdim
