#include "twofluid/linear_energy.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <sstream>

namespace twofluid {

namespace {

constexpr double two_pi = 6.283185307179586476925286766559;

using Field8 = Eigen::Matrix<double, 8, Eigen::Dynamic>;

const std::vector<double>& integrator_coefficients(TimeIntegrator t) {
    static const std::vector<double> rk4{1.0, 1.0, 1.0 / 2, 1.0 / 6, 1.0 / 24};
    static const std::vector<double> ld{1.0, 1.0, 1.0 / 2, 1.0 / 6, 1.0 / 24, 1.0 / 144};
    return t == TimeIntegrator::classical_rk4 ? rk4 : ld;
}

// Wavenumber of FFT bin m; the Nyquist bin gets 0 to match the derivative matrix.
int wavenumber(int m, int M) {
    if (2 * m == M) return 0;
    return m < M / 2 ? m : m - M;
}

void fft3(std::vector<std::complex<double>>& data, int M, bool inverse) {
    Eigen::FFT<double> fft;
    std::vector<std::complex<double>> line(M), out(M);
    const Eigen::Index stride[3] = {1, M, Eigen::Index(M) * M};
    for (int axis = 0; axis < 3; ++axis) {
        const Eigen::Index s = stride[axis];
        for (int a = 0; a < M; ++a) {
            for (int b = 0; b < M; ++b) {
                // base offset over the two axes other than `axis`
                Eigen::Index base = 0;
                int other[2];
                int o = 0;
                for (int ax = 0; ax < 3; ++ax)
                    if (ax != axis) other[o++] = ax;
                base = a * stride[other[0]] + b * stride[other[1]];
                for (int m = 0; m < M; ++m) line[m] = data[base + m * s];
                if (inverse)
                    fft.inv(out, line);
                else
                    fft.fwd(out, line);
                for (int m = 0; m < M; ++m) data[base + m * s] = out[m];
            }
        }
    }
}

void check_background(const Background& bg) {
    bg.params.validate();
    if (!bg.state.admissible()) throw DomainError("background state is not admissible (n > 0, rho >= 0)");
}

} // namespace

PeriodicField PeriodicField::zeros(int M) {
    PeriodicField f;
    f.M = M;
    f.values = Field8::Zero(8, Eigen::Index(M) * M * M);
    return f;
}

double PeriodicField::spacing() const { return two_pi / M; }

void PeriodicField::validate() const {
    if (M < 8 || M % 2 != 0) throw DomainError("periodic grid size must be even and >= 8");
    if (values.cols() != Eigen::Index(M) * M * M) throw DomainError("periodic field has wrong size");
    if (!values.allFinite()) throw DomainError("periodic field has non-finite values");
}

Eigen::MatrixXd spectral_derivative_matrix(int M) {
    if (M < 2 || M % 2 != 0) throw DomainError("spectral derivative requires an even grid");
    const double h = two_pi / M;
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(M, M);
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) {
            if (i == j) continue;
            const int d = i - j;
            const double sign = (d % 2 == 0) ? 1.0 : -1.0;
            D(i, j) = 0.5 * sign / std::tan(d * h / 2);
        }
    return D;
}

LinearMhdOperator::LinearMhdOperator(const Background& bg, int M)
    : M_(M), Dt_(spectral_derivative_matrix(M).transpose()) {
    check_background(bg);
    const Matrix8<double> A0 = assemble_A0(bg.state, bg.params);
    const Eigen::Matrix<double, 8, 1> inv = A0.diagonal().cwiseInverse();
    for (int j = 0; j < 3; ++j) {
        const Matrix8<double> Aj = assemble_A(bg.state, bg.params, j + 1);
        C_[j] = -(inv.asDiagonal() * Aj);
        Eigen::GeneralizedSelfAdjointEigenSolver<Matrix8<double>> es(Aj, A0, Eigen::EigenvaluesOnly);
        max_speed_ = std::max(max_speed_, es.eigenvalues().cwiseAbs().maxCoeff());
    }
}

void LinearMhdOperator::derivative(const Field8& u, int axis, Field8& out) const {
    const Eigen::Index M = M_;
    out.resize(8, u.cols());
    switch (axis) {
    case 0:
        for (Eigen::Index b = 0; b < M * M; ++b)
            out.middleCols(b * M, M).noalias() = u.middleCols(b * M, M) * Dt_;
        break;
    case 1:
        for (Eigen::Index k = 0; k < M; ++k) {
            Eigen::Map<const Eigen::MatrixXd> in(u.data() + k * 8 * M * M, 8 * M, M);
            Eigen::Map<Eigen::MatrixXd> o(out.data() + k * 8 * M * M, 8 * M, M);
            o.noalias() = in * Dt_;
        }
        break;
    case 2: {
        Eigen::Map<const Eigen::MatrixXd> in(u.data(), 8 * M * M, M);
        Eigen::Map<Eigen::MatrixXd> o(out.data(), 8 * M * M, M);
        o.noalias() = in * Dt_;
        break;
    }
    default: throw DomainError("derivative axis must be 0, 1 or 2");
    }
}

void LinearMhdOperator::apply(const Field8& u, Field8& out) const {
    Field8 d;
    out.setZero(8, u.cols());
    for (int j = 0; j < 3; ++j) {
        derivative(u, j, d);
        out.noalias() += C_[j] * d;
    }
}

double cfl_number(const Background& bg, double dt, double dx) {
    LinearMhdOperator op(bg, 8);
    return dt * op.max_speed() / dx;
}

Trajectory simulate_linear(const Background& bg, const PeriodicField& initial, double dt, double T,
                           const SimulationOptions& options, const FieldObserver& observer) {
    initial.validate();
    if (!(dt > 0) || !(T >= 0)) throw DomainError("simulate_linear: need dt > 0 and T >= 0");
    const LinearMhdOperator op(bg, initial.M);
    const int steps = T > 0 ? static_cast<int>(std::ceil(T / dt - 1e-12)) : 0;
    const double h = steps > 0 ? T / steps : dt;

    Trajectory traj;
    traj.cfl = h * op.max_speed() / initial.spacing();
    if (traj.cfl > max_cfl * (1 + 1e-12)) {
        std::ostringstream msg;
        msg << "CFL number " << traj.cfl << " exceeds " << max_cfl;
        throw CflViolation(msg.str(), traj.cfl);
    }
    traj.steps = steps;

    const auto& a = integrator_coefficients(options.integrator);
    PeriodicField cur = initial;
    traj.times.push_back(0.0);
    traj.snapshots.push_back(cur);
    if (observer) observer(0.0, cur);

    Field8 y, ly;
    for (int n = 1; n <= steps; ++n) {
        // Horner form of sum_m a_m (h L)^m U.
        y = a.back() * cur.values;
        for (int m = static_cast<int>(a.size()) - 2; m >= 0; --m) {
            op.apply(y, ly);
            y = a[m] * cur.values + h * ly;
        }
        cur.values.swap(y);
        const double t = n * h;
        if (observer) observer(t, cur);
        if (n == steps || (options.snapshot_every > 0 && n % options.snapshot_every == 0)) {
            traj.times.push_back(t);
            traj.snapshots.push_back(cur);
        }
    }
    return traj;
}

double integral_I(const PeriodicField& f, const Background& bg) {
    const auto t = thermodynamics(bg.state, bg.params);
    const double dv = std::pow(f.spacing(), 3);
    double sum = 0;
    for (Eigen::Index c = 0; c < f.nodes(); ++c) {
        const auto U = f.values.col(c);
        sum += U(idx::P) * U(idx::P) / (t.R * t.P_R) + t.R * U.segment<3>(idx::U1).squaredNorm() +
               U.segment<3>(idx::H1).squaredNorm() + U(idx::S) * U(idx::S);
    }
    return sum * dv;
}

double integral_J(const PeriodicField& f, const Background& bg) {
    const auto t = thermodynamics(bg.state, bg.params);
    const double dv = std::pow(f.spacing(), 3);
    const Vector3<double>& Hb = bg.state.H;
    double sum = 0;
    for (Eigen::Index c = 0; c < f.nodes(); ++c) {
        const auto U = f.values.col(c);
        const auto u = U.segment<3>(idx::U1);
        sum += Hb.dot(u) * U(idx::P) / t.P_R - t.R * u.dot(U.segment<3>(idx::H1));
    }
    return sum * dv;
}

double quadratic_integral(const PeriodicField& f, const Eigen::Matrix<double, 8, 8>& m) {
    const double dv = std::pow(f.spacing(), 3);
    return (f.values.array() * (m * f.values).array()).sum() * dv;
}

PeriodicField random_smooth_field(int M, int kmax, double decay, std::uint64_t seed) {
    PeriodicField f = PeriodicField::zeros(M);
    f.validate();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double h = f.spacing();
    Eigen::VectorXd cs(f.nodes()), sn(f.nodes());
    for (int k3 = -kmax; k3 <= kmax; ++k3)
        for (int k2 = -kmax; k2 <= kmax; ++k2)
            for (int k1 = 0; k1 <= kmax; ++k1) {
                // one representative of each +-k pair
                if (k1 == 0 && (k2 < 0 || (k2 == 0 && k3 <= 0))) continue;
                const double weight = std::exp(-decay * (k1 * k1 + k2 * k2 + k3 * k3));
                Eigen::Matrix<double, 8, 1> a, b;
                for (int c = 0; c < 8; ++c) {
                    a(c) = weight * normal(rng);
                    b(c) = weight * normal(rng);
                }
                for (int k = 0; k < M; ++k)
                    for (int j = 0; j < M; ++j)
                        for (int i = 0; i < M; ++i) {
                            const double phase = h * (k1 * i + k2 * j + k3 * k);
                            const auto n = f.index(i, j, k);
                            cs(n) = std::cos(phase);
                            sn(n) = std::sin(phase);
                        }
                f.values.noalias() += a * cs.transpose() + b * sn.transpose();
            }
    return f;
}

void project_divergence_free(PeriodicField& f) {
    f.validate();
    const int M = f.M;
    const Eigen::Index n = f.nodes();
    std::array<std::vector<std::complex<double>>, 3> H;
    for (int c = 0; c < 3; ++c) {
        H[c].resize(n);
        for (Eigen::Index p = 0; p < n; ++p) H[c][p] = f.values(idx::field(c), p);
        fft3(H[c], M, false);
    }
    for (int k = 0; k < M; ++k)
        for (int j = 0; j < M; ++j)
            for (int i = 0; i < M; ++i) {
                const double kv[3] = {double(wavenumber(i, M)), double(wavenumber(j, M)),
                                      double(wavenumber(k, M))};
                const double k2 = kv[0] * kv[0] + kv[1] * kv[1] + kv[2] * kv[2];
                if (k2 == 0) continue;
                const auto p = f.index(i, j, k);
                const std::complex<double> kdotH = kv[0] * H[0][p] + kv[1] * H[1][p] + kv[2] * H[2][p];
                for (int c = 0; c < 3; ++c) H[c][p] -= kv[c] * kdotH / k2;
            }
    for (int c = 0; c < 3; ++c) {
        fft3(H[c], M, true);
        for (Eigen::Index p = 0; p < n; ++p) f.values(idx::field(c), p) = H[c][p].real();
    }
}

double max_divergence(const PeriodicField& f) {
    f.validate();
    const Eigen::MatrixXd Dt = spectral_derivative_matrix(f.M).transpose();
    // Reuse the operator's derivative with a trivial background.
    Background bg;
    bg.params = {1.0, 1.0, 1.0};
    const LinearMhdOperator op(bg, f.M);
    Field8 d;
    Eigen::VectorXd div = Eigen::VectorXd::Zero(f.nodes());
    for (int axis = 0; axis < 3; ++axis) {
        op.derivative(f.values, axis, d);
        div += d.row(idx::field(axis)).transpose();
    }
    return div.cwiseAbs().maxCoeff();
}

ConservationReport verify_conservation(const Background& bg, const PeriodicField& initial,
                                       double lambda, double dt, double T,
                                       const ConservationOptions& options) {
    PeriodicField start = initial;
    if (options.project_initial) project_divergence_free(start);

    ConservationReport rep;
    rep.initial_divergence = max_divergence(start);
    rep.I0 = integral_I(start, bg);
    rep.J0 = integral_J(start, bg);
    rep.IJ0 = rep.I0 + 2 * lambda * rep.J0;
    const int every = std::max(1, options.sample_every);
    int count = 0;

    auto observe = [&](double t, const PeriodicField& f) {
        const double I = integral_I(f, bg);
        const double J = integral_J(f, bg);
        const double E = I + 2 * lambda * J;
        rep.drift_I = std::max(rep.drift_I, std::abs(I - rep.I0) / rep.I0);
        rep.drift_J = std::max(rep.drift_J, std::abs(J - rep.J0) / (std::abs(rep.J0) + rep.I0));
        rep.drift_IJ = std::max(rep.drift_IJ, std::abs(E - rep.IJ0) / std::abs(rep.IJ0));
        if (count++ % every == 0) rep.series.push_back({t, I, J, E});
    };

    SimulationOptions sim;
    sim.integrator = options.integrator;
    const auto traj = simulate_linear(bg, start, dt, T, sim, observe);
    rep.cfl = traj.cfl;
    rep.steps = traj.steps;
    rep.dt = traj.steps > 0 ? T / traj.steps : dt;
    if (!rep.series.empty() && rep.series.back().t != T && traj.steps > 0) {
        const auto& f = traj.snapshots.back();
        const double I = integral_I(f, bg);
        const double J = integral_J(f, bg);
        rep.series.push_back({T, I, J, I + 2 * lambda * J});
    }
    return rep;
}

EntropyIdentityReport verify_entropy_identity(const EntropyLayerProblem& p, double T, int sample_every) {
    if (!(p.u_plus > 0 && p.u_minus > 0))
        throw DomainError("entropy layer: both normal speeds must be positive (shock frame)");
    if (!(p.u_plus - p.u_minus < 0))
        throw DomainError("entropy layer: configuration is not compressive ([u1] must be < 0)");
    if (!(p.L > 0 && p.dx > 0 && p.dx < p.L)) throw DomainError("entropy layer: need 0 < dx < L");
    if (!(p.cfl > 0)) throw DomainError("entropy layer: upwind CFL must be > 0");
    if (p.cfl > 1) {
        std::ostringstream msg;
        msg << "upwind CFL number " << p.cfl << " exceeds 1";
        throw CflViolation(msg.str(), p.cfl);
    }
    if (!(T > 0)) throw DomainError("entropy layer: T must be > 0");

    const int N = static_cast<int>(std::lround(p.L / p.dx));
    const double dx = p.L / N;
    const double umax = std::max(p.u_plus, p.u_minus);
    const int steps = static_cast<int>(std::ceil(T / (p.cfl * dx / umax) - 1e-12));
    const double dt = T / steps;
    const double nu_m = p.u_minus * dt / dx;
    const double nu_p = p.u_plus * dt / dx;
    const double jump_u = p.u_plus - p.u_minus;

    Eigen::VectorXd xm(N + 1), xp(N + 1), Sm(N + 1), Sp(N + 1), w(N + 1);
    for (int i = 0; i <= N; ++i) {
        xm(i) = -p.L + i * dx;
        xp(i) = i * dx;
        w(i) = (i == 0 || i == N) ? dx / 2 : dx;
    }
    for (int i = 0; i <= N; ++i) {
        Sm(i) = p.initial_minus(xm(i));
        Sp(i) = p.initial_plus(xp(i));
    }
    Sm(0) = 0;
    Sp(0) = Sm(N) + p.g(0.0);

    auto energy = [&] { return w.dot(Sm.cwiseAbs2()) + w.dot(Sp.cwiseAbs2()); };

    EntropyIdentityReport rep;
    rep.dx = dx;
    rep.dt = dt;
    rep.steps = steps;
    rep.I0 = energy();

    double norm_m = 0, norm_p = 0, trace_m = 0, trace_p = 0, f_m = 0, f_p = 0, g_norm = 0;
    Eigen::VectorXd fm(N + 1), fp(N + 1), Sm_new(N + 1), Sp_new(N + 1);
    const int every = std::max(1, sample_every);
    rep.series.push_back({0.0, rep.I0, 0.0, 0.0, 0.0});

    for (int n = 0; n < steps; ++n) {
        const double t = n * dt;
        const double g = p.g(t);
        for (int i = 0; i <= N; ++i) {
            fm(i) = p.f_minus(t, xm(i));
            fp(i) = p.f_plus(t, xp(i));
        }
        const double Sb = Sm(N);
        rep.boundary_integral += dt * (jump_u * Sb * Sb + 2 * p.u_plus * Sb * g + p.u_plus * g * g);
        rep.source_integral += dt * 2 * (w.dot(fm.cwiseProduct(Sm)) + w.dot(fp.cwiseProduct(Sp)));

        norm_m += dt * w.dot(Sm.cwiseAbs2());
        norm_p += dt * w.dot(Sp.cwiseAbs2());
        trace_m += dt * Sb * Sb;
        trace_p += dt * Sp(0) * Sp(0);
        f_m += dt * w.dot(fm.cwiseAbs2());
        f_p += dt * w.dot(fp.cwiseAbs2());
        g_norm += dt * g * g;

        Sm_new(0) = 0;
        for (int i = 1; i <= N; ++i) Sm_new(i) = Sm(i) - nu_m * (Sm(i) - Sm(i - 1)) + dt * fm(i);
        for (int i = 1; i <= N; ++i) Sp_new(i) = Sp(i) - nu_p * (Sp(i) - Sp(i - 1)) + dt * fp(i);
        Sp_new(0) = Sm_new(N) + p.g(t + dt);
        Sm.swap(Sm_new);
        Sp.swap(Sp_new);

        rep.outflow_max = std::max(rep.outflow_max, std::abs(Sp(N)));
        const double I = energy();
        const double residual = I - rep.boundary_integral - rep.I0 - rep.source_integral;
        rep.max_identity_residual = std::max(rep.max_identity_residual, std::abs(residual));
        if ((n + 1) % every == 0 || n + 1 == steps)
            rep.series.push_back({t + dt, I, rep.boundary_integral, rep.source_integral, residual});
    }
    rep.IT = energy();
    rep.identity_residual = rep.IT - rep.boundary_integral - rep.I0 - rep.source_integral;

    double init_m = 0, init_p = 0;
    for (int i = 0; i <= N; ++i) {
        init_m += w(i) * std::pow(p.initial_minus(xm(i)), 2);
        init_p += w(i) * std::pow(p.initial_plus(xp(i)), 2);
    }
    rep.estimate_lhs = std::sqrt(norm_m) + std::sqrt(norm_p) + std::sqrt(trace_m) + std::sqrt(trace_p);
    rep.estimate_rhs = std::sqrt(init_m) + std::sqrt(init_p) + std::sqrt(f_m) + std::sqrt(f_p) +
                       std::sqrt(g_norm);
    rep.estimate_ratio = rep.estimate_rhs > 0 ? rep.estimate_lhs / rep.estimate_rhs : 0.0;
    return rep;
}

} // namespace twofluid
