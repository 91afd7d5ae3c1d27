#pragma once

// Rankine-Hugoniot conditions on a front x1 = phi(t, x2, x3) and a
// Newton-continuation solver for downstream shock states.
//
// Jumps are [g] = g(+) - g(-). For shocks the upstream state is the (-) side.

#include "twofluid/eos.hpp"
#include "twofluid/front.hpp"
#include "twofluid/waves.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <string>

namespace twofluid {

template <typename Scalar> struct InterfaceTraces {
    Scalar j1{0}; ///< n (u_N - phi_t)
    Scalar j2{0}; ///< rho (u_N - phi_t)
    Scalar j{0};  ///< R (u_N - phi_t)
    Scalar uN{0};
    Scalar HN{0};
    Vector2<Scalar> uTau = Vector2<Scalar>::Zero(); ///< (u.tau1, u.tau2), tau not orthonormal
    Vector2<Scalar> HTau = Vector2<Scalar>::Zero();
};

template <typename Scalar>
InterfaceTraces<Scalar> traces(const State<Scalar>& s, const FrontSlopes<Scalar>& front,
                               const EosParams<Scalar>& /*params*/) {
    s.validate();
    const Vector3<Scalar> N = front.normal();
    const Vector3<Scalar> t1 = front.tau1();
    const Vector3<Scalar> t2 = front.tau2();
    InterfaceTraces<Scalar> tr;
    tr.uN = s.u.dot(N);
    tr.HN = s.H.dot(N);
    const Scalar rel = tr.uN - front.phi_t;
    tr.j1 = s.n * rel;
    tr.j2 = s.rho * rel;
    tr.j = s.total_density() * rel;
    tr.uTau << s.u.dot(t1), s.u.dot(t2);
    tr.HTau << s.H.dot(t1), s.H.dot(t2);
    return tr;
}

template <typename Scalar> struct DiscontinuityData {
    State<Scalar> plus;
    State<Scalar> minus;
    FrontSlopes<Scalar> front;
    EosParams<Scalar> params;

    void validate() const {
        params.validate();
        plus.validate();
        minus.validate();
        if (!front.finite()) throw DomainError("front slopes must be finite");
    }
};

/// Residuals of the jump conditions, in order:
/// [j1], [j2], [H_N], j[u_N] + |N|^2 [q], j[u_tau] - H_N [H_tau] (2), H_N [u_tau] - j [H_tau / R] (2).
/// j and H_N are the (+) traces.
template <typename Scalar> Vector8<Scalar> rh_residual(const DiscontinuityData<Scalar>& d) {
    const auto tp = traces(d.plus, d.front, d.params);
    const auto tm = traces(d.minus, d.front, d.params);
    const Scalar qp = thermodynamics(d.plus, d.params).q;
    const Scalar qm = thermodynamics(d.minus, d.params).q;
    const Scalar N2 = d.front.normal().squaredNorm();
    const Scalar Rp = d.plus.total_density();
    const Scalar Rm = d.minus.total_density();
    const Scalar j = tp.j;
    const Scalar HN = tp.HN;

    Vector8<Scalar> r;
    r(0) = tp.j1 - tm.j1;
    r(1) = tp.j2 - tm.j2;
    r(2) = tp.HN - tm.HN;
    r(3) = j * (tp.uN - tm.uN) + N2 * (qp - qm);
    r.template segment<2>(4) = j * (tp.uTau - tm.uTau) - HN * (tp.HTau - tm.HTau);
    r.template segment<2>(6) = HN * (tp.uTau - tm.uTau) - j * (tp.HTau / Rp - tm.HTau / Rm);
    return r;
}

/// Reference magnitudes used to make residuals and thresholds dimensionless.
template <typename Scalar> struct NaturalScales {
    Scalar density{1};
    Scalar speed{1};
    Scalar field{1};    ///< sqrt(density) * speed
    Scalar pressure{1}; ///< density * speed^2
    Scalar normal_norm{1};

    Scalar flux() const { return density * speed * normal_norm; }

    /// Per-component divisors matching rh_residual's layout.
    Vector8<Scalar> residual_divisors() const {
        const Scalar N2 = normal_norm * normal_norm;
        Vector8<Scalar> s;
        s << flux(), flux(), field * normal_norm, pressure * N2, pressure * N2, pressure * N2,
            field * speed * N2, field * speed * N2;
        return s;
    }
};

template <typename Scalar> NaturalScales<Scalar> natural_scales(const DiscontinuityData<Scalar>& d) {
    using std::abs;
    using std::sqrt;
    NaturalScales<Scalar> sc;
    sc.density = std::max(d.plus.total_density(), d.minus.total_density());
    Scalar v = abs(d.front.phi_t);
    for (const auto* s : {&d.plus, &d.minus}) {
        const auto t = thermodynamics(*s, d.params);
        v = std::max({v, s->u.norm(), t.c, s->H.norm() / sqrt(t.R)});
    }
    sc.speed = v;
    sc.field = sqrt(sc.density) * v;
    sc.pressure = sc.density * v * v;
    sc.normal_norm = d.front.normal_norm();
    return sc;
}

template <typename Scalar>
Vector8<Scalar> scaled_rh_residual(const DiscontinuityData<Scalar>& d) {
    return rh_residual(d).cwiseQuotient(natural_scales(d).residual_divisors());
}

/// Relative thresholds; each is multiplied by the matching natural scale.
template <typename Scalar> struct Tolerances {
    Scalar rh{1e-8};
    Scalar j{1e-8};
    Scalar R{1e-8};
    Scalar H{1e-8};
};

enum class WaveFamily { fast, slow };

template <typename Scalar> struct HugoniotOptions {
    WaveFamily family = WaveFamily::fast;
    Scalar max_step{0.1};     ///< continuation step in the compression ratio
    Scalar min_step{1e-6};
    int max_newton_iterations = 60;
    Scalar tolerance{1e-13};  ///< on the scaled residual
};

template <typename Scalar> struct HugoniotSolution {
    State<Scalar> downstream;
    Scalar shock_speed{0};
    Scalar residual{0};       ///< max scaled RH residual at the returned state
    int continuation_steps = 0;
    int newton_iterations = 0;
};

namespace detail {

template <typename Scalar> using Vector6 = Eigen::Matrix<Scalar, 6, 1>;
template <typename Scalar> using Matrix6 = Eigen::Matrix<Scalar, 6, 6>;

template <typename Scalar> struct HugoniotSystem {
    State<Scalar> upstream;
    EosParams<Scalar> params;
    Scalar ratio;
    NaturalScales<Scalar> scales;

    // x = (sigma, u+ (3), H+_2, H+_3) in units of speed and field.
    DiscontinuityData<Scalar> data(const Vector6<Scalar>& x) const {
        DiscontinuityData<Scalar> d;
        d.minus = upstream;
        d.params = params;
        const Scalar R = ratio * upstream.total_density();
        const Vector3<Scalar> u = x.template segment<3>(1) * scales.speed;
        const Vector3<Scalar> H(upstream.H(0), x(4) * scales.field, x(5) * scales.field);
        d.plus = State<Scalar>::from_RS(R, upstream.entropy(), u, H);
        d.front.phi_t = x(0) * scales.speed;
        return d;
    }

    Vector6<Scalar> residual(const Vector6<Scalar>& x) const {
        const auto d = data(x);
        const Vector8<Scalar> r = rh_residual(d).cwiseQuotient(scales.residual_divisors());
        // [j1] and [j2] coincide up to a factor once [S] = 0; use their sum [j].
        Vector6<Scalar> f;
        f << r(0) + r(1), r(3), r(4), r(5), r(6), r(7);
        return f;
    }
};

template <typename Scalar>
Vector6<Scalar> weak_shock_guess(const HugoniotSystem<Scalar>& sys, WaveFamily family) {
    using std::abs;
    using std::sqrt;
    const auto& up = sys.upstream;
    const FrontSlopes<Scalar> planar{};
    const auto w = wave_speeds(up, planar, sys.params);
    const Scalar Rm = up.total_density();
    const Scalar Rp = sys.ratio * Rm;

    Scalar v; // u_N - sigma upstream
    if (family == WaveFamily::fast) {
        // Gas-dynamic shock: j^2 [1/R] = -[P].
        const Scalar Pm = pressure_RS(Rm, up.entropy(), sys.params);
        const Scalar Pp = pressure_RS(Rp, up.entropy(), sys.params);
        const Scalar j2 = (Pp - Pm) / (1 / Rm - 1 / Rp);
        v = std::max(sqrt(j2) / Rm, w.c_f);
    } else {
        v = w.c_s;
    }
    const Scalar j = Rm * v;
    const Scalar sigma = up.u(0) - v;

    Vector3<Scalar> u = up.u;
    u(0) = sigma + j / Rp;
    Vector2<Scalar> Ht(up.H(1), up.H(2));
    const Scalar HN2 = up.H(0) * up.H(0);
    const Scalar denom = HN2 - j * j / Rp;
    if (abs(denom) > Scalar(1e-8) * (HN2 + j * j / Rp)) {
        const Vector2<Scalar> Htp = Ht * (HN2 - j * j / Rm) / denom;
        if (j != 0) u.template tail<2>() += up.H(0) * (Htp - Ht) / j;
        Ht = Htp;
    }
    Vector6<Scalar> x;
    x << sigma / sys.scales.speed, u / sys.scales.speed, Ht / sys.scales.field;
    return x;
}

template <typename Scalar>
bool newton_solve(const HugoniotSystem<Scalar>& sys, Vector6<Scalar>& x,
                  const HugoniotOptions<Scalar>& opt, int& iterations, Scalar& last_norm) {
    using std::isfinite;
    Vector6<Scalar> f = sys.residual(x);
    Scalar norm = f.cwiseAbs().maxCoeff();
    const Scalar h = Scalar(1e-7);
    for (int it = 0; it < opt.max_newton_iterations; ++it) {
        last_norm = norm;
        if (norm <= opt.tolerance) return true;
        Matrix6<Scalar> J;
        for (int k = 0; k < 6; ++k) {
            Vector6<Scalar> xp = x, xm = x;
            xp(k) += h;
            xm(k) -= h;
            J.col(k) = (sys.residual(xp) - sys.residual(xm)) / (2 * h);
        }
        Eigen::FullPivLU<Matrix6<Scalar>> lu(J);
        if (!lu.isInvertible()) return false;
        const Vector6<Scalar> dx = lu.solve(-f);
        if (!dx.allFinite()) return false;

        Scalar step = 1;
        bool accepted = false;
        for (int ls = 0; ls < 30; ++ls, step /= 2) {
            Vector6<Scalar> xn = x + step * dx;
            Vector6<Scalar> fn;
            try {
                fn = sys.residual(xn);
            } catch (const DomainError&) {
                continue;
            }
            const Scalar nn = fn.cwiseAbs().maxCoeff();
            if (isfinite(nn) && nn < (1 - Scalar(1e-4) * step) * norm) {
                x = xn;
                f = fn;
                norm = nn;
                accepted = true;
                break;
            }
        }
        ++iterations;
        if (!accepted) {
            last_norm = norm;
            return norm <= opt.tolerance * 100;
        }
    }
    last_norm = norm;
    return norm <= opt.tolerance;
}

} // namespace detail

/// Downstream state of a planar shock with compression ratio r = R(+) / R(-) > 1,
/// continued from the weak-shock limit r -> 1 of the chosen family.
template <typename Scalar>
HugoniotSolution<Scalar> solve_downstream(const State<Scalar>& upstream,
                                          const FrontSlopes<Scalar>& front, Scalar ratio,
                                          const EosParams<Scalar>& params,
                                          const HugoniotOptions<Scalar>& opt = {}) {
    using std::isfinite;
    using std::sqrt;
    params.validate();
    upstream.validate();
    if (!front.planar()) throw DomainError("solve_downstream: front must be planar");
    if (!isfinite(ratio) || !(ratio > 1)) throw DomainError("compression must exceed 1");

    detail::HugoniotSystem<Scalar> sys{upstream, params, Scalar(1), {}};
    {
        DiscontinuityData<Scalar> d{upstream, upstream, front, params};
        d.plus = State<Scalar>::from_RS(ratio * upstream.total_density(), upstream.entropy(),
                                        upstream.u, upstream.H);
        sys.scales = natural_scales(d);
        sys.scales.normal_norm = 1;
    }

    HugoniotSolution<Scalar> out;
    Scalar reached = 1;
    Scalar step = std::min(opt.max_step, ratio - 1);
    detail::Vector6<Scalar> x;
    bool have_solution = false;
    Scalar last_norm = 0;

    while (reached < ratio) {
        const Scalar target = std::min(ratio, reached + step);
        sys.ratio = target;
        detail::Vector6<Scalar> trial = have_solution ? x : detail::weak_shock_guess(sys, opt.family);
        int iters = 0;
        const bool ok = detail::newton_solve(sys, trial, opt, iters, last_norm);
        out.newton_iterations += iters;
        if (ok) {
            x = trial;
            have_solution = true;
            reached = target;
            ++out.continuation_steps;
            step = std::min(opt.max_step, step * 2);
        } else {
            step /= 2;
            if (step < opt.min_step)
                throw ConvergenceError("solve_downstream: Newton continuation failed at r = " +
                                           std::to_string(static_cast<double>(target)),
                                       static_cast<double>(last_norm));
        }
    }

    const auto d = sys.data(x);
    out.downstream = d.plus;
    out.shock_speed = d.front.phi_t;
    out.residual = scaled_rh_residual(d).cwiseAbs().maxCoeff();

    // j must carry mass from (-) to (+) for the chosen orientation.
    const Scalar j = upstream.total_density() * (upstream.u(0) - out.shock_speed);
    if (!(j > 0))
        throw ConvergenceError("solve_downstream: converged to a non-physical branch (j <= 0)",
                               static_cast<double>(out.residual));
    return out;
}

} // namespace twofluid
