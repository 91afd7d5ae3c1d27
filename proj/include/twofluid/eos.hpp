#pragma once

// Two-fluid equation of state P = rho^alpha + A n^gamma and the change of
// variables (rho, n) <-> (R, S) with R = rho + n, S = rho / n.

#include "twofluid/types.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace twofluid {

template <typename Scalar> struct EosParams {
    Scalar alpha{1};
    Scalar gamma{1};
    Scalar bigA{1};

    void validate() const {
        if (!(alpha >= 1)) throw DomainError("eos: alpha must be >= 1");
        if (!(gamma >= 1)) throw DomainError("eos: gamma must be >= 1");
        if (!(bigA > 0)) throw DomainError("eos: A must be > 0");
    }

    /// P(R) at fixed S is strictly convex only for gamma > 1.
    bool strictly_convex() const { return gamma > 1; }
};

template <typename Scalar> struct TotalDensityEntropy {
    Scalar R;
    Scalar S;
};

template <typename Scalar> struct Densities {
    Scalar rho;
    Scalar n;
};

namespace detail {

// 0^e is 0 for the exponents allowed here (e >= 1).
template <typename Scalar> Scalar power(Scalar base, Scalar exponent) {
    using std::pow;
    if (base == Scalar(0)) return Scalar(0);
    return pow(base, exponent);
}

template <typename Scalar> void require_densities(Scalar rho, Scalar n) {
    using std::isfinite;
    if (!isfinite(rho) || !isfinite(n)) throw DomainError("densities must be finite");
    if (!(n > 0)) throw DomainError("fluid density n must be > 0");
    if (!(rho >= 0)) throw DomainError("particle density rho must be >= 0");
}

template <typename Scalar> void require_RS(Scalar R, Scalar S) {
    using std::isfinite;
    if (!isfinite(R) || !isfinite(S)) throw DomainError("R and S must be finite");
    if (!(R > 0)) throw DomainError("total density R must be > 0");
    if (!(S >= 0)) throw DomainError("entropy S must be >= 0");
}

} // namespace detail

template <typename Scalar>
Scalar pressure_from_densities(Scalar rho, Scalar n, const EosParams<Scalar>& params) {
    detail::require_densities(rho, n);
    return detail::power(rho, params.alpha) + params.bigA * detail::power(n, params.gamma);
}

template <typename Scalar> TotalDensityEntropy<Scalar> to_RS(Scalar rho, Scalar n) {
    detail::require_densities(rho, n);
    return {rho + n, rho / n};
}

template <typename Scalar> Densities<Scalar> from_RS(Scalar R, Scalar S) {
    detail::require_RS(R, S);
    const Scalar n = R / (S + 1);
    return {R * S / (S + 1), n};
}

template <typename Scalar>
Scalar pressure_RS(Scalar R, Scalar S, const EosParams<Scalar>& params) {
    const auto d = from_RS(R, S);
    return pressure_from_densities(d.rho, d.n, params);
}

/// Partial derivative of P(R, S) in R: (alpha rho^alpha + gamma A n^gamma) / R.
template <typename Scalar> Scalar dP_dR(Scalar R, Scalar S, const EosParams<Scalar>& params) {
    const auto d = from_RS(R, S);
    return (params.alpha * detail::power(d.rho, params.alpha) +
            params.gamma * params.bigA * detail::power(d.n, params.gamma)) /
           R;
}

template <typename Scalar>
Scalar sound_speed(Scalar R, Scalar S, const EosParams<Scalar>& params) {
    using std::sqrt;
    return sqrt(dP_dR(R, S, params));
}

/// Inverts P(., S) by Newton's method safeguarded with a doubling bracket.
template <typename Scalar>
Scalar density_from_pressure(Scalar P, Scalar S, const EosParams<Scalar>& params,
                             int max_iterations = 200) {
    using std::abs;
    using std::isfinite;
    if (!isfinite(P) || !(P > 0)) throw DomainError("pressure must be finite and > 0");
    if (!isfinite(S) || !(S >= 0)) throw DomainError("entropy S must be >= 0");

    const Scalar rel_tol = Scalar(1e-14) > std::numeric_limits<Scalar>::epsilon() * 8
                               ? Scalar(1e-14)
                               : std::numeric_limits<Scalar>::epsilon() * 8;
    Scalar lo = 0;
    Scalar hi = 1;
    int doublings = 0;
    while (pressure_RS(hi, S, params) < P) {
        lo = hi;
        hi *= 2;
        if (++doublings > 2000) throw ConvergenceError("density_from_pressure: no bracket", 0.0);
    }

    Scalar R = (lo > 0) ? Scalar(0.5) * (lo + hi) : hi;
    Scalar residual = 0;
    for (int it = 0; it < max_iterations; ++it) {
        residual = pressure_RS(R, S, params) - P;
        if (abs(residual) <= rel_tol * P) return R;
        if (residual > 0)
            hi = R;
        else
            lo = R;
        const Scalar slope = dP_dR(R, S, params);
        Scalar next = R - residual / slope;
        if (!(next > lo && next < hi)) next = Scalar(0.5) * (lo + hi);
        if (next == R) return R;
        R = next;
    }
    throw ConvergenceError("density_from_pressure: iteration cap reached",
                           static_cast<double>(residual / P));
}

/// Coefficients of the reduced isentropic law P(R) = c1 R^alpha + c2 R^gamma at fixed S.
template <typename Scalar> struct IsentropicCoefficients {
    Scalar c1;
    Scalar c2;
};

template <typename Scalar>
IsentropicCoefficients<Scalar> reduced_isentropic_coeffs(Scalar S, const EosParams<Scalar>& params) {
    if (!(S >= 0)) throw DomainError("entropy S must be >= 0");
    return {detail::power(S / (S + 1), params.alpha),
            params.bigA * detail::power(Scalar(1) / (S + 1), params.gamma)};
}

/// One-sided fluid state: densities n (fluid), rho (particles), velocity, magnetic field.
template <typename Scalar> struct State {
    Scalar n{1};
    Scalar rho{0};
    Vector3<Scalar> u = Vector3<Scalar>::Zero();
    Vector3<Scalar> H = Vector3<Scalar>::Zero();

    static State from_RS(Scalar R, Scalar S, const Vector3<Scalar>& u, const Vector3<Scalar>& H) {
        const auto d = twofluid::from_RS(R, S);
        return State{d.n, d.rho, u, H};
    }

    Scalar total_density() const { return rho + n; }
    Scalar entropy() const { return rho / n; }

    bool admissible() const {
        using std::isfinite;
        return n > 0 && rho >= 0 && isfinite(n) && isfinite(rho) && u.allFinite() &&
               H.allFinite();
    }

    void validate() const {
        if (!u.allFinite() || !H.allFinite()) throw DomainError("state: u and H must be finite");
        detail::require_densities(rho, n);
    }
};

/// Derived thermodynamic quantities of a state.
template <typename Scalar> struct Thermo {
    Scalar R;
    Scalar S;
    Scalar P;
    Scalar q;
    Scalar P_R;
    Scalar c;
};

template <typename Scalar>
Thermo<Scalar> thermodynamics(const State<Scalar>& s, const EosParams<Scalar>& params) {
    using std::sqrt;
    s.validate();
    Thermo<Scalar> t;
    t.R = s.total_density();
    t.S = s.entropy();
    t.P = pressure_from_densities(s.rho, s.n, params);
    t.q = t.P + s.H.squaredNorm() / 2;
    t.P_R = (params.alpha * detail::power(s.rho, params.alpha) +
             params.gamma * params.bigA * detail::power(s.n, params.gamma)) /
            t.R;
    t.c = sqrt(t.P_R);
    return t;
}

template <typename Scalar>
Vector8<Scalar> to_vector8(const State<Scalar>& s, const EosParams<Scalar>& params) {
    Vector8<Scalar> U;
    U(idx::P) = pressure_from_densities(s.rho, s.n, params);
    U.template segment<3>(idx::U1) = s.u;
    U.template segment<3>(idx::H1) = s.H;
    U(idx::S) = s.entropy();
    return U;
}

template <typename Scalar>
State<Scalar> state_from_vector8(const Vector8<Scalar>& U, const EosParams<Scalar>& params) {
    const Scalar R = density_from_pressure(U(idx::P), U(idx::S), params);
    return State<Scalar>::from_RS(R, U(idx::S), U.template segment<3>(idx::U1),
                                  U.template segment<3>(idx::H1));
}

} // namespace twofluid
