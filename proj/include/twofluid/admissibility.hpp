#pragma once

#include "twofluid/jumps.hpp"
#include "twofluid/waves.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace twofluid {

enum class LaxFamily { fast, slow, other };

inline const char* to_string(LaxFamily f) {
    switch (f) {
    case LaxFamily::fast: return "fast";
    case LaxFamily::slow: return "slow";
    default: return "other";
    }
}

template <typename Scalar> struct LaxReport {
    std::optional<int> k;   ///< 1..8 when the strict chain holds
    bool is_lax = false;
    LaxFamily family = LaxFamily::other;
    /// Slacks (s - l_{k-1}^-, l_k^- - s, s - l_k^+, l_{k+1}^+ - s) for k, or for the
    /// closest candidate when no k qualifies. Infinite slacks come from the sentinels.
    std::array<Scalar, 4> margins{};
    int closest_k = 1;
    EigenSpectrum<Scalar> minus_spectrum;
    EigenSpectrum<Scalar> plus_spectrum;
};

/// Lax k-shock test on the sorted spectra of both sides, with -inf / +inf sentinels
/// below lambda_1^- and above lambda_8^+.
template <typename Scalar>
LaxReport<Scalar> lax_check(const DiscontinuityData<Scalar>& d, const Tolerances<Scalar>& tol = {}) {
    using std::abs;
    d.validate();
    const auto sc = natural_scales(d);
    const Scalar j = traces(d.plus, d.front, d.params).j;
    if (!(abs(j) > tol.j * sc.flux())) throw DomainError("lax_check: not a shock datum (j ~ 0)");

    LaxReport<Scalar> rep;
    rep.minus_spectrum = eigenvalues_closed_form(d.minus, d.front, d.params);
    rep.plus_spectrum = eigenvalues_closed_form(d.plus, d.front, d.params);
    const auto& lm = rep.minus_spectrum.lambdas;
    const auto& lp = rep.plus_spectrum.lambdas;
    const Scalar s = d.front.phi_t;
    const Scalar inf = std::numeric_limits<Scalar>::infinity();

    Scalar best = -inf;
    for (int k = 1; k <= 8; ++k) {
        const Scalar below_m = (k == 1) ? -inf : lm(k - 2);
        const Scalar above_p = (k == 8) ? inf : lp(k);
        const std::array<Scalar, 4> m{s - below_m, lm(k - 1) - s, s - lp(k - 1), above_p - s};
        const Scalar worst = std::min({m[0], m[1], m[2], m[3]});
        if (worst > best) {
            best = worst;
            rep.closest_k = k;
            rep.margins = m;
        }
        if (worst > 0 && !rep.k) rep.k = k;
    }
    if (rep.k) {
        rep.is_lax = true;
        const int k = *rep.k;
        // k and 9 - k are the same family seen from either side (x1 -> -x1).
        if (k == 1 || k == 8)
            rep.family = LaxFamily::fast;
        else if (k == 3 || k == 6)
            rep.family = LaxFamily::slow;
    }
    return rep;
}

template <typename Scalar> struct ShockInequalities {
    bool holds = false;
    std::vector<Scalar> margins; ///< each must be > 0
};

namespace detail {

template <typename Scalar> struct OrientedShock {
    WaveSpeeds<Scalar> up;
    WaveSpeeds<Scalar> down;
    Scalar v_up;   ///< normal speed relative to the front, positive into the shock
    Scalar v_down;
};

// Upstream is the side mass flows out of; for j > 0 that is (-).
template <typename Scalar> OrientedShock<Scalar> orient(const DiscontinuityData<Scalar>& d) {
    const Vector3<Scalar> N = d.front.normal();
    const Scalar vm = d.minus.u.dot(N) - d.front.phi_t;
    const Scalar vp = d.plus.u.dot(N) - d.front.phi_t;
    const auto wm = wave_speeds(d.minus, d.front, d.params);
    const auto wp = wave_speeds(d.plus, d.front, d.params);
    if (d.plus.total_density() * vp >= 0) return {wm, wp, vm, vp};
    return {wp, wm, -vp, -vm};
}

} // namespace detail

/// c_f(up) < v_up and |c_a(down)| < v_down < c_f(down).
template <typename Scalar> ShockInequalities<Scalar> fast_shock_check(const DiscontinuityData<Scalar>& d) {
    using std::abs;
    d.validate();
    const auto o = detail::orient(d);
    ShockInequalities<Scalar> r;
    r.margins = {o.v_up - o.up.c_f, o.v_down - abs(o.down.c_a), o.down.c_f - o.v_down};
    r.holds = r.margins[0] > 0 && r.margins[1] > 0 && r.margins[2] > 0;
    return r;
}

/// c_s(up) < v_up < |c_a(up)| and 0 < v_down < c_s(down).
template <typename Scalar> ShockInequalities<Scalar> slow_shock_check(const DiscontinuityData<Scalar>& d) {
    using std::abs;
    d.validate();
    const auto o = detail::orient(d);
    ShockInequalities<Scalar> r;
    r.margins = {o.v_up - o.up.c_s, abs(o.up.c_a) - o.v_up, o.v_down, o.down.c_s - o.v_down};
    r.holds = r.margins[0] > 0 && r.margins[1] > 0 && r.margins[2] > 0 && r.margins[3] > 0;
    return r;
}

template <typename Scalar> struct CvsStabilityReport {
    Scalar G{0};
    Scalar psi_plus{0};  ///< angle from [u'] to H'+, in (-pi, pi]
    Scalar psi_minus{0};
    Scalar beta_plus{0};
    Scalar beta_minus{0};
    Scalar sin_theta_H{0}; ///< sine of the angle from H'- to H'+
    Scalar jump_u{0};      ///< |[u']|
    bool collinear = false;
    bool degenerate = false;

    /// The criterion is sufficient only: a nonpositive G decides nothing.
    bool sufficient_condition_holds() const { return !collinear && G > 0; }
    std::string verdict() const {
        if (collinear) return "condition inapplicable (collinear tangential fields)";
        return G > 0 ? "sufficient stability condition satisfied" : "condition inconclusive";
    }
};

template <typename Scalar> Scalar beta_speed(Scalar c, Scalar c_A) {
    using std::sqrt;
    const Scalar s = c * c + c_A * c_A;
    return s > 0 ? c * c_A / sqrt(s) : Scalar(0);
}

namespace detail {
template <typename Scalar> Scalar cross2(const Vector2<Scalar>& a, const Vector2<Scalar>& b) {
    return a(0) * b(1) - a(1) * b(0);
}
} // namespace detail

/// G = |sin(psi+ - psi-)| min(beta+ / |sin psi-|, beta- / |sin psi+|) - |[u']| on the
/// tangential plane. A vanishing sin psi drops its branch from the min.
template <typename Scalar>
CvsStabilityReport<Scalar> cvs_stability_function(const Vector2<Scalar>& H_plus,
                                                  const Vector2<Scalar>& H_minus,
                                                  const Vector2<Scalar>& jump_u, Scalar beta_plus,
                                                  Scalar beta_minus, Scalar rel_tol = Scalar(1e-12)) {
    using std::abs;
    using std::atan2;
    using std::min;
    CvsStabilityReport<Scalar> r;
    r.beta_plus = beta_plus;
    r.beta_minus = beta_minus;
    r.jump_u = jump_u.norm();

    const Scalar hp = H_plus.norm();
    const Scalar hm = H_minus.norm();
    r.sin_theta_H = (hp > 0 && hm > 0) ? detail::cross2(H_minus, H_plus) / (hp * hm) : Scalar(0);
    r.collinear = abs(r.sin_theta_H) <= rel_tol;

    const Scalar beta_scale = std::max(beta_plus, beta_minus);
    r.degenerate = r.jump_u <= rel_tol * (beta_scale > 0 ? beta_scale : Scalar(1));
    if (!r.degenerate) {
        r.psi_plus = atan2(detail::cross2(jump_u, H_plus), jump_u.dot(H_plus));
        r.psi_minus = atan2(detail::cross2(jump_u, H_minus), jump_u.dot(H_minus));
    }

    if (r.collinear) {
        r.G = Scalar(0) - r.jump_u;
        return r;
    }
    if (r.degenerate) {
        r.G = abs(r.sin_theta_H) * min(beta_plus, beta_minus);
        return r;
    }

    const Scalar sp = hp > 0 ? abs(detail::cross2(jump_u, H_plus)) / (r.jump_u * hp) : Scalar(0);
    const Scalar sm = hm > 0 ? abs(detail::cross2(jump_u, H_minus)) / (r.jump_u * hm) : Scalar(0);
    const Scalar inf = std::numeric_limits<Scalar>::infinity();
    const Scalar first = sm > rel_tol ? beta_plus / sm : inf;
    const Scalar second = sp > rel_tol ? beta_minus / sp : inf;
    r.G = abs(r.sin_theta_H) * min(first, second) - r.jump_u;
    return r;
}

/// Stability function of a planar current-vortex sheet, with u' = (u2, u3), H' = (H2, H3).
template <typename Scalar>
CvsStabilityReport<Scalar> cvs_stability(const DiscontinuityData<Scalar>& d) {
    using std::sqrt;
    d.validate();
    if (!d.front.planar()) throw DomainError("cvs_stability: front must be planar");
    const auto beta = [&](const State<Scalar>& s) {
        const auto t = thermodynamics(s, d.params);
        return beta_speed(t.c, Scalar(s.H.norm() / sqrt(t.R)));
    };
    const Vector2<Scalar> Hp = d.plus.H.template tail<2>();
    const Vector2<Scalar> Hm = d.minus.H.template tail<2>();
    const Vector2<Scalar> du = d.plus.u.template tail<2>() - d.minus.u.template tail<2>();
    return cvs_stability_function(Hp, Hm, du, beta(d.plus), beta(d.minus));
}

template <typename Scalar> struct ContactRpCheck {
    bool holds = false;
    bool automatic = false; ///< alpha == gamma, where [R P_R] = gamma [P]
    Scalar jump{0};         ///< [R P_R]
};

template <typename Scalar>
ContactRpCheck<Scalar> contact_rp_check(const DiscontinuityData<Scalar>& d,
                                        Scalar rel_tol = Scalar(1e-8)) {
    using std::abs;
    d.validate();
    const auto& p = d.params;
    ContactRpCheck<Scalar> r;
    if (p.alpha == p.gamma) {
        r.automatic = true;
        r.holds = true;
        r.jump = p.gamma * (thermodynamics(d.plus, p).P - thermodynamics(d.minus, p).P);
        return r;
    }
    const auto rpr = [&](const State<Scalar>& s) {
        return p.alpha * detail::power(s.rho, p.alpha) + p.gamma * p.bigA * detail::power(s.n, p.gamma);
    };
    const Scalar a = rpr(d.plus);
    const Scalar b = rpr(d.minus);
    r.jump = a - b;
    r.holds = abs(r.jump) <= rel_tol * std::max(a, b);
    return r;
}

/// [dP/dN] < 0.
template <typename Scalar> bool rayleigh_taylor_check(Scalar dPdN_plus, Scalar dPdN_minus) {
    return dPdN_plus - dPdN_minus < 0;
}

} // namespace twofluid
