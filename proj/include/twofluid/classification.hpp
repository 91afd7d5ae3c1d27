#pragma once

// Four-way classification of a discontinuity (shock, current-vortex sheet,
// contact, Alfven) from its two traces and the front speed.

#include "twofluid/admissibility.hpp"
#include "twofluid/jumps.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace twofluid {

enum class DiscontinuityKind {
    FastLaxShock,
    SlowLaxShock,
    NonLaxShock,
    CurrentVortexSheet,
    ContactDiscontinuity,
    AlfvenDiscontinuity,
    NoDiscontinuity,
    NotAWeakSolution,
};

inline const char* to_string(DiscontinuityKind k) {
    switch (k) {
    case DiscontinuityKind::FastLaxShock: return "FastLaxShock";
    case DiscontinuityKind::SlowLaxShock: return "SlowLaxShock";
    case DiscontinuityKind::NonLaxShock: return "NonLaxShock";
    case DiscontinuityKind::CurrentVortexSheet: return "CurrentVortexSheet";
    case DiscontinuityKind::ContactDiscontinuity: return "ContactDiscontinuity";
    case DiscontinuityKind::AlfvenDiscontinuity: return "AlfvenDiscontinuity";
    case DiscontinuityKind::NoDiscontinuity: return "NoDiscontinuity";
    case DiscontinuityKind::NotAWeakSolution: return "NotAWeakSolution";
    }
    return "unknown";
}

inline bool is_shock(DiscontinuityKind k) {
    return k == DiscontinuityKind::FastLaxShock || k == DiscontinuityKind::SlowLaxShock ||
           k == DiscontinuityKind::NonLaxShock;
}

template <typename Scalar> struct Classification {
    DiscontinuityKind kind = DiscontinuityKind::NotAWeakSolution;
    Vector8<Scalar> residual = Vector8<Scalar>::Zero(); ///< scaled rh_residual
    Scalar residual_norm{0};
    Scalar j_plus{0};
    Scalar j_minus{0};
    Scalar jump_R{0};
    Scalar HN{0};
    std::optional<int> alfven_sign; ///< j = sign * H_N sqrt(R)
    std::vector<std::pair<std::string, bool>> checks;
    std::optional<LaxReport<Scalar>> lax;

    bool check(const std::string& name) const {
        for (const auto& [n, ok] : checks)
            if (n == name) return ok;
        return false;
    }
};

template <typename Scalar>
Classification<Scalar> classify(const DiscontinuityData<Scalar>& d, const Tolerances<Scalar>& tol = {}) {
    using std::abs;
    using std::sqrt;
    d.validate();
    const auto sc = natural_scales(d);
    const auto tp = traces(d.plus, d.front, d.params);
    const auto tm = traces(d.minus, d.front, d.params);
    const auto thp = thermodynamics(d.plus, d.params);
    const auto thm = thermodynamics(d.minus, d.params);

    Classification<Scalar> c;
    c.residual = scaled_rh_residual(d);
    c.residual_norm = c.residual.cwiseAbs().maxCoeff();
    c.j_plus = tp.j;
    c.j_minus = tm.j;
    c.jump_R = thp.R - thm.R;
    c.HN = tp.HN;

    auto record = [&](const std::string& name, bool ok) {
        c.checks.emplace_back(name, ok);
        return ok;
    };

    if (!record("rankine_hugoniot", c.residual_norm <= tol.rh)) {
        c.kind = DiscontinuityKind::NotAWeakSolution;
        return c;
    }

    const Scalar du = (d.plus.u - d.minus.u).norm() / sc.speed;
    const Scalar dH = (d.plus.H - d.minus.H).norm() / sc.field;
    const Scalar dn = abs(d.plus.n - d.minus.n) / sc.density;
    const Scalar drho = abs(d.plus.rho - d.minus.rho) / sc.density;
    if (du <= tol.rh && dH <= tol.rh && dn <= tol.R && drho <= tol.R) {
        record("no_jump", true);
        c.kind = DiscontinuityKind::NoDiscontinuity;
        return c;
    }

    const bool mass_flux = abs(tp.j) > tol.j * sc.flux();
    const bool density_jump = abs(c.jump_R) > tol.R * sc.density;
    const bool normal_field = abs(tp.HN) > tol.H * sc.field * sc.normal_norm;
    const Scalar dP = abs(thp.P - thm.P) / sc.pressure;
    const Scalar dS = abs(thp.S - thm.S) / (1 + std::max(thp.S, thm.S));

    if (mass_flux && density_jump) {
        if (!record("entropy_continuity", dS <= tol.R)) {
            c.kind = DiscontinuityKind::NotAWeakSolution;
            return c;
        }
        c.lax = lax_check(d, tol);
        record("lax", c.lax->is_lax);
        switch (c.lax->family) {
        case LaxFamily::fast: c.kind = DiscontinuityKind::FastLaxShock; break;
        case LaxFamily::slow: c.kind = DiscontinuityKind::SlowLaxShock; break;
        default: c.kind = DiscontinuityKind::NonLaxShock; break;
        }
        return c;
    }

    if (mass_flux) {
        // [R] = 0 with mass flux: only the rotational (Alfven) jump survives.
        const Scalar sqrtR = sqrt(thp.R);
        const int sign = (tp.j * tp.HN >= 0) ? 1 : -1;
        const bool rel = abs(tp.j - sign * tp.HN * sqrtR) <= tol.j * sc.flux();
        const bool p = dP <= tol.rh;
        const bool s = dS <= tol.R;
        const bool h2 = abs(d.plus.H.squaredNorm() - d.minus.H.squaredNorm()) <=
                        tol.rh * sc.field * sc.field;
        const Vector3<Scalar> mismatch =
            (d.plus.u - d.minus.u) - Scalar(sign) * (d.plus.H - d.minus.H) / sqrtR;
        const bool rot = mismatch.norm() <= tol.rh * sc.speed;
        record("alfven_relation", rel);
        record("pressure_continuity", p);
        record("entropy_continuity", s);
        record("field_magnitude_continuity", h2);
        record("velocity_field_jump", rot);
        if (rel && p && s && h2 && rot) {
            c.kind = DiscontinuityKind::AlfvenDiscontinuity;
            c.alfven_sign = sign;
        } else {
            c.kind = DiscontinuityKind::NotAWeakSolution;
        }
        return c;
    }

    const bool comoving = abs(tp.j) <= tol.j * sc.flux() && abs(tm.j) <= tol.j * sc.flux();
    if (!normal_field) {
        const bool q = abs(thp.q - thm.q) <= tol.rh * sc.pressure;
        const bool hn = abs(tm.HN) <= tol.H * sc.field * sc.normal_norm;
        record("total_pressure_continuity", q);
        record("normal_field_zero", hn);
        record("comoving_front", comoving);
        c.kind = (q && hn && comoving) ? DiscontinuityKind::CurrentVortexSheet
                                       : DiscontinuityKind::NotAWeakSolution;
        return c;
    }

    record("pressure_continuity", dP <= tol.rh);
    record("velocity_continuity", du <= tol.rh);
    record("field_continuity", dH <= tol.rh);
    record("comoving_front", comoving);
    c.kind = (dP <= tol.rh && du <= tol.rh && dH <= tol.rh && comoving)
                 ? DiscontinuityKind::ContactDiscontinuity
                 : DiscontinuityKind::NotAWeakSolution;
    return c;
}

} // namespace twofluid
