#pragma once

#include "twofluid/types.hpp"

#include <cmath>

namespace twofluid {

/// Derivatives of the front x1 = phi(t, x2, x3).
template <typename Scalar> struct FrontSlopes {
    Scalar phi_t{0};
    Scalar phi_2{0};
    Scalar phi_3{0};

    /// N = (1, -phi_2, -phi_3); not normalized, |N| >= 1.
    Vector3<Scalar> normal() const { return {Scalar(1), -phi_2, -phi_3}; }
    Vector3<Scalar> tau1() const { return {phi_2, Scalar(1), Scalar(0)}; }
    Vector3<Scalar> tau2() const { return {phi_3, Scalar(0), Scalar(1)}; }
    Scalar normal_norm() const {
        using std::sqrt;
        return sqrt(1 + phi_2 * phi_2 + phi_3 * phi_3);
    }
    bool planar() const { return phi_2 == Scalar(0) && phi_3 == Scalar(0); }
    bool finite() const {
        using std::isfinite;
        return isfinite(phi_t) && isfinite(phi_2) && isfinite(phi_3);
    }
};

} // namespace twofluid
