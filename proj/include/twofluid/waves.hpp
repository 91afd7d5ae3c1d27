#pragma once

// Characteristic speeds of the symmetric system in the direction of a front
// normal N = (1, -phi_2, -phi_3).
//
// For a sloped front |N| > 1 and the eigenvalues of A0^{-1} (A1 - phi_2 A2 - phi_3 A3)
// are u.N +- c_f, u.N +- c_a, u.N +- c_s, u.N (twice), where c_a = H.N / sqrt(R) and
// c_f, c_s solve the magnetoacoustic quadratic with |N| c and |N| c_A in place of
// c and c_A. For |N| = 1 these are the familiar planar formulas.

#include "twofluid/front.hpp"
#include "twofluid/symmetrizer.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace twofluid {

template <typename Scalar> struct WaveSpeeds {
    Scalar c{0};   ///< sound speed sqrt(P_R)
    Scalar c_a{0}; ///< normal Alfven speed H.N / sqrt(R), signed
    Scalar c_A{0}; ///< |H| / sqrt(R)
    Scalar c_s{0}; ///< slow magnetosonic, already scaled by |N|
    Scalar c_f{0}; ///< fast magnetosonic, already scaled by |N|
    Scalar normal_norm{1};
};

template <typename Scalar>
WaveSpeeds<Scalar> wave_speeds(const State<Scalar>& s, const FrontSlopes<Scalar>& front,
                               const EosParams<Scalar>& params) {
    using std::abs;
    using std::sqrt;
    const auto t = thermodynamics(s, params);
    const Scalar sqrtR = sqrt(t.R);

    WaveSpeeds<Scalar> w;
    w.normal_norm = front.normal_norm();
    w.c = t.c;
    w.c_a = s.H.dot(front.normal()) / sqrtR;
    w.c_A = s.H.norm() / sqrtR;

    const Scalar N2 = w.normal_norm * w.normal_norm;
    const Scalar sum = N2 * (w.c * w.c + w.c_A * w.c_A);
    const Scalar prod = N2 * w.c * w.c * w.c_a * w.c_a; // (c_s c_f)^2
    const Scalar disc = sqrt(std::max(Scalar(0), sum * sum - 4 * prod));
    const Scalar cf2 = (sum + disc) / 2;
    w.c_f = sqrt(cf2);
    // c_s from the product of the roots; the subtraction form cancels badly as c_a -> 0.
    w.c_s = cf2 > 0 ? sqrt(std::max(Scalar(0), prod / cf2)) : Scalar(0);
    // Rounding can push c_s a hair past |c_a| or |N| c when they coincide.
    w.c_s = std::min({w.c_s, abs(w.c_a), w.normal_norm * w.c});
    return w;
}

/// Eight characteristic speeds, ascending.
template <typename Scalar> struct EigenSpectrum {
    Vector8<Scalar> lambdas = Vector8<Scalar>::Zero();

    Scalar spectral_radius() const { return lambdas.cwiseAbs().maxCoeff(); }

    /// Number of eigenvalues within tol of value.
    int multiplicity(Scalar value, Scalar tol) const {
        using std::abs;
        int m = 0;
        for (int i = 0; i < 8; ++i)
            if (abs(lambdas(i) - value) <= tol) ++m;
        return m;
    }
};

template <typename Scalar>
EigenSpectrum<Scalar> eigenvalues_closed_form(const State<Scalar>& s, const FrontSlopes<Scalar>& front,
                                              const EosParams<Scalar>& params) {
    const auto w = wave_speeds(s, front, params);
    const Scalar uN = s.u.dot(front.normal());
    EigenSpectrum<Scalar> sp;
    sp.lambdas << uN - w.c_f, uN - w.c_a, uN - w.c_s, uN, uN, uN + w.c_s, uN + w.c_a, uN + w.c_f;
    std::stable_sort(sp.lambdas.data(), sp.lambdas.data() + 8);
    return sp;
}

/// Solves (A1 - phi_2 A2 - phi_3 A3) v = lambda A0 v; real spectrum by construction.
template <typename Scalar>
EigenSpectrum<Scalar> eigenvalues_numeric(const State<Scalar>& s, const FrontSlopes<Scalar>& front,
                                          const EosParams<Scalar>& params) {
    const Matrix8<Scalar> AN = assemble_A(s, params, 1) - front.phi_2 * assemble_A(s, params, 2) -
                               front.phi_3 * assemble_A(s, params, 3);
    Eigen::GeneralizedSelfAdjointEigenSolver<Matrix8<Scalar>> es(AN, assemble_A0(s, params),
                                                                 Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw DomainError("eigenvalues_numeric: generalized eigensolver failed (A0 not positive)");
    EigenSpectrum<Scalar> sp;
    sp.lambdas = es.eigenvalues();
    std::stable_sort(sp.lambdas.data(), sp.lambdas.data() + 8);
    return sp;
}

} // namespace twofluid
