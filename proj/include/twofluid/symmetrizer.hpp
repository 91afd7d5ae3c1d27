#pragma once

// Symmetric form A0 dU/dt + sum_j Aj dU/dxj = 0 of the two-fluid system in
// U = (P, u, H, S), and the lambda-family of secondary symmetrizers B0.

#include "twofluid/eos.hpp"
#include "twofluid/front.hpp"

#include <Eigen/Eigenvalues>

#include <array>
#include <cmath>
#include <optional>
#include <string>

namespace twofluid {

template <typename Scalar>
Matrix8<Scalar> assemble_A0(const State<Scalar>& s, const EosParams<Scalar>& params) {
    const auto t = thermodynamics(s, params);
    Vector8<Scalar> d;
    d << Scalar(1) / (t.R * t.P_R), t.R, t.R, t.R, 1, 1, 1, 1;
    return d.asDiagonal();
}

/// Flux matrix along x_axis, axis in {1, 2, 3}.
template <typename Scalar>
Matrix8<Scalar> assemble_A(const State<Scalar>& s, const EosParams<Scalar>& params, int axis) {
    if (axis < 1 || axis > 3) throw DomainError("assemble_A: axis must be 1, 2 or 3");
    const int j = axis - 1;
    const auto t = thermodynamics(s, params);
    const Scalar uj = s.u(j);

    Matrix8<Scalar> A = Matrix8<Scalar>::Zero();
    A(idx::P, idx::P) = uj / (t.R * t.P_R);
    A(idx::P, idx::velocity(j)) = A(idx::velocity(j), idx::P) = 1;
    for (int i = 0; i < 3; ++i) {
        A(idx::velocity(i), idx::velocity(i)) = t.R * uj;
        A(idx::field(i), idx::field(i)) = uj;
    }
    A(idx::S, idx::S) = uj;
    // Lorentz force and induction coupling; the (j, j) entries cancel.
    for (int i = 0; i < 3; ++i) {
        if (i == j) continue;
        A(idx::velocity(i), idx::field(i)) = A(idx::field(i), idx::velocity(i)) = -s.H(j);
        A(idx::velocity(j), idx::field(i)) = A(idx::field(i), idx::velocity(j)) = s.H(i);
    }
    return A;
}

/// A1 - A0 phi_t - A2 phi_2 - A3 phi_3 for the front x1 = phi(t, x2, x3).
template <typename Scalar>
Matrix8<Scalar> assemble_boundary_matrix(const State<Scalar>& s, const FrontSlopes<Scalar>& front,
                                         const EosParams<Scalar>& params) {
    if (!front.finite()) throw DomainError("front slopes must be finite");
    return assemble_A(s, params, 1) - front.phi_t * assemble_A0(s, params) -
           front.phi_2 * assemble_A(s, params, 2) - front.phi_3 * assemble_A(s, params, 3);
}

/// Largest |lambda| for which B0 stays positive definite.
template <typename Scalar>
Scalar lambda_bound(const State<Scalar>& s, const EosParams<Scalar>& params) {
    using std::sqrt;
    const auto t = thermodynamics(s, params);
    return sqrt(t.P_R / (t.R * t.P_R + s.H.squaredNorm()));
}

template <typename Scalar>
Matrix8<Scalar> assemble_B0(const State<Scalar>& s, Scalar lambda, const EosParams<Scalar>& params) {
    const auto t = thermodynamics(s, params);
    Matrix8<Scalar> B = assemble_A0(s, params);
    for (int i = 0; i < 3; ++i) {
        B(idx::P, idx::velocity(i)) = B(idx::velocity(i), idx::P) = lambda * s.H(i) / t.P_R;
        B(idx::velocity(i), idx::field(i)) = B(idx::field(i), idx::velocity(i)) = -t.R * lambda;
    }
    return B;
}

template <typename Scalar> struct SecondarySymmetrization {
    Matrix8<Scalar> S;              ///< S A0 = B0
    std::array<Matrix8<Scalar>, 3> B; ///< B_j = S A_j + r e_{H_j}^T
};

/// Left multiplier S = B0 A0^{-1} and the symmetric B_j obtained after adding
/// r div H with r = -lambda (1, 0, 0, 0, H, 0).
template <typename Scalar>
SecondarySymmetrization<Scalar> assemble_S_and_Bj(const State<Scalar>& s, Scalar lambda,
                                                  const EosParams<Scalar>& params) {
    SecondarySymmetrization<Scalar> out;
    const Matrix8<Scalar> A0 = assemble_A0(s, params);
    out.S = assemble_B0(s, lambda, params) * A0.diagonal().cwiseInverse().asDiagonal();

    Vector8<Scalar> r = Vector8<Scalar>::Zero();
    r(idx::P) = 1;
    r.template segment<3>(idx::H1) = s.H;
    r *= -lambda;

    for (int j = 0; j < 3; ++j) {
        out.B[j] = out.S * assemble_A(s, params, j + 1);
        out.B[j].col(idx::field(j)) += r;
    }
    return out;
}

template <typename Scalar> struct Definiteness {
    bool positive = false;
    Scalar min_eigenvalue = 0;
    Scalar threshold = 0;
};

/// Symmetric eigenvalue test: positive iff lambda_min > 1e-12 * |M|_2.
template <typename Scalar> Definiteness<Scalar> positive_definite(const Matrix8<Scalar>& m) {
    Eigen::SelfAdjointEigenSolver<Matrix8<Scalar>> es(m, Eigen::EigenvaluesOnly);
    Definiteness<Scalar> d;
    if (es.info() != Eigen::Success) return d;
    const auto& ev = es.eigenvalues();
    d.min_eigenvalue = ev.minCoeff();
    d.threshold = Scalar(1e-12) * ev.cwiseAbs().maxCoeff();
    d.positive = d.min_eigenvalue > d.threshold;
    return d;
}

template <typename Scalar> struct HyperbolicityReport {
    bool admissible = false; ///< n > 0 and rho >= 0
    bool A0_positive = false;
    std::optional<bool> B0_positive;
    std::optional<Scalar> lambda_margin; ///< |lambda| - bound; negative inside the admissible range
    std::string message;
};

template <typename Scalar>
HyperbolicityReport<Scalar> check_hyperbolicity(const State<Scalar>& s,
                                                std::optional<Scalar> lambda,
                                                const EosParams<Scalar>& params) {
    using std::abs;
    HyperbolicityReport<Scalar> rep;
    if (!s.admissible()) {
        rep.message = "hyperbolicity violated: requires n > 0 and rho >= 0";
        return rep;
    }
    rep.admissible = true;
    rep.A0_positive = positive_definite(assemble_A0(s, params)).positive;
    if (lambda) {
        rep.B0_positive = positive_definite(assemble_B0(s, *lambda, params)).positive;
        rep.lambda_margin = abs(*lambda) - lambda_bound(s, params);
    }
    return rep;
}

} // namespace twofluid
