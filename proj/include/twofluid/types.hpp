#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace twofluid {

template <typename Scalar> using Vector2 = Eigen::Matrix<Scalar, 2, 1>;
template <typename Scalar> using Vector3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar> using Vector8 = Eigen::Matrix<Scalar, 8, 1>;
template <typename Scalar> using Matrix8 = Eigen::Matrix<Scalar, 8, 8>;

/// Component order of the unknown vector U = (P, u, H, S).
namespace idx {
inline constexpr int P = 0;
inline constexpr int U1 = 1;
inline constexpr int U2 = 2;
inline constexpr int U3 = 3;
inline constexpr int H1 = 4;
inline constexpr int H2 = 5;
inline constexpr int H3 = 6;
inline constexpr int S = 7;
inline constexpr int velocity(int axis) { return U1 + axis; }
inline constexpr int field(int axis) { return H1 + axis; }
} // namespace idx

/// Input outside the admissible set (hyperbolicity, positivity, axis range...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An iterative solver gave up; carries the last residual it saw.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double last_residual)
        : std::runtime_error(what), last_residual_(last_residual) {}
    double last_residual() const noexcept { return last_residual_; }

private:
    double last_residual_;
};

template <typename Scalar> Scalar max_asymmetry(const Matrix8<Scalar>& m) {
    return (m - m.transpose()).cwiseAbs().maxCoeff();
}

} // namespace twofluid
