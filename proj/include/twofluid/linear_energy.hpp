#pragma once

// Constant-coefficient linearization A0(U^) dU/dt + sum_j Aj(U^) dU/dxj = 0 on the
// periodic box [0, 2 pi)^3, and its quadratic invariants
//   I = int A0 U.U,  J = int ((H^.u) P / P_R^ - R^ u.H),  I + 2 lambda J = int B0 U.U.

#include "twofluid/eos.hpp"
#include "twofluid/symmetrizer.hpp"

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

namespace twofluid {

/// StateVector8 values on a uniform M^3 periodic lattice; node (i, j, k) is column
/// i + M (j + M k).
struct PeriodicField {
    int M = 0;
    Eigen::Matrix<double, 8, Eigen::Dynamic> values;

    static PeriodicField zeros(int M);

    double spacing() const;
    Eigen::Index nodes() const { return values.cols(); }
    Eigen::Index index(int i, int j, int k) const { return i + M * (j + Eigen::Index(M) * k); }
    void validate() const;
};

struct Background {
    State<double> state;
    EosParams<double> params;
};

/// Raised when dt exceeds the CFL limit (0.5 spectral, 1 upwind).
class CflViolation : public DomainError {
public:
    CflViolation(const std::string& what, double cfl) : DomainError(what), cfl_(cfl) {}
    double cfl() const noexcept { return cfl_; }

private:
    double cfl_;
};

enum class TimeIntegrator {
    classical_rk4,
    /// Five stages, fourth order; the z^5 coefficient 1/144 cancels the y^6 term of
    /// |R(iy)|^2 - 1, leaving an O(y^8) energy error per step.
    low_dissipation_rk4,
};

inline constexpr double max_cfl = 0.5;

/// Fourier differentiation matrix on M equispaced points of [0, 2 pi); skew-symmetric,
/// Nyquist mode mapped to zero.
Eigen::MatrixXd spectral_derivative_matrix(int M);

/// Semi-discrete operator dU/dt = -A0^{-1} sum_j Aj D_j U.
class LinearMhdOperator {
public:
    LinearMhdOperator(const Background& bg, int M);

    void apply(const Eigen::Matrix<double, 8, Eigen::Dynamic>& u,
               Eigen::Matrix<double, 8, Eigen::Dynamic>& out) const;

    /// D_axis applied to every component, axis in {0, 1, 2}.
    void derivative(const Eigen::Matrix<double, 8, Eigen::Dynamic>& u, int axis,
                    Eigen::Matrix<double, 8, Eigen::Dynamic>& out) const;

    /// max over coordinate directions of the spectral radius of A0^{-1} Aj.
    double max_speed() const { return max_speed_; }
    int grid() const { return M_; }

private:
    int M_;
    Eigen::MatrixXd Dt_; // transpose of the differentiation matrix
    std::array<Eigen::Matrix<double, 8, 8>, 3> C_;
    double max_speed_ = 0;
};

double cfl_number(const Background& bg, double dt, double dx);

struct SimulationOptions {
    TimeIntegrator integrator = TimeIntegrator::low_dissipation_rk4;
    int snapshot_every = 0; ///< 0 keeps only the initial and final fields
};

struct Trajectory {
    std::vector<double> times;
    std::vector<PeriodicField> snapshots;
    double cfl = 0;
    int steps = 0;
};

using FieldObserver = std::function<void(double t, const PeriodicField&)>;

/// Integrates to T with ceil(T / dt) equal steps (dt is shrunk to land on T).
Trajectory simulate_linear(const Background& bg, const PeriodicField& initial, double dt, double T,
                           const SimulationOptions& options = {},
                           const FieldObserver& observer = {});

double integral_I(const PeriodicField& f, const Background& bg);
double integral_J(const PeriodicField& f, const Background& bg);
/// sum_nodes U^T M U dx^3
double quadratic_integral(const PeriodicField& f, const Eigen::Matrix<double, 8, 8>& m);

/// Smooth random data: Fourier modes with max |k_i| <= kmax and amplitudes
/// N(0, 1) exp(-decay |k|^2).
PeriodicField random_smooth_field(int M, int kmax, double decay, std::uint64_t seed);

/// Removes the longitudinal part of H in Fourier space, making the spectral
/// divergence sum_j D_j H_j vanish.
void project_divergence_free(PeriodicField& f);
double max_divergence(const PeriodicField& f);

struct ConservationOptions {
    TimeIntegrator integrator = TimeIntegrator::low_dissipation_rk4;
    bool project_initial = true;
    int sample_every = 1;
};

struct ConservationSample {
    double t, I, J, IJ;
};

struct ConservationReport {
    double drift_I = 0;  ///< max |I - I0| / I0
    double drift_J = 0;  ///< max |J - J0| / (|J0| + I0)
    double drift_IJ = 0; ///< max |E - E0| / |E0| with E = I + 2 lambda J
    double I0 = 0, J0 = 0, IJ0 = 0;
    double cfl = 0;
    double dt = 0;
    int steps = 0;
    double initial_divergence = 0;
    std::vector<ConservationSample> series;
};

ConservationReport verify_conservation(const Background& bg, const PeriodicField& initial,
                                       double lambda, double dt, double T,
                                       const ConservationOptions& options = {});

// ---------------------------------------------------------------------------
// Entropy layer: dS/dt + u1 dS/dx = f on [-L, 0] and [0, L] with S+(0) = S-(0) + g.

struct EntropyLayerProblem {
    double u_plus = 0.5;
    double u_minus = 1.0;
    double L = 4.0;
    double dx = 0.01;
    double cfl = 0.8;
    std::function<double(double t, double x)> f_plus = [](double, double) { return 0.0; };
    std::function<double(double t, double x)> f_minus = [](double, double) { return 0.0; };
    std::function<double(double t)> g = [](double) { return 0.0; };
    std::function<double(double x)> initial_plus = [](double) { return 0.0; };
    std::function<double(double x)> initial_minus = [](double) { return 0.0; };
};

struct EntropyIdentitySample {
    double t, I, boundary, source, residual;
};

struct EntropyIdentityReport {
    double dx = 0, dt = 0;
    int steps = 0;
    double I0 = 0, IT = 0;
    double boundary_integral = 0; ///< int_0^T ([u1] (S-)^2 + 2 u1+ S- g + u1+ g^2) at x = 0
    double source_integral = 0;   ///< 2 sum int int f S
    double identity_residual = 0; ///< at t = T
    double max_identity_residual = 0;
    double estimate_lhs = 0;
    double estimate_rhs = 0;
    double estimate_ratio = 0;
    double outflow_max = 0; ///< max |S+(L)|; the identity assumes nothing leaves at x = L
    std::vector<EntropyIdentitySample> series;
};

EntropyIdentityReport verify_entropy_identity(const EntropyLayerProblem& problem, double T,
                                              int sample_every = 1);

} // namespace twofluid
