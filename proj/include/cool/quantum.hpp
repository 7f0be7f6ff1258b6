// quantum.hpp — dense complex matrix utilities, density matrices, the
// GKS-Lindblad right-hand side and a fixed-step RK4 integrator for the
// full bilinear control system.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace cool {

using Cx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr double kHermTol = 1e-12;
inline constexpr double kEigClipTol = 1e-10;
inline constexpr double kPositivityTol = 1e-6;

// Pauli matrices and friends
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix sigma_minus();

// |i><j| in dimension n (zero-based indices)
Matrix ketbra(int n, int i, int j);

inline Matrix hermitize(const Matrix& a) { return 0.5 * (a + a.adjoint()); }

bool is_hermitian(const Matrix& a, double tol = kHermTol);
bool is_unitary(const Matrix& u, double tol = 1e-10);

// Throws std::invalid_argument if rho is not a valid density matrix
// (Hermitian to 1e-12, unit trace to 1e-12, min eigenvalue >= -1e-10).
void check_density(const Matrix& rho);

// A Lindblad system: drift Hamiltonian plus Lindblad terms V_1..V_r.
// Rates are absorbed into the terms.
struct LindbladSystem {
    Matrix h0;
    std::vector<Matrix> terms;

    int dim() const { return static_cast<int>(h0.rows()); }
    void validate() const;
};

// Piecewise-constant control Hamiltonian on a time grid, or an arbitrary
// callback t -> H(t). The grid form samples hams[i] on [times[i], times[i+1]).
struct ControlSchedule {
    std::vector<double> times;
    std::vector<Matrix> hams;
    std::function<Matrix(double)> callback;

    static ControlSchedule zero(int n);
    Matrix at(double t) const;
};

// -Gamma_V(rho) = V rho V* - 1/2 (V*V rho + rho V*V)
Matrix dissipator(const Matrix& v, const Matrix& rho);

// -i[h0 + h_extra, rho] + sum_k dissipator(V_k, rho)
Matrix lindblad_rhs(const LindbladSystem& sys, const Matrix& rho,
                    const Matrix& h_extra);

struct TrajectoryPoint {
    double t;
    Matrix rho;
};

// Classical RK4 with per-step re-Hermitization and trace renormalization.
// Aborts with a diagnostic if the minimum eigenvalue drops below -1e-6
// (signals that dt is too large).
std::vector<TrajectoryPoint> integrate_full(const LindbladSystem& sys,
                                            const Matrix& rho0,
                                            const ControlSchedule& ctrl,
                                            double t_end, double dt);

// Eigenvalues of rho sorted non-increasing, clipped to [0,1] and
// renormalized to sum one.
RVector spectrum_desc(const Matrix& rho);

}  // namespace cool
