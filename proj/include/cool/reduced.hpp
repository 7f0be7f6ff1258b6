// reduced.hpp — the reduced control system on the simplex: J(U) matrices,
// induced generators -L_U, Haar sampling of achievable derivatives,
// reduced-trajectory integration, and lifting reduced solutions back to
// full control schedules.

#pragma once

#include "cool/quantum.hpp"

#include <cstdint>
#include <utility>

namespace cool {

inline constexpr double kSimplexTol = 1e-9;

// Throws if lam has an entry below -1e-12 or does not sum to one.
void check_simplex(const RVector& lam, double tol = 1e-12);

// Splitmix-style mix of a base seed and a stream index; used to derive
// independent per-sample seeds so results do not depend on chunking.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// J(U)_ij = sum_k |<i| U* V_k U |j>|^2
RMatrix j_matrix(const LindbladSystem& sys, const Matrix& u);

// -L_U = J - diag(column sums of J); columns sum to zero, so the simplex
// is forward-invariant.
RMatrix induced_generator(const RMatrix& j);

// lambda-dot = g * lam; entries sum to zero
RVector apply_generator(const RMatrix& g, const RVector& lam);

// Haar-distributed special unitary, deterministic per seed.
Matrix haar_unitary(int n, std::uint64_t seed);

// count independent samples -L_{U_i} lam with Haar U_i.
std::vector<RVector> derv_sample(const LindbladSystem& sys, const RVector& lam,
                                 int count, std::uint64_t seed);

// Per-sample special unitary control on a time grid (piecewise constant,
// sample i active on [times[i], times[i+1])).
struct UnitarySchedule {
    std::vector<double> times;
    std::vector<Matrix> unitaries;

    static UnitarySchedule constant(const Matrix& u, double t_end);
    const Matrix& at(double t) const;
    void validate() const;
};

// RK4 on lambda-dot = -L_{U(t)} lambda with per-step sum renormalization.
std::vector<std::pair<double, RVector>> integrate_reduced(
    const LindbladSystem& sys, const RVector& lam0, const UnitarySchedule& ctrl,
    double t_end, double dt);

// Hermitian H_c such that adding -i[H_c, rho] cancels the component of the
// dissipative drift tangent to the unitary orbit of rho. Computed via the
// Moore-Penrose inverse of ad_rho on the orthogonal complement of the
// commutant; zero for diagonally-invariant systems at diagonal rho.
Matrix compensating_hamiltonian(const LindbladSystem& sys, const Matrix& rho);

// H(t) = i (dU/dt) U* + compensating_hamiltonian at U diag(lam) U* - h0.
// Contract: integrate_full with this schedule reproduces the reduced
// trajectory spectrally (tested, not assumed).
ControlSchedule lift_control(const LindbladSystem& sys,
                             const std::vector<std::pair<double, RVector>>& reduced,
                             const UnitarySchedule& ctrl);

}  // namespace cool
