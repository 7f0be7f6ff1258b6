// coolability.hpp — algebraic test for asymptotic coolability via common
// eigenvectors of the Lindblad terms.

#pragma once

#include "cool/quantum.hpp"

#include <optional>

namespace cool {

inline constexpr double kEigResidualTol = 1e-9;
inline constexpr double kEigClusterTol = 1e-8;

struct CommonEigRay {
    CVector vec;          // unit norm
    CVector eigenvalues;  // one eigenvalue per term
};

struct CommonEigResult {
    std::vector<CommonEigRay> rays;
    // eigenspaces of dimension > 1 on which every term acts as a scalar
    bool continuum = false;
    std::vector<Matrix> continuum_bases;  // orthonormal columns
};

// All isolated common-eigenvector rays of the given terms, found by
// recursive eigenspace intersection. Subspaces whose every vector is a
// common eigenvector are reported via the continuum flag with a basis.
CommonEigResult common_eigenvectors(const std::vector<Matrix>& terms);

// true iff for every term there is mu with w* V = mu w* (residual <= 1e-9)
bool is_common_left_eigenvector(const CVector& w, const std::vector<Matrix>& terms);

struct CoolabilityVerdict {
    bool coolable = false;
    std::optional<CVector> witness;  // common right but not left eigenvector
    CommonEigResult diagnostics;
};

// Coolable iff some common right eigenvector of the (traceless-shifted)
// Lindblad terms fails the left-eigenvector test.
CoolabilityVerdict is_coolable(const LindbladSystem& sys);

}  // namespace cool
