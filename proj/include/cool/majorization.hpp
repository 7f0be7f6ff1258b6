// majorization.hpp — majorization preorders, Schur-convex cost functions,
// low-dimensional convex hulls on affine slices, and the optimal-derivative
// vertex filter.

#pragma once

#include "cool/quantum.hpp"

#include <string>

namespace cool {

// lam majorizes mu: all partial sums of the sorted-descending vectors dominate
bool majorizes(const RVector& lam, const RVector& mu, double tol = 1e-12);

// v infinitesimally majorizes w: unordered partial sums dominate
bool inf_majorizes(const RVector& v, const RVector& w, double tol = 1e-12);

enum class CostKind { purity, entropy, max_eigenvalue };
CostKind cost_from_name(const std::string& name);

double schur_cost(CostKind kind, const RVector& lam);

// halfspace normal . x <= offset
struct Halfspace {
    RVector normal;
    double offset;
};

// Convex polytope living on an affine slice of R^n (fixed coordinate sum).
struct Polytope {
    int ambient = 0;
    int dim = 0;             // affine dimension of the hull
    double slice_sum = 0.0;  // common coordinate sum of all points
    RVector base;            // a point of the hull (centroid of inputs)
    RMatrix hull_basis;      // ambient x dim, orthonormal directions of the hull
    std::vector<RVector> vertices;
    std::vector<Halfspace> facets;  // normals lie in span(hull_basis)
};

// Orthonormal basis of the sum-zero hyperplane, Gram-Schmidt on (e_i - e_{i+1}).
RMatrix sumzero_chart(int n);

// Hull of points on a common affine slice, n <= 4. Degenerate input is
// handled by hulling within its affine hull (see Polytope::dim).
Polytope convex_hull(const std::vector<RVector>& points);

bool contains(const Polytope& p, const RVector& x, double tol);

// Vertices not strictly dominated under infinitesimal majorization by any
// convex combination of vertices; decided by a dense-tableau LP.
std::vector<RVector> optimal_vertices(const Polytope& p);

namespace detail {
// maximize c.x subject to A x = b, x >= 0 (two-phase dense simplex).
// Returns false if infeasible; on success sets value to the optimum
// (or infinity when unbounded).
bool lp_max(const RVector& c, const RMatrix& a, const RVector& b, double& value);
}  // namespace detail

}  // namespace cool
