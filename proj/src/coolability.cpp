#include "cool/coolability.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace cool {

namespace {

Matrix kernel_basis(const Matrix& a, double tol) {
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > tol) ++rank;
    return svd.matrixV().rightCols(svd.matrixV().cols() - rank);
}

Matrix orthonormalize(const Matrix& b) {
    if (b.cols() == 0) return b;
    Eigen::HouseholderQR<Matrix> qr(b);
    Matrix q = qr.householderQ() * Matrix::Identity(b.rows(), b.cols());
    // drop columns corresponding to (near) zero R diagonal
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    int keep = 0;
    for (int i = 0; i < b.cols(); ++i)
        if (std::abs(r(i, i)) > 1e-10) ++keep;
    return q.leftCols(keep);
}

// Largest subspace of span(b) invariant under every term.
Matrix largest_invariant_subspace(Matrix b, const std::vector<Matrix>& terms) {
    const int n = static_cast<int>(b.rows());
    while (b.cols() > 0) {
        Matrix proj_out = Matrix::Identity(n, n) - b * b.adjoint();
        Matrix stacked(static_cast<int>(terms.size()) * n, b.cols());
        for (std::size_t k = 0; k < terms.size(); ++k)
            stacked.middleRows(static_cast<int>(k) * n, n) = proj_out * terms[k] * b;
        Matrix ker = kernel_basis(stacked, 1e-9);
        if (ker.cols() == b.cols()) return b;
        b = orthonormalize(b * ker);
    }
    return b;
}

void recurse(const Matrix& basis, std::size_t k, const std::vector<Matrix>& terms,
             CommonEigResult& out) {
    const int d = static_cast<int>(basis.cols());
    if (d == 0) return;
    if (k == terms.size()) {
        if (d == 1) {
            CommonEigRay ray;
            ray.vec = basis.col(0).normalized();
            ray.eigenvalues.resize(static_cast<int>(terms.size()));
            for (std::size_t i = 0; i < terms.size(); ++i)
                ray.eigenvalues(static_cast<int>(i)) =
                    ray.vec.dot(terms[i] * ray.vec);
            out.rays.push_back(std::move(ray));
        } else {
            out.continuum = true;
            out.continuum_bases.push_back(basis);
        }
        return;
    }

    Matrix m = basis.adjoint() * terms[k] * basis;
    Eigen::ComplexEigenSolver<Matrix> es(m);
    const CVector evals = es.eigenvalues();
    std::vector<bool> used(d, false);
    for (int i = 0; i < d; ++i) {
        if (used[i]) continue;
        const Cx mu = evals(i);
        for (int j = i; j < d; ++j)
            if (std::abs(evals(j) - mu) <= kEigClusterTol) used[j] = true;
        Matrix eig_space = kernel_basis(m - mu * Matrix::Identity(d, d), 1e-8);
        if (eig_space.cols() == 0) continue;
        Matrix sub = orthonormalize(basis * eig_space);
        sub = largest_invariant_subspace(sub, terms);
        recurse(sub, k + 1, terms, out);
    }
}

}  // namespace

CommonEigResult common_eigenvectors(const std::vector<Matrix>& terms) {
    if (terms.empty())
        throw std::invalid_argument("common_eigenvectors: need at least one term");
    const int n = static_cast<int>(terms.front().rows());
    for (const Matrix& v : terms)
        if (v.rows() != n || v.cols() != n)
            throw std::invalid_argument("common_eigenvectors: dimension mismatch");
    CommonEigResult out;
    recurse(Matrix::Identity(n, n), 0, terms, out);
    return out;
}

bool is_common_left_eigenvector(const CVector& w, const std::vector<Matrix>& terms) {
    for (const Matrix& v : terms) {
        CVector row = v.adjoint() * w;  // conj of w* V
        Cx mu = w.dot(row);
        if ((row - mu * w).norm() > kEigResidualTol) return false;
    }
    return true;
}

CoolabilityVerdict is_coolable(const LindbladSystem& sys) {
    sys.validate();
    const int n = sys.dim();
    // canonicalize: traceless shift exhausts the representation freedom
    // relevant for the eigenvector criterion
    std::vector<Matrix> shifted;
    shifted.reserve(sys.terms.size());
    for (const Matrix& v : sys.terms)
        shifted.push_back(v - (v.trace() / static_cast<double>(n)) *
                                  Matrix::Identity(n, n));

    CoolabilityVerdict verdict;
    verdict.diagnostics = common_eigenvectors(shifted);

    std::vector<CVector> candidates;
    for (const CommonEigRay& ray : verdict.diagnostics.rays)
        candidates.push_back(ray.vec);
    for (const Matrix& b : verdict.diagnostics.continuum_bases)
        for (int i = 0; i < b.cols(); ++i) candidates.push_back(b.col(i).normalized());

    for (const CVector& w : candidates) {
        if (!is_common_left_eigenvector(w, shifted)) {
            verdict.coolable = true;
            verdict.witness = w;
            break;
        }
    }
    return verdict;
}

}  // namespace cool
