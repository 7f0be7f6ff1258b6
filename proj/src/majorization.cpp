#include "cool/majorization.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace cool {

namespace {

RVector sorted_desc(const RVector& v) {
    RVector s = v;
    std::sort(s.data(), s.data() + s.size(), std::greater<double>());
    return s;
}

}  // namespace

bool majorizes(const RVector& lam, const RVector& mu, double tol) {
    if (lam.size() != mu.size())
        throw std::invalid_argument("majorizes: dimension mismatch");
    RVector a = sorted_desc(lam), b = sorted_desc(mu);
    double sa = 0.0, sb = 0.0;
    for (int k = 0; k < a.size(); ++k) {
        sa += a(k);
        sb += b(k);
        if (sa < sb - tol) return false;
    }
    return true;
}

bool inf_majorizes(const RVector& v, const RVector& w, double tol) {
    if (v.size() != w.size())
        throw std::invalid_argument("inf_majorizes: dimension mismatch");
    double sv = 0.0, sw = 0.0;
    for (int k = 0; k < v.size(); ++k) {
        sv += v(k);
        sw += w(k);
        if (sv < sw - tol) return false;
    }
    return true;
}

CostKind cost_from_name(const std::string& name) {
    if (name == "purity") return CostKind::purity;
    if (name == "entropy") return CostKind::entropy;
    if (name == "max_eigenvalue") return CostKind::max_eigenvalue;
    throw std::invalid_argument("unknown cost function: " + name);
}

double schur_cost(CostKind kind, const RVector& lam) {
    switch (kind) {
        case CostKind::purity:
            return lam.squaredNorm();
        case CostKind::entropy: {
            double s = 0.0;
            for (int i = 0; i < lam.size(); ++i)
                if (lam(i) > 0.0) s -= lam(i) * std::log(lam(i));
            return s;
        }
        case CostKind::max_eigenvalue:
            return lam.maxCoeff();
    }
    throw std::invalid_argument("unknown cost kind");
}

RMatrix sumzero_chart(int n) {
    RMatrix chart(n, n - 1);
    for (int j = 0; j < n - 1; ++j) {
        RVector v = RVector::Zero(n);
        v(j) = 1.0;
        v(j + 1) = -1.0;
        for (int k = 0; k < j; ++k) v -= chart.col(k).dot(v) * chart.col(k);
        chart.col(j) = v.normalized();
    }
    return chart;
}

namespace {

constexpr double kHullTol = 1e-9;
constexpr double kMergeTol = 1e-10;

// hyperplane through a size-d subset of d-dimensional coords; returns false
// if the subset is affinely degenerate
bool subset_plane(const std::vector<RVector>& coords, const std::vector<int>& idx,
                  RVector& normal, double& offset) {
    const int d = static_cast<int>(coords.front().size());
    if (d == 1) {
        normal = RVector::Ones(1);
        offset = coords[idx[0]](0);
        return true;
    }
    RMatrix diffs(d - 1, d);
    for (int i = 0; i < d - 1; ++i)
        diffs.row(i) = (coords[idx[i + 1]] - coords[idx[0]]).transpose();
    Eigen::JacobiSVD<RMatrix> svd(diffs, Eigen::ComputeFullV);
    if (d > 1 && svd.singularValues()(d - 2) <= kHullTol) return false;
    normal = svd.matrixV().col(d - 1);
    offset = normal.dot(coords[idx[0]]);
    return true;
}

int rank_of(const RMatrix& m, double tol) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    Eigen::JacobiSVD<RMatrix> svd(m);
    int r = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > tol) ++r;
    return r;
}

}  // namespace

Polytope convex_hull(const std::vector<RVector>& points) {
    if (points.empty()) throw std::invalid_argument("convex_hull: no points");
    const int n = static_cast<int>(points.front().size());
    if (n > 4) throw std::invalid_argument("convex_hull: ambient dimension > 4");

    // merge duplicates
    std::vector<RVector> pts;
    for (const RVector& p : points) {
        bool dup = false;
        for (const RVector& q : pts)
            if ((p - q).norm() <= kMergeTol) {
                dup = true;
                break;
            }
        if (!dup) pts.push_back(p);
    }
    const int m = static_cast<int>(pts.size());

    Polytope poly;
    poly.ambient = n;
    poly.slice_sum = pts.front().sum();
    poly.base = RVector::Zero(n);
    for (const RVector& p : pts) poly.base += p;
    poly.base /= m;

    RMatrix centered(m, n);
    for (int i = 0; i < m; ++i) centered.row(i) = (pts[i] - poly.base).transpose();
    Eigen::JacobiSVD<RMatrix> svd(centered, Eigen::ComputeFullV);
    const double scale = m > 1 ? std::max(1.0, svd.singularValues()(0)) : 1.0;
    int d = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > kHullTol * scale) ++d;
    poly.dim = d;
    poly.hull_basis = svd.matrixV().leftCols(d);

    if (d == 0) {
        poly.vertices.push_back(pts.front());
        return poly;
    }

    std::vector<RVector> coords(m);
    for (int i = 0; i < m; ++i)
        coords[i] = poly.hull_basis.transpose() * (pts[i] - poly.base);

    // collect supporting hyperplanes from all d-subsets
    std::vector<std::pair<RVector, double>> planes;  // unit normal, offset
    auto try_plane = [&](const RVector& normal, double offset) {
        bool below = true, above = true;
        for (const RVector& y : coords) {
            const double s = normal.dot(y) - offset;
            if (s > kHullTol) below = false;
            if (s < -kHullTol) above = false;
        }
        auto add = [&](const RVector& nrm, double off) {
            for (const auto& [pn, po] : planes)
                if ((pn - nrm).norm() <= 1e-8 && std::abs(po - off) <= 1e-8) return;
            planes.emplace_back(nrm, off);
        };
        if (below) add(normal, offset);
        if (above) add(-normal, -offset);
    };

    std::vector<int> idx(d);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        RVector normal;
        double offset;
        if (subset_plane(coords, idx, normal, offset)) try_plane(normal, offset);
        // next combination
        int i = d - 1;
        while (i >= 0 && idx[i] == m - d + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
    }

    for (const auto& [normal, offset] : planes) {
        Halfspace h;
        h.normal = poly.hull_basis * normal;
        h.offset = offset + h.normal.dot(poly.base);
        poly.facets.push_back(std::move(h));
    }

    // vertices: points whose active facet normals span the full hull dimension
    for (int i = 0; i < m; ++i) {
        std::vector<int> active;
        for (std::size_t f = 0; f < planes.size(); ++f)
            if (std::abs(planes[f].first.dot(coords[i]) - planes[f].second) <=
                kHullTol * scale)
                active.push_back(static_cast<int>(f));
        if (static_cast<int>(active.size()) < d) continue;
        RMatrix normals(static_cast<int>(active.size()), d);
        for (std::size_t a = 0; a < active.size(); ++a)
            normals.row(static_cast<int>(a)) = planes[active[a]].first.transpose();
        if (rank_of(normals, 1e-8) == d) poly.vertices.push_back(pts[i]);
    }
    return poly;
}

bool contains(const Polytope& p, const RVector& x, double tol) {
    if (x.size() != p.ambient)
        throw std::invalid_argument("contains: dimension mismatch");
    if (std::abs(x.sum() - p.slice_sum) > tol) return false;
    RVector r = x - p.base;
    RVector orth = r - p.hull_basis * (p.hull_basis.transpose() * r);
    if (orth.norm() > tol) return false;
    for (const Halfspace& h : p.facets)
        if (h.normal.dot(x) > h.offset + tol) return false;
    return true;
}

namespace detail {

bool lp_max(const RVector& c, const RMatrix& a, const RVector& b, double& value) {
    const int m = static_cast<int>(a.rows());
    const int n = static_cast<int>(a.cols());
    constexpr double kPivTol = 1e-9;

    // tableau: [A | I_art | b], rows normalized so b >= 0
    RMatrix tab(m, n + m + 1);
    tab.setZero();
    for (int i = 0; i < m; ++i) {
        double sign = b(i) < 0.0 ? -1.0 : 1.0;
        tab.block(i, 0, 1, n) = sign * a.row(i);
        tab(i, n + i) = 1.0;
        tab(i, n + m) = sign * b(i);
    }
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) basis[i] = n + i;

    auto pivot = [&](int row, int col) {
        tab.row(row) /= tab(row, col);
        for (int i = 0; i < m; ++i)
            if (i != row && std::abs(tab(i, col)) > 0.0)
                tab.row(i) -= tab(i, col) * tab.row(row);
        basis[row] = col;
    };

    // run simplex on objective vector obj (maximization), over columns [0, ncols)
    auto run = [&](const RVector& obj, int ncols) {
        while (true) {
            // reduced costs via current basis (recomputed; sizes are tiny)
            RVector y = RVector::Zero(m);
            for (int i = 0; i < m; ++i) y(i) = obj(basis[i]);
            int enter = -1;
            for (int j = 0; j < ncols; ++j) {
                double red = obj(j) - y.dot(tab.col(j).head(m));
                if (red > kPivTol) {
                    enter = j;  // Bland: first improving column
                    break;
                }
            }
            if (enter < 0) break;
            int leave = -1;
            double best = std::numeric_limits<double>::infinity();
            for (int i = 0; i < m; ++i) {
                if (tab(i, enter) > kPivTol) {
                    double ratio = tab(i, n + m) / tab(i, enter);
                    if (ratio < best - kPivTol ||
                        (ratio < best + kPivTol &&
                         (leave < 0 || basis[i] < basis[leave]))) {
                        best = ratio;
                        leave = i;
                    }
                }
            }
            if (leave < 0) return false;  // unbounded
            pivot(leave, enter);
        }
        return true;
    };

    // phase 1: maximize -sum(artificials)
    RVector obj1 = RVector::Zero(n + m + 1);
    for (int j = n; j < n + m; ++j) obj1(j) = -1.0;
    run(obj1, n + m);
    double art_sum = 0.0;
    for (int i = 0; i < m; ++i)
        if (basis[i] >= n) art_sum += tab(i, n + m);
    if (art_sum > 1e-7) return false;  // infeasible

    // drive remaining degenerate artificials out of the basis
    for (int i = 0; i < m; ++i) {
        if (basis[i] < n) continue;
        int col = -1;
        for (int j = 0; j < n; ++j)
            if (std::abs(tab(i, j)) > kPivTol) {
                col = j;
                break;
            }
        if (col >= 0) pivot(i, col);
    }

    // phase 2
    RVector obj2 = RVector::Zero(n + m + 1);
    obj2.head(n) = c;
    if (!run(obj2, n)) {
        value = std::numeric_limits<double>::infinity();
        return true;
    }
    value = 0.0;
    for (int i = 0; i < m; ++i)
        if (basis[i] < n) value += c(basis[i]) * tab(i, n + m);
    return true;
}

}  // namespace detail

std::vector<RVector> optimal_vertices(const Polytope& p) {
    const int n = p.ambient;
    const int m = static_cast<int>(p.vertices.size());
    if (m <= 1) return p.vertices;

    // partial sums S_k for k = 1..n-1 (the k = n sum is fixed on the slice)
    auto partial_sums = [n](const RVector& v) {
        RVector s(n - 1);
        double acc = 0.0;
        for (int k = 0; k < n - 1; ++k) {
            acc += v(k);
            s(k) = acc;
        }
        return s;
    };
    std::vector<RVector> vsums(m);
    for (int j = 0; j < m; ++j) vsums[j] = partial_sums(p.vertices[j]);

    std::vector<RVector> kept;
    for (int v = 0; v < m; ++v) {
        // vars: weights w_1..w_m, slacks s_1..s_{n-1};
        // sum_j w_j S_k(v_j) - s_k = S_k(v), sum_j w_j = 1; maximize sum_k s_k
        const int nv = m + (n - 1);
        RMatrix a = RMatrix::Zero(n, nv);
        RVector b(n);
        for (int k = 0; k < n - 1; ++k) {
            for (int j = 0; j < m; ++j) a(k, j) = vsums[j](k);
            a(k, m + k) = -1.0;
            b(k) = vsums[v](k);
        }
        for (int j = 0; j < m; ++j) a(n - 1, j) = 1.0;
        b(n - 1) = 1.0;
        RVector c = RVector::Zero(nv);
        c.tail(n - 1).setOnes();

        double slack = 0.0;
        bool feasible = detail::lp_max(c, a, b, slack);
        if (!feasible || slack < 1e-9) kept.push_back(p.vertices[v]);
    }
    return kept;
}

}  // namespace cool
