#include "cool/models.hpp"

#include "cool/reduced.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace cool {

namespace {

RMatrix permutation_matrix(const std::vector<int>& p) {
    const int n = static_cast<int>(p.size());
    RMatrix m = RMatrix::Zero(n, n);
    for (int j = 0; j < n; ++j) m(p[j], j) = 1.0;  // maps e_j -> e_{p(j)}
    return m;
}

RVector sorted_spectrum_desc(const Matrix& h) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(h), Eigen::EigenvaluesOnly);
    RVector ev = es.eigenvalues();
    RVector out(ev.size());
    for (int i = 0; i < ev.size(); ++i) out(i) = ev(ev.size() - 1 - i);
    return out;
}

// largest violation of x ~majorized-by~ y (sum equality + subset sums)
double majorization_violation(const RVector& x, const RVector& y) {
    const int n = static_cast<int>(x.size());
    RVector ys = y;
    std::sort(ys.data(), ys.data() + n, std::greater<double>());
    double worst = std::abs(x.sum() - y.sum());
    // all coordinate orderings of x: subset sums against top-k of y
    for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
        double sx = 0.0;
        int k = 0;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) {
                sx += x(i);
                ++k;
            }
        double sy = 0.0;
        for (int i = 0; i < k; ++i) sy += ys(i);
        worst = std::max(worst, sx - sy);
    }
    return worst;
}

}  // namespace

LindbladSystem make_lambda_system(double g1, double g2) {
    if (g1 <= 0.0 || g2 <= 0.0)
        throw std::invalid_argument("make_lambda_system: rates must be positive");
    LindbladSystem sys;
    sys.h0 = Matrix::Zero(3, 3);
    sys.terms = {std::sqrt(g1) * ketbra(3, 1, 0), std::sqrt(g2) * ketbra(3, 2, 0)};
    return sys;
}

LindbladSystem make_v_system(double g1, double g2) {
    if (g1 <= 0.0 || g2 <= 0.0)
        throw std::invalid_argument("make_v_system: rates must be positive");
    LindbladSystem sys;
    sys.h0 = Matrix::Zero(3, 3);
    sys.terms = {std::sqrt(g1) * ketbra(3, 0, 1), std::sqrt(g2) * ketbra(3, 0, 2)};
    return sys;
}

LindbladSystem make_spin_spin() {
    LindbladSystem sys;
    sys.h0 = Matrix::Zero(4, 4);
    // sigma_- on the first qubit, basis |00>,|01>,|10>,|11>
    Matrix v = Matrix::Zero(4, 4);
    v(0, 2) = 1.0;
    v(1, 3) = 1.0;
    sys.terms = {v};
    return sys;
}

std::vector<RVector> permutation_vertices(const LindbladSystem& sys,
                                          const RVector& lam) {
    check_simplex(lam);
    const int n = sys.dim();
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<RVector> out;
    do {
        Matrix u = permutation_matrix(p).cast<Cx>();
        RVector d = induced_generator(j_matrix(sys, u)) * lam;
        bool dup = false;
        for (const RVector& q : out)
            if ((q - d).norm() <= 1e-10) {
                dup = true;
                break;
            }
        if (!dup) out.push_back(d);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

double CoolingSchedule::total_time() const {
    double t = 0.0;
    for (const Segment& s : segments) t += s.duration;
    return t;
}

CoolingSchedule v_schedule(double g1, double g2, const RVector& lam0,
                           double eps) {
    if (lam0.size() != 3) throw std::invalid_argument("v_schedule: need n = 3");
    check_simplex(lam0);
    if (g1 >= g2)
        throw std::invalid_argument("v_schedule: requires g1 < g2");
    const double b0 = lam0(1), c0 = lam0(2);
    if (eps <= 0.0 || eps >= b0 + c0)
        throw std::invalid_argument("v_schedule: eps out of (0, b0 + c0)");

    double t1, t2;
    const double clamp_threshold = 2.0 * b0 * std::pow(c0 / b0, g2 / (g2 - g1));
    if (eps > clamp_threshold) {
        // t2 = 0; solve e^{-g2 t1} b0 + e^{-g1 t1} c0 = eps by bisection
        t2 = 0.0;
        double lo = 0.0, hi = 50.0 / g1;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double val =
                std::exp(-g2 * mid) * b0 + std::exp(-g1 * mid) * c0;
            (val > eps ? lo : hi) = mid;
            if (hi - lo < 1e-12) break;
        }
        t1 = 0.5 * (lo + hi);
    } else {
        const double lb = std::log(2.0 * b0 / eps);
        const double lc = std::log(2.0 * c0 / eps);
        t1 = (g2 * lb - g1 * lc) / (g2 * g2 - g1 * g1);
        t2 = (g1 * lb - g2 * lc) / (g1 * g1 - g2 * g2);
    }

    // first generator (g2 acting on b) is -L_P for the (23) swap,
    // second is -L at the identity
    CoolingSchedule sched;
    sched.segments.push_back({permutation_matrix({0, 2, 1}), t1});
    sched.segments.push_back({permutation_matrix({0, 1, 2}), t2});

    const RVector fin = v_final_state(g1, g2, lam0, t1, t2);
    if (std::abs(fin(1) + fin(2) - eps) > 1e-9)
        throw std::runtime_error("v_schedule: constraint residual too large");
    return sched;
}

RVector v_final_state(double g1, double g2, const RVector& lam0, double t1,
                      double t2) {
    if (t1 < 0.0 || t2 < 0.0)
        throw std::invalid_argument("v_final_state: negative duration");
    const double eb = std::exp(-(g2 * t1 + g1 * t2));
    const double ec = std::exp(-(g1 * t1 + g2 * t2));
    RVector out(3);
    out(0) = lam0(0) + (1.0 - eb) * lam0(1) + (1.0 - ec) * lam0(2);
    out(1) = eb * lam0(1);
    out(2) = ec * lam0(2);
    return out;
}

std::pair<RMatrix, RMatrix> spin_spin_optimal_generators() {
    RMatrix g1 = RMatrix::Zero(4, 4), g2 = RMatrix::Zero(4, 4);
    // (a,b,c,d) -> (b,-b,d,-d)
    g1(0, 1) = 1.0;
    g1(1, 1) = -1.0;
    g1(2, 3) = 1.0;
    g1(3, 3) = -1.0;
    // (a,b,c,d) -> (c,d,-c,-d)
    g2(0, 2) = 1.0;
    g2(1, 3) = 1.0;
    g2(2, 2) = -1.0;
    g2(3, 3) = -1.0;
    return {g1, g2};
}

RVector spin_spin_propagate(const RVector& lam0, double t1, double t2) {
    const double e1 = std::exp(-t1), e2 = std::exp(-t2);
    RVector m(4);
    // generator 1: b decays into a, d decays into c
    m(0) = lam0(0) + lam0(1) * (1.0 - e1);
    m(1) = lam0(1) * e1;
    m(2) = lam0(2) + lam0(3) * (1.0 - e1);
    m(3) = lam0(3) * e1;
    // generator 2: c decays into a, d decays into b
    RVector out(4);
    out(0) = m(0) + m(2) * (1.0 - e2);
    out(1) = m(1) + m(3) * (1.0 - e2);
    out(2) = m(2) * e2;
    out(3) = m(3) * e2;
    return out;
}

CoolingSchedule spin_spin_schedule(const RVector& lam0, CostKind cost,
                                   double T) {
    if (lam0.size() != 4)
        throw std::invalid_argument("spin_spin_schedule: need n = 4");
    check_simplex(lam0);
    if (T <= 0.0) throw std::invalid_argument("spin_spin_schedule: T must be > 0");

    const double sign = cost == CostKind::entropy ? 1.0 : -1.0;
    auto objective = [&](double t1) {
        return sign * schur_cost(cost, spin_spin_propagate(lam0, t1, T - t1));
    };

    // golden-section search on [0, T]
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double lo = 0.0, hi = T;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = objective(x1), f2 = objective(x2);
    while (hi - lo > 1e-10) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = objective(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = objective(x2);
        }
    }
    double t1 = 0.5 * (lo + hi);
    // endpoints can win when the optimum is on the boundary
    if (objective(0.0) < objective(t1)) t1 = 0.0;
    if (objective(T) < objective(t1)) t1 = T;

    CoolingSchedule sched;
    sched.segments.push_back({permutation_matrix({0, 2, 1, 3}), t1});
    sched.segments.push_back({permutation_matrix({0, 1, 2, 3}), T - t1});
    return sched;
}

double JPolytopeBound::max_violation(const RMatrix& j) const {
    double worst = -j.minCoeff();  // J_ij >= 0
    const RVector ones = RVector::Ones(n);
    worst = std::max(worst, majorization_violation(j * ones, spec_vv));
    worst = std::max(worst, majorization_violation(j.transpose() * ones, spec_vdagv));
    worst = std::max(worst,
                     majorization_violation((j + j.transpose()) * ones, spec_anti));
    worst = std::max(worst,
                     majorization_violation((j - j.transpose()) * ones, spec_comm));
    return worst;
}

bool JPolytopeBound::contains(const RMatrix& j, double tol) const {
    return max_violation(j) <= tol;
}

JPolytopeBound j_polytope_bound(const LindbladSystem& sys) {
    sys.validate();
    const int n = sys.dim();
    Matrix vv = Matrix::Zero(n, n), vdagv = Matrix::Zero(n, n);
    for (const Matrix& v : sys.terms) {
        vv += v * v.adjoint();
        vdagv += v.adjoint() * v;
    }
    JPolytopeBound bound;
    bound.n = n;
    bound.spec_vv = sorted_spectrum_desc(vv);
    bound.spec_vdagv = sorted_spectrum_desc(vdagv);
    bound.spec_anti = sorted_spectrum_desc(vv + vdagv);
    bound.spec_comm = sorted_spectrum_desc(vv - vdagv);
    return bound;
}

bool spin_spin_j_check(const RMatrix& j, double tol) {
    if (j.rows() != 4 || j.cols() != 4)
        throw std::invalid_argument("spin_spin_j_check: need a 4x4 matrix");
    if (j.minCoeff() < -tol) return false;
    RVector s = (j + j.transpose()) * RVector::Ones(4);
    if ((s - RVector::Ones(4)).cwiseAbs().maxCoeff() > tol) return false;
    return j.diagonal().maxCoeff() <= 0.25 + tol;
}

std::vector<Halfspace> spin_spin_facets(const RVector& lam) {
    if (lam.size() != 4)
        throw std::invalid_argument("spin_spin_facets: need n = 4");
    for (int i = 0; i + 1 < 4; ++i)
        if (lam(i) < lam(i + 1))
            throw std::invalid_argument("spin_spin_facets: lam must be sorted");
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (std::abs(lam(i) - lam(j)) < 1e-12)
                throw std::invalid_argument("spin_spin_facets: lam degenerate");

    std::vector<Halfspace> facets;
    // hexagonal: lamdot_i >= -lam_i
    for (int i = 0; i < 4; ++i) {
        Halfspace h;
        h.normal = RVector::Zero(4);
        h.normal(i) = -1.0;
        h.offset = lam(i);
        facets.push_back(std::move(h));
    }
    // triangular: one per choice of the distinguished eigenvalue a
    for (int i = 0; i < 4; ++i) {
        std::vector<int> rest;
        for (int j = 0; j < 4; ++j)
            if (j != i) rest.push_back(j);  // values descending since lam sorted
        const double b = lam(rest[0]), c = lam(rest[1]), d = lam(rest[2]);
        Halfspace h;
        h.normal = RVector::Zero(4);
        h.normal(i) = b + d;
        h.normal(rest[0]) = b - c;
        h.offset = b * (c + d);
        facets.push_back(std::move(h));
    }
    return facets;
}

ConjectureReport verify_conjecture(int lam_count, int sample_count,
                                   std::uint64_t seed) {
    if (lam_count < 1)
        throw std::invalid_argument("verify_conjecture: lam_count must be >= 1");
    const LindbladSystem sys = make_spin_spin();

    ConjectureReport report;
    report.lam_count = lam_count;
    report.sample_count = sample_count;
    report.max_violation = -std::numeric_limits<double>::infinity();
    if (sample_count == 0) return report;

    for (int li = 0; li < lam_count; ++li) {
        // flat Dirichlet sample, rejecting near-degenerate points
        std::mt19937_64 rng(derive_seed(seed, li));
        std::exponential_distribution<double> expo(1.0);
        RVector lam(4);
        while (true) {
            for (int i = 0; i < 4; ++i) lam(i) = expo(rng);
            lam /= lam.sum();
            std::sort(lam.data(), lam.data() + 4, std::greater<double>());
            double gap = std::numeric_limits<double>::infinity();
            for (int i = 0; i + 1 < 4; ++i) gap = std::min(gap, lam(i) - lam(i + 1));
            if (gap > 1e-3) break;
        }
        const auto facets = spin_spin_facets(lam);
        const std::uint64_t stream = derive_seed(seed, 0x5350494eULL + li);
        for (int si = 0; si < sample_count; ++si) {
            Matrix u = haar_unitary(4, derive_seed(stream, si));
            RVector d = induced_generator(j_matrix(sys, u)) * lam;
            for (const Halfspace& h : facets) {
                const double viol = h.normal.dot(d) - h.offset;
                if (viol > report.max_violation) {
                    report.max_violation = viol;
                    report.worst_lam = lam;
                    report.worst_unitary = u;
                    report.worst_derivative = d;
                }
            }
        }
    }
    return report;
}

std::pair<RVector, double> lambda_counterexample(double x) {
    if (x < 0.0 || x > 1.0)
        throw std::invalid_argument("lambda_counterexample: x must be in [0,1]");
    const double y = 1.0 - x;
    RVector v(3);
    v << -(x * y + x), x * y, x;
    RVector seg(3);
    seg << -2.0, 1.0, 1.0;
    const double t = std::clamp(v.dot(seg) / seg.squaredNorm(), 0.0, 1.0);
    return {v, (v - t * seg).norm()};
}

double derv_vertex_fstar(const LindbladSystem& sys, int i, int sample_count,
                         std::uint64_t seed) {
    if (sys.terms.size() != 1)
        throw std::invalid_argument("derv_vertex_fstar: requires a single term");
    const int n = sys.dim();
    if (i < 0 || i >= n)
        throw std::invalid_argument("derv_vertex_fstar: vertex index out of range");

    auto outflow = [&](const Matrix& u) {
        RMatrix j = j_matrix(sys, u);
        return j.col(i).sum() - j(i, i);
    };

    Matrix best = Matrix::Identity(n, n);
    double fbest = outflow(best);
    for (int s = 0; s < sample_count; ++s) {
        Matrix u = haar_unitary(n, derive_seed(seed, s));
        const double f = outflow(u);
        if (f > fbest) {
            fbest = f;
            best = u;
        }
    }

    // local refinement: random small rotations with a shrinking step
    std::mt19937_64 rng(derive_seed(seed, 0xf5f5f5ULL));
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (double step = 0.3; step > 1e-5; step *= 0.5) {
        for (int it = 0; it < 200; ++it) {
            Matrix g(n, n);
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c) g(r, c) = Cx(gauss(rng), gauss(rng));
            Matrix h = hermitize(g);
            Matrix u = best * (Cx(0, 1) * step * h).exp();
            const double f = outflow(u);
            if (f > fbest) {
                fbest = f;
                best = u;
            }
        }
    }
    return fbest;
}

}  // namespace cool
