#include "cool/reduced.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace cool {

namespace {
const Cx kI(0.0, 1.0);
}

void check_simplex(const RVector& lam, double tol) {
    if (lam.minCoeff() < -tol)
        throw std::invalid_argument("simplex point has negative entry");
    if (std::abs(lam.sum() - 1.0) > tol)
        throw std::invalid_argument("simplex point does not sum to one");
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

RMatrix j_matrix(const LindbladSystem& sys, const Matrix& u) {
    if (!is_unitary(u))
        throw std::invalid_argument("j_matrix: control matrix not unitary");
    const int n = sys.dim();
    RMatrix j = RMatrix::Zero(n, n);
    for (const Matrix& v : sys.terms) {
        Matrix w = u.adjoint() * v * u;
        j += w.cwiseAbs2();
    }
    return j;
}

RMatrix induced_generator(const RMatrix& j) {
    RMatrix g = j;
    g.diagonal() -= j.colwise().sum().transpose();
    return g;
}

RVector apply_generator(const RMatrix& g, const RVector& lam) {
    if (g.cols() != lam.size())
        throw std::invalid_argument("apply_generator: dimension mismatch");
    return g * lam;
}

Matrix haar_unitary(int n, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("haar_unitary: n must be >= 2");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = Cx(gauss(rng), gauss(rng));
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < n; ++i) {
        Cx d = r(i, i);
        q.col(i) *= d / std::abs(d);
    }
    // fix the global phase so that det = 1
    Cx det = q.determinant();
    q *= std::pow(det, -1.0 / n);
    return q;
}

std::vector<RVector> derv_sample(const LindbladSystem& sys, const RVector& lam,
                                 int count, std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("derv_sample: count must be >= 1");
    const int n = sys.dim();
    std::vector<RVector> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        Matrix u = haar_unitary(n, derive_seed(seed, i));
        out.push_back(induced_generator(j_matrix(sys, u)) * lam);
    }
    return out;
}

UnitarySchedule UnitarySchedule::constant(const Matrix& u, double t_end) {
    UnitarySchedule s;
    s.times = {0.0, t_end};
    s.unitaries = {u, u};
    return s;
}

const Matrix& UnitarySchedule::at(double t) const {
    if (times.empty()) throw std::invalid_argument("empty unitary schedule");
    auto it = std::upper_bound(times.begin(), times.end(), t);
    std::size_t idx = it == times.begin() ? 0 : (it - times.begin() - 1);
    if (idx >= unitaries.size()) idx = unitaries.size() - 1;
    return unitaries[idx];
}

void UnitarySchedule::validate() const {
    if (times.size() != unitaries.size())
        throw std::invalid_argument("unitary schedule: grid/sample size mismatch");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (times[i] <= times[i - 1])
            throw std::invalid_argument("unitary schedule: grid not increasing");
    for (const Matrix& u : unitaries) {
        if (!is_unitary(u))
            throw std::invalid_argument("unitary schedule: sample not unitary");
        if (std::abs(u.determinant() - Cx(1.0, 0.0)) > 1e-10)
            throw std::invalid_argument("unitary schedule: determinant != 1");
    }
}

std::vector<std::pair<double, RVector>> integrate_reduced(
    const LindbladSystem& sys, const RVector& lam0, const UnitarySchedule& ctrl,
    double t_end, double dt) {
    if (dt <= 0.0) throw std::invalid_argument("integrate_reduced: dt must be > 0");
    check_simplex(lam0);

    auto gen_at = [&](double t) {
        return induced_generator(j_matrix(sys, ctrl.at(t)));
    };

    std::vector<std::pair<double, RVector>> traj;
    const long nsteps = static_cast<long>(std::ceil(t_end / dt - 1e-12));
    traj.reserve(nsteps + 1);
    RVector lam = lam0;
    double t = 0.0;
    traj.emplace_back(t, lam);
    for (long s = 0; s < nsteps; ++s) {
        const double h = std::min(dt, t_end - t);
        RVector k1 = gen_at(t) * lam;
        RMatrix gmid = gen_at(t + 0.5 * h);
        RVector k2 = gmid * (lam + 0.5 * h * k1);
        RVector k3 = gmid * (lam + 0.5 * h * k2);
        RVector k4 = gen_at(t + h) * (lam + h * k3);
        lam += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        lam /= lam.sum();
        t += h;
        if (lam.minCoeff() < -kSimplexTol) {
            std::ostringstream msg;
            msg << "integrate_reduced: left the simplex at t=" << t
                << " (min entry " << lam.minCoeff() << ")";
            throw std::runtime_error(msg.str());
        }
        traj.emplace_back(t, lam);
    }
    return traj;
}

Matrix compensating_hamiltonian(const LindbladSystem& sys, const Matrix& rho) {
    const int n = sys.dim();
    Matrix drift = Matrix::Zero(n, n);
    for (const Matrix& v : sys.terms) drift += dissipator(v, rho);

    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(rho));
    const RVector p = es.eigenvalues();
    const Matrix& w = es.eigenvectors();
    Matrix d = w.adjoint() * drift * w;

    // solve -i [H_c, rho] = -P_tan(drift) entrywise in the eigenbasis;
    // directions inside the commutant (p_i == p_j) stay zero (pseudo-inverse)
    Matrix hc = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double gap = p(j) - p(i);
            if (std::abs(gap) > 1e-9) hc(i, j) = -kI * d(i, j) / gap;
        }
    return hermitize(w * hc * w.adjoint());
}

ControlSchedule lift_control(const LindbladSystem& sys,
                             const std::vector<std::pair<double, RVector>>& reduced,
                             const UnitarySchedule& ctrl) {
    const std::size_t m = reduced.size();
    if (m != ctrl.times.size())
        throw std::invalid_argument("lift_control: grid size mismatch");
    for (std::size_t i = 0; i < m; ++i)
        if (std::abs(reduced[i].first - ctrl.times[i]) > 1e-12)
            throw std::invalid_argument("lift_control: grids not aligned");
    if (m < 2) throw std::invalid_argument("lift_control: need at least two samples");

    ControlSchedule out;
    out.times.reserve(m);
    out.hams.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t lo = i == 0 ? 0 : i - 1;
        const std::size_t hi = i + 1 == m ? i : i + 1;
        Matrix dudt = (ctrl.unitaries[hi] - ctrl.unitaries[lo]) /
                      (ctrl.times[hi] - ctrl.times[lo]);
        Matrix h_direct = hermitize(kI * dudt * ctrl.unitaries[i].adjoint());

        Matrix rho = ctrl.unitaries[i] *
                     reduced[i].second.cast<Cx>().asDiagonal().toDenseMatrix() *
                     ctrl.unitaries[i].adjoint();
        out.times.push_back(ctrl.times[i]);
        out.hams.push_back(h_direct + compensating_hamiltonian(sys, rho) - sys.h0);
    }
    return out;
}

}  // namespace cool
