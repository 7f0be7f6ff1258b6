#include "cool/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cool {

namespace {
const Cx kI(0.0, 1.0);
}

Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Matrix pauli_y() {
    Matrix m(2, 2);
    m << 0, -kI, kI, 0;
    return m;
}

Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

Matrix sigma_minus() {
    // lowering operator |0><1| in the ordered basis (|0>, |1>)
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = 1.0;
    return m;
}

Matrix ketbra(int n, int i, int j) {
    Matrix m = Matrix::Zero(n, n);
    m(i, j) = 1.0;
    return m;
}

bool is_hermitian(const Matrix& a, double tol) {
    return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const Matrix& u, double tol) {
    Matrix d = u.adjoint() * u - Matrix::Identity(u.rows(), u.cols());
    return d.cwiseAbs().maxCoeff() <= tol;
}

void check_density(const Matrix& rho) {
    if (rho.rows() != rho.cols())
        throw std::invalid_argument("density matrix must be square");
    if (!rho.allFinite())
        throw std::invalid_argument("density matrix has non-finite entries");
    if (!is_hermitian(rho))
        throw std::invalid_argument("density matrix not Hermitian");
    if (std::abs(rho.trace().real() - 1.0) > kHermTol ||
        std::abs(rho.trace().imag()) > kHermTol)
        throw std::invalid_argument("density matrix trace != 1");
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(rho));
    if (es.eigenvalues().minCoeff() < -kEigClipTol)
        throw std::invalid_argument("density matrix not positive semi-definite");
}

void LindbladSystem::validate() const {
    const int n = dim();
    if (n < 2) throw std::invalid_argument("system dimension must be >= 2");
    if (h0.cols() != n) throw std::invalid_argument("h0 must be square");
    if (!is_hermitian(h0)) throw std::invalid_argument("h0 not Hermitian");
    if (terms.empty()) throw std::invalid_argument("need at least one Lindblad term");
    for (const Matrix& v : terms)
        if (v.rows() != n || v.cols() != n)
            throw std::invalid_argument("Lindblad term dimension mismatch");
}

ControlSchedule ControlSchedule::zero(int n) {
    ControlSchedule c;
    c.callback = [n](double) { return Matrix::Zero(n, n); };
    return c;
}

Matrix ControlSchedule::at(double t) const {
    if (callback) return callback(t);
    if (times.empty() || hams.empty())
        throw std::invalid_argument("empty control schedule");
    // last interval extends to +infinity
    auto it = std::upper_bound(times.begin(), times.end(), t);
    std::size_t idx = it == times.begin() ? 0 : (it - times.begin() - 1);
    if (idx >= hams.size()) idx = hams.size() - 1;
    return hams[idx];
}

Matrix dissipator(const Matrix& v, const Matrix& rho) {
    if (v.rows() != rho.rows() || v.cols() != rho.cols())
        throw std::invalid_argument("dissipator: dimension mismatch");
    Matrix vv = v.adjoint() * v;
    return v * rho * v.adjoint() - 0.5 * (vv * rho + rho * vv);
}

Matrix lindblad_rhs(const LindbladSystem& sys, const Matrix& rho,
                    const Matrix& h_extra) {
    const int n = sys.dim();
    if (rho.rows() != n || h_extra.rows() != n)
        throw std::invalid_argument("lindblad_rhs: dimension mismatch");
    Matrix h = sys.h0 + h_extra;
    Matrix out = -kI * (h * rho - rho * h);
    for (const Matrix& v : sys.terms) out += dissipator(v, rho);
    return out;
}

std::vector<TrajectoryPoint> integrate_full(const LindbladSystem& sys,
                                            const Matrix& rho0,
                                            const ControlSchedule& ctrl,
                                            double t_end, double dt) {
    if (dt <= 0.0) throw std::invalid_argument("integrate_full: dt must be > 0");
    if (t_end < 0.0) throw std::invalid_argument("integrate_full: t_end must be >= 0");
    check_density(rho0);

    auto rhs = [&](double t, const Matrix& rho) {
        return lindblad_rhs(sys, rho, ctrl.at(t));
    };

    std::vector<TrajectoryPoint> traj;
    const long nsteps = static_cast<long>(std::ceil(t_end / dt - 1e-12));
    traj.reserve(nsteps + 1);
    Matrix rho = rho0;
    double t = 0.0;
    traj.push_back({t, rho});
    for (long s = 0; s < nsteps; ++s) {
        const double h = std::min(dt, t_end - t);
        Matrix k1 = rhs(t, rho);
        Matrix k2 = rhs(t + 0.5 * h, rho + 0.5 * h * k1);
        Matrix k3 = rhs(t + 0.5 * h, rho + 0.5 * h * k2);
        Matrix k4 = rhs(t + h, rho + h * k3);
        rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        rho = hermitize(rho);
        rho /= rho.trace().real();
        t += h;

        Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
        const double lmin = es.eigenvalues().minCoeff();
        if (lmin < -kPositivityTol) {
            std::ostringstream msg;
            msg << "integrate_full: positivity violated at t=" << t
                << " (min eigenvalue " << lmin << "); reduce dt";
            throw std::runtime_error(msg.str());
        }
        traj.push_back({t, rho});
    }
    return traj;
}

RVector spectrum_desc(const Matrix& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(rho), Eigen::EigenvaluesOnly);
    RVector ev = es.eigenvalues();
    if (ev.minCoeff() < -kEigClipTol)
        throw std::invalid_argument("spectrum_desc: eigenvalue below -1e-10");
    RVector lam(ev.size());
    // ascending from Eigen; reverse to non-increasing (index-stable for ties)
    for (int i = 0; i < ev.size(); ++i)
        lam(i) = std::clamp(ev(ev.size() - 1 - i), 0.0, 1.0);
    lam /= lam.sum();
    return lam;
}

}  // namespace cool
