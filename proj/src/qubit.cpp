#include "cool/qubit.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace cool {

namespace {
const Cx kI(0.0, 1.0);
constexpr double kPi = std::numbers::pi;
}

QubitNormalForm normal_form(const Matrix& v) {
    if (v.rows() != 2 || v.cols() != 2)
        throw std::invalid_argument("normal_form: expected a 2x2 matrix");
    Matrix comm = v * v.adjoint() - v.adjoint() * v;
    if (comm.cwiseAbs().maxCoeff() <= 1e-10)
        throw std::invalid_argument("normal_form: V is normal (not coolable)");

    // U~ diagonalizes [V, V*] with the positive eigenvalue first
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(comm));
    Matrix w = es.eigenvectors();  // eigenvalues ascending
    w.col(0).swap(w.col(1));
    Matrix u = w.adjoint();

    // traceless part is purely off-diagonal in this basis
    Matrix v0 = v - 0.5 * v.trace() * Matrix::Identity(2, 2);
    Matrix off = u * v0 * u.adjoint();

    // align the arguments of the two off-diagonal entries
    const double alpha = 0.5 * (std::arg(off(1, 0)) - std::arg(off(0, 1)));
    Matrix phase = Matrix::Zero(2, 2);
    phase(0, 0) = std::exp(kI * (0.5 * alpha));
    phase(1, 1) = std::exp(-kI * (0.5 * alpha));
    u = phase * u;
    off = u * v0 * u.adjoint();

    QubitNormalForm nf;
    nf.gamma = std::norm(off(0, 1));
    nf.nu = std::abs(off(1, 0)) / std::abs(off(0, 1));
    // fix det(U~) = 1
    Cx det = u.determinant();
    u *= std::pow(det, -0.5);
    nf.u_tilde = u;
    nf.h_tilde = hermitize((kI / 4.0) *
                           (std::conj(v.trace()) * v - v.trace() * v.adjoint()));
    return nf;
}

GeneratorPoint q_point(double nu, double x, double z) {
    if (nu < 0.0 || nu >= 1.0)
        throw std::invalid_argument("q_point: nu must be in [0,1)");
    const double s = std::sin(kPi * x);
    GeneratorPoint p;
    p.a = (1.0 - 2.0 * s * s) * (1.0 - nu * nu);
    const double ratio = p.a / (1.0 - nu * nu);
    p.b = 1.0 + nu * nu -
          0.5 * (1.0 + nu * nu - 2.0 * std::cos(4.0 * kPi * z) * nu) *
              (1.0 - ratio * ratio);
    return p;
}

double q_boundary(double nu, double a, QBranch branch) {
    const double amax = 1.0 - nu * nu;
    if (std::abs(a) > amax + 1e-12)
        throw std::invalid_argument("q_boundary: |a| exceeds 1 - nu^2");
    const double edge = branch == QBranch::plus ? (1.0 - nu) : (1.0 + nu);
    const double ratio = std::min(1.0, std::abs(a) / amax);
    return 1.0 + nu * nu - 0.5 * edge * edge * (1.0 - ratio * ratio);
}

double lambda_switch(double nu) {
    return 0.5 * (1.0 + (1.0 - nu) / (1.0 + nu));
}

double mu_max_derivative(double nu, double lam) {
    if (lam < 0.0 || lam > 1.0)
        throw std::invalid_argument("mu: lambda must be in [0,1]");
    const double l0 = lambda_switch(nu);
    if (lam <= l0)
        return 0.5 * (1.0 - nu * nu - (1.0 + nu * nu) * (2.0 * lam - 1.0));
    const double w = 2.0 * lam - 1.0;
    const double q = 0.25 * (1.0 - nu) * (1.0 - nu);
    return q * (1.0 / w - w);
}

double t_switch(double nu) {
    if (nu == 0.0) return std::numeric_limits<double>::infinity();
    const double onu = 1.0 + nu * nu;
    return -std::log(1.0 - onu / (1.0 + nu)) / onu;
}

double c_const(double nu) {
    const double t0 = t_switch(nu);
    return (4.0 * nu / ((1.0 + nu) * (1.0 + nu))) *
           std::exp((1.0 - nu) * (1.0 - nu) * t0);
}

OptPathPoint opt_path(double nu, double t) {
    if (t < 0.0) throw std::invalid_argument("opt_path: t must be >= 0");
    const double t0 = t_switch(nu);
    OptPathPoint p;
    if (t <= t0) {
        const double onu = 1.0 + nu * nu;
        p.lam = (1.0 - std::exp(-onu * t)) / onu;
        p.y = 0.0;
        return p;
    }
    const double decay = 1.0 - nu;
    p.lam = 0.5 * (1.0 + std::sqrt(std::max(
                             0.0, 1.0 - c_const(nu) *
                                            std::exp(-decay * decay * t))));
    const double k = (1.0 - nu) / (1.0 + nu);
    const double arg = 0.5 * (1.0 + k / (1.0 - 2.0 * p.lam));
    p.y = std::asin(std::sqrt(std::clamp(arg, 0.0, 1.0))) / kPi;
    return p;
}

double u_y_control(double nu, double t) {
    if (t < 0.0) throw std::invalid_argument("u_y_control: t must be >= 0");
    const double t0 = t_switch(nu);
    if (t < t0) return 0.0;
    if (t == t0) return std::numeric_limits<double>::infinity();

    const OptPathPoint p = opt_path(nu, t);
    const double w = 2.0 * p.lam - 1.0;
    const double k = (1.0 - nu) / (1.0 + nu);
    const double disc = w * w - k * k;
    if (disc <= 0.0) return std::numeric_limits<double>::infinity();

    const double q = 0.25 * (1.0 - nu) * (1.0 - nu);
    const double direct = (k / (w * std::sqrt(disc))) * q * (1.0 / w - w);
    const double sy = std::sin(2.0 * kPi * p.y);
    const double cy = std::cos(2.0 * kPi * p.y);
    const double compensation =
        0.25 * (1.0 + nu) * sy * (2.0 * (1.0 - nu) / w - (1.0 + nu) * cy);
    return direct + compensation;
}

ControlSchedule general_schedule(const Matrix& v, double t_end, double dt) {
    if (dt <= 0.0 || t_end <= 0.0)
        throw std::invalid_argument("general_schedule: need t_end, dt > 0");
    const QubitNormalForm nf = normal_form(v);
    const Matrix sy_frame = nf.u_tilde.adjoint() * pauli_y() * nf.u_tilde;
    const double t0 = t_switch(nf.nu) / nf.gamma;

    ControlSchedule out;
    const long nsteps = static_cast<long>(std::ceil(t_end / dt - 1e-12));
    out.times.reserve(nsteps);
    out.hams.reserve(nsteps);
    for (long s = 0; s < nsteps; ++s) {
        double mid = (s + 0.5) * dt;
        if (std::abs(mid - t0) < 1e-12) mid += 0.25 * dt;
        const double uy = u_y_control(nf.nu, nf.gamma * mid);
        out.times.push_back(s * dt);
        out.hams.push_back(-nf.h_tilde + nf.gamma * uy * sy_frame);
    }
    return out;
}

Matrix general_initial_state(const QubitNormalForm& nf) {
    Matrix rho = Matrix::Zero(2, 2);
    rho(1, 1) = 1.0;
    return nf.u_tilde.adjoint() * rho * nf.u_tilde;
}

}  // namespace cool
