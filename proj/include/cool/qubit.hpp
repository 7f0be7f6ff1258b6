// qubit.hpp — closed-form optimal cooling of rank-one qubit systems:
// normal form, space of generators, maximal derivative, optimal path and
// optimal controls.

#pragma once

#include "cool/quantum.hpp"

namespace cool {

// (nu, gamma, U~, H~) with Gamma_V = i ad_{H~} + gamma Gamma_{U~* V~ U~}
// where V~ = [[0,1],[nu,0]].
struct QubitNormalForm {
    double nu = 0.0;
    double gamma = 1.0;
    Matrix u_tilde;
    Matrix h_tilde;
};

// Throws std::invalid_argument for normal input (system not coolable).
QubitNormalForm normal_form(const Matrix& v);

// point (a, b) = (J12 - J21, J12 + J21) of the space of generators
struct GeneratorPoint {
    double a = 0.0;
    double b = 0.0;
};

// Space-of-generators point for the control U = e^{i pi z sz} e^{i pi x sx}.
GeneratorPoint q_point(double nu, double x, double z);

enum class QBranch { plus, minus };  // plus: upper parabola, minus: lower

// Boundary parabolas of the space of generators, |a| <= 1 - nu^2.
double q_boundary(double nu, double a, QBranch branch);

// switching point between the two branches of the maximal derivative
double lambda_switch(double nu);

// maximal achievable derivative of the first eigenvalue
double mu_max_derivative(double nu, double lam);

// time at which the optimal path crosses lambda_switch (infinite for nu = 0)
double t_switch(double nu);

// constant of the second branch of the optimal path, fixed by continuity
double c_const(double nu);

struct OptPathPoint {
    double lam = 0.0;  // first eigenvalue along the optimal path
    double y = 0.0;    // rotation parameter of U*(t) = e^{i pi y sigma_y}
};

OptPathPoint opt_path(double nu, double t);

// Optimal control coefficient of sigma_y; zero on [0, t_switch), infinite
// flag value exactly at the (integrable) singularity.
double u_y_control(double nu, double t);

// Schedule implementing the optimal cooling of an arbitrary non-normal V:
// H(t) = -H~ + gamma u_y(gamma t) U~* sigma_y U~, sampled at step midpoints
// so the singularity is excluded by half a step. Start integration from
// general_initial_state.
ControlSchedule general_schedule(const Matrix& v, double t_end, double dt);

// lab-frame state corresponding to lambda = 0 (the coldest-start state)
Matrix general_initial_state(const QubitNormalForm& nf);

}  // namespace cool
