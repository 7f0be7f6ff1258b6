// models.hpp — the Lambda-, V- and spin-spin systems: permutation polytopes,
// optimal derivatives, closed-form cooling schedules, J(U) polytope bounds,
// and the conjecture-falsification harness.

#pragma once

#include "cool/majorization.hpp"
#include "cool/quantum.hpp"

#include <cstdint>
#include <utility>

namespace cool {

LindbladSystem make_lambda_system(double g1, double g2);
LindbladSystem make_v_system(double g1, double g2);
LindbladSystem make_spin_spin();

// {-L_P lam : P in S_n}, duplicates merged
std::vector<RVector> permutation_vertices(const LindbladSystem& sys,
                                          const RVector& lam);

// Piecewise-constant bang-bang schedule: follow -L_P for each segment.
struct CoolingSchedule {
    struct Segment {
        RMatrix perm;
        double duration = 0.0;
    };
    std::vector<Segment> segments;

    double total_time() const;
};

// Time-optimal V-system schedule reaching second+third eigenvalue sum eps.
// Requires 0 < eps < b0 + c0 and g1 < g2; the clamped regime (t2 = 0)
// activates when eps exceeds 2 b0 (c0/b0)^{g2/(g2-g1)}.
CoolingSchedule v_schedule(double g1, double g2, const RVector& lam0, double eps);

// closed-form final state after following the two optimal V-system
// generators for times t1 and t2 (order irrelevant, they commute)
RVector v_final_state(double g1, double g2, const RVector& lam0, double t1,
                      double t2);

// rate matrices acting as (a,b,c,d) -> (b,-b,d,-d) and (c,d,-c,-d)
std::pair<RMatrix, RMatrix> spin_spin_optimal_generators();

// closed-form propagation under generator 1 for t1, then generator 2 for t2
RVector spin_spin_propagate(const RVector& lam0, double t1, double t2);

// Best split t1 + t2 = T of the commuting spin-spin generators for the
// given Schur cost (entropy minimized, purity/max eigenvalue maximized),
// found by golden-section search on t1.
CoolingSchedule spin_spin_schedule(const RVector& lam0, CostKind cost, double T);

// Majorization polytope bound on the set of all J(U): row sums, column sums
// and (anti)symmetrized sums majorized by fixed spectra, plus J_ij >= 0.
struct JPolytopeBound {
    int n = 0;
    RVector spec_vv;     // spec(sum V_k V_k*), sorted descending
    RVector spec_vdagv;  // spec(sum V_k* V_k)
    RVector spec_anti;   // spec(sum {V_k, V_k*})
    RVector spec_comm;   // spec(sum [V_k, V_k*])

    // largest signed violation over all expanded partial-sum halfspaces,
    // the trace equalities and entrywise nonnegativity
    double max_violation(const RMatrix& j) const;
    bool contains(const RMatrix& j, double tol = 1e-9) const;
};

JPolytopeBound j_polytope_bound(const LindbladSystem& sys);

// spin-spin specific: J_ij >= 0, (J + J^T) 1 = 1, J_ii <= 1/4
bool spin_spin_j_check(const RMatrix& j, double tol = 1e-9);

// The 8 facet halfspaces (4 hexagonal, 4 triangular) of the spin-spin
// permutation polytope at sorted regular lam.
std::vector<Halfspace> spin_spin_facets(const RVector& lam);

struct ConjectureReport {
    long lam_count = 0;
    long sample_count = 0;
    double tolerance = 1e-9;
    double max_violation = 0.0;
    RVector worst_lam;
    Matrix worst_unitary;
    RVector worst_derivative;
};

// Monte-Carlo test of the spin-spin polytope conjecture: max signed facet
// violation over random regular simplex points and Haar unitaries.
ConjectureReport verify_conjecture(int lam_count, int sample_count,
                                   std::uint64_t seed);

// Derivative of the Lambda-system (g1 = g2 = 1) at e1 produced by the
// two-parameter rotation family, plus its distance to the permutation
// segment conv{0, (-2,1,1)}; positive for x in (0,1).
std::pair<RVector, double> lambda_counterexample(double x);

// Sampled estimate of f* with derv(e_i) = f* conv({0, e_j - e_i}); requires
// a single Lindblad term. i is a zero-based vertex index.
double derv_vertex_fstar(const LindbladSystem& sys, int i, int sample_count,
                         std::uint64_t seed);

}  // namespace cool
