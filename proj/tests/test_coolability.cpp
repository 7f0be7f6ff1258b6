#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cool/coolability.hpp"
#include "cool/models.hpp"

#include <cmath>
#include <random>

using namespace cool;

TEST_CASE("common_eigenvectors closed forms") {
    // single nilpotent term: one ray spanned by e1, eigenvalue 0
    auto res = common_eigenvectors({ketbra(2, 0, 1)});
    REQUIRE(res.rays.size() == 1);
    CHECK(std::abs(std::abs(res.rays[0].vec(0)) - 1.0) < 1e-9);
    CHECK(std::abs(res.rays[0].eigenvalues(0)) < 1e-9);

    // [[0,1],[nu,0]]: two rays (1, +-sqrt(nu)), eigenvalues +-sqrt(nu)
    double nu = 0.49;
    Matrix v(2, 2);
    v << 0, 1, nu, 0;
    auto res2 = common_eigenvectors({v});
    REQUIRE(res2.rays.size() == 2);
    double r = std::sqrt(nu);
    for (const auto& ray : res2.rays) {
        double mu = ray.eigenvalues(0).real();
        CHECK(std::abs(std::abs(mu) - r) < 1e-9);
        CVector expect(2);
        expect << 1.0, mu;
        expect.normalize();
        Cx phase = expect.dot(ray.vec);
        CHECK((ray.vec - phase * expect).cwiseAbs().maxCoeff() < 1e-9);
    }

    // V-system terms annihilate e1
    auto vsys = make_v_system(1.0, 2.0);
    auto res3 = common_eigenvectors(vsys.terms);
    REQUIRE(res3.rays.size() >= 1);
    bool found = false;
    for (const auto& ray : res3.rays)
        if (std::abs(std::abs(ray.vec(0)) - 1.0) < 1e-9 &&
            ray.eigenvalues.cwiseAbs().maxCoeff() < 1e-9)
            found = true;
    CHECK(found);

    // sigma_z: two rays, no continuum
    auto res4 = common_eigenvectors({pauli_z()});
    CHECK(res4.rays.size() == 2);
    CHECK_FALSE(res4.continuum);
}

TEST_CASE("ray residuals") {
    auto vsys = make_v_system(1.0, 2.0);
    auto res = common_eigenvectors(vsys.terms);
    for (const auto& ray : res.rays)
        for (size_t k = 0; k < vsys.terms.size(); ++k)
            CHECK((vsys.terms[k] * ray.vec - ray.eigenvalues(k) * ray.vec)
                      .norm() <= 1e-9);
}

TEST_CASE("is_common_left_eigenvector") {
    CVector e1 = CVector::Zero(2);
    e1(0) = 1.0;
    CHECK_FALSE(is_common_left_eigenvector(e1, {ketbra(2, 0, 1)}));
    CHECK(is_common_left_eigenvector(e1, {pauli_z()}));

    CVector e1four = CVector::Zero(4);
    e1four(0) = 1.0;
    CHECK_FALSE(is_common_left_eigenvector(e1four, make_spin_spin().terms));
}

TEST_CASE("is_coolable on the model systems") {
    Matrix v(2, 2);
    v << 0, 1, 0.5, 0;
    LindbladSystem q;
    q.h0 = Matrix::Zero(2, 2);
    q.terms = {v};
    auto verdict = is_coolable(q);
    CHECK(verdict.coolable);
    REQUIRE(verdict.witness.has_value());

    LindbladSystem sx;
    sx.h0 = Matrix::Zero(2, 2);
    sx.terms = {pauli_x()};
    CHECK_FALSE(is_coolable(sx).coolable);

    LindbladSystem sz;
    sz.h0 = Matrix::Zero(2, 2);
    sz.terms = {pauli_z()};
    CHECK_FALSE(is_coolable(sz).coolable);

    CHECK(is_coolable(make_v_system(1.0, 2.0)).coolable);
    CHECK(is_coolable(make_lambda_system(1.0, 2.0)).coolable);
    CHECK(is_coolable(make_spin_spin()).coolable);
}

TEST_CASE("witness is a common right but not left eigenvector") {
    auto sys = make_v_system(1.0, 2.0);
    auto verdict = is_coolable(sys);
    REQUIRE(verdict.witness.has_value());
    const CVector& w = *verdict.witness;
    // right eigenvector of the traceless-shifted terms (shift is zero here)
    for (const auto& v : sys.terms) {
        CVector img = v * w;
        Cx mu = w.dot(img);
        CHECK((img - mu * w).norm() <= 1e-9);
    }
    CHECK_FALSE(is_common_left_eigenvector(w, sys.terms));
}

TEST_CASE("qubit verdict equals non-normality on random V") {
    std::mt19937_64 rng(1234);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 1000; ++trial) {
        Matrix v(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) v(i, j) = Cx(g(rng), g(rng));
        LindbladSystem sys;
        sys.h0 = Matrix::Zero(2, 2);
        sys.terms = {v};
        bool normal =
            (v * v.adjoint() - v.adjoint() * v).cwiseAbs().maxCoeff() < 1e-9;
        CHECK(is_coolable(sys).coolable == !normal);
    }
}

TEST_CASE("continuum flag for scalar subspaces") {
    // identity term: every vector is a common eigenvector
    auto res = common_eigenvectors({Matrix::Identity(3, 3)});
    CHECK(res.continuum);
    REQUIRE_FALSE(res.continuum_bases.empty());
    // but the system is not coolable (left = right everywhere)
    LindbladSystem sys;
    sys.h0 = Matrix::Zero(3, 3);
    sys.terms = {Matrix::Identity(3, 3)};
    CHECK_FALSE(is_coolable(sys).coolable);
}
