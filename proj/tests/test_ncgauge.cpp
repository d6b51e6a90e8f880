#include "doctest.h"

#include "gaugebench/ncgauge.hpp"

#include <cmath>

using namespace gb;

TEST_SUITE("ncgauge") {

TEST_CASE("the two flat configurations") {
    for (int n = 2; n <= 4; ++n) {
        auto L = make_su(n);
        auto z = MatrixConnection::zero(L);
        auto d = MatrixConnection::derivation(L);
        CHECK(curvature(z).max_abs() == 0.0);
        CHECK(curvature(d).max_abs() <= 1e-14);
        CHECK(action(z) == 0.0);
        CHECK(action(d) <= 1e-14);
    }
}

TEST_CASE("single component: only the linear term survives") {
    auto L = make_su(2);
    auto c = MatrixConnection::zero(L);
    c.A[0] = I * L->basis[0];
    const auto F = curvature_components(c);
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
            Mat expect = -L->C(0, k, l) * c.A[0];
            CHECK(max_abs(F[k][l] - expect) <= 1e-15);
        }
}

TEST_CASE("action for A_3 = iσ3 matches a brute-force Pauli evaluation") {
    // Independent oracle: explicit Pauli matrices and [σ_k, σ_l] = 2i ε_klm σ_m.
    Mat s[3];
    s[0] = Mat(2, 2);
    s[0] << 0, 1, 1, 0;
    s[1] = Mat(2, 2);
    s[1] << 0, -I, I, 0;
    s[2] = Mat(2, 2);
    s[2] << 1, 0, 0, -1;
    Mat A[3] = {Mat::Zero(2, 2), Mat::Zero(2, 2), I * s[2]};
    auto eps = [](int a, int b, int c) {
        if (a == b || b == c || a == c) return 0;
        return ((b - a + 3) % 3 == 1) ? 1 : -1;
    };
    double total = 0.0;
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
            Mat f = A[k] * A[l] - A[l] * A[k];
            for (int m = 0; m < 3; ++m) f -= (-2.0 * eps(k, l, m)) * A[m];
            total += -(f * f).trace().real();
        }
    const double oracle = total / 16.0;
    CHECK(oracle == doctest::Approx(1.0));

    auto L = make_su(2);
    auto c = MatrixConnection::zero(L);
    c.A[2] = I * L->basis[2];
    c.hermitian = true;
    CHECK(action(c) == doctest::Approx(oracle).epsilon(1e-14));
}

TEST_CASE("non-Hermitian connection is rejected by the action") {
    auto L = make_su(2);
    Rng rng(3);
    std::vector<Mat> A;
    for (int k = 0; k < 3; ++k) A.push_back(rng.complex_matrix(2, 2));
    auto c = MatrixConnection::make(L, A);
    CHECK_FALSE(c.hermitian);
    try {
        action(c);
        FAIL("expected precondition-violation");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::precondition_violation);
    }
}

TEST_CASE("gauge transformations") {
    Rng rng(11);
    for (int n = 2; n <= 3; ++n) {
        auto L = make_su(n);
        for (int trial = 0; trial < 10; ++trial) {
            auto c = random_connection(L, rng);
            Mat g = rng.unitary(n);
            auto cg = gauge_transform(c, g);
            const double s0 = action(c), s1 = action(cg);
            CHECK(std::abs(s1 - s0) <= 1e-10 * (1.0 + std::abs(s0)));
            CHECK(s0 >= -1e-12);
            const auto F = curvature_components(c), Fg = curvature_components(cg);
            for (int k = 0; k < L->dim(); ++k)
                for (int l = 0; l < L->dim(); ++l) CHECK(max_abs(Fg[k][l] - g.adjoint() * F[k][l] * g) <= 1e-12);
        }
        auto z = gauge_transform(MatrixConnection::zero(L), rng.unitary(n));
        for (const auto& a : z.A) CHECK(max_abs(a) == 0.0);
        auto c = random_connection(L, rng);
        auto id = gauge_transform(c, Mat::Identity(n, n));
        for (int k = 0; k < L->dim(); ++k) CHECK(max_abs(id.A[k] - c.A[k]) == 0.0);
    }
    auto L = make_su(2);
    Mat bad = Mat::Identity(2, 2) * 2.0;
    try {
        gauge_transform(MatrixConnection::zero(L), bad);
        FAIL("expected invalid-gauge-element");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::invalid_gauge_element);
    }
    Mat phase = Mat::Identity(2, 2) * std::exp(I * 0.3);
    CHECK_NOTHROW(gauge_transform(MatrixConnection::zero(L), phase));
    CHECK_THROWS_AS(gauge_transform(MatrixConnection::zero(L), phase, true), Error);
}

TEST_CASE("curvature of A is anti-Hermitian for Hermitian connections") {
    Rng rng(12);
    auto L = make_su(3);
    auto c = random_connection(L, rng);
    const MatrixForm F = curvature(c);
    for (const auto& [k, f] : F.coeffs()) CHECK(max_abs(f + f.adjoint()) <= 1e-12);
}

TEST_CASE("Bianchi identity with ω = A - iθ") {
    Rng rng(13);
    for (int n = 2; n <= 3; ++n) {
        auto L = make_su(n);
        auto c = random_connection(L, rng);
        MatrixForm w = c.as_form() - canonical_theta(L);
        MatrixForm F = curvature(c);
        // F is the curvature of ω: d'ω + ω∧ω
        CHECK((koszul_d(w) + wedge(w, w) - F).max_abs() <= 1e-12);
        CHECK((koszul_d(F) + wedge(w, F) - wedge(F, w)).max_abs() <= 1e-10);
    }
}

TEST_CASE("covariant derivative") {
    auto L = make_su(2);
    Rng rng(14);
    Mat s3 = L->basis[2];
    Mat one = Mat::Identity(2, 2);
    CHECK(max_abs(covariant_derivative(MatrixConnection::zero(L), one, s3) + s3) <= 1e-15);
    Mat a = rng.complex_matrix(2, 2);
    Mat g = L->combine(Eigen::Vector3cd(cplx(0.3, 0.1), cplx(-1.2, 0.0), cplx(0.5, 0.7)));
    CHECK(max_abs(covariant_derivative(MatrixConnection::zero(L), a, g) + a * g) <= 1e-14);
    CHECK(max_abs(covariant_derivative(MatrixConnection::derivation(L), a, g) - comm(g, a)) <= 1e-14);
    CHECK(max_abs(covariant_derivative(random_connection(L, rng), a, Mat::Zero(2, 2))) == 0.0);
    CHECK_THROWS_AS(covariant_derivative(MatrixConnection::zero(L), a, one), Error);
}

}
