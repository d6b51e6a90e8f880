#include "doctest.h"

#include "gaugebench/liealg.hpp"

#include <cmath>

using namespace gb;

namespace {

std::vector<Mat> pauli() {
    Mat s1(2, 2), s2(2, 2), s3(2, 2);
    s1 << 0, 1, 1, 0;
    s2 << 0, -I, I, 0;
    s3 << 1, 0, 0, -1;
    return {s1, s2, s3};
}

int levi_civita(int a, int b, int c) {
    if (a == b || b == c || a == c) return 0;
    return ((b - a + 3) % 3 == 1) ? 1 : -1;
}

// Textbook Gell-Mann matrices.
std::vector<Mat> gell_mann() {
    std::vector<Mat> l(8, Mat::Zero(3, 3));
    l[0](0, 1) = 1; l[0](1, 0) = 1;
    l[1](0, 1) = -I; l[1](1, 0) = I;
    l[2](0, 0) = 1; l[2](1, 1) = -1;
    l[3](0, 2) = 1; l[3](2, 0) = 1;
    l[4](0, 2) = -I; l[4](2, 0) = I;
    l[5](1, 2) = 1; l[5](2, 1) = 1;
    l[6](1, 2) = -I; l[6](2, 1) = I;
    const double r = 1.0 / std::sqrt(3.0);
    l[7](0, 0) = r; l[7](1, 1) = r; l[7](2, 2) = -2 * r;
    return l;
}

}  // namespace

TEST_SUITE("liealg") {

TEST_CASE("su_basis rejects non-positive n") {
    CHECK_THROWS_AS(su_basis(0), Error);
    CHECK_THROWS_AS(su_basis(-3), Error);
    try {
        su_basis(0);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::invalid_argument);
    }
}

TEST_CASE("n=1 gives the empty algebra") {
    LieData d = su_basis(1);
    CHECK(d.basis.empty());
    CHECK(d.C.dim() == 0);
    CHECK(validate_lie_data(d).passed());
}

TEST_CASE("n=2 reproduces the Pauli matrices and C = -2 eps") {
    LieData d = su_basis(2);
    const auto p = pauli();
    REQUIRE(d.dim() == 3);
    for (int k = 0; k < 3; ++k) CHECK(max_abs(d.basis[k] - p[k]) == 0.0);
    for (int m = 0; m < 3; ++m)
        for (int k = 0; k < 3; ++k)
            for (int l = 0; l < 3; ++l)
                CHECK(d.C(m, k, l) == doctest::Approx(-2.0 * levi_civita(k, l, m)).epsilon(1e-15));
    CHECK(d.C(2, 0, 1) == doctest::Approx(-2.0));
}

TEST_CASE("n=3 reproduces Gell-Mann matrices and the trace form") {
    LieData d = su_basis(3);
    const auto l = gell_mann();
    REQUIRE(d.dim() == 8);
    for (int k = 0; k < 8; ++k) CHECK(max_abs(d.basis[k] - l[k]) <= 1e-15);
    CHECK((d.trace_form - 2.0 * RMat::Identity(8, 8)).cwiseAbs().maxCoeff() <= 1e-14);
    // [λ1, λ2] = 2iλ3
    CHECK(max_abs(comm(l[0], l[1]) - 2.0 * I * l[2]) == 0.0);
    CHECK(d.C(2, 0, 1) == doctest::Approx(-2.0));
}

TEST_CASE("closed-form projection agrees with the generic solve") {
    for (int n = 2; n <= 4; ++n) {
        LieData d = su_basis(n);
        double diff = 0.0;
        for (int m = 0; m < d.dim(); ++m)
            for (int k = 0; k < d.dim(); ++k)
                for (int l = 0; l < d.dim(); ++l) {
                    const cplx c = 0.5 * I * (d.basis[m] * comm(d.basis[k], d.basis[l])).trace();
                    diff = std::max(diff, std::abs(c - d.C(m, k, l)));
                }
        CHECK(diff <= 1e-13);
    }
}

TEST_CASE("antisymmetry is bit exact and the diagonal vanishes") {
    for (int n = 1; n <= 4; ++n) {
        LieData d = su_basis(n);
        for (int m = 0; m < d.dim(); ++m)
            for (int k = 0; k < d.dim(); ++k) {
                CHECK(d.C(m, k, k) == 0.0);
                for (int l = 0; l < d.dim(); ++l) CHECK(d.C(m, k, l) == -d.C(m, l, k));
            }
    }
}

TEST_CASE("validation passes for n = 1..4 with tight residuals") {
    for (int n = 1; n <= 4; ++n) {
        LieData d = su_basis(n);
        d.C = structure_constants(d.basis);
        const Report r = validate_lie_data(d);
        CHECK(r.passed());
        CHECK(jacobi_residual(d.C) <= 1e-12);
        if (n == 2)
            for (const auto& c : r.checks) CHECK(c.residual <= 1e-14);
    }
}

TEST_CASE("flipping C^3_12 is detected with residual near 4") {
    LieData d = su_basis(2);
    d.C(2, 0, 1) = -d.C(2, 0, 1);
    d.C(2, 1, 0) = -d.C(2, 1, 0);
    const Report r = validate_lie_data(d);
    CHECK_FALSE(r.passed());
    CHECK(r.find("commutator")->residual == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("a basis that is not closed is rejected") {
    Mat a(3, 3), b(3, 3);
    a << 0, 1, 0, 1, 0, 0, 0, 0, 0;
    b << 0, 0, 1, 0, 0, 0, 1, 0, 0;
    try {
        structure_constants({a, b});
        FAIL("expected not-a-Lie-basis");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::not_a_lie_basis);
    }
}

TEST_CASE("generic solve handles a non-orthogonal basis") {
    const auto p = pauli();
    std::vector<Mat> b{p[0], p[0] + p[1], p[2]};
    const StructureConstants C = structure_constants(b);
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
            Mat rhs = Mat::Zero(2, 2);
            for (int m = 0; m < 3; ++m) rhs += -I * C(m, k, l) * b[m];
            CHECK(max_abs(comm(b[k], b[l]) - rhs) <= 1e-13);
        }
    CHECK(jacobi_residual(C) <= 1e-12);
}

TEST_CASE("coefficient expansion inverts combine") {
    LieData d = su_basis(3);
    Rng rng(7);
    Eigen::VectorXcd c(8);
    for (int k = 0; k < 8; ++k) c(k) = cplx(rng.normal(), rng.normal());
    CHECK((d.coefficients(d.combine(c)) - c).cwiseAbs().maxCoeff() <= 1e-14);
}

}
