#include "doctest.h"

#include "gaugebench/ncforms.hpp"

using namespace gb;

namespace {

double max_diff(const MatrixForm& a, const MatrixForm& b) { return (a - b).max_abs(); }

Mat unit(int n) { return Mat::Identity(n, n); }

Mat random_traceless(const LieData& L, Rng& rng) {
    Eigen::VectorXcd c(L.dim());
    for (int k = 0; k < L.dim(); ++k) c(k) = cplx(rng.normal(), rng.normal());
    return L.combine(c);
}

}  // namespace

TEST_SUITE("ncforms") {

TEST_CASE("wedge of one-forms is antisymmetric") {
    auto L = make_su(2);
    auto t1 = MatrixForm::monomial(L, unit(2), {0});
    auto t2 = MatrixForm::monomial(L, unit(2), {1});
    auto w12 = wedge(t1, t2);
    auto w21 = wedge(t2, t1);
    CHECK(max_diff(w12, MatrixForm::monomial(L, unit(2), {0, 1})) == 0.0);
    CHECK(max_diff(w21, -1.0 * w12) == 0.0);
    CHECK(wedge(t1, t1).max_abs() == 0.0);
}

TEST_CASE("degree-zero product is the matrix product") {
    auto L = make_su(3);
    Rng rng(1);
    Mat a = rng.complex_matrix(3, 3), b = rng.complex_matrix(3, 3);
    auto p = wedge(MatrixForm::scalar(L, a), MatrixForm::scalar(L, b));
    CHECK(p.degree() == 0);
    CHECK(max_abs(p.coeff({}) - a * b) == 0.0);
}

TEST_CASE("wedge beyond top degree is zero and mismatched algebras are rejected") {
    auto L = make_su(2);
    Rng rng(2);
    auto w = wedge(random_form(L, 2, rng), random_form(L, 2, rng));
    CHECK(w.degree() == 4);
    CHECK(w.max_abs() == 0.0);
    auto L3 = make_su(3);
    try {
        wedge(random_form(L, 1, rng), random_form(L3, 1, rng));
        FAIL("expected incompatible-algebras");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::incompatible_algebras);
    }
}

TEST_CASE("d' on generators") {
    for (int n = 2; n <= 3; ++n) {
        auto L = make_su(n);
        const int dim = L->dim();
        CHECK(koszul_d(MatrixForm::scalar(L, unit(n))).max_abs() <= 1e-15);
        for (int k = 0; k < dim; ++k) {
            // d'E_k = -C^m_{kl} E_m ⊗ θ^l
            MatrixForm expect(L, 1);
            for (int l = 0; l < dim; ++l) {
                Mat c = Mat::Zero(n, n);
                for (int m = 0; m < dim; ++m) c -= L->C(m, k, l) * L->basis[m];
                expect.set({l}, c);
            }
            CHECK(max_diff(koszul_d(MatrixForm::scalar(L, L->basis[k])), expect) <= 1e-14);
            // d'θ^k = -1/2 C^k_{lm} θ^l θ^m
            MatrixForm expect2(L, 2);
            for (int l = 0; l < dim; ++l)
                for (int m = 0; m < dim; ++m) {
                    if (l == m) continue;
                    auto t = wedge(MatrixForm::monomial(L, unit(n), {l}), MatrixForm::monomial(L, unit(n), {m}));
                    expect2 += (-0.5 * L->C(k, l, m)) * t;
                }
            CHECK(max_diff(koszul_d(MatrixForm::monomial(L, unit(n), {k})), expect2) <= 1e-14);
        }
    }
}

TEST_CASE("canonical theta: coefficients, evaluation, and the n=1 error") {
    auto L = make_su(2);
    auto th = canonical_theta(L);
    for (int k = 0; k < 3; ++k) CHECK(max_abs(th.coeff({k}) - I * L->basis[k]) == 0.0);
    CHECK(max_abs(evaluate(th, {L->basis[2]}) - L->basis[2]) <= 1e-15);
    CHECK(max_abs(evaluate_ad(th, {unit(2)})) <= 1e-15);
    try {
        canonical_theta(make_su(1));
        FAIL("expected no-inner-derivations");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::no_inner_derivations);
    }
}

TEST_CASE("iθ(ad_γ) is the traceless part of γ") {
    Rng rng(3);
    for (int n = 2; n <= 4; ++n) {
        auto L = make_su(n);
        Mat g = rng.complex_matrix(n, n);
        Mat traceless = g - (g.trace() / double(n)) * unit(n);
        CHECK(max_abs(evaluate_ad(canonical_theta(L), {g}) - traceless) <= 1e-13);
    }
}

TEST_CASE("evaluate: dual pairing, antisymmetry, trace rejection") {
    auto L = make_su(3);
    Rng rng(4);
    for (int k = 0; k < L->dim(); ++k) {
        auto f = MatrixForm::monomial(L, L->basis[5], {k});
        // ∂_k = ad_{iE_k}
        CHECK(max_abs(evaluate(f, {I * L->basis[k]}) - L->basis[5]) <= 1e-14);
    }
    auto w = random_form(L, 2, rng);
    Mat g = random_traceless(*L, rng);
    CHECK(max_abs(evaluate(w, {g, g})) <= 1e-12);
    try {
        evaluate(canonical_theta(L), {unit(3)});
        FAIL("expected invalid-derivation");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::invalid_derivation);
    }
}

TEST_CASE("evaluate(d'a, γ) = [iθ(ad_γ), a] in degree zero") {
    Rng rng(5);
    for (int n = 2; n <= 3; ++n) {
        auto L = make_su(n);
        Mat a = rng.complex_matrix(n, n);
        Mat g = rng.complex_matrix(n, n);
        g -= (g.trace() / double(n)) * unit(n);
        Mat lhs = evaluate(koszul_d(MatrixForm::scalar(L, a)), {g});
        Mat rhs = comm(evaluate(canonical_theta(L), {g}), a);
        CHECK(max_abs(lhs - rhs) <= 1e-12);
    }
}

TEST_CASE("evaluation of a wedge matches the shuffle formula") {
    // (ωη)(X,Y) = ω(X)η(Y) - ω(Y)η(X) for one-forms
    Rng rng(6);
    auto L = make_su(2);
    auto w = random_form(L, 1, rng), e = random_form(L, 1, rng);
    Mat x = random_traceless(*L, rng), y = random_traceless(*L, rng);
    Mat lhs = evaluate(wedge(w, e), {x, y});
    Mat rhs = evaluate(w, {x}) * evaluate(e, {y}) - evaluate(w, {y}) * evaluate(e, {x});
    CHECK(max_abs(lhs - rhs) <= 1e-13);
}

TEST_CASE("involution: adjoint, product rule, reality of d'") {
    Rng rng(8);
    auto L = make_su(2);
    Mat a = rng.complex_matrix(2, 2);
    CHECK(max_abs(involution(MatrixForm::scalar(L, a)).coeff({}) - a.adjoint()) == 0.0);
    auto th = canonical_theta(L);
    CHECK(max_diff(involution(involution(th)), th) == 0.0);
    CHECK(max_diff(involution(th), -1.0 * th) == 0.0);
    for (int k = 0; k < 3; ++k) {
        auto e = MatrixForm::scalar(L, L->basis[k]);
        CHECK(max_diff(involution(koszul_d(e)), koszul_d(e)) <= 1e-15);
    }
    for (int p = 0; p <= 2; ++p)
        for (int q = 0; q <= 1; ++q) {
            auto w = random_form(L, p, rng), e = random_form(L, q, rng);
            auto lhs = involution(wedge(w, e));
            auto rhs = ((p * q) % 2 ? -1.0 : 1.0) * wedge(involution(e), involution(w));
            CHECK(max_diff(lhs, rhs) <= 1e-13);
            CHECK(max_diff(involution(koszul_d(w)), koszul_d(involution(w))) <= 1e-13);
        }
}

TEST_CASE("d' squares to zero, Leibniz, associativity, Maurer-Cartan") {
    Rng rng(9);
    for (int n = 2; n <= 3; ++n) {
        auto L = make_su(n);
        for (int p = 0; p <= 3; ++p) {
            auto w = random_form(L, p, rng);
            CHECK(koszul_d(koszul_d(w)).max_abs() <= 1e-10);
        }
        for (int p = 0; p <= 2; ++p) {
            auto w = random_form(L, p, rng), e = random_form(L, 1, rng);
            auto lhs = koszul_d(wedge(w, e));
            auto rhs = wedge(koszul_d(w), e) + (p % 2 ? -1.0 : 1.0) * wedge(w, koszul_d(e));
            CHECK(max_diff(lhs, rhs) <= 1e-10);
        }
        auto a = random_form(L, 1, rng), b = random_form(L, 1, rng), c = random_form(L, 1, rng);
        CHECK(max_diff(wedge(wedge(a, b), c), wedge(a, wedge(b, c))) <= 1e-10);
        auto th = canonical_theta(L);
        CHECK(max_diff(koszul_d(th), wedge(th, th)) <= 1e-12);
        auto s = MatrixForm::scalar(L, rng.complex_matrix(n, n));
        CHECK(max_diff(koszul_d(s), wedge(th, s) - wedge(s, th)) <= 1e-12);
    }
}

}
