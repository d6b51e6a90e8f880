#include "doctest.h"

#include "fixtures.hpp"
#include "gaugebench/latticeymh.hpp"
#include "gaugebench/ncgauge.hpp"

#include <cmath>
#include <numbers>

using namespace gb;

namespace {

double order(double coarse, double fine) { return std::log2(coarse / fine); }

}  // namespace

TEST_SUITE("latticeymh") {

TEST_CASE("lattice indexing round-trips and wraps") {
    LatticeSpec lat{3, {4, 5, 3}, 0.5};
    lat.validate();
    for (int s = 0; s < lat.volume(); ++s) CHECK(lat.site(lat.coords(s)) == s);
    const int s = lat.site({3, 0, 2});
    CHECK(lat.coords(lat.shift(s, 0, 1)) == std::vector<int>{0, 0, 2});
    CHECK(lat.coords(lat.shift(s, 1, -1)) == std::vector<int>{3, 4, 2});
    CHECK_THROWS_AS((LatticeSpec{2, {2, 4}, 1.0}.validate()), Error);
    CHECK_THROWS_AS((LatticeSpec{2, {4, 4}, 0.0}.validate()), Error);
}

TEST_CASE("finite differences") {
    const double L = 2.0;
    auto err = [&](int N) {
        LatticeSpec lat{1, {N}, L / N};
        LatticeField f(lat, 1, 1);
        f.set_from([&](const std::vector<int>& x, int) {
            return Mat::Constant(1, 1, std::sin(2 * std::numbers::pi * x[0] * lat.h / L));
        });
        auto df = finite_diff(f, 0);
        double e = 0.0;
        for (int s = 0; s < N; ++s) {
            const double exact = 2 * std::numbers::pi / L * std::cos(2 * std::numbers::pi * s * lat.h / L);
            e = std::max(e, std::abs(df.at(s, 0)(0, 0).real() - exact));
        }
        return e;
    };
    const double e64 = err(64), e128 = err(128);
    const double k = 2 * std::numbers::pi / L, h = L / 64;
    CHECK(e64 <= 1.01 * k * k * k * h * h / 6);
    CHECK(e64 / e128 == doctest::Approx(4.0).epsilon(0.01));

    LatticeSpec lat{2, {6, 5}, 0.3};
    LatticeField c(lat, 2, 1);
    c.set_from([](const std::vector<int>&, int) { return Mat::Identity(2, 2) * cplx(1.5, -0.5); });
    CHECK(finite_diff(c, 1).max_abs() == 0.0);

    LatticeField lin(lat, 1, 1);
    lin.set_from([&](const std::vector<int>& x, int) { return Mat::Constant(1, 1, 0.7 * x[0] * lat.h - 2.0); });
    auto dl = finite_diff(lin, 0);
    for (int s = 0; s < lat.volume(); ++s) {
        const int x0 = lat.coords(s)[0];
        if (x0 >= 1 && x0 <= 4) CHECK(std::abs(dl.at(s, 0)(0, 0).real() - 0.7) <= 1e-14);
    }
}

TEST_CASE("field strength examples") {
    auto L = make_su(2);
    auto lat = LatticeSpec::cubic(2, 4, 1.0);
    GaugeFieldA a0(lat, 2);
    ScalarMultipletB b0(lat, 2);
    auto F = field_strength(a0, b0, *L);
    for (const auto& m : F.geo) CHECK(max_abs(m) == 0.0);
    for (const auto& m : F.alg) CHECK(max_abs(m) == 0.0);

    auto F2 = field_strength(a0, vacuum_orbit2(lat, *L), *L);
    for (const auto& m : F2.alg) CHECK(max_abs(m) <= 1e-15);
    for (const auto& m : F2.mix) CHECK(max_abs(m) == 0.0);

    std::vector<Mat> half;
    for (const auto& e : L->basis) half.push_back(0.5 * I * e);
    auto F3 = field_strength(a0, constant_scalar(lat, half), *L);
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
            Mat expect = Mat::Zero(2, 2);
            for (int m = 0; m < 3; ++m) expect += (0.25 - 0.5) * I * L->C(m, k, l) * L->basis[m];
            CHECK(max_abs(F3.alg[k * 3 + l] - expect) <= 1e-15);
        }

    Rng rng(5);
    auto a = fx::random_a(lat, 2, 1.0, rng);
    auto b = fx::random_b(lat, 2, 1.0, rng);
    auto Fr = field_strength(a, b, *L);
    for (auto* blk : {&Fr.geo, &Fr.mix, &Fr.alg})
        for (const auto& m : *blk) CHECK(max_abs(m + m.adjoint()) <= 1e-12);

    GaugeFieldA other(LatticeSpec::cubic(2, 5, 1.0), 2);
    CHECK_THROWS_AS(field_strength(other, b, *L), Error);
}

TEST_CASE("YMH action vanishes on both orbits and matches a brute-force sum") {
    auto L = make_su(2);
    auto lat = LatticeSpec::cubic(2, 8, 1.0);
    YMHParams p{1.0, L};
    GaugeFieldA a0(lat, 2);
    CHECK(ymh_action(a0, ScalarMultipletB(lat, 2), p) == 0.0);
    CHECK(ymh_action(a0, vacuum_orbit2(lat, *L), p) <= 1e-13);

    // Brute force with explicit Pauli algebra at each site.
    Mat s[3];
    s[0] = Mat(2, 2);
    s[0] << 0, 1, 1, 0;
    s[1] = Mat(2, 2);
    s[1] << 0, -I, I, 0;
    s[2] = Mat(2, 2);
    s[2] << 1, 0, 0, -1;
    auto eps = [](int x, int y, int z) {
        if (x == y || y == z || x == z) return 0;
        return ((y - x + 3) % 3 == 1) ? 1 : -1;
    };
    double total = 0.0;
    for (int x = 0; x < 8; ++x)
        for (int y = 0; y < 8; ++y)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) {
                    Mat bk = 0.5 * I * s[k], bl = 0.5 * I * s[l];
                    Mat f = bk * bl - bl * bk;
                    for (int m = 0; m < 3; ++m) f -= (-2.0 * eps(k, l, m)) * (0.5 * I * s[m]);
                    total += (f.adjoint() * f).trace().real();
                }
    const double oracle = (1.0 / 8.0) * (1.0 / 8.0) * total;
    CHECK(oracle == doctest::Approx(3.0));
    std::vector<Mat> half;
    for (const auto& e : L->basis) half.push_back(0.5 * I * e);
    CHECK(ymh_action(a0, constant_scalar(lat, half), p) == doctest::Approx(oracle).epsilon(1e-13));
}

TEST_CASE("YMH action is nonnegative and worker-count independent") {
    auto L = make_su(3);
    auto lat = LatticeSpec::cubic(2, 6, 0.7);
    Rng rng(8);
    YMHParams p{1.3, L};
    auto a = fx::random_a(lat, 3, 0.5, rng);
    auto b = fx::random_b(lat, 3, 0.5, rng);
    const double s1 = ymh_action(a, b, p, 1);
    CHECK(s1 >= 0.0);
    CHECK(ymh_action(a, b, p, 4) == s1);
    CHECK(ymh_action(a, b, p, 3) == s1);
}

TEST_CASE("constant gauge transformations leave the action and conjugate the blocks") {
    Rng rng(9);
    for (int n = 2; n <= 3; ++n) {
        auto L = make_su(n);
        auto lat = LatticeSpec::cubic(2, 6, 0.5);
        auto a = fx::smooth_a(lat, *L, 0.4, 21, false);
        auto b = fx::smooth_b(lat, *L, 0.4, 22);
        const Mat u = rng.unitary(n);
        auto t = gauge_transform_lattice(a, b, fx::constant_gauge(lat, u));
        YMHParams p{1.0, L};
        CHECK(std::abs(ymh_action(t.a, t.b, p) - ymh_action(a, b, p)) <= 1e-12);
        CHECK(t.projection_residual <= 1e-14);
        auto F = field_strength(a, b, *L), Fg = field_strength(t.a, t.b, *L);
        for (size_t i = 0; i < F.geo.size(); ++i) CHECK(max_abs(Fg.geo[i] - u.adjoint() * F.geo[i] * u) <= 1e-12);
        for (size_t i = 0; i < F.mix.size(); ++i) CHECK(max_abs(Fg.mix[i] - u.adjoint() * F.mix[i] * u) <= 1e-12);
        for (size_t i = 0; i < F.alg.size(); ++i) CHECK(max_abs(Fg.alg[i] - u.adjoint() * F.alg[i] * u) <= 1e-12);
    }
    auto L = make_su(2);
    auto lat = LatticeSpec::cubic(2, 4, 1.0);
    auto a = fx::random_a(lat, 2, 1.0, rng);
    auto b = fx::random_b(lat, 2, 1.0, rng);
    auto id = gauge_transform_lattice(a, b, fx::constant_gauge(lat, Mat::Identity(2, 2)));
    for (size_t i = 0; i < a.data.size(); ++i) CHECK(max_abs(id.a.data[i] - a.data[i]) == 0.0);
    CHECK_THROWS_AS(gauge_transform_lattice(a, b, fx::constant_gauge(lat, 2.0 * Mat::Identity(2, 2))), Error);
}

TEST_CASE("smooth gauge drift converges under refinement") {
    auto L = make_su(2);
    YMHParams p{1.0, L};
    std::vector<double> drift;
    for (int N : {8, 16, 32}) {
        auto lat = LatticeSpec::cubic(2, N, 4.0 / N);
        auto a = fx::smooth_a(lat, *L, 0.3, 31, false);
        auto b = fx::smooth_b(lat, *L, 0.3, 32);
        auto t = gauge_transform_lattice(a, b, fx::smooth_gauge(lat, L->basis[2], 0.3));
        drift.push_back(std::abs(ymh_action(t.a, t.b, p) - ymh_action(a, b, p)));
    }
    MESSAGE("drift 8/16/32: " << drift[0] << " " << drift[1] << " " << drift[2]);
    CHECK(order(drift[0], drift[1]) >= 1.0);
    CHECK(order(drift[1], drift[2]) >= 1.0);
}

TEST_CASE("Yang-Mills action") {
    auto L = make_su(2);
    auto lat = LatticeSpec::cubic(2, 6, 0.5);
    CHECK(ym_action(GaugeFieldA(lat, 2)) == 0.0);
    // Abelian embedding: a_μ = i φ_μ 1 gives the discrete Maxwell energy.
    Rng rng(10);
    std::vector<double> phi(lat.volume() * 2);
    for (auto& v : phi) v = rng.normal();
    GaugeFieldA a(lat, 2);
    for (int s = 0; s < lat.volume(); ++s)
        for (int mu = 0; mu < 2; ++mu) a.at(s, mu) = I * phi[s * 2 + mu] * Mat::Identity(2, 2);
    double maxwell = 0.0;
    const int N = 6;
    for (int x = 0; x < N; ++x)
        for (int y = 0; y < N; ++y) {
            auto at = [&](int i, int j, int mu) { return phi[(((j + N) % N) * N + (i + N) % N) * 2 + mu]; };
            const double dxay = (at(x + 1, y, 1) - at(x - 1, y, 1)) / (2 * lat.h);
            const double dyax = (at(x, y + 1, 0) - at(x, y - 1, 0)) / (2 * lat.h);
            const double curl = dxay - dyax;
            maxwell += 2.0 * curl * curl;  // F_01 and F_10, trace of the 2x2 identity
        }
    maxwell *= 2.0 * 0.5 * lat.h * lat.h;
    CHECK(ym_action(a) == doctest::Approx(maxwell).epsilon(1e-13));
    // ym matches the geometric part of ymh: (1/4n) vs (1/2)
    auto b0 = ScalarMultipletB(lat, 2);
    auto as = fx::smooth_a(lat, *L, 0.5, 3);
    CHECK(ymh_action(as, b0, {1.0, L}) * 4.0 * 2 / 2.0 == doctest::Approx(ym_action(as)).epsilon(1e-13));
}

TEST_CASE("Chern-Simons") {
    auto L = make_su(2);
    auto lat = LatticeSpec::cubic(3, 4, 0.5);
    CHECK(chern_simons(GaugeFieldA(lat, 2)) == 0.0);
    std::vector<Mat> c;
    for (double v : {0.3, -1.1, 0.7}) c.push_back(I * v * L->basis[2]);
    CHECK(std::abs(chern_simons(constant_gauge_field(lat, c))) <= 1e-14);
    CHECK_THROWS_AS(chern_simons(GaugeFieldA(LatticeSpec::cubic(2, 4, 1.0), 2)), Error);

    // First variation along an infinitesimal gauge direction.
    std::vector<double> var;
    for (int N : {8, 16}) {
        auto lt = LatticeSpec::cubic(3, N, 3.0 / N);
        auto a = fx::smooth_a(lt, *L, 0.4, 41);
        auto xi = fx::smooth_field(lt, *L, 1, 0.5, 42);
        GaugeFieldA v(lt, 2);
        for (int s = 0; s < lt.volume(); ++s)
            for (int mu = 0; mu < 3; ++mu) {
                const int sp = lt.shift(s, mu, 1), sm = lt.shift(s, mu, -1);
                v.at(s, mu) = (xi.at(sp, 0) - xi.at(sm, 0)) / (2 * lt.h) + comm(a.at(s, mu), xi.at(s, 0));
            }
        auto shifted = [&](double e) {
            GaugeFieldA x = a;
            for (size_t i = 0; i < x.data.size(); ++i) x.data[i] += e * v.data[i];
            return chern_simons(x);
        };
        const double e = 0.5;
        const double d1 = (shifted(e) - shifted(-e)) / (2 * e);
        const double d2 = (shifted(2 * e) - shifted(-2 * e)) / (4 * e);
        var.push_back(std::abs((4 * d1 - d2) / 3));
    }
    MESSAGE("CS first variation 8/16: " << var[0] << " " << var[1]);
    CHECK(order(var[0], var[1]) >= 1.0);
}

TEST_CASE("mass spectrum") {
    for (int n = 2; n <= 3; ++n) {
        auto L = make_su(n);
        auto lat = LatticeSpec::cubic(2, 4, 1.0);
        auto zero = mass_spectrum(ScalarMultipletB(lat, n), {1.0, L});
        REQUIRE(zero.size() == size_t(2 * n * n));
        for (double e : zero) CHECK(std::abs(e) <= 1e-15);

        auto b0 = vacuum_orbit2(lat, *L);
        for (double mu : {0.5, 1.0, 1.7}) {
            auto ev = mass_spectrum(b0, {mu, L});
            // Casimir oracle: Σ_k ad_{E_k}^2 = 4n on traceless matrices.
            const double traceless = mu * mu / (2.0 * n) * 4.0 * n;
            for (int blk = 0; blk < 2; ++blk) {
                CHECK(std::abs(ev[blk * n * n]) <= 1e-13);
                for (int i = 1; i < n * n; ++i) CHECK(ev[blk * n * n + i] == doctest::Approx(traceless).epsilon(1e-13));
            }
            auto ev2 = mass_spectrum(b0, {2 * mu, L});
            CHECK(ev2[1] / ev[1] == doctest::Approx(4.0).epsilon(1e-12));
        }
        Rng rng(3);
        CHECK_THROWS_AS(mass_spectrum(fx::random_b(lat, n, 1.0, rng), {1.0, L}), Error);
    }
}

TEST_CASE("algebraic term matches the matrix-model action") {
    Rng rng(12);
    for (int n = 2; n <= 3; ++n) {
        auto L = make_su(n);
        auto lat = LatticeSpec::cubic(2, 4, 0.5);
        std::vector<Mat> bk;
        for (int k = 0; k < L->dim(); ++k) bk.push_back(rng.anti_hermitian(n));
        const double mu = 1.3;
        const double s_lat = ymh_action(GaugeFieldA(lat, n), constant_scalar(lat, bk), {mu, L});
        const double vol = lat.volume() * lat.cell_volume();
        const double s_mat = action(MatrixConnection::make(L, bk));
        const double expect = vol * std::pow(mu, 4) / (16.0 * n * n) * 8.0 * n * s_mat;
        CHECK(s_lat == doctest::Approx(expect).epsilon(1e-10));
    }
}

}
