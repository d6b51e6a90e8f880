#include "gaugebench/driver.hpp"
#include "gaugebench/gravity.hpp"
#include "gaugebench/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gb {

bool Checker::add(const std::string& name, double residual, double tol) {
    const std::string full = prefix_ + name;
    const double t = c_.tol(full, tol);
    r_.add(full, residual, t);
    if (std::isnan(residual)) r_.checks.back().passed = false;
    return r_.checks.back().passed;
}

bool Checker::add_bool(const std::string& name, bool ok) {
    r_.add_bool(prefix_ + name, ok);
    return ok;
}

void Checker::skip(const std::string& name) { r_.skip(prefix_ + name); }

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(1e-300, std::max(std::abs(a), std::abs(b))); }

double rel_vec(const RVec& a, const RVec& b) { return (a - b).norm() / std::max(1e-300, a.norm()); }

void skip_all(Checker& ck, std::initializer_list<const char*> names) {
    for (const char* n : names) ck.skip(n);
}

void fill_random(LatticeField& f, double scale, Rng& rng) {
    for (auto& m : f.data) m = scale * rng.anti_hermitian(f.n);
}

void fill_traceless(LatticeField& f, double scale, Rng& rng) {
    for (auto& m : f.data) {
        m = scale * rng.anti_hermitian(f.n);
        m -= m.trace() / double(f.n) * Mat::Identity(f.n, f.n);
    }
}

GeneralizedConnection random_generalized(LiePtr L, const LatticeSpec& lat, double scale, bool ordinary, Rng& rng) {
    GeneralizedConnection w = ordinary ? GeneralizedConnection::ordinary(L, lat) : GeneralizedConnection(L, lat);
    for (auto& x : w.omega) x = scale * rng.normal();
    if (!ordinary)
        for (auto& x : w.phi) x = scale * rng.normal();
    return w;
}

double max_tau_curvature(const Decomposition& dec) {
    double m = 0.0;
    for (const auto& site : dec.R_tau)
        for (const auto& r : site) m = std::max(m, r.cwiseAbs().maxCoeff());
    return m;
}

}  // namespace

json suite_liealg(Checker ck, int n, bool corrupt) {
    if (n == 1) {
        skip_all(ck, {"hermitian", "traceless", "independence", "antisymmetry", "commutator", "jacobi"});
        return {{"dim", 0}};
    }
    LieData L = su_basis(n);
    if (corrupt) {
        L.C(0, 0, 1) += 0.25;
        L.C(0, 1, 0) -= 0.25;
    }
    const Report rep = validate_lie_data(L);
    json out{{"dim", L.dim()}};
    for (const auto& c : rep.checks) {
        ck.add(c.name, c.residual, c.tol);
        out[c.name] = c.residual;
    }
    return out;
}

json suite_ncforms(Checker ck, int n, int samples, Rng& rng) {
    if (n == 1) {
        skip_all(ck, {"d_squared", "leibniz", "d_on_scalars", "maurer_cartan"});
        return json::object();
    }
    auto L = make_su(n);
    const MatrixForm th = canonical_theta(L);
    double d2 = 0.0, leib = 0.0, scal = 0.0;
    for (int i = 0; i < samples; ++i) {
        const int p = i % 4;
        const MatrixForm w = random_form(L, p, rng);
        d2 = std::max(d2, koszul_d(koszul_d(w)).max_abs());
        if (p <= 2) {
            const MatrixForm e = random_form(L, 1, rng);
            leib = std::max(leib, (koszul_d(wedge(w, e)) - wedge(koszul_d(w), e) -
                                   cplx(p % 2 ? -1.0 : 1.0) * wedge(w, koszul_d(e)))
                                      .max_abs());
        }
        const MatrixForm a = MatrixForm::scalar(L, rng.complex_matrix(n, n));
        scal = std::max(scal, (koszul_d(a) - (wedge(th, a) - wedge(a, th))).max_abs());
    }
    const double mc = (koszul_d(th) - wedge(th, th)).max_abs();
    ck.add("d_squared", d2, 1e-10);
    ck.add("leibniz", leib, 1e-10);
    ck.add("d_on_scalars", scal, 1e-10);
    ck.add("maurer_cartan", mc, 1e-10);
    return {{"d_squared", d2}, {"leibniz", leib}, {"d_on_scalars", scal}, {"maurer_cartan", mc}};
}

json suite_ncgauge(Checker ck, int n, int samples, Rng& rng) {
    if (n == 1) {
        skip_all(ck, {"action_zero", "action_derivation", "gauge_invariance", "nonnegative", "bianchi"});
        return json::object();
    }
    auto L = make_su(n);
    const double s0 = action(MatrixConnection::zero(L));
    const double s1 = action(MatrixConnection::derivation(L));
    double inv = 0.0, smin = 1e300, bianchi = 0.0;
    for (int i = 0; i < samples; ++i) {
        const auto c = random_connection(L, rng);
        const double s = action(c);
        smin = std::min(smin, s);
        inv = std::max(inv, rel(action(gauge_transform(c, rng.unitary(n))), s));
        const MatrixForm w = c.as_form() - canonical_theta(L);
        const MatrixForm F = curvature(c);
        bianchi = std::max(bianchi, (koszul_d(F) + wedge(w, F) - wedge(F, w)).max_abs());
    }
    ck.add("action_zero", std::abs(s0), 1e-13);
    ck.add("action_derivation", std::abs(s1), 1e-13);
    ck.add("gauge_invariance", inv, 1e-10);
    ck.add("nonnegative", std::max(0.0, -smin), 1e-12);
    ck.add("bianchi", bianchi, 1e-10);
    return {{"action_zero", s0}, {"action_derivation", s1}, {"min_random_action", smin},
            {"gauge_invariance", inv}, {"bianchi", bianchi}};
}

json suite_latticeymh(Checker ck, int n, const LatticeSpec& lat, double mu, int workers, Rng& rng) {
    if (n == 1) {
        skip_all(ck, {"orbit1", "orbit2", "orbit1_gauged", "orbit2_gauged", "nonnegative", "constant_gauge",
                      "worker_invariance", "zero_modes", "mass_ratio"});
        return json::object();
    }
    auto L = make_su(n);
    const YMHParams p{mu, L};
    const int V = lat.volume(), d = lat.d;
    const GaugeFieldA a0(lat, n);
    const ScalarMultipletB b0(lat, n);
    const ScalarMultipletB bv = vacuum_orbit2(lat, *L);
    const std::vector<Mat> g(V, rng.unitary(n));
    const double o1 = ymh_action(a0, b0, p, workers), o2 = ymh_action(a0, bv, p, workers);
    const auto t1 = gauge_transform_lattice(a0, b0, g);
    const auto t2 = gauge_transform_lattice(a0, bv, g);
    const double o1g = ymh_action(t1.a, t1.b, p, workers), o2g = ymh_action(t2.a, t2.b, p, workers);

    GaugeFieldA a(lat, n);
    ScalarMultipletB b(lat, n);
    fill_random(a, 0.5, rng);
    fill_random(b, 0.5, rng);
    const double S = ymh_action(a, b, p, workers);
    const auto tg = gauge_transform_lattice(a, b, g);
    const double Sg = ymh_action(tg.a, tg.b, p, workers);
    const double S1 = ymh_action(a, b, p, 1), S4 = ymh_action(a, b, p, std::max(4, workers));

    const auto ev = mass_spectrum(bv, p);
    YMHParams p2 = p;
    p2.mu = 2.0 * mu;
    const auto ev2 = mass_spectrum(bv, p2);
    const int n2 = n * n;
    int zero_modes = 0;
    double ratio_err = 0.0;
    for (int blk = 0; blk < d; ++blk)
        for (int i = 0; i < n2; ++i) {
            const double e = ev[blk * n2 + i];
            if (std::abs(e) <= 1e-12)
                ++zero_modes;
            else
                ratio_err = std::max(ratio_err, std::abs(ev2[blk * n2 + i] / e - 4.0));
        }

    ck.add("orbit1", std::abs(o1), 1e-13);
    ck.add("orbit2", std::abs(o2), 1e-13);
    ck.add("orbit1_gauged", std::abs(o1g), 1e-13);
    ck.add("orbit2_gauged", std::abs(o2g), 1e-13);
    ck.add("nonnegative", std::max(0.0, -S), 0.0);
    ck.add("constant_gauge", rel(S, Sg), 1e-12);
    ck.add("worker_invariance", std::abs(S1 - S4), 0.0);
    ck.add_bool("zero_modes", zero_modes == d);
    ck.add("mass_ratio", ratio_err, 1e-6);
    return {{"orbit1", o1}, {"orbit2", o2}, {"random_action", S}, {"constant_gauge", rel(S, Sg)},
            {"zero_modes", zero_modes}, {"mass_spectrum", ev}};
}

json suite_algebroid(Checker ck, int n, const LatticeSpec& lat, double mu, int workers, int samples, Rng& rng) {
    if (n == 1) {
        skip_all(ck, {"d_squared", "ordinary_zero", "R_tau_identity", "R_tau_zero", "ym_reduction", "reassembly",
                      "round_trip", "repeat_identical", "calibrated_ymh", "worker_invariance"});
        return json::object();
    }
    auto L = make_su(n);
    const int dim = L->dim();
    double d2 = 0.0;
    for (int p = 1; p <= 2; ++p) {
        AlgebroidForm f(L, lat, p);
        for (const auto& key : combinations(lat.d + dim, p)) {
            KernelField k(lat, dim);
            for (auto& v : k.data) v = rng.normal();
            f.slot(key) = k;
        }
        d2 = std::max(d2, differential(differential(f)).max_abs());
    }
    const MetricTriple std_m = MetricTriple::standard(L, lat);
    const MetricTriple cal = MetricTriple::ymh_calibrated(L, lat, mu);
    const double ord0 = action_generalized(GeneralizedConnection::ordinary(L, lat), std_m, workers);
    const double rid = max_tau_curvature(decompose(GeneralizedConnection(L, lat), std_m));
    const double r0 = max_tau_curvature(decompose(GeneralizedConnection::ordinary(L, lat), std_m));

    double red = 0.0, reas = 0.0, cal_err = 0.0, workers_err = 0.0;
    double round_trip = 0.0;
    bool repeat_identical = true;
    for (int i = 0; i < samples; ++i) {
        const auto w = random_generalized(L, lat, 0.7, true, rng);
        red = std::max(red, rel(action_generalized(w, std_m, workers), ym_action(to_lattice_fields(w).first)));

        const auto wg = random_generalized(L, lat, 0.7, false, rng);
        reas = std::max(reas, (curvature_generalized(wg) - reassemble(decompose(wg, std_m), std_m.background)).max_abs());
        workers_err = std::max(workers_err, std::abs(action_generalized(wg, std_m, 1) - action_generalized(wg, std_m, 4)));

        GaugeFieldA a(lat, n);
        ScalarMultipletB b(lat, n);
        fill_traceless(a, 0.8, rng);
        fill_traceless(b, 0.8, rng);
        const auto w1 = from_lattice_fields(a, b, L);
        const auto [a2, b2] = to_lattice_fields(w1);
        const auto w2 = from_lattice_fields(a2, b2, L);
        const auto w3 = from_lattice_fields(a2, b2, L);
        for (size_t k = 0; k < w1.omega.size(); ++k) round_trip = std::max(round_trip, std::abs(w1.omega[k] - w2.omega[k]));
        for (size_t k = 0; k < w1.phi.size(); ++k) round_trip = std::max(round_trip, std::abs(w1.phi[k] - w2.phi[k]));
        repeat_identical = repeat_identical && w2.omega == w3.omega && w2.phi == w3.phi;
        cal_err = std::max(cal_err, rel(action_generalized(w1, cal, workers), ymh_action(a, b, {mu, L}, workers)));
    }
    ck.add("d_squared", d2, 1e-12);
    ck.add("ordinary_zero", std::abs(ord0), 0.0);
    ck.add("R_tau_identity", rid, 0.0);
    ck.add("R_tau_zero", r0, 0.0);
    ck.add("ym_reduction", red, 1e-10);
    ck.add("reassembly", reas, 1e-10);
    ck.add("round_trip", round_trip, 1e-14);
    ck.add_bool("repeat_identical", repeat_identical);
    ck.add("calibrated_ymh", cal_err, 1e-8);
    ck.add("worker_invariance", workers_err, 0.0);
    return {{"d_squared", d2}, {"ym_reduction", red}, {"reassembly", reas}, {"round_trip", round_trip},
            {"calibrated_ymh", cal_err}};
}

json suite_spectral(Checker ck, int samples, Rng& rng) {
    auto axioms = [&](const std::string& name, const FiniteSpectralTriple& t) {
        const Report r = check_axioms(t);
        double worst = 0.0;
        for (const auto& c : r.checks) worst = std::max(worst, c.residual);
        ck.add(name + "_axioms", r.passed() ? worst : std::max(worst, 1.0), 1e-12);
        return worst;
    };
    const auto t2 = two_point_minimal(1.3), t4 = two_point_real(1.3);
    const auto t9 = m2_plus_c(Eigen::Vector2cd(cplx(0.6, 0.2), cplx(-0.3, 0.9)));
    json out;
    out["two_point"] = axioms("two_point", t2);
    out["two_point_real"] = axioms("two_point_real", t4);
    out["m2_plus_c"] = axioms("m2_plus_c", t9);

    double coinc = 0.0, action_inv = 0.0;
    for (const auto& base : {t4, t9}) {
        for (int i = 0; i < samples; ++i) {
            OneFormTerms terms;
            for (int k = 0; k < 2; ++k)
                terms.emplace_back(random_algebra_element(base.blocks, rng), random_algebra_element(base.blocks, rng));
            const OneFormTerms om = hermitian_one_form(terms);
            const AlgebraElement u = random_unitary_element(base.blocks, rng);
            const Mat lhs = gauge_transform_spectral(fluctuate(base, represent_one_form(base, om)), u).D;
            const Mat rhs = fluctuate(base, represent_one_form(base, gauge_one_form(om, u))).D;
            coinc = std::max(coinc, max_abs(lhs - rhs));
        }
        const double S = spectral_action(base, smooth_bump, 3.0);
        for (int i = 0; i < 5; ++i) {
            const Mat U = rng.unitary(base.hilbert_dim());
            auto r = base;
            r.D = U * base.D * U.adjoint();
            action_inv = std::max(action_inv, std::abs(spectral_action(r, smooth_bump, 3.0) - S));
        }
    }
    bool misuse = true;
    for (int k : {2, 4, 6}) {
        auto t = t4;
        t.ko_dim = k;
        misuse = misuse && !check_axioms(t).passed();
    }
    ck.add("gauge_fluctuation_coincidence", coinc, 1e-12);
    ck.add_bool("sign_misuse_detected", misuse);
    ck.add("spectral_action_invariance", action_inv, 1e-12);
    out["coincidence"] = coinc;
    out["spectral_action_invariance"] = action_inv;
    return out;
}

namespace {

constexpr double pi = std::numbers::pi;

RMat sphere_metric(const RVec& x, double r) {
    RMat g = RMat::Zero(2, 2);
    g(0, 0) = r * r;
    g(1, 1) = r * r * std::sin(x(0)) * std::sin(x(0));
    return g;
}

}  // namespace

json suite_gravity(Checker ck, int points) {
    json out;
    // Flat 4d chart.
    const Chart flat = Chart::uniform({0, 0, 0, 0}, {1, 1, 1, 1}, 6);
    const auto mf = MetricGrid::from_function(flat, [](const RVec&) { return RMat(RMat::Identity(4, 4)); });
    const auto ctf = curvature_tensors(christoffel(mf));
    double flat_curv = 0.0;
    for (int s = 0; s < flat.volume(); ++s) {
        if (!flat.interior(s, ctf.margin)) continue;
        for (const auto& R : ctf.riemann[s]) flat_curv = std::max(flat_curv, R.cwiseAbs().maxCoeff());
    }
    ck.add("flat_curvature", flat_curv, 1e-12);

    // Round sphere, radius 1.
    const Chart sc = Chart::uniform({0.3, 0.0}, {pi - 0.3, 1.0}, points);
    const auto ms = MetricGrid::from_function(sc, [](const RVec& x) { return sphere_metric(x, 1.0); });
    const auto Gs = christoffel(ms);
    const auto cts = curvature_tensors(Gs);
    const auto R = scalar_curvature(ms, cts);
    double err = 0.0, lo = 1e300, hi = -1e300, sum = 0.0, tors = 0.0;
    int count = 0;
    for (int s = 0; s < sc.volume(); ++s) {
        if (!std::isfinite(R[s])) continue;
        err = std::max(err, std::abs(R[s] - 2.0));
        lo = std::min(lo, R[s]);
        hi = std::max(hi, R[s]);
        sum += R[s];
        ++count;
        for (const auto& T : cts.torsion[s]) tors = std::max(tors, T.cwiseAbs().maxCoeff());
    }
    ck.add("sphere_curvature", err / 2.0, 0.01);
    ck.add("chart_independence", (hi - lo) / (sum / count), 0.02);
    ck.add("torsion", tors, 1e-12);
    out["sphere_curvature_max_rel_error"] = err / 2.0;

    // Metric compatibility on a smooth 3d metric, two refinements.
    auto metric3 = [](const RVec& x) {
        RMat g = RMat::Identity(3, 3);
        g(0, 0) += 0.3 * std::sin(x(1) + 0.5 * x(2));
        g(1, 1) += 0.2 * std::cos(x(0));
        g(0, 1) = g(1, 0) = 0.1 * std::sin(x(0) + x(2));
        g(1, 2) = g(2, 1) = 0.15 * std::cos(2.0 * x(1));
        return g;
    };
    std::vector<double> compat;
    for (int m : {9, 17, 33}) {
        const auto mm = MetricGrid::from_function(Chart::uniform({0, 0, 0}, {1, 1, 1}, m), metric3);
        compat.push_back(metric_compatibility_residual(mm, christoffel(mm)));
    }
    const double order = std::min(std::log2(compat[0] / compat[1]), std::log2(compat[1] / compat[2]));
    ck.add("compatibility_order", std::max(0.0, 1.8 - order), 0.0);
    out["compatibility_residuals"] = compat;

    // Palatini vs Einstein-Hilbert on sphere × flat.
    Chart c4{4, {0.3, 0.0, 0.0, 0.0}, {pi - 0.3, 1.0, 1.0, 1.0}, {17, 17, 5, 5}};
    auto t = TetradField::from_function(
        c4,
        [](const RVec& x) {
            RMat L = RMat::Identity(4, 4);
            L(1, 1) = std::sin(x(0));
            return L;
        },
        RMat::Identity(4, 4));
    set_levi_civita_spin_connection(t);
    const double sp = palatini_action(t, 1.0), se = eh_action(metric_from_tetrad(t), 1.0).value;
    ck.add("palatini_vs_eh", rel(sp, se), 0.03);
    out["palatini"] = sp;
    out["einstein_hilbert"] = se;

    // Composite field under a constant rotation.
    const Chart c3 = Chart::uniform({0, 0, 0}, {1, 1, 1}, 7);
    auto tr = TetradField::from_function(
        c3,
        [](const RVec& x) {
            RMat L = RMat::Identity(3, 3);
            L(0, 1) = 0.2 * std::sin(x(2));
            L(2, 0) = 0.1 * std::cos(x(1));
            L(1, 1) += 0.3 * x(0);
            return L;
        },
        RMat::Identity(3, 3));
    for (int s = 0; s < c3.volume(); ++s)
        for (int mu = 0; mu < 3; ++mu) {
            const RVec x = c3.point(s);
            RMat G = RMat::Zero(3, 3);
            G(0, 1) = std::sin(x(0) + mu);
            G(1, 0) = -G(0, 1);
            G(1, 2) = 0.5 * std::cos(x(1) * (mu + 1));
            G(2, 1) = -G(1, 2);
            tr.Gamma_spin[s][mu] = G;
        }
    const double ang = 0.7;
    RMat h = RMat::Identity(3, 3);
    h(0, 0) = h(2, 2) = std::cos(ang);
    h(0, 2) = -std::sin(ang);
    h(2, 0) = std::sin(ang);
    const auto base = composite_field(tr);
    const auto rot = composite_field(rotate_tetrad(tr, std::vector<RMat>(c3.volume(), h)));
    double cinv = 0.0;
    for (int s = 0; s < c3.volume(); ++s)
        if (c3.interior(s, 1))
            for (int r = 0; r < 3; ++r) cinv = std::max(cinv, (base.G[s][r] - rot.G[s][r]).cwiseAbs().maxCoeff());
    ck.add("composite_rotation", cinv, 1e-12);
    return out;
}

// Algebroid gradient by the chain rule through the calibrated lattice correspondence.
RVec algebroid_gradient_via_lattice(const ActionProblem& alg, const RVec& x) {
    const auto [a, b] = to_lattice_fields(alg.generalized(x));
    const auto lp = ActionProblem::lattice_ymh(alg.lie, alg.lattice, alg.mu);
    const RVec gl = gradient(lp, lp.pack(a, b), GradientMode::analytic).coeffs;
    const int V = alg.lattice.volume(), d = alg.lattice.d, dim = alg.lie->dim(), n2 = alg.lie->n * alg.lie->n;
    RVec out(alg.size());
    int i = 0;
    for (int s = 0; s < V; ++s)
        for (int mu = 0; mu < d; ++mu)
            for (int k = 0; k < dim; ++k) out(i++) = gl((s * (d + dim) + mu) * n2 + 1 + k);
    for (int s = 0; s < V; ++s)
        for (int m = 0; m < dim; ++m)
            for (int k = 0; k < dim; ++k) out(i++) = gl((s * (d + dim) + d + k) * n2 + 1 + m);
    return out;
}

json suite_optimize(Checker ck, int n, int samples, Rng& rng) {
    if (n == 1) {
        skip_all(ck, {"gradient_at_zero", "matrix_model_gradient", "lattice_gradient", "algebroid_gradient", "tangency", "classify_zero",
                      "classify_vacuum", "classify_conjugated", "minimize_matrix_model", "monotone",
                      "vacuum_start"});
        return json::object();
    }
    auto L = make_su(n);
    const auto mm = ActionProblem::matrix_model(L);
    const auto lp = ActionProblem::lattice_ymh(L, LatticeSpec::cubic(2, 4, 1.0), 1.2);
    const double g0 = gradient(mm, mm.zero_point(), GradientMode::analytic).coeffs.norm();
    double em = 0.0, el = 0.0, tang = 0.0;
    for (int i = 0; i < samples; ++i) {
        const RVec x = RVec::NullaryExpr(mm.size(), [&] { return 0.5 * rng.normal(); });
        const Gradient g = gradient(mm, x, GradientMode::analytic);
        em = std::max(em, rel_vec(g.coeffs, fd_gradient(mm, x)));
        for (const auto& m : g.matrices) tang = std::max(tang, max_abs(m + m.adjoint()));
        const RVec y = RVec::NullaryExpr(lp.size(), [&] { return 0.5 * rng.normal(); });
        el = std::max(el, rel_vec(gradient(lp, y, GradientMode::analytic).coeffs, fd_gradient(lp, y)));
    }
    const auto ap = ActionProblem::algebroid(L, LatticeSpec::cubic(2, 3, 1.0), 1.2);
    double ea = 0.0;
    for (int i = 0; i < std::min(samples, 3); ++i) {
        const RVec z = RVec::NullaryExpr(ap.size(), [&] { return 0.5 * rng.normal(); });
        ea = std::max(ea, rel_vec(algebroid_gradient_via_lattice(ap, z), fd_gradient(ap, z)));
    }
    ck.add("gradient_at_zero", g0, 1e-14);
    ck.add("matrix_model_gradient", em, 1e-5);
    ck.add("lattice_gradient", el, 1e-5);
    ck.add("algebroid_gradient", ea, 1e-5);
    ck.add("tangency", tang, 1e-12);

    const LatticeSpec lat = LatticeSpec::cubic(2, 4, 1.0);
    const auto c0 = classify_vacuum(ScalarMultipletB(lat, n), *L);
    const auto c1 = classify_vacuum(vacuum_orbit2(lat, *L), *L);
    const Mat g = rng.unitary(n);
    std::vector<Mat> conj;
    for (const auto& e : L->basis) conj.push_back(g.adjoint() * (I * e) * g);
    const auto c2 = classify_vacuum(constant_scalar(lat, conj), *L);
    ck.add("classify_zero", c0.orbit == Orbit::orbit1 ? c0.distance_orbit1 : 1.0, 0.0);
    ck.add("classify_vacuum", c1.orbit == Orbit::orbit2 ? c1.distance_orbit2 : 1.0, 1e-12);
    ck.add("classify_conjugated", c2.orbit == Orbit::orbit2 ? c2.distance_orbit2 : 1.0, 1e-12);

    RVec x0 = mm.zero_point();
    for (int i = 0; i < x0.size(); ++i) x0(i) += 0.1 * rng.normal();
    const MinimizeResult r = minimize(mm, x0, MinimizeOptions{});
    bool monotone = true;
    for (size_t i = 1; i < r.trace.size(); ++i) monotone = monotone && r.trace[i] <= r.trace[i - 1];
    ck.add("minimize_matrix_model", r.trace.back(), 1e-6);
    ck.add_bool("monotone", monotone);
    const MinimizeResult rv = minimize(mm, mm.vacuum_point(), MinimizeOptions{});
    ck.add_bool("vacuum_start", rv.iterations == 0 && rv.converged);
    return {{"matrix_model_gradient", em}, {"lattice_gradient", el}, {"algebroid_gradient", ea},
            {"minimize_iterations", r.iterations},
            {"minimize_final_action", r.trace.back()}};
}

}  // namespace gb
