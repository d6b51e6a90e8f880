#include "gaugebench/spectral.hpp"

#include <cmath>

namespace gb {

KoSigns ko_signs(int ko_dim) {
    static const int eps[8] = {1, 1, -1, -1, -1, -1, 1, 1};
    static const int epsp[8] = {1, -1, 1, 1, 1, -1, 1, 1};
    static const int epspp[8] = {1, 0, -1, 0, 1, 0, -1, 0};
    const int k = ((ko_dim % 8) + 8) % 8;
    KoSigns s{eps[k], epsp[k], std::nullopt};
    if (epspp[k] != 0) s.eps_dprime = epspp[k];
    return s;
}

int FiniteSpectralTriple::hilbert_dim() const {
    int n = 0;
    for (const auto& r : rep) n += blocks.at(r.block) * r.multiplicity;
    return n;
}

Mat FiniteSpectralTriple::pi(const AlgebraElement& a) const {
    if (a.size() != blocks.size()) throw Error(ErrorKind::invalid_argument, "algebra element has the wrong number of blocks");
    for (size_t i = 0; i < blocks.size(); ++i)
        if (a[i].rows() != blocks[i] || a[i].cols() != blocks[i])
            throw Error(ErrorKind::invalid_argument, "algebra block has the wrong size");
    const int N = hilbert_dim();
    Mat P = Mat::Zero(N, N);
    int off = 0;
    for (const auto& r : rep) {
        const int db = blocks[r.block];
        for (int i = 0; i < db; ++i)
            for (int j = 0; j < db; ++j) {
                const cplx v = a[r.block](i, j);
                if (v == 0.0) continue;
                for (int k = 0; k < r.multiplicity; ++k) P(off + i * r.multiplicity + k, off + j * r.multiplicity + k) = v;
            }
        off += db * r.multiplicity;
    }
    return P;
}

Mat FiniteSpectralTriple::conj_J(const Mat& X) const {
    if (!K) throw Error(ErrorKind::invalid_argument, "triple has no real structure");
    return *K * X.conjugate() * K->adjoint();
}

AlgebraElement FiniteSpectralTriple::identity() const {
    AlgebraElement a;
    for (int d : blocks) a.push_back(Mat::Identity(d, d));
    return a;
}

std::vector<AlgebraElement> FiniteSpectralTriple::spanning_set() const {
    std::vector<AlgebraElement> out;
    for (size_t b = 0; b < blocks.size(); ++b)
        for (int i = 0; i < blocks[b]; ++i)
            for (int j = 0; j < blocks[b]; ++j) {
                AlgebraElement a;
                for (int d : blocks) a.push_back(Mat::Zero(d, d));
                a[b](i, j) = 1.0;
                out.push_back(a);
            }
    return out;
}

Report check_axioms(const FiniteSpectralTriple& t) {
    constexpr double tol = 1e-12;
    const int N = t.hilbert_dim();
    if (t.D.rows() != N || t.D.cols() != N) throw Error(ErrorKind::invalid_argument, "D has the wrong size");
    const KoSigns sg = ko_signs(t.ko_dim);
    if (t.gamma && !sg.eps_dprime)
        throw Error(ErrorKind::sign_table_gap, "no chirality sign for an odd KO-dimension");

    Report r;
    const Mat Id = Mat::Identity(N, N);
    const auto span = t.spanning_set();
    std::vector<Mat> pis;
    for (const auto& a : span) pis.push_back(t.pi(a));

    r.add("D_hermitian", max_abs(t.D - t.D.adjoint()), tol);
    r.add_bool("bounded_commutator", true);
    if (t.gamma) {
        const Mat& g = *t.gamma;
        r.add("gamma_hermitian", max_abs(g - g.adjoint()), tol);
        r.add("gamma_square", max_abs(g * g - Id), tol);
        r.add("gamma_anticommutes_D", max_abs(t.D * g + g * t.D), tol);
        double c = 0.0;
        for (const auto& p : pis) c = std::max(c, max_abs(comm(g, p)));
        r.add("gamma_commutes_pi", c, tol);
    } else {
        r.skip("gamma_hermitian");
        r.skip("gamma_square");
        r.skip("gamma_anticommutes_D");
        r.skip("gamma_commutes_pi");
    }
    if (t.K) {
        const Mat& K = *t.K;
        r.add("J_antiunitary", max_abs(K.adjoint() * K - Id), tol);
        r.add("J_square", max_abs(K * K.conjugate() - double(sg.eps) * Id), tol);
        r.add("J_D", max_abs(t.conj_J(t.D) - double(sg.eps_prime) * t.D), tol);
        if (t.gamma)
            r.add("J_gamma", max_abs(t.conj_J(*t.gamma) - double(*sg.eps_dprime) * *t.gamma), tol);
        else
            r.skip("J_gamma");
        double comm_res = 0.0, first = 0.0;
        std::vector<Mat> jp;
        for (const auto& p : pis) jp.push_back(t.conj_J(p));
        for (size_t i = 0; i < pis.size(); ++i) {
            const Mat da = comm(t.D, pis[i]);
            for (size_t j = 0; j < pis.size(); ++j) {
                comm_res = std::max(comm_res, max_abs(comm(jp[i], pis[j])));
                first = std::max(first, max_abs(comm(da, jp[j])));
            }
        }
        r.add("commutant", comm_res, tol);
        r.add("first_order", first, tol);
    } else {
        for (const char* n : {"J_antiunitary", "J_square", "J_D", "J_gamma", "commutant", "first_order"}) r.skip(n);
    }
    return r;
}

Mat represent_one_form(const FiniteSpectralTriple& t, const OneFormTerms& terms) {
    const int N = t.hilbert_dim();
    Mat w = Mat::Zero(N, N);
    for (const auto& [a, b] : terms) w += t.pi(a) * comm(t.D, t.pi(b));
    return w;
}

namespace {

AlgebraElement adjoint(const AlgebraElement& a) {
    AlgebraElement r;
    for (const auto& m : a) r.push_back(m.adjoint());
    return r;
}

AlgebraElement product(const AlgebraElement& a, const AlgebraElement& b) {
    AlgebraElement r;
    for (size_t i = 0; i < a.size(); ++i) r.push_back(a[i] * b[i]);
    return r;
}

AlgebraElement scaled(const AlgebraElement& a, cplx s) {
    AlgebraElement r;
    for (const auto& m : a) r.push_back(s * m);
    return r;
}

AlgebraElement unit_like(const AlgebraElement& a) {
    AlgebraElement r;
    for (const auto& m : a) r.push_back(Mat::Identity(m.rows(), m.cols()));
    return r;
}

}  // namespace

OneFormTerms hermitian_one_form(const OneFormTerms& terms) {
    // (a db)* = b* d(a*) − d(b* a*)
    OneFormTerms out = terms;
    for (const auto& [a, b] : terms) {
        out.emplace_back(adjoint(b), adjoint(a));
        out.emplace_back(scaled(unit_like(a), -1.0), product(adjoint(b), adjoint(a)));
    }
    return out;
}

OneFormTerms gauge_one_form(const OneFormTerms& terms, const AlgebraElement& u) {
    // u a db u* = (ua) d(b u*) − (u a b) d u*
    const AlgebraElement us = adjoint(u);
    OneFormTerms out;
    for (const auto& [a, b] : terms) {
        out.emplace_back(product(u, a), product(b, us));
        out.emplace_back(scaled(product(product(u, a), b), -1.0), us);
    }
    out.emplace_back(u, us);
    return out;
}

FiniteSpectralTriple fluctuate(const FiniteSpectralTriple& t, const Mat& omega) {
    const int N = t.hilbert_dim();
    if (omega.rows() != N || omega.cols() != N) throw Error(ErrorKind::invalid_fluctuation, "fluctuation has the wrong size");
    if (max_abs(omega - omega.adjoint()) > 1e-12 * std::max(1.0, max_abs(omega)))
        throw Error(ErrorKind::invalid_fluctuation, "fluctuation is not Hermitian");
    FiniteSpectralTriple r = t;
    r.D = t.D + omega;
    if (t.K) r.D += double(ko_signs(t.ko_dim).eps_prime) * t.conj_J(omega);
    return r;
}

FiniteSpectralTriple gauge_transform_spectral(const FiniteSpectralTriple& t, const AlgebraElement& u) {
    for (const auto& m : u)
        if (!is_unitary(m, 1e-12)) throw Error(ErrorKind::invalid_gauge_element, "gauge element is not unitary");
    const Mat pu = t.pi(u);
    const Mat inner = pu * comm(t.D, pu.adjoint());
    FiniteSpectralTriple r = t;
    r.D = t.D + inner;
    if (t.K) r.D += double(ko_signs(t.ko_dim).eps_prime) * t.conj_J(inner);
    return r;
}

double smooth_bump(double x) {
    const double a = std::abs(x);
    if (a <= 1.0) return 1.0;
    if (a >= 2.0) return 0.0;
    auto f = [](double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; };
    const double s = a - 1.0;
    return f(1.0 - s) / (f(1.0 - s) + f(s));
}

double gaussian_cutoff(double x) { return std::exp(-x * x); }

double spectral_action(const FiniteSpectralTriple& t, const Cutoff& chi, double Lambda) {
    if (!(Lambda > 0.0)) throw Error(ErrorKind::invalid_cutoff, "cutoff must be positive");
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (t.D + t.D.adjoint()), Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        const double l = es.eigenvalues()(i);
        s += chi(l * l / Lambda);
    }
    return s;
}

FiniteSpectralTriple two_point_minimal(double m) {
    FiniteSpectralTriple t;
    t.blocks = {1, 1};
    t.rep = {{0, 1}, {1, 1}};
    t.D = Mat::Zero(2, 2);
    t.D(0, 1) = t.D(1, 0) = m;
    Mat g = Mat::Identity(2, 2);
    g(1, 1) = -1.0;
    t.gamma = g;
    t.ko_dim = 0;
    return t;
}

FiniteSpectralTriple bimodule_triple(const std::vector<int>& blocks, const std::vector<int>& chirality,
                                     const std::vector<Coupling>& couplings) {
    const int nb = static_cast<int>(blocks.size());
    if (static_cast<int>(chirality.size()) != nb) throw Error(ErrorKind::invalid_argument, "one chirality per block");
    std::vector<std::vector<int>> offset(nb, std::vector<int>(nb));
    int N = 0;
    FiniteSpectralTriple t;
    t.blocks = blocks;
    for (int i = 0; i < nb; ++i)
        for (int j = 0; j < nb; ++j) {
            offset[i][j] = N;
            N += blocks[i] * blocks[j];
            t.rep.push_back({i, blocks[j]});
        }
    // Sector (i, j) entry (r, c) sits at offset + r * d_j + c.
    auto idx = [&](int i, int j, int r, int c) { return offset[i][j] + r * blocks[j] + c; };

    Mat K = Mat::Zero(N, N);
    Mat g = Mat::Zero(N, N);
    for (int i = 0; i < nb; ++i)
        for (int j = 0; j < nb; ++j)
            for (int r = 0; r < blocks[i]; ++r)
                for (int c = 0; c < blocks[j]; ++c) {
                    K(idx(j, i, c, r), idx(i, j, r, c)) = 1.0;
                    g(idx(i, j, r, c), idx(i, j, r, c)) = double(chirality[i] * chirality[j]);
                }

    Mat Y = Mat::Zero(N, N);
    for (const auto& cp : couplings) {
        if (cp.Y.rows() != blocks.at(cp.to) || cp.Y.cols() != blocks.at(cp.from))
            throw Error(ErrorKind::invalid_argument, "coupling has the wrong shape");
        for (int j = 0; j < nb; ++j)
            for (int r = 0; r < blocks[cp.to]; ++r)
                for (int rp = 0; rp < blocks[cp.from]; ++rp)
                    for (int c = 0; c < blocks[j]; ++c) {
                        Y(idx(cp.to, j, r, c), idx(cp.from, j, rp, c)) += cp.Y(r, rp);
                        Y(idx(cp.from, j, rp, c), idx(cp.to, j, r, c)) += std::conj(cp.Y(r, rp));
                    }
    }
    t.K = K;
    t.gamma = g;
    t.ko_dim = 0;
    t.D = Y + t.conj_J(Y);
    return t;
}

FiniteSpectralTriple two_point_real(double m) {
    return bimodule_triple({1, 1}, {1, -1}, {{0, 1, Mat::Constant(1, 1, m)}});
}

FiniteSpectralTriple m2_plus_c(const Eigen::Vector2cd& y) {
    Mat Y(1, 2);
    Y(0, 0) = y(0);
    Y(0, 1) = y(1);
    return bimodule_triple({2, 1}, {1, -1}, {{0, 1, Y}});
}

AlgebraElement random_algebra_element(const std::vector<int>& blocks, Rng& rng) {
    AlgebraElement a;
    for (int d : blocks) a.push_back(rng.complex_matrix(d, d));
    return a;
}

AlgebraElement random_unitary_element(const std::vector<int>& blocks, Rng& rng) {
    AlgebraElement a;
    for (int d : blocks) a.push_back(rng.unitary(d));
    return a;
}

}  // namespace gb
