#include "gaugebench/latticeymh.hpp"

#include <algorithm>
#include <cmath>

namespace gb {

namespace {

void require_compatible(const GaugeFieldA& a, const ScalarMultipletB& b, const LieData& lie) {
    if (!(a.lattice == b.lattice) || a.n != b.n || a.n != lie.n || b.ncomp != lie.dim())
        throw Error(ErrorKind::incompatible_fields, "gauge field, scalar multiplet and algebra disagree");
}

Mat diff_at(const LatticeField& f, int s, int mu, int c) {
    const int sp = f.lattice.shift(s, mu, 1), sm = f.lattice.shift(s, mu, -1);
    return (f.at(sp, c) - f.at(sm, c)) / (2.0 * f.lattice.h);
}

struct SiteSums {
    double geo = 0.0, mix = 0.0, alg = 0.0;
};

SiteSums site_sums(const GaugeFieldA& a, const ScalarMultipletB& b, const LieData& lie, int s) {
    const int d = a.lattice.d, dim = lie.dim();
    SiteSums r;
    for (int mu = 0; mu < d; ++mu)
        for (int nu = mu + 1; nu < d; ++nu) {
            const Mat f = diff_at(a, s, mu, nu) - diff_at(a, s, nu, mu) + comm(a.at(s, mu), a.at(s, nu));
            r.geo += 2.0 * f.squaredNorm();
        }
    for (int mu = 0; mu < d; ++mu)
        for (int k = 0; k < dim; ++k) {
            const Mat f = diff_at(b, s, mu, k) + comm(a.at(s, mu), b.at(s, k));
            r.mix += f.squaredNorm();
        }
    for (int k = 0; k < dim; ++k)
        for (int l = k + 1; l < dim; ++l) {
            Mat f = comm(b.at(s, k), b.at(s, l));
            for (int m = 0; m < dim; ++m) {
                const double c = lie.C(m, k, l);
                if (c != 0.0) f -= c * b.at(s, m);
            }
            r.alg += 2.0 * f.squaredNorm();
        }
    return r;
}

}  // namespace

FieldStrength field_strength(const GaugeFieldA& a, const ScalarMultipletB& b, const LieData& lie) {
    require_compatible(a, b, lie);
    const int d = a.lattice.d, dim = lie.dim(), V = a.lattice.volume(), n = a.n;
    FieldStrength F;
    F.d = d;
    F.dim = dim;
    F.geo.assign(static_cast<size_t>(V) * d * d, Mat::Zero(n, n));
    F.mix.assign(static_cast<size_t>(V) * d * dim, Mat::Zero(n, n));
    F.alg.assign(static_cast<size_t>(V) * dim * dim, Mat::Zero(n, n));
    for (int s = 0; s < V; ++s) {
        for (int mu = 0; mu < d; ++mu)
            for (int nu = 0; nu < d; ++nu) {
                if (mu == nu) continue;
                F.geo[(static_cast<size_t>(s) * d + mu) * d + nu] =
                    diff_at(a, s, mu, nu) - diff_at(a, s, nu, mu) + comm(a.at(s, mu), a.at(s, nu));
            }
        for (int mu = 0; mu < d; ++mu)
            for (int k = 0; k < dim; ++k)
                F.mix[(static_cast<size_t>(s) * d + mu) * dim + k] = diff_at(b, s, mu, k) + comm(a.at(s, mu), b.at(s, k));
        for (int k = 0; k < dim; ++k)
            for (int l = 0; l < dim; ++l) {
                if (k == l) continue;
                Mat f = comm(b.at(s, k), b.at(s, l));
                for (int m = 0; m < dim; ++m) f -= lie.C(m, k, l) * b.at(s, m);
                F.alg[(static_cast<size_t>(s) * dim + k) * dim + l] = f;
            }
    }
    return F;
}

YMHTerms ymh_terms(const GaugeFieldA& a, const ScalarMultipletB& b, const LieData& lie, int workers) {
    require_compatible(a, b, lie);
    const int V = a.lattice.volume();
    std::vector<double> geo(V), mix(V), alg(V);
    parallel_ranges(V, workers, [&](int lo, int hi) {
        for (int s = lo; s < hi; ++s) {
            const SiteSums r = site_sums(a, b, lie, s);
            geo[s] = r.geo;
            mix[s] = r.mix;
            alg[s] = r.alg;
        }
    });
    return {ordered_sum(geo), ordered_sum(mix), ordered_sum(alg)};
}

double ymh_action(const GaugeFieldA& a, const ScalarMultipletB& b, const YMHParams& p, int workers) {
    const LieData& lie = *p.lie;
    const double n = lie.n;
    const YMHTerms t = ymh_terms(a, b, lie, workers);
    const double m2 = p.mu * p.mu;
    return a.lattice.cell_volume() / (4.0 * n) * (t.geo + m2 / (2.0 * n) * t.mix + m2 * m2 / (4.0 * n) * t.alg);
}

GaugedFields gauge_transform_lattice(const GaugeFieldA& a, const ScalarMultipletB& b, const std::vector<Mat>& g) {
    if (!(a.lattice == b.lattice) || a.n != b.n)
        throw Error(ErrorKind::incompatible_fields, "gauge field and scalar multiplet disagree");
    const LatticeSpec& lat = a.lattice;
    const int V = lat.volume(), d = lat.d;
    if (static_cast<int>(g.size()) != V) throw Error(ErrorKind::invalid_argument, "one gauge element per site");
    for (const auto& u : g)
        if (!is_unitary(u, 1e-12)) throw Error(ErrorKind::invalid_gauge_element, "gauge element is not unitary");

    LatticeField gf(lat, a.n, 1);
    for (int s = 0; s < V; ++s) gf.at(s, 0) = g[s];

    GaugedFields out{GaugeFieldA(lat, a.n), ScalarMultipletB(lat, b.n), 0.0};
    double resid = 0.0;
    auto project = [&resid](const Mat& x) {
        const Mat p = anti_hermitian_part(x);
        resid = std::max(resid, max_abs(x - p));
        return p;
    };
    for (int s = 0; s < V; ++s) {
        const Mat gi = g[s].adjoint();
        for (int mu = 0; mu < d; ++mu) {
            const Mat dg = diff_at(gf, s, mu, 0);
            out.a.at(s, mu) = project(gi * a.at(s, mu) * g[s] + gi * dg);
        }
        for (int k = 0; k < b.ncomp; ++k) out.b.at(s, k) = project(gi * b.at(s, k) * g[s]);
    }
    out.projection_residual = resid;
    return out;
}

double ym_action(const GaugeFieldA& a) {
    const int V = a.lattice.volume(), d = a.lattice.d;
    double sum = 0.0;
    for (int s = 0; s < V; ++s)
        for (int mu = 0; mu < d; ++mu)
            for (int nu = 0; nu < d; ++nu) {
                if (mu == nu) continue;
                const Mat f = diff_at(a, s, mu, nu) - diff_at(a, s, nu, mu) + comm(a.at(s, mu), a.at(s, nu));
                sum += f.squaredNorm();
            }
    return 0.5 * a.lattice.cell_volume() * sum;
}

double chern_simons(const GaugeFieldA& a) {
    if (a.lattice.d != 3) throw Error(ErrorKind::dimension_error, "Chern-Simons needs d = 3");
    static const int perms[6][4] = {{0, 1, 2, 1}, {1, 2, 0, 1}, {2, 0, 1, 1},
                                    {0, 2, 1, -1}, {2, 1, 0, -1}, {1, 0, 2, -1}};
    const int V = a.lattice.volume();
    cplx sum = 0.0;
    for (int s = 0; s < V; ++s) {
        cplx site = 0.0;
        for (const auto& p : perms) {
            const Mat& am = a.at(s, p[0]);
            const Mat dn = diff_at(a, s, p[1], p[2]);
            const cplx t = (am * dn).trace() + (2.0 / 3.0) * (am * a.at(s, p[1]) * a.at(s, p[2])).trace();
            site += static_cast<double>(p[3]) * t;
        }
        sum += site;
    }
    return a.lattice.cell_volume() * sum.real();
}

std::vector<Mat> u_n_basis(const LieData& lie) {
    std::vector<Mat> out;
    out.push_back(I * Mat::Identity(lie.n, lie.n));
    for (const auto& e : lie.basis) out.push_back(I * e);
    return out;
}

std::vector<double> mass_spectrum(const ScalarMultipletB& b0, const YMHParams& p) {
    const LieData& lie = *p.lie;
    const int V = b0.lattice.volume(), dim = lie.dim(), n = lie.n;
    if (b0.ncomp != dim || b0.n != n) throw Error(ErrorKind::incompatible_fields, "scalar multiplet and algebra disagree");
    for (int s = 1; s < V; ++s)
        for (int k = 0; k < dim; ++k)
            if (max_abs(b0.at(s, k) - b0.at(0, k)) > 1e-12)
                throw Error(ErrorKind::unsupported, "mass spectrum needs a constant background");

    // Frobenius-orthonormal basis of u(n).
    std::vector<Mat> T;
    T.push_back((I / std::sqrt(double(n))) * Mat::Identity(n, n));
    {
        // Gram-Schmidt on iE_k against the trace form.
        Eigen::SelfAdjointEigenSolver<RMat> es(lie.trace_form);
        const RMat W = es.operatorInverseSqrt();
        for (int a = 0; a < dim; ++a) {
            Mat t = Mat::Zero(n, n);
            for (int k = 0; k < dim; ++k) t += W(k, a) * (I * lie.basis[k]);
            T.push_back(t);
        }
    }
    const int nb = static_cast<int>(T.size());
    std::vector<std::vector<Mat>> ad(nb, std::vector<Mat>(dim));
    for (int a = 0; a < nb; ++a)
        for (int k = 0; k < dim; ++k) ad[a][k] = comm(T[a], b0.at(0, k));
    RMat M(nb, nb);
    const double pref = p.mu * p.mu / (2.0 * n);
    for (int a = 0; a < nb; ++a)
        for (int c = 0; c < nb; ++c) {
            double s = 0.0;
            for (int k = 0; k < dim; ++k) s += (ad[a][k].adjoint() * ad[c][k]).trace().real();
            M(a, c) = pref * s;
        }
    Eigen::SelfAdjointEigenSolver<RMat> es(M);
    std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + nb);
    std::sort(ev.begin(), ev.end());
    std::vector<double> out;
    for (int mu = 0; mu < b0.lattice.d; ++mu) out.insert(out.end(), ev.begin(), ev.end());
    return out;
}

GaugeFieldA constant_gauge_field(const LatticeSpec& lat, const std::vector<Mat>& a) {
    GaugeFieldA f(lat, static_cast<int>(a.at(0).rows()));
    f.set_from([&](const std::vector<int>&, int c) { return a[c]; });
    return f;
}

ScalarMultipletB constant_scalar(const LatticeSpec& lat, const std::vector<Mat>& b) {
    const int n = static_cast<int>(b.at(0).rows());
    ScalarMultipletB f(lat, n);
    if (static_cast<int>(b.size()) != f.ncomp) throw Error(ErrorKind::invalid_argument, "need n^2-1 components");
    f.set_from([&](const std::vector<int>&, int c) { return b[c]; });
    return f;
}

ScalarMultipletB vacuum_orbit2(const LatticeSpec& lat, const LieData& lie) {
    std::vector<Mat> b;
    for (const auto& e : lie.basis) b.push_back(I * e);
    return constant_scalar(lat, b);
}

}  // namespace gb
