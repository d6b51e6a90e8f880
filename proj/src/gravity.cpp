#include "gaugebench/gravity.hpp"

#include "gaugebench/lattice.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace gb {

namespace {

constexpr double nan_v = std::numeric_limits<double>::quiet_NaN();

RMat nan_mat(int r, int c) { return RMat::Constant(r, c, nan_v); }

}  // namespace

Chart Chart::uniform(const std::vector<double>& lo, const std::vector<double>& hi, int n) {
    Chart c{static_cast<int>(lo.size()), lo, hi, std::vector<int>(lo.size(), n)};
    c.validate();
    return c;
}

void Chart::validate() const {
    if (d < 1 || static_cast<int>(lo.size()) != d || static_cast<int>(hi.size()) != d || static_cast<int>(N.size()) != d)
        throw Error(ErrorKind::invalid_argument, "chart ranges and resolutions disagree with d");
    for (int mu = 0; mu < d; ++mu) {
        if (!(hi[mu] > lo[mu])) throw Error(ErrorKind::invalid_argument, "chart range must be increasing");
        if (N[mu] < 3) throw Error(ErrorKind::invalid_argument, "chart needs at least 3 points per axis");
    }
}

double Chart::cell_volume() const {
    double v = 1.0;
    for (int mu = 0; mu < d; ++mu) v *= h(mu);
    return v;
}

int Chart::volume() const {
    int v = 1;
    for (int n : N) v *= n;
    return v;
}

std::vector<int> Chart::index(int s) const {
    std::vector<int> x(d);
    for (int mu = 0; mu < d; ++mu) {
        x[mu] = s % N[mu];
        s /= N[mu];
    }
    return x;
}

RVec Chart::point(int s) const {
    const auto i = index(s);
    RVec p(d);
    for (int mu = 0; mu < d; ++mu) p(mu) = lo[mu] + i[mu] * h(mu);
    return p;
}

int Chart::neighbor(int s, int mu, int step) const {
    int stride = 1;
    for (int nu = 0; nu < mu; ++nu) stride *= N[nu];
    return s + step * stride;
}

bool Chart::interior(int s, int margin) const {
    const auto i = index(s);
    for (int mu = 0; mu < d; ++mu)
        if (i[mu] < margin || i[mu] > N[mu] - 1 - margin) return false;
    return true;
}

MetricGrid MetricGrid::from_function(const Chart& c, const std::function<RMat(const RVec&)>& f, Signature s) {
    c.validate();
    MetricGrid m{c, {}, s};
    m.g.resize(c.volume());
    for (int i = 0; i < c.volume(); ++i) {
        const RMat v = f(c.point(i));
        m.g[i] = 0.5 * (v + v.transpose());
    }
    return m;
}

ConnectionField::ConnectionField(const Chart& c, int margin_)
    : chart(c), d(c.d), margin(margin_), G(c.volume(), std::vector<RMat>(c.d, nan_mat(c.d, c.d))) {}

namespace {

template <class F>
RMat diff_mat(const Chart& c, int s, int mu, F get) {
    return (get(c.neighbor(s, mu, 1)) - get(c.neighbor(s, mu, -1))) / (2.0 * c.h(mu));
}

}  // namespace

ConnectionField christoffel(const MetricGrid& m) {
    const Chart& c = m.chart;
    const int d = c.d;
    ConnectionField out(c, 1);
    for (int s = 0; s < c.volume(); ++s) {
        if (!c.interior(s, 1)) continue;
        const RMat& g = m.g[s];
        if (std::abs(g.determinant()) <= 1e-10) throw Error(ErrorKind::degenerate_metric, "singular metric at an interior site");
        const RMat gi = g.inverse();
        std::vector<RMat> dg(d);
        for (int l = 0; l < d; ++l) dg[l] = diff_mat(c, s, l, [&](int t) { return m.g[t]; });
        for (int rho = 0; rho < d; ++rho)
            for (int mu = 0; mu < d; ++mu)
                for (int nu = mu; nu < d; ++nu) {
                    double v = 0.0;
                    for (int sg = 0; sg < d; ++sg)
                        v += gi(rho, sg) * (dg[nu](sg, mu) + dg[mu](sg, nu) - dg[sg](mu, nu));
                    out.G[s][rho](mu, nu) = out.G[s][rho](nu, mu) = 0.5 * v;
                }
    }
    return out;
}

CurvatureTensors curvature_tensors(const ConnectionField& Gam) {
    const Chart& c = Gam.chart;
    const int d = c.d, V = c.volume();
    CurvatureTensors out;
    out.chart = c;
    out.d = d;
    out.margin = Gam.margin + 1;
    out.riemann.assign(V, std::vector<RMat>(d * d, nan_mat(d, d)));
    out.torsion.assign(V, std::vector<RMat>(d, nan_mat(d, d)));
    out.ricci.assign(V, nan_mat(d, d));
    for (int s = 0; s < V; ++s) {
        if (c.interior(s, Gam.margin))
            for (int rho = 0; rho < d; ++rho) out.torsion[s][rho] = Gam.G[s][rho] - Gam.G[s][rho].transpose();
        if (!c.interior(s, out.margin)) continue;
        // dG[mu][rho](nu, sigma) = ∂_μ Γ^ρ_{νσ}
        std::vector<std::vector<RMat>> dG(d, std::vector<RMat>(d));
        for (int mu = 0; mu < d; ++mu)
            for (int rho = 0; rho < d; ++rho) dG[mu][rho] = diff_mat(c, s, mu, [&](int t) { return Gam.G[t][rho]; });
        const auto& G = Gam.G[s];
        for (int rho = 0; rho < d; ++rho)
            for (int sg = 0; sg < d; ++sg) {
                RMat& R = out.riemann[s][rho * d + sg];
                for (int mu = 0; mu < d; ++mu) {
                    R(mu, mu) = 0.0;
                    for (int nu = mu + 1; nu < d; ++nu) {
                        double v = dG[mu][rho](nu, sg) - dG[nu][rho](mu, sg);
                        for (int e = 0; e < d; ++e) v += G[rho](mu, e) * G[e](nu, sg) - G[rho](nu, e) * G[e](mu, sg);
                        R(mu, nu) = v;
                        R(nu, mu) = -v;
                    }
                }
            }
        RMat ric = RMat::Zero(d, d);
        for (int sg = 0; sg < d; ++sg)
            for (int nu = 0; nu < d; ++nu)
                for (int rho = 0; rho < d; ++rho) ric(sg, nu) += out.riemann[s][rho * d + sg](rho, nu);
        out.ricci[s] = ric;
    }
    return out;
}

std::vector<double> scalar_curvature(const MetricGrid& m, const CurvatureTensors& c) {
    std::vector<double> R(m.chart.volume(), nan_v);
    for (int s = 0; s < m.chart.volume(); ++s) {
        if (!m.chart.interior(s, c.margin)) continue;
        R[s] = (m.g[s].inverse().cwiseProduct(c.ricci[s])).sum();
    }
    return R;
}

double metric_compatibility_residual(const MetricGrid& m, const ConnectionField& Gam) {
    const Chart& c = m.chart;
    const int d = c.d;
    const int margin = std::max(2, Gam.margin);
    double worst = 0.0;
    for (int s = 0; s < c.volume(); ++s) {
        if (!c.interior(s, margin)) continue;
        for (int rho = 0; rho < d; ++rho) {
            // Five-point stencil, independent of the one inside christoffel.
            const RMat dg = (8.0 * (m.g[c.neighbor(s, rho, 1)] - m.g[c.neighbor(s, rho, -1)]) -
                             (m.g[c.neighbor(s, rho, 2)] - m.g[c.neighbor(s, rho, -2)])) /
                            (12.0 * c.h(rho));
            for (int mu = 0; mu < d; ++mu)
                for (int nu = 0; nu < d; ++nu) {
                    double v = dg(mu, nu);
                    for (int sg = 0; sg < d; ++sg)
                        v -= Gam.G[s][sg](rho, mu) * m.g[s](sg, nu) + Gam.G[s][sg](rho, nu) * m.g[s](mu, sg);
                    worst = std::max(worst, std::abs(v));
                }
        }
    }
    return worst;
}

ActionValue eh_action(const MetricGrid& m, double G_newton) {
    if (!(G_newton > 0.0)) throw Error(ErrorKind::invalid_argument, "Newton constant must be positive");
    const ConnectionField Gam = christoffel(m);
    const CurvatureTensors ct = curvature_tensors(Gam);
    const std::vector<double> R = scalar_curvature(m, ct);
    std::vector<double> density;
    for (int s = 0; s < m.chart.volume(); ++s)
        if (m.chart.interior(s, ct.margin)) density.push_back(R[s] * std::sqrt(std::abs(m.g[s].determinant())));
    const double sum = ordered_sum(density) * m.chart.cell_volume();
    return {-sum / (16.0 * std::numbers::pi * G_newton), m.chart.d != 4};
}

TetradField TetradField::from_function(const Chart& c, const std::function<RMat(const RVec&)>& f, const RMat& eta) {
    c.validate();
    TetradField t;
    t.chart = c;
    t.eta = eta;
    t.Lambda.resize(c.volume());
    for (int s = 0; s < c.volume(); ++s) t.Lambda[s] = f(c.point(s));
    t.Gamma_spin.assign(c.volume(), std::vector<RMat>(c.d, RMat::Zero(c.d, c.d)));
    return t;
}

namespace {

void require_invertible(const RMat& L) {
    if (!(std::abs(L.determinant()) > 1e-12)) throw Error(ErrorKind::degenerate_tetrad, "tetrad is not invertible");
}

}  // namespace

MetricGrid metric_from_tetrad(const TetradField& t) {
    MetricGrid m;
    m.chart = t.chart;
    m.signature = (t.eta.diagonal().array() < 0.0).any() ? Signature::lorentzian : Signature::euclidean;
    m.g.resize(t.Lambda.size());
    for (size_t s = 0; s < t.Lambda.size(); ++s) {
        require_invertible(t.Lambda[s]);
        const RMat g = t.Lambda[s].transpose() * t.eta * t.Lambda[s];
        m.g[s] = 0.5 * (g + g.transpose());
    }
    return m;
}

void set_levi_civita_spin_connection(TetradField& t) {
    const Chart& c = t.chart;
    const int d = c.d, V = c.volume();
    const RMat eta_inv = t.eta.inverse();
    // Unknowns ω_{ab μ} for a < b.
    std::vector<std::array<int, 2>> pairs;
    for (int a = 0; a < d; ++a)
        for (int b = a + 1; b < d; ++b) pairs.push_back({a, b});
    const int np = static_cast<int>(pairs.size());
    auto unknown = [&](int p, int mu) { return p * d + mu; };
    auto pair_index = [&](int a, int b) {
        for (int p = 0; p < np; ++p)
            if (pairs[p][0] == a && pairs[p][1] == b) return p;
        return -1;
    };
    const int nu_count = np * d;
    for (int s = 0; s < V; ++s) {
        if (!c.interior(s, 1)) {
            t.Gamma_spin[s].assign(d, nan_mat(d, d));
            continue;
        }
        const RMat& L = t.Lambda[s];
        require_invertible(L);
        std::vector<RMat> dL(d);
        for (int mu = 0; mu < d; ++mu) dL[mu] = diff_mat(c, s, mu, [&](int q) { return t.Lambda[q]; });
        // Γ^a_{bμ} = η^{ac} ω_{cbμ}; row (a, μ<ν) of ∂_μΛ^a_ν − ∂_νΛ^a_μ + Γ^a_{bμ}Λ^b_ν − Γ^a_{bν}Λ^b_μ = 0
        RMat M = RMat::Zero(d * np, nu_count);
        RVec rhs(d * np);
        int row = 0;
        for (int a = 0; a < d; ++a)
            for (int mu = 0; mu < d; ++mu)
                for (int nu = mu + 1; nu < d; ++nu, ++row) {
                    rhs(row) = -(dL[mu](a, nu) - dL[nu](a, mu));
                    for (int cc = 0; cc < d; ++cc) {
                        if (eta_inv(a, cc) == 0.0) continue;
                        for (int b = 0; b < d; ++b) {
                            if (b == cc) continue;
                            const int p = cc < b ? pair_index(cc, b) : pair_index(b, cc);
                            const double sgn = cc < b ? 1.0 : -1.0;
                            M(row, unknown(p, mu)) += eta_inv(a, cc) * sgn * L(b, nu);
                            M(row, unknown(p, nu)) -= eta_inv(a, cc) * sgn * L(b, mu);
                        }
                    }
                }
        Eigen::FullPivLU<RMat> lu(M);
        if (!lu.isInvertible()) throw Error(ErrorKind::degenerate_tetrad, "spin connection system is singular");
        const RVec x = lu.solve(rhs);
        for (int mu = 0; mu < d; ++mu) {
            RMat w = RMat::Zero(d, d);  // ω_{cb}
            for (int p = 0; p < np; ++p) {
                w(pairs[p][0], pairs[p][1]) = x(unknown(p, mu));
                w(pairs[p][1], pairs[p][0]) = -x(unknown(p, mu));
            }
            t.Gamma_spin[s][mu] = eta_inv * w;
        }
    }
}

ConnectionField composite_field(const TetradField& t) {
    const Chart& c = t.chart;
    const int d = c.d;
    ConnectionField out(c, 1);
    for (int s = 0; s < c.volume(); ++s) {
        if (!c.interior(s, 1)) continue;
        require_invertible(t.Lambda[s]);
        const RMat Li = t.Lambda[s].inverse();
        for (int mu = 0; mu < d; ++mu) {
            const RMat dL = diff_mat(c, s, mu, [&](int q) { return t.Lambda[q]; });
            const RMat Gt = Li * (t.Gamma_spin[s][mu] * t.Lambda[s] + dL);  // (ρ, ν)
            for (int rho = 0; rho < d; ++rho)
                for (int nu = 0; nu < d; ++nu) out.G[s][rho](mu, nu) = Gt(rho, nu);
        }
    }
    return out;
}

TetradField rotate_tetrad(const TetradField& t, const std::vector<RMat>& h) {
    const Chart& c = t.chart;
    const int d = c.d;
    if (static_cast<int>(h.size()) != c.volume()) throw Error(ErrorKind::invalid_argument, "one rotation per site");
    TetradField r = t;
    for (int s = 0; s < c.volume(); ++s) {
        if (std::abs(h[s].determinant()) <= 1e-12) throw Error(ErrorKind::invalid_gauge_element, "rotation is singular");
        const RMat hi = h[s].inverse();
        r.Lambda[s] = hi * t.Lambda[s];
        for (int mu = 0; mu < d; ++mu) {
            RMat dh = RMat::Zero(d, d);
            if (c.interior(s, 1))
                dh = diff_mat(c, s, mu, [&](int q) { return h[q]; });
            else
                dh.setConstant(nan_v);
            r.Gamma_spin[s][mu] = hi * t.Gamma_spin[s][mu] * h[s] + hi * dh;
        }
    }
    return r;
}

namespace {

struct Perm {
    std::array<int, 4> p;
    int sign;
};

std::vector<Perm> perms4() {
    std::vector<Perm> out;
    std::array<int, 4> p{0, 1, 2, 3};
    do {
        int inv = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (p[i] > p[j]) ++inv;
        out.push_back({p, inv % 2 == 0 ? 1 : -1});
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

}  // namespace

double palatini_action(const TetradField& t, double G_newton) {
    const Chart& c = t.chart;
    if (c.d != 4) throw Error(ErrorKind::dimension_error, "Palatini action needs d = 4");
    if (!(G_newton > 0.0)) throw Error(ErrorKind::invalid_argument, "Newton constant must be positive");
    const int d = 4;
    static const std::vector<Perm> P = perms4();
    std::vector<double> density;
    for (int s = 0; s < c.volume(); ++s) {
        if (!c.interior(s, 2)) continue;
        const RMat& L = t.Lambda[s];
        require_invertible(L);
        const RMat g = L.transpose() * t.eta * L;
        const RMat gi = g.inverse();
        const double vol = std::sqrt(std::abs(g.determinant()));
        const RMat Ldown = t.eta * L;  // Λ_{aν}
        const auto& G = t.Gamma_spin[s];
        // Curvature 2-form components (no ½): A^a_b{μν} = 2 R^a_{bμν}
        std::vector<std::vector<RMat>> A(d, std::vector<RMat>(d, RMat::Zero(d, d)));  // A[mu][nu](a, b)
        for (int mu = 0; mu < d; ++mu)
            for (int nu = mu + 1; nu < d; ++nu) {
                const RMat dmu = diff_mat(c, s, mu, [&](int q) { return t.Gamma_spin[q][nu]; });
                const RMat dnu = diff_mat(c, s, nu, [&](int q) { return t.Gamma_spin[q][mu]; });
                const RMat R = dmu - dnu + G[mu] * G[nu] - G[nu] * G[mu];
                A[mu][nu] = 2.0 * R;
                A[nu][mu] = -2.0 * R;
            }
        double top = 0.0;
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) {
                // β = Λ^b ∧ Λ_a with components Λ^b_μ Λ_{aν} − Λ^b_ν Λ_{aμ}, indices raised by g⁻¹.
                RMat B(d, d);
                for (int mu = 0; mu < d; ++mu)
                    for (int nu = 0; nu < d; ++nu) B(mu, nu) = L(b, mu) * Ldown(a, nu) - L(b, nu) * Ldown(a, mu);
                const RMat Bup = gi * B * gi.transpose();
                // (⋆β)_{ρσ} = ½ o √|g| ε_{αβρσ} β^{αβ}
                RMat star = RMat::Zero(d, d);
                for (const auto& p : P)
                    star(p.p[2], p.p[3]) += 0.5 * palatini_orientation * vol * p.sign * Bup(p.p[0], p.p[1]);
                // α ∧ ⋆β = ¼ α_{μν} (⋆β)_{ρσ} ε^{μνρσ}
                for (const auto& p : P) top += 0.25 * p.sign * A[p.p[0]][p.p[1]](a, b) * star(p.p[2], p.p[3]);
            }
        density.push_back(top);
    }
    return -ordered_sum(density) * c.cell_volume() / (32.0 * std::numbers::pi * G_newton);
}

}  // namespace gb
