#include "gaugebench/optimize.hpp"

#include <algorithm>
#include <cmath>

namespace gb {

const char* to_string(ActionKind k) {
    switch (k) {
        case ActionKind::matrix_model: return "matrix-model";
        case ActionKind::lattice_ymh: return "lattice-ymh";
        case ActionKind::algebroid: return "algebroid";
    }
    return "?";
}

const char* to_string(GradientMode m) { return m == GradientMode::analytic ? "analytic" : "fd"; }

const char* to_string(Orbit o) {
    switch (o) {
        case Orbit::orbit1: return "orbit-1";
        case Orbit::orbit2: return "orbit-2";
        case Orbit::other: return "other";
    }
    return "?";
}

ActionProblem ActionProblem::matrix_model(LiePtr lie) {
    ActionProblem p;
    p.kind = ActionKind::matrix_model;
    p.lie = std::move(lie);
    return p;
}

ActionProblem ActionProblem::lattice_ymh(LiePtr lie, const LatticeSpec& lat, double mu, int workers) {
    lat.validate();
    ActionProblem p;
    p.kind = ActionKind::lattice_ymh;
    p.lie = std::move(lie);
    p.lattice = lat;
    p.mu = mu;
    p.workers = workers;
    return p;
}

ActionProblem ActionProblem::algebroid(LiePtr lie, const LatticeSpec& lat, double mu, int workers) {
    ActionProblem p = lattice_ymh(std::move(lie), lat, mu, workers);
    p.kind = ActionKind::algebroid;
    return p;
}

int ActionProblem::size() const {
    const int n2 = lie->n * lie->n, dim = lie->dim();
    switch (kind) {
        case ActionKind::matrix_model: return dim * n2;
        case ActionKind::lattice_ymh: return lattice.volume() * (lattice.d + dim) * n2;
        case ActionKind::algebroid: return lattice.volume() * (lattice.d * dim + dim * dim);
    }
    return 0;
}

namespace {

Mat expand(const std::vector<Mat>& T, const RVec& x, int offset) {
    Mat m = Mat::Zero(T[0].rows(), T[0].cols());
    for (size_t j = 0; j < T.size(); ++j) m += x(offset + static_cast<int>(j)) * T[j];
    return m;
}

// Real coefficients of the anti-Hermitian part; T is orthogonal with tr(T†T) = n or 2.
void project(const std::vector<Mat>& T, const Mat& X, RVec& x, int offset) {
    for (size_t j = 0; j < T.size(); ++j)
        x(offset + static_cast<int>(j)) = (T[j].adjoint() * X).trace().real() / T[j].squaredNorm();
}

// ∂S/∂c_j = Re tr(G† T_j)
void pullback(const std::vector<Mat>& T, const Mat& G, RVec& g, int offset) {
    for (size_t j = 0; j < T.size(); ++j) g(offset + static_cast<int>(j)) = (G.adjoint() * T[j]).trace().real();
}

Mat push(const std::vector<Mat>& T, const RVec& g, int offset) {
    Mat m = Mat::Zero(T[0].rows(), T[0].cols());
    for (size_t j = 0; j < T.size(); ++j) m += (g(offset + static_cast<int>(j)) / T[j].squaredNorm()) * T[j];
    return m;
}

}  // namespace

MatrixConnection ActionProblem::connection(const RVec& x) const {
    const auto T = u_n_basis(*lie);
    const int n2 = static_cast<int>(T.size());
    std::vector<Mat> A;
    for (int k = 0; k < lie->dim(); ++k) A.push_back(expand(T, x, k * n2));
    return MatrixConnection::make(lie, std::move(A));
}

std::pair<GaugeFieldA, ScalarMultipletB> ActionProblem::fields(const RVec& x) const {
    const auto T = u_n_basis(*lie);
    const int n2 = static_cast<int>(T.size()), d = lattice.d, dim = lie->dim(), nc = d + dim;
    GaugeFieldA a(lattice, lie->n);
    ScalarMultipletB b(lattice, lie->n);
    for (int s = 0; s < lattice.volume(); ++s) {
        for (int mu = 0; mu < d; ++mu) a.at(s, mu) = expand(T, x, (s * nc + mu) * n2);
        for (int k = 0; k < dim; ++k) b.at(s, k) = expand(T, x, (s * nc + d + k) * n2);
    }
    return {std::move(a), std::move(b)};
}

GeneralizedConnection ActionProblem::generalized(const RVec& x) const {
    GeneralizedConnection w(lie, lattice);
    const int no = static_cast<int>(w.omega.size());
    for (int i = 0; i < no; ++i) w.omega[i] = x(i);
    for (size_t i = 0; i < w.phi.size(); ++i) w.phi[i] = x(no + static_cast<int>(i));
    return w;
}

RVec ActionProblem::pack(const MatrixConnection& c) const {
    const auto T = u_n_basis(*lie);
    RVec x(size());
    for (int k = 0; k < lie->dim(); ++k) project(T, c.A[k], x, k * static_cast<int>(T.size()));
    return x;
}

RVec ActionProblem::pack(const GaugeFieldA& a, const ScalarMultipletB& b) const {
    const auto T = u_n_basis(*lie);
    const int n2 = static_cast<int>(T.size()), d = lattice.d, dim = lie->dim(), nc = d + dim;
    RVec x(size());
    for (int s = 0; s < lattice.volume(); ++s) {
        for (int mu = 0; mu < d; ++mu) project(T, a.at(s, mu), x, (s * nc + mu) * n2);
        for (int k = 0; k < dim; ++k) project(T, b.at(s, k), x, (s * nc + d + k) * n2);
    }
    return x;
}

RVec ActionProblem::pack(const GeneralizedConnection& w) const {
    RVec x(size());
    const int no = static_cast<int>(w.omega.size());
    for (int i = 0; i < no; ++i) x(i) = w.omega[i];
    for (size_t i = 0; i < w.phi.size(); ++i) x(no + static_cast<int>(i)) = w.phi[i];
    return x;
}

RVec ActionProblem::zero_point() const {
    if (kind == ActionKind::algebroid) return pack(GeneralizedConnection::ordinary(lie, lattice));
    return RVec::Zero(size());
}

RVec ActionProblem::vacuum_point() const {
    switch (kind) {
        case ActionKind::matrix_model: return pack(MatrixConnection::derivation(lie));
        case ActionKind::lattice_ymh: return pack(GaugeFieldA(lattice, lie->n), vacuum_orbit2(lattice, *lie));
        case ActionKind::algebroid: return pack(GeneralizedConnection(lie, lattice));
    }
    return {};
}

double ActionProblem::value(const RVec& x) const {
    if (x.size() != size()) throw Error(ErrorKind::invalid_argument, "parameter vector has the wrong size");
    switch (kind) {
        case ActionKind::matrix_model: return action(connection(x));
        case ActionKind::lattice_ymh: {
            const auto [a, b] = fields(x);
            return ymh_action(a, b, YMHParams{mu, lie}, workers);
        }
        case ActionKind::algebroid:
            return action_generalized(generalized(x), MetricTriple::ymh_calibrated(lie, lattice, mu), workers);
    }
    return 0.0;
}

RVec fd_gradient(const ActionProblem& p, const RVec& x, double step) {
    RVec g(x.size());
    RVec y = x;
    for (int i = 0; i < x.size(); ++i) {
        y(i) = x(i) + step;
        const double up = p.value(y);
        y(i) = x(i) - step;
        const double down = p.value(y);
        y(i) = x(i);
        g(i) = (up - down) / (2.0 * step);
    }
    return g;
}

namespace {

// G_k with δS = Σ_k Re tr(G_k† δA_k).
std::vector<Mat> matrix_model_gradient(const MatrixConnection& c) {
    const LieData& lie = *c.lie;
    const int dim = lie.dim(), n = lie.n;
    const auto F = curvature_components(c);
    const double w = 2.0 / (8.0 * n);
    std::vector<Mat> G(dim, Mat::Zero(n, n));
    for (int k = 0; k < dim; ++k)
        for (int l = 0; l < dim; ++l) {
            if (k == l) continue;
            const Mat& f = F[k][l];
            G[k] += w * comm(f, c.A[l].adjoint());
            G[l] += w * comm(c.A[k].adjoint(), f);
            for (int m = 0; m < dim; ++m)
                if (lie.C(m, k, l) != 0.0) G[m] -= (w * lie.C(m, k, l)) * f;
        }
    return G;
}

// Per site and component (a_μ then b_k) gradient of ymh_action.
std::vector<Mat> lattice_gradient(const GaugeFieldA& a, const ScalarMultipletB& b, const YMHParams& p) {
    const LieData& lie = *p.lie;
    const LatticeSpec& lat = a.lattice;
    const int d = lat.d, dim = lie.dim(), n = lie.n, V = lat.volume(), nc = d + dim;
    const FieldStrength F = field_strength(a, b, lie);
    const double m2 = p.mu * p.mu;
    const double c0 = lat.cell_volume() / (4.0 * n);
    const double wg = 2.0 * c0, wm = 2.0 * c0 * m2 / (2.0 * n), wa = 2.0 * c0 * m2 * m2 / (4.0 * n);
    std::vector<Mat> G(static_cast<size_t>(V) * nc, Mat::Zero(n, n));
    auto ga = [&](int s, int mu) -> Mat& { return G[static_cast<size_t>(s) * nc + mu]; };
    auto gb_ = [&](int s, int k) -> Mat& { return G[static_cast<size_t>(s) * nc + d + k]; };
    auto geo = [&](int s, int mu, int nu) -> const Mat& { return F.geo[(static_cast<size_t>(s) * d + mu) * d + nu]; };
    auto mix = [&](int s, int mu, int k) -> const Mat& { return F.mix[(static_cast<size_t>(s) * d + mu) * dim + k]; };
    auto alg = [&](int s, int k, int l) -> const Mat& { return F.alg[(static_cast<size_t>(s) * dim + k) * dim + l]; };
    // Adjoint of the central difference: −D_μ.
    auto neg_diff = [&](int s, int mu, auto&& field) -> Mat {
        return (field(lat.shift(s, mu, -1)) - field(lat.shift(s, mu, 1))) / (2.0 * lat.h);
    };
    for (int s = 0; s < V; ++s) {
        for (int mu = 0; mu < d; ++mu)
            for (int nu = 0; nu < d; ++nu) {
                if (mu == nu) continue;
                const Mat& f = geo(s, mu, nu);
                ga(s, nu) += wg * neg_diff(s, mu, [&](int t) -> const Mat& { return geo(t, mu, nu); });
                ga(s, mu) -= wg * neg_diff(s, nu, [&](int t) -> const Mat& { return geo(t, mu, nu); });
                ga(s, mu) += wg * comm(f, a.at(s, nu).adjoint());
                ga(s, nu) += wg * comm(a.at(s, mu).adjoint(), f);
            }
        for (int mu = 0; mu < d; ++mu)
            for (int k = 0; k < dim; ++k) {
                const Mat& f = mix(s, mu, k);
                gb_(s, k) += wm * neg_diff(s, mu, [&](int t) -> const Mat& { return mix(t, mu, k); });
                ga(s, mu) += wm * comm(f, b.at(s, k).adjoint());
                gb_(s, k) += wm * comm(a.at(s, mu).adjoint(), f);
            }
        for (int k = 0; k < dim; ++k)
            for (int l = 0; l < dim; ++l) {
                if (k == l) continue;
                const Mat& f = alg(s, k, l);
                gb_(s, k) += wa * comm(f, b.at(s, l).adjoint());
                gb_(s, l) += wa * comm(b.at(s, k).adjoint(), f);
                for (int m = 0; m < dim; ++m)
                    if (lie.C(m, k, l) != 0.0) gb_(s, m) -= (wa * lie.C(m, k, l)) * f;
            }
    }
    return G;
}

}  // namespace

Gradient gradient(const ActionProblem& p, const RVec& x, GradientMode mode, double fd_step) {
    Gradient out;
    if (mode == GradientMode::finite_difference || !p.has_analytic_gradient()) {
        out.coeffs = fd_gradient(p, x, fd_step);
    } else {
        const auto T = u_n_basis(*p.lie);
        const int n2 = static_cast<int>(T.size());
        const std::vector<Mat> G = p.kind == ActionKind::matrix_model
                                       ? matrix_model_gradient(p.connection(x))
                                       : [&] {
                                             const auto [a, b] = p.fields(x);
                                             return lattice_gradient(a, b, YMHParams{p.mu, p.lie});
                                         }();
        out.coeffs.resize(p.size());
        for (size_t c = 0; c < G.size(); ++c) pullback(T, G[c], out.coeffs, static_cast<int>(c) * n2);
    }
    if (p.has_analytic_gradient()) {
        const auto T = u_n_basis(*p.lie);
        const int n2 = static_cast<int>(T.size());
        for (int c = 0; c < p.size() / n2; ++c) out.matrices.push_back(push(T, out.coeffs, c * n2));
    }
    return out;
}

MinimizeResult minimize(const ActionProblem& p, const RVec& x0, const MinimizeOptions& opt) {
    if (!(opt.step > 0.0) || opt.max_iterations < 0 || !(opt.gradient_tol >= 0.0) || opt.max_halvings < 1)
        throw Error(ErrorKind::invalid_argument, "invalid optimizer parameters");
    MinimizeResult r;
    r.mode = p.has_analytic_gradient() ? opt.mode : GradientMode::finite_difference;
    r.x = x0;
    double S = p.value(r.x);
    r.trace.push_back(S);
    double t = opt.step;
    RVec x_prev, g_prev;
    for (;;) {
        const RVec g = gradient(p, r.x, r.mode, opt.fd_step).coeffs;
        if (r.iterations > 0) {
            // Barzilai-Borwein trial step; Armijo backtracking keeps the trace monotone.
            const RVec ds = r.x - x_prev, dg = g - g_prev;
            const double sy = ds.dot(dg);
            t = sy > 0.0 && std::isfinite(sy) ? std::clamp(ds.squaredNorm() / sy, 1e-12, 1e12) : std::min(opt.step, 2.0 * t);
        }
        r.gradient_norm = g.norm();
        if (!std::isfinite(S) || !std::isfinite(r.gradient_norm))
            throw OptimizationFailure("non-finite action or gradient", r.trace);
        if (r.gradient_norm <= opt.gradient_tol) {
            r.converged = true;
            return r;
        }
        if (r.iterations >= opt.max_iterations) return r;
        const double g2 = g.squaredNorm();
        bool accepted = false;
        for (int k = 0; k < opt.max_halvings; ++k, t *= 0.5) {
            const RVec y = r.x - t * g;
            const double Sy = p.value(y);
            if (Sy <= S - opt.armijo_c * t * g2) {
                x_prev = r.x;
                g_prev = g;
                r.x = y;
                S = Sy;
                accepted = true;
                break;
            }
        }
        if (!accepted) throw OptimizationFailure("line search exhausted without decrease", r.trace);
        r.trace.push_back(S);
        ++r.iterations;
    }
}

VacuumClass classify_vacuum(const ScalarMultipletB& b, const LieData& lie, double tol) {
    const int dim = lie.dim(), V = b.lattice.volume();
    if (b.ncomp != dim || b.n != lie.n) throw Error(ErrorKind::incompatible_fields, "scalar multiplet and algebra disagree");
    VacuumClass v;
    v.gram = RMat::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) {
        Mat mean = Mat::Zero(lie.n, lie.n);
        for (int s = 0; s < V; ++s) mean += b.at(s, k);
        mean /= V;
        for (int s = 0; s < V; ++s) v.max_site_deviation = std::max(v.max_site_deviation, max_abs(b.at(s, k) - mean));
    }
    for (int s = 0; s < V; ++s)
        for (int k = 0; k < dim; ++k)
            for (int l = 0; l < dim; ++l) v.gram(k, l) += (b.at(s, k).adjoint() * b.at(s, l)).trace().real();
    v.gram /= V;
    v.distance_orbit1 = v.gram.norm();
    v.distance_orbit2 = (v.gram - lie.trace_form).norm();
    if (v.distance_orbit1 <= tol && v.distance_orbit1 <= v.distance_orbit2)
        v.orbit = Orbit::orbit1;
    else if (v.distance_orbit2 <= tol)
        v.orbit = Orbit::orbit2;
    return v;
}

}  // namespace gb
