#include "gaugebench/algebroid.hpp"

#include <algorithm>
#include <cmath>

namespace gb {

KernelField::KernelField(const LatticeSpec& lat, int dim_)
    : lattice(lat), dim(dim_), data(static_cast<size_t>(lat.volume()) * dim_, 0.0) {}

KernelField KernelField::constant(const LatticeSpec& lat, const RVec& v) {
    KernelField f(lat, static_cast<int>(v.size()));
    for (int s = 0; s < lat.volume(); ++s) f.at(s) = v;
    return f;
}

double KernelField::max_abs() const {
    double r = 0.0;
    for (double x : data) r = std::max(r, std::abs(x));
    return r;
}

KernelField& KernelField::operator+=(const KernelField& o) {
    for (size_t i = 0; i < data.size(); ++i) data[i] += o.data[i];
    return *this;
}

KernelField& KernelField::operator*=(double a) {
    for (double& x : data) x *= a;
    return *this;
}

RVec kernel_diff(const KernelField& f, int s, int mu) {
    const int sp = f.lattice.shift(s, mu, 1), sm = f.lattice.shift(s, mu, -1);
    return (f.at(sp) - f.at(sm)) / (2.0 * f.lattice.h);
}

RVec lie_bracket(const LieData& lie, const RVec& a, const RVec& b) {
    const int dim = lie.dim();
    RVec r = RVec::Zero(dim);
    for (int k = 0; k < dim; ++k) {
        if (a(k) == 0.0) continue;
        for (int l = 0; l < dim; ++l) {
            const double ab = a(k) * b(l);
            if (ab == 0.0) continue;
            for (int m = 0; m < dim; ++m) r(m) += lie.C(m, k, l) * ab;
        }
    }
    return r;
}

TLAElement::TLAElement(const LatticeSpec& lat, int dim)
    : X(static_cast<size_t>(lat.volume()) * lat.d, 0.0), gamma(lat, dim) {}

bool TLAElement::fiber_only() const {
    return std::all_of(X.begin(), X.end(), [](double v) { return v == 0.0; });
}

TLAElement fiber_element(const KernelField& gamma) {
    TLAElement u(gamma.lattice, gamma.dim);
    u.gamma = gamma;
    return u;
}

std::vector<double> anchor(const TLAElement& u) { return u.X; }

KernelField directional_derivative(const std::vector<double>& X, const KernelField& eta) {
    const LatticeSpec& lat = eta.lattice;
    KernelField out(lat, eta.dim);
    for (int s = 0; s < lat.volume(); ++s)
        for (int mu = 0; mu < lat.d; ++mu) {
            const double x = X[static_cast<size_t>(s) * lat.d + mu];
            if (x != 0.0) out.at(s) += x * kernel_diff(eta, s, mu);
        }
    return out;
}

namespace {

double scalar_diff(const std::vector<double>& X, const LatticeSpec& lat, int s, int mu, int comp) {
    const int sp = lat.shift(s, mu, 1), sm = lat.shift(s, mu, -1);
    return (X[static_cast<size_t>(sp) * lat.d + comp] - X[static_cast<size_t>(sm) * lat.d + comp]) / (2.0 * lat.h);
}

void require_lattice(const LatticeSpec& a, const LatticeSpec& b) {
    if (!(a == b)) throw Error(ErrorKind::incompatible_fields, "elements live on different lattices");
}

}  // namespace

TLAElement bracket(const LieData& lie, const TLAElement& u, const TLAElement& v) {
    require_lattice(u.lattice(), v.lattice());
    if (u.gamma.dim != lie.dim() || v.gamma.dim != lie.dim())
        throw Error(ErrorKind::incompatible_fields, "kernel dimension does not match the algebra");
    const LatticeSpec& lat = u.lattice();
    const int d = lat.d;
    TLAElement r(lat, lie.dim());
    for (int s = 0; s < lat.volume(); ++s)
        for (int nu = 0; nu < d; ++nu) {
            double acc = 0.0;
            for (int mu = 0; mu < d; ++mu)
                acc += u.x(s, mu) * scalar_diff(v.X, lat, s, mu, nu) - v.x(s, mu) * scalar_diff(u.X, lat, s, mu, nu);
            r.X[static_cast<size_t>(s) * d + nu] = acc;
        }
    KernelField xe = directional_derivative(u.X, v.gamma);
    KernelField ye = directional_derivative(v.X, u.gamma);
    for (int s = 0; s < lat.volume(); ++s)
        r.gamma.at(s) = xe.at(s) - ye.at(s) + lie_bracket(lie, u.gamma.at(s), v.gamma.at(s));
    return r;
}

// ---------------------------------------------------------------------------

AlgebroidForm::AlgebroidForm(LiePtr lie, const LatticeSpec& lat, int degree)
    : lie_(std::move(lie)), lat_(lat), degree_(degree) {
    if (degree < 0 || degree > lat.d + lie_->dim())
        throw Error(ErrorKind::invalid_argument, "form degree out of range");
}

std::pair<int, int> AlgebroidForm::bidegree(const MultiIndex& key) const {
    int r = 0;
    for (int i : key)
        if (i < lat_.d) ++r;
    return {r, static_cast<int>(key.size()) - r};
}

std::pair<int, int> AlgebroidForm::bidegree() const {
    if (coeffs_.empty()) return {degree_, 0};
    const auto b = bidegree(coeffs_.begin()->first);
    for (const auto& [k, v] : coeffs_)
        if (bidegree(k) != b) throw Error(ErrorKind::invalid_argument, "form is not of pure bidegree");
    return b;
}

KernelField AlgebroidForm::coeff(const MultiIndex& key) const {
    auto it = coeffs_.find(key);
    if (it == coeffs_.end()) return KernelField(lat_, fiber_dim());
    return it->second;
}

KernelField& AlgebroidForm::slot(const MultiIndex& key) {
    auto it = coeffs_.find(key);
    if (it == coeffs_.end()) it = coeffs_.emplace(key, KernelField(lat_, fiber_dim())).first;
    return it->second;
}

void AlgebroidForm::add(MultiIndex key, const KernelField& v, double sign) {
    if (static_cast<int>(key.size()) != degree_) throw Error(ErrorKind::invalid_argument, "key length != degree");
    const int sg = sort_sign(key);
    if (sg == 0) return;
    if (!strictly_increasing(key, index_count())) throw Error(ErrorKind::invalid_argument, "index out of range");
    KernelField& dst = slot(key);
    const double a = sign * sg;
    for (size_t i = 0; i < dst.data.size(); ++i) dst.data[i] += a * v.data[i];
}

AlgebroidForm AlgebroidForm::part(int r, int s) const {
    AlgebroidForm out(lie_, lat_, degree_);
    for (const auto& [k, v] : coeffs_)
        if (bidegree(k) == std::make_pair(r, s)) out.coeffs_.emplace(k, v);
    return out;
}

double AlgebroidForm::max_abs() const {
    double r = 0.0;
    for (const auto& [k, v] : coeffs_) r = std::max(r, v.max_abs());
    return r;
}

void AlgebroidForm::require_same(const AlgebroidForm& o) const {
    if (o.degree_ != degree_ || !(o.lat_ == lat_) || o.fiber_dim() != fiber_dim())
        throw Error(ErrorKind::incompatible_fields, "forms differ in degree, lattice or algebra");
}

AlgebroidForm AlgebroidForm::operator+(const AlgebroidForm& o) const {
    require_same(o);
    AlgebroidForm r = *this;
    for (const auto& [k, v] : o.coeffs_) r.slot(k) += v;
    return r;
}

AlgebroidForm AlgebroidForm::operator-(const AlgebroidForm& o) const { return *this + o * -1.0; }

AlgebroidForm AlgebroidForm::operator*(double a) const {
    AlgebroidForm r = *this;
    for (auto& [k, v] : r.coeffs_) v *= a;
    return r;
}

// ---------------------------------------------------------------------------

AlgebroidForm differential(const AlgebroidForm& f) {
    const LieData& lie = *f.lie();
    const LatticeSpec& lat = f.lattice();
    const int d = lat.d, dim = lie.dim(), V = lat.volume();
    AlgebroidForm out(f.lie(), lat, f.degree() + 1);
    for (const auto& [key, v] : f.coeffs()) {
        const auto [r, s] = f.bidegree(key);
        const double base_sign = (r % 2 == 0) ? 1.0 : -1.0;

        for (int mu = 0; mu < d; ++mu) {
            if (std::find(key.begin(), key.end(), mu) != key.end()) continue;
            KernelField dv(lat, dim);
            for (int x = 0; x < V; ++x) dv.at(x) = kernel_diff(v, x, mu);
            MultiIndex k2{mu};
            k2.insert(k2.end(), key.begin(), key.end());
            out.add(k2, dv);
        }

        // s_CE θ^j = -Σ_{l<m} C^j_{lm} θ^l θ^m, applied slot by slot.
        for (int t = 0; t < s; ++t) {
            const int j = key[r + t] - d;
            const double slot_sign = base_sign * ((t % 2 == 0) ? 1.0 : -1.0);
            for (int l = 0; l < dim; ++l)
                for (int m = l + 1; m < dim; ++m) {
                    const double c = lie.C(j, l, m);
                    if (c == 0.0) continue;
                    MultiIndex k2(key.begin(), key.begin() + r + t);
                    k2.push_back(d + l);
                    k2.push_back(d + m);
                    k2.insert(k2.end(), key.begin() + r + t + 1, key.end());
                    out.add(k2, v, -c * slot_sign);
                }
        }

        // (-1)^{r+s} θ^J ∧ θ^l ⊗ [e_l, v]
        const double tail_sign = ((r + s) % 2 == 0) ? 1.0 : -1.0;
        for (int l = 0; l < dim; ++l) {
            if (std::find(key.begin(), key.end(), d + l) != key.end()) continue;
            KernelField w(lat, dim);
            RVec el = RVec::Zero(dim);
            el(l) = 1.0;
            for (int x = 0; x < V; ++x) w.at(x) = lie_bracket(lie, el, v.at(x));
            MultiIndex k2 = key;
            k2.push_back(d + l);
            out.add(k2, w, tail_sign);
        }
    }
    return out;
}

namespace {

double pairing(int index, const TLAElement& u, int s, int d) {
    return index < d ? u.x(s, index) : u.gamma.at(s)(index - d);
}

// ∇_u w = X·∂w + [γ, w]
KernelField act(const LieData& lie, const TLAElement& u, const KernelField& w) {
    KernelField out = directional_derivative(u.X, w);
    for (int s = 0; s < w.lattice.volume(); ++s) out.at(s) += lie_bracket(lie, u.gamma.at(s), w.at(s));
    return out;
}

}  // namespace

KernelField evaluate(const AlgebroidForm& f, const std::vector<TLAElement>& u) {
    const int p = f.degree();
    if (static_cast<int>(u.size()) != p) throw Error(ErrorKind::invalid_argument, "need one element per form slot");
    const LatticeSpec& lat = f.lattice();
    for (const auto& e : u) require_lattice(lat, e.lattice());
    const int d = lat.d;
    KernelField out(lat, f.fiber_dim());
    for (const auto& [key, v] : f.coeffs())
        for (int s = 0; s < lat.volume(); ++s) {
            double det = 1.0;
            if (p > 0) {
                RMat M(p, p);
                for (int a = 0; a < p; ++a)
                    for (int b = 0; b < p; ++b) M(a, b) = pairing(key[a], u[b], s, d);
                det = M.determinant();
            }
            if (det != 0.0) out.at(s) += det * v.at(s);
        }
    return out;
}

KernelField koszul_evaluate(const AlgebroidForm& f, const std::vector<TLAElement>& u) {
    const int p = f.degree();
    if (static_cast<int>(u.size()) != p + 1) throw Error(ErrorKind::invalid_argument, "need degree + 1 elements");
    const LieData& lie = *f.lie();
    KernelField out(f.lattice(), f.fiber_dim());
    for (int i = 0; i <= p; ++i) {
        std::vector<TLAElement> rest;
        for (int j = 0; j <= p; ++j)
            if (j != i) rest.push_back(u[j]);
        KernelField t = act(lie, u[i], evaluate(f, rest));
        t *= (i % 2 == 0) ? 1.0 : -1.0;
        out += t;
    }
    for (int i = 0; i <= p; ++i)
        for (int j = i + 1; j <= p; ++j) {
            std::vector<TLAElement> args{bracket(lie, u[i], u[j])};
            for (int k = 0; k <= p; ++k)
                if (k != i && k != j) args.push_back(u[k]);
            KernelField t = evaluate(f, args);
            t *= ((i + j) % 2 == 0) ? 1.0 : -1.0;
            out += t;
        }
    return out;
}

AlgebroidForm bracket_wedge(const AlgebroidForm& a, const AlgebroidForm& b) {
    if (!(a.lattice() == b.lattice()) || a.fiber_dim() != b.fiber_dim())
        throw Error(ErrorKind::incompatible_fields, "forms differ in lattice or algebra");
    const LieData& lie = *a.lie();
    const int V = a.lattice().volume();
    AlgebroidForm out(a.lie(), a.lattice(), a.degree() + b.degree());
    for (const auto& [ka, va] : a.coeffs())
        for (const auto& [kb, vb] : b.coeffs()) {
            MultiIndex k = ka;
            k.insert(k.end(), kb.begin(), kb.end());
            MultiIndex probe = k;
            if (sort_sign(probe) == 0) continue;
            KernelField w(a.lattice(), a.fiber_dim());
            for (int s = 0; s < V; ++s) w.at(s) = lie_bracket(lie, va.at(s), vb.at(s));
            out.add(k, w);
        }
    return out;
}

AlgebroidForm interior(const TLAElement& xi, const AlgebroidForm& f) {
    if (!xi.fiber_only()) throw Error(ErrorKind::unsupported, "contraction is implemented for fiber elements only");
    if (f.degree() == 0) throw Error(ErrorKind::invalid_argument, "cannot contract a 0-form");
    require_lattice(xi.lattice(), f.lattice());
    const int d = f.base_dim(), V = f.lattice().volume();
    AlgebroidForm out(f.lie(), f.lattice(), f.degree() - 1);
    for (const auto& [key, v] : f.coeffs())
        for (size_t pos = 0; pos < key.size(); ++pos) {
            if (key[pos] < d) continue;
            const int k = key[pos] - d;
            KernelField w(f.lattice(), f.fiber_dim());
            for (int s = 0; s < V; ++s) w.at(s) = xi.gamma.at(s)(k) * v.at(s);
            out.add(drop(key, static_cast<int>(pos)), w, (pos % 2 == 0) ? 1.0 : -1.0);
        }
    return out;
}

AlgebroidForm lie_derivative(const TLAElement& xi, const AlgebroidForm& f) {
    if (f.degree() == 0) return interior(xi, differential(f));
    return differential(interior(xi, f)) + interior(xi, differential(f));
}

std::pair<AlgebroidForm, AlgebroidForm> cartan_operation(const TLAElement& xi, const AlgebroidForm& f) {
    if (!xi.fiber_only()) throw Error(ErrorKind::unsupported, "Cartan operations need a fiber element");
    AlgebroidForm i = f.degree() == 0 ? AlgebroidForm(f.lie(), f.lattice(), 0) : interior(xi, f);
    return {i, lie_derivative(xi, f)};
}

// ---------------------------------------------------------------------------

GeneralizedConnection::GeneralizedConnection(LiePtr lie_, const LatticeSpec& lat)
    : lie(std::move(lie_)), lattice(lat),
      omega(static_cast<size_t>(lat.volume()) * lat.d * lie->dim(), 0.0),
      phi(static_cast<size_t>(lat.volume()) * lie->dim() * lie->dim(), 0.0) {}

GeneralizedConnection GeneralizedConnection::ordinary(LiePtr lie, const LatticeSpec& lat) {
    GeneralizedConnection w(std::move(lie), lat);
    for (int s = 0; s < lat.volume(); ++s)
        for (int k = 0; k < w.dim(); ++k) w.p(s, k, k) = -1.0;
    return w;
}

RVec GeneralizedConnection::omega_at(int s, int mu) const {
    return Eigen::Map<const RVec>(omega.data() + (static_cast<size_t>(s) * d() + mu) * dim(), dim());
}

RMat GeneralizedConnection::phi_at(int s) const {
    RMat m(dim(), dim());
    for (int a = 0; a < dim(); ++a)
        for (int k = 0; k < dim(); ++k) m(a, k) = p(s, a, k);
    return m;
}

AlgebroidForm GeneralizedConnection::as_form() const {
    AlgebroidForm f(lie, lattice, 1);
    const int V = lattice.volume();
    for (int mu = 0; mu < d(); ++mu) {
        KernelField& c = f.slot({mu});
        for (int s = 0; s < V; ++s) c.at(s) = omega_at(s, mu);
    }
    for (int k = 0; k < dim(); ++k) {
        KernelField& c = f.slot({d() + k});
        for (int s = 0; s < V; ++s)
            for (int m = 0; m < dim(); ++m) c.at(s)(m) = p(s, m, k);
    }
    return f;
}

double GeneralizedConnection::max_abs() const {
    double r = 0.0;
    for (double x : omega) r = std::max(r, std::abs(x));
    for (double x : phi) r = std::max(r, std::abs(x));
    return r;
}

MetricTriple MetricTriple::standard(LiePtr lie, const LatticeSpec& lat) {
    MetricTriple m;
    m.h = lat.h;
    m.fiber_h = 2.0 * RMat::Identity(lie->dim(), lie->dim());
    m.background = GeneralizedConnection::ordinary(lie, lat);
    return m;
}

MetricTriple MetricTriple::ymh_calibrated(LiePtr lie, const LatticeSpec& lat, double mu) {
    if (!(mu > 0.0)) throw Error(ErrorKind::invalid_argument, "mass scale must be positive");
    const double n = lie->n;
    MetricTriple m = standard(lie, lat);
    m.fiber_h = (4.0 * n / (mu * mu)) * RMat::Identity(lie->dim(), lie->dim());
    m.fiber_volume = mu * mu / (4.0 * n * n);
    m.potential_weight = 4.0 * n;
    return m;
}

void MetricTriple::validate(const GeneralizedConnection& w) const {
    const int dim = w.dim();
    if (fiber_h.rows() != dim || fiber_h.cols() != dim)
        throw Error(ErrorKind::invalid_argument, "fiber metric has the wrong size");
    if ((fiber_h - fiber_h.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, fiber_h.cwiseAbs().maxCoeff()))
        throw Error(ErrorKind::invalid_argument, "fiber metric is not symmetric");
    Eigen::SelfAdjointEigenSolver<RMat> es(fiber_h);
    if (!(es.eigenvalues().minCoeff() > 0.0))
        throw Error(ErrorKind::invalid_argument, "fiber metric is not positive-definite");
    if (!(fiber_volume > 0.0) || !std::isfinite(potential_weight) || potential_weight < 0.0)
        throw Error(ErrorKind::invalid_argument, "fiber volume and potential weight must be positive");
    if (!(background.lattice == w.lattice) || background.dim() != dim || h != w.lattice.h)
        throw Error(ErrorKind::incompatible_fields, "metric triple and connection live on different lattices");
    for (int s = 0; s < w.lattice.volume(); ++s)
        for (int m = 0; m < dim; ++m)
            for (int k = 0; k < dim; ++k)
                if (background.p(s, m, k) != (m == k ? -1.0 : 0.0))
                    throw Error(ErrorKind::invalid_argument, "background is not an ordinary connection");
}

AlgebroidForm curvature_generalized(const GeneralizedConnection& w) {
    const AlgebroidForm f = w.as_form();
    return differential(f) + bracket_wedge(f, f) * 0.5;
}

namespace {

RVec omega_diff(const GeneralizedConnection& w, int s, int mu, int nu) {
    const int sp = w.lattice.shift(s, mu, 1), sm = w.lattice.shift(s, mu, -1);
    return (w.omega_at(sp, nu) - w.omega_at(sm, nu)) / (2.0 * w.lattice.h);
}

// Curvature 2-form of the base part: ∂_μω_ν − ∂_νω_μ + [ω_μ, ω_ν].
RVec base_curvature(const GeneralizedConnection& w, int s, int mu, int nu) {
    return omega_diff(w, s, mu, nu) - omega_diff(w, s, nu, mu) +
           lie_bracket(*w.lie, w.omega_at(s, mu), w.omega_at(s, nu));
}

RVec apply_R(const std::vector<RMat>& R, const RVec& x, const RVec& y) {
    RVec r(R.size());
    for (size_t m = 0; m < R.size(); ++m) r(m) = x.dot(R[m] * y);
    return r;
}

}  // namespace

Decomposition decompose(const GeneralizedConnection& w, const MetricTriple& mt) {
    mt.validate(w);
    const LieData& lie = *w.lie;
    const LatticeSpec& lat = w.lattice;
    const int V = lat.volume(), d = lat.d, dim = lie.dim();
    const GeneralizedConnection& bg = mt.background;

    Decomposition dec;
    dec.lattice = lat;
    dec.d = d;
    dec.dim = dim;
    dec.tau.resize(V);
    for (int s = 0; s < V; ++s) dec.tau[s] = w.phi_at(s) + RMat::Identity(dim, dim);

    dec.R_tau.assign(V, std::vector<RMat>(dim, RMat::Zero(dim, dim)));
    for (int s = 0; s < V; ++s) {
        const RMat& t = dec.tau[s];
        for (int k = 0; k < dim; ++k)
            for (int l = 0; l < dim; ++l) {
                RVec ckl(dim);
                for (int a = 0; a < dim; ++a) ckl(a) = lie.C(a, k, l);
                const RVec r = lie_bracket(lie, t.col(k), t.col(l)) - t * ckl;
                for (int m = 0; m < dim; ++m) dec.R_tau[s][m](k, l) = r(m);
            }
    }

    dec.omega_ord = GeneralizedConnection::ordinary(w.lie, lat);
    for (int s = 0; s < V; ++s)
        for (int mu = 0; mu < d; ++mu) {
            const RVec v = w.omega_at(s, mu) + dec.tau[s] * bg.omega_at(s, mu);
            for (int k = 0; k < dim; ++k) dec.omega_ord.w(s, mu, k) = v(k);
        }

    dec.D_tau.assign(V, std::vector<RMat>(d, RMat::Zero(dim, dim)));
    for (int s = 0; s < V; ++s)
        for (int mu = 0; mu < d; ++mu) {
            const int sp = lat.shift(s, mu, 1), sm = lat.shift(s, mu, -1);
            RMat D = (dec.tau[sp] - dec.tau[sm]) / (2.0 * lat.h);
            const RVec wo = dec.omega_ord.omega_at(s, mu), wb = bg.omega_at(s, mu);
            for (int k = 0; k < dim; ++k) {
                RVec ek = RVec::Zero(dim);
                ek(k) = 1.0;
                D.col(k) += lie_bracket(lie, wo, dec.tau[s].col(k)) - dec.tau[s] * lie_bracket(lie, wb, ek);
            }
            dec.D_tau[s][mu] = D;
        }

    dec.F_hat.assign(V, std::vector<RVec>(static_cast<size_t>(d) * d, RVec::Zero(dim)));
    for (int s = 0; s < V; ++s)
        for (int mu = 0; mu < d; ++mu)
            for (int nu = 0; nu < d; ++nu) {
                if (mu == nu) continue;
                dec.F_hat[s][mu * d + nu] =
                    base_curvature(dec.omega_ord, s, mu, nu) - dec.tau[s] * base_curvature(bg, s, mu, nu);
            }
    return dec;
}

AlgebroidForm reassemble(const Decomposition& dec, const GeneralizedConnection& bg) {
    const int V = dec.lattice.volume(), d = dec.d, dim = dec.dim;
    AlgebroidForm out(bg.lie, dec.lattice, 2);
    for (int mu = 0; mu < d; ++mu)
        for (int nu = mu + 1; nu < d; ++nu) {
            KernelField& c = out.slot({mu, nu});
            for (int s = 0; s < V; ++s) {
                const RVec wm = bg.omega_at(s, mu), wn = bg.omega_at(s, nu);
                c.at(s) = dec.F_hat[s][mu * d + nu] - dec.D_tau[s][mu] * wn + dec.D_tau[s][nu] * wm +
                          apply_R(dec.R_tau[s], wm, wn);
            }
        }
    for (int mu = 0; mu < d; ++mu)
        for (int k = 0; k < dim; ++k) {
            KernelField& c = out.slot({mu, d + k});
            RVec ek = RVec::Zero(dim);
            ek(k) = 1.0;
            for (int s = 0; s < V; ++s)
                c.at(s) = dec.D_tau[s][mu].col(k) - apply_R(dec.R_tau[s], bg.omega_at(s, mu), ek);
        }
    for (int k = 0; k < dim; ++k)
        for (int l = k + 1; l < dim; ++l) {
            KernelField& c = out.slot({d + k, d + l});
            for (int s = 0; s < V; ++s)
                for (int m = 0; m < dim; ++m) c.at(s)(m) = dec.R_tau[s][m](k, l);
        }
    return out;
}

double action_generalized(const GeneralizedConnection& w, const MetricTriple& mt, int workers) {
    const Decomposition dec = decompose(w, mt);
    const int V = w.lattice.volume(), d = dec.d, dim = dec.dim;
    const RMat& h = mt.fiber_h;
    const RMat hinv = h.inverse();
    std::vector<double> site(V);
    parallel_ranges(V, workers, [&](int lo, int hi) {
        for (int s = lo; s < hi; ++s) {
            double f2 = 0.0, dt2 = 0.0, r2 = 0.0;
            for (int mu = 0; mu < d; ++mu)
                for (int nu = mu + 1; nu < d; ++nu) {
                    const RVec& F = dec.F_hat[s][mu * d + nu];
                    f2 += F.dot(h * F);
                }
            for (int mu = 0; mu < d; ++mu) {
                const RMat& D = dec.D_tau[s][mu];
                dt2 += (D.transpose() * h * D * hinv).trace();
            }
            // ½ Σ h_{mm'} tr(hinv R_m hinv R_{m'}^T)
            std::vector<RMat> Q(dim);
            for (int m = 0; m < dim; ++m) Q[m] = hinv * dec.R_tau[s][m] * hinv;
            for (int m = 0; m < dim; ++m)
                for (int mp = 0; mp < dim; ++mp) {
                    if (h(m, mp) == 0.0) continue;
                    r2 += 0.5 * h(m, mp) * Q[m].cwiseProduct(dec.R_tau[s][mp]).sum();
                }
            site[s] = f2 + dt2 + mt.potential_weight * r2;
        }
    });
    return mt.fiber_volume * w.lattice.cell_volume() * ordered_sum(site);
}

GeneralizedConnection infinitesimal_gauge(const GeneralizedConnection& w, const KernelField& xi, double eps) {
    require_lattice(w.lattice, xi.lattice);
    if (xi.dim != w.dim()) throw Error(ErrorKind::incompatible_fields, "gauge parameter has the wrong dimension");
    const LieData& lie = *w.lie;
    const int V = w.lattice.volume(), d = w.d(), dim = w.dim();
    GeneralizedConnection out = w;
    for (int s = 0; s < V; ++s) {
        const RVec x = xi.at(s);
        for (int mu = 0; mu < d; ++mu) {
            const RVec dv = kernel_diff(xi, s, mu) + lie_bracket(lie, w.omega_at(s, mu), x);
            for (int k = 0; k < dim; ++k) out.w(s, mu, k) += eps * dv(k);
        }
        const RMat ph = w.phi_at(s);
        for (int k = 0; k < dim; ++k) {
            RVec ek = RVec::Zero(dim);
            ek(k) = 1.0;
            const RVec dv = lie_bracket(lie, ek, x) + lie_bracket(lie, ph.col(k), x);
            for (int m = 0; m < dim; ++m) out.p(s, m, k) += eps * dv(m);
        }
    }
    return out;
}

namespace {

RVec kernel_coefficients(const LieData& lie, const Mat& x) {
    const double scale = std::max(1.0, max_abs(x));
    if (std::abs(x.trace()) > 1e-12 * scale * x.rows())
        throw Error(ErrorKind::not_representable, "field has a trace part outside the algebroid kernel");
    if (max_abs(x + x.adjoint()) > 1e-12 * scale)
        throw Error(ErrorKind::not_representable, "field is not anti-Hermitian");
    const Eigen::VectorXcd c = lie.coefficients(-I * x);
    return c.real();
}

}  // namespace

GeneralizedConnection from_lattice_fields(const GaugeFieldA& a, const ScalarMultipletB& b, LiePtr lie) {
    if (!(a.lattice == b.lattice) || a.n != lie->n || b.n != lie->n || b.ncomp != lie->dim())
        throw Error(ErrorKind::incompatible_fields, "fields and algebra disagree");
    const LatticeSpec& lat = a.lattice;
    GeneralizedConnection w(lie, lat);
    const int V = lat.volume(), d = lat.d, dim = lie->dim();
    for (int s = 0; s < V; ++s) {
        for (int mu = 0; mu < d; ++mu) {
            const RVec c = kernel_coefficients(*lie, a.at(s, mu));
            for (int k = 0; k < dim; ++k) w.w(s, mu, k) = c(k);
        }
        for (int k = 0; k < dim; ++k) {
            const RVec c = kernel_coefficients(*lie, b.at(s, k));
            for (int m = 0; m < dim; ++m) w.p(s, m, k) = c(m) - (m == k ? 1.0 : 0.0);
        }
    }
    return w;
}

std::pair<GaugeFieldA, ScalarMultipletB> to_lattice_fields(const GeneralizedConnection& w) {
    const LieData& lie = *w.lie;
    const LatticeSpec& lat = w.lattice;
    GaugeFieldA a(lat, lie.n);
    ScalarMultipletB b(lat, lie.n);
    const int V = lat.volume(), d = lat.d, dim = lie.dim();
    for (int s = 0; s < V; ++s) {
        for (int mu = 0; mu < d; ++mu) a.at(s, mu) = I * lie.combine_real(w.omega_at(s, mu));
        const RMat tau = w.phi_at(s) + RMat::Identity(dim, dim);
        for (int k = 0; k < dim; ++k) b.at(s, k) = I * lie.combine_real(tau.col(k));
    }
    return {a, b};
}

}  // namespace gb
