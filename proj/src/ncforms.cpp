#include "gaugebench/ncforms.hpp"

#include <cmath>

namespace gb {

MatrixForm::MatrixForm(LiePtr lie, int degree) : lie_(std::move(lie)), degree_(degree) {
    if (!lie_) throw Error(ErrorKind::invalid_argument, "MatrixForm needs LieData");
    if (degree < 0) throw Error(ErrorKind::invalid_argument, "negative form degree");
    if (degree == 0) coeffs_[{}] = Mat::Zero(lie_->n, lie_->n);
}

MatrixForm MatrixForm::scalar(LiePtr lie, const Mat& a) {
    MatrixForm f(std::move(lie), 0);
    f.set({}, a);
    return f;
}

MatrixForm MatrixForm::monomial(LiePtr lie, const Mat& a, const MultiIndex& idx) {
    MatrixForm f(std::move(lie), static_cast<int>(idx.size()));
    f.set(idx, a);
    return f;
}

void MatrixForm::check_key(const MultiIndex& idx) const {
    if (static_cast<int>(idx.size()) != degree_ || !strictly_increasing(idx, lie_->dim()))
        throw Error(ErrorKind::invalid_argument, "multi-index is not strictly increasing in range");
}

Mat MatrixForm::coeff(const MultiIndex& idx) const {
    auto it = coeffs_.find(idx);
    if (it == coeffs_.end()) return Mat::Zero(n(), n());
    return it->second;
}

void MatrixForm::set(const MultiIndex& idx, const Mat& a) {
    check_key(idx);
    if (a.rows() != n() || a.cols() != n())
        throw Error(ErrorKind::invalid_argument, "coefficient has wrong shape");
    coeffs_[idx] = a;
}

void MatrixForm::add(const MultiIndex& idx, const Mat& a) {
    auto it = coeffs_.find(idx);
    if (it == coeffs_.end())
        set(idx, a);
    else
        it->second += a;
}

Mat MatrixForm::on_basis(const MultiIndex& ks) const {
    MultiIndex s = ks;
    const int sign = sort_sign(s);
    if (sign == 0) return Mat::Zero(n(), n());
    auto it = coeffs_.find(s);
    if (it == coeffs_.end()) return Mat::Zero(n(), n());
    return static_cast<double>(sign) * it->second;
}

double MatrixForm::max_abs() const {
    double r = 0.0;
    for (const auto& [k, v] : coeffs_) r = std::max(r, gb::max_abs(v));
    return r;
}

MatrixForm& MatrixForm::operator+=(const MatrixForm& o) {
    if (o.lie_ != lie_ && o.lie_->n != lie_->n)
        throw Error(ErrorKind::incompatible_algebras, "forms over different algebras");
    if (o.degree_ != degree_) throw Error(ErrorKind::invalid_argument, "adding forms of different degree");
    for (const auto& [k, v] : o.coeffs_) add(k, v);
    return *this;
}

MatrixForm& MatrixForm::operator-=(const MatrixForm& o) {
    MatrixForm neg = o;
    neg *= -1.0;
    return *this += neg;
}

MatrixForm& MatrixForm::operator*=(cplx s) {
    for (auto& [k, v] : coeffs_) v *= s;
    return *this;
}

MatrixForm operator+(MatrixForm a, const MatrixForm& b) { return a += b; }
MatrixForm operator-(MatrixForm a, const MatrixForm& b) { return a -= b; }
MatrixForm operator*(cplx s, MatrixForm a) { return a *= s; }

namespace {

void require_same(const MatrixForm& a, const MatrixForm& b) {
    if (a.lie() != b.lie() && (a.lie()->n != b.lie()->n || a.lie()->dim() != b.lie()->dim()))
        throw Error(ErrorKind::incompatible_algebras, "forms over different algebras");
}

}  // namespace

MatrixForm wedge(const MatrixForm& w, const MatrixForm& e) {
    require_same(w, e);
    MatrixForm out(w.lie(), w.degree() + e.degree());
    for (const auto& [ki, a] : w.coeffs()) {
        for (const auto& [kj, b] : e.coeffs()) {
            MultiIndex k = ki;
            k.insert(k.end(), kj.begin(), kj.end());
            const int sign = sort_sign(k);
            if (sign == 0) continue;
            out.add(k, static_cast<double>(sign) * (a * b));
        }
    }
    return out;
}

MatrixForm koszul_d(const MatrixForm& w) {
    const LieData& L = *w.lie();
    const int dim = L.dim();
    const int p = w.degree();
    MatrixForm out(w.lie(), p + 1);
    std::vector<Mat> ie(dim);
    for (int k = 0; k < dim; ++k) ie[k] = I * L.basis[k];

    for (const auto& K : combinations(dim, p + 1)) {
        Mat acc = Mat::Zero(L.n, L.n);
        // sum_i (-1)^i ∂_{k_i} · w(... omit i ...)   (0-based i)
        for (int i = 0; i <= p; ++i) {
            const Mat v = w.on_basis(drop(K, i));
            const double s = (i % 2 == 0) ? 1.0 : -1.0;
            acc += s * comm(ie[K[i]], v);
        }
        // sum_{i<j} (-1)^{i+j} w([∂_{k_i}, ∂_{k_j}], ... omit i, j ...)
        for (int i = 0; i <= p; ++i) {
            for (int j = i + 1; j <= p; ++j) {
                const MultiIndex rest = drop2(K, i, j);
                const double s = ((i + j) % 2 == 0) ? 1.0 : -1.0;
                for (int m = 0; m < dim; ++m) {
                    const double c = L.C(m, K[i], K[j]);
                    if (c == 0.0) continue;
                    MultiIndex args{m};
                    args.insert(args.end(), rest.begin(), rest.end());
                    acc += (s * c) * w.on_basis(args);
                }
            }
        }
        if (::gb::max_abs(acc) > 0.0) out.set(K, acc);
    }
    return out;
}

MatrixForm canonical_theta(const LiePtr& lie) {
    if (lie->n < 2) throw Error(ErrorKind::no_inner_derivations, "M_1 has no inner derivations");
    MatrixForm out(lie, 1);
    for (int k = 0; k < lie->dim(); ++k) out.set({k}, I * lie->basis[k]);
    return out;
}

MatrixForm involution(const MatrixForm& w) {
    MatrixForm out(w.lie(), w.degree());
    for (const auto& [k, v] : w.coeffs()) out.set(k, v.adjoint());
    return out;
}

namespace {

Mat evaluate_components(const MatrixForm& w, const std::vector<Mat>& gammas) {
    const LieData& L = *w.lie();
    const int p = w.degree();
    if (static_cast<int>(gammas.size()) != p)
        throw Error(ErrorKind::invalid_argument, "evaluate needs exactly degree-many arguments");
    if (p == 0) return w.coeff({});
    // ad_γ = sum_k (-i γ^k) ∂_k
    Eigen::MatrixXcd X(p, L.dim());
    for (int j = 0; j < p; ++j) X.row(j) = (-I * L.coefficients(gammas[j])).transpose();
    Mat out = Mat::Zero(L.n, L.n);
    Eigen::MatrixXcd minor(p, p);
    for (const auto& [K, a] : w.coeffs()) {
        for (int c = 0; c < p; ++c) minor.col(c) = X.col(K[c]);
        out += minor.determinant() * a;
    }
    return out;
}

}  // namespace

Mat evaluate(const MatrixForm& w, const std::vector<Mat>& gammas) {
    for (const auto& g : gammas)
        if (std::abs(g.trace()) > 1e-12 * std::max(1.0, g.norm()))
            throw Error(ErrorKind::invalid_derivation, "derivation argument must be traceless");
    return evaluate_components(w, gammas);
}

Mat evaluate_ad(const MatrixForm& w, const std::vector<Mat>& gammas) {
    std::vector<Mat> traceless;
    traceless.reserve(gammas.size());
    for (const auto& g : gammas) {
        const int n = static_cast<int>(g.rows());
        traceless.push_back(g - (g.trace() / static_cast<double>(n)) * Mat::Identity(n, n));
    }
    return evaluate_components(w, traceless);
}

MatrixForm random_form(const LiePtr& lie, int degree, Rng& rng) {
    MatrixForm out(lie, degree);
    for (const auto& K : combinations(lie->dim(), degree)) out.set(K, rng.complex_matrix(lie->n, lie->n));
    return out;
}

}  // namespace gb
