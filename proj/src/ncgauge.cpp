#include "gaugebench/ncgauge.hpp"

#include <cmath>

namespace gb {

MatrixConnection MatrixConnection::make(LiePtr lie, std::vector<Mat> A) {
    if (static_cast<int>(A.size()) != lie->dim())
        throw Error(ErrorKind::invalid_argument, "connection needs n^2-1 components");
    bool herm = true;
    for (const auto& a : A) {
        if (a.rows() != lie->n || a.cols() != lie->n)
            throw Error(ErrorKind::invalid_argument, "connection component has wrong shape");
        if (max_abs(a + a.adjoint()) > 1e-12) herm = false;
    }
    return MatrixConnection{std::move(lie), std::move(A), herm};
}

MatrixConnection MatrixConnection::zero(LiePtr lie) {
    const int n = lie->n;
    std::vector<Mat> A(lie->dim(), Mat::Zero(n, n));
    return make(std::move(lie), std::move(A));
}

MatrixConnection MatrixConnection::derivation(LiePtr lie) {
    std::vector<Mat> A;
    for (const auto& e : lie->basis) A.push_back(I * e);
    return make(std::move(lie), std::move(A));
}

MatrixForm MatrixConnection::as_form() const {
    MatrixForm out(lie, 1);
    for (int k = 0; k < lie->dim(); ++k) out.set({k}, A[k]);
    return out;
}

std::vector<std::vector<Mat>> curvature_components(const MatrixConnection& c) {
    const LieData& L = *c.lie;
    const int dim = L.dim();
    std::vector<std::vector<Mat>> F(dim, std::vector<Mat>(dim, Mat::Zero(L.n, L.n)));
    for (int k = 0; k < dim; ++k) {
        for (int l = k + 1; l < dim; ++l) {
            Mat f = comm(c.A[k], c.A[l]);
            for (int m = 0; m < dim; ++m) {
                const double cm = L.C(m, k, l);
                if (cm != 0.0) f -= cm * c.A[m];
            }
            F[k][l] = f;
            F[l][k] = -f;
        }
    }
    return F;
}

MatrixForm curvature(const MatrixConnection& c) {
    const auto F = curvature_components(c);
    MatrixForm out(c.lie, 2);
    const int dim = c.lie->dim();
    for (int k = 0; k < dim; ++k)
        for (int l = k + 1; l < dim; ++l) out.set({k, l}, F[k][l]);
    return out;
}

MatrixConnection gauge_transform(const MatrixConnection& c, const Mat& g, bool special) {
    if (g.rows() != c.lie->n || !is_unitary(g, 1e-12))
        throw Error(ErrorKind::invalid_gauge_element, "gauge element is not unitary");
    if (special && std::abs(g.determinant() - 1.0) > 1e-12)
        throw Error(ErrorKind::invalid_gauge_element, "gauge element is not in SU(n)");
    const Mat gi = g.adjoint();
    std::vector<Mat> A;
    A.reserve(c.A.size());
    for (const auto& a : c.A) A.push_back(gi * a * g);
    MatrixConnection out{c.lie, std::move(A), c.hermitian};
    return out;
}

double action(const MatrixConnection& c) {
    if (!c.hermitian)
        throw Error(ErrorKind::precondition_violation, "action needs an anti-Hermitian connection");
    const auto F = curvature_components(c);
    double s = 0.0;
    for (const auto& row : F)
        for (const auto& f : row) s += f.squaredNorm();
    return s / (8.0 * c.lie->n);
}

Mat covariant_derivative(const MatrixConnection& c, const Mat& a, const Mat& gamma) {
    if (std::abs(gamma.trace()) > 1e-12 * std::max(1.0, gamma.norm()))
        throw Error(ErrorKind::invalid_derivation, "derivation argument must be traceless");
    const Eigen::VectorXcd g = c.lie->coefficients(gamma);
    Mat Ax = Mat::Zero(c.lie->n, c.lie->n);
    for (int k = 0; k < c.lie->dim(); ++k) Ax += (-I * g(k)) * c.A[k];
    return comm(gamma, a) + (Ax - gamma) * a;
}

MatrixConnection random_connection(const LiePtr& lie, Rng& rng, double scale) {
    std::vector<Mat> A;
    for (int k = 0; k < lie->dim(); ++k) A.push_back(scale * rng.anti_hermitian(lie->n));
    return MatrixConnection::make(lie, std::move(A));
}

}  // namespace gb
