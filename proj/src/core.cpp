#include "gaugebench/core.hpp"

#include <cmath>

namespace gb {

const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::invalid_argument: return "invalid-argument";
        case ErrorKind::not_a_lie_basis: return "not-a-Lie-basis";
        case ErrorKind::incompatible_algebras: return "incompatible-algebras";
        case ErrorKind::no_inner_derivations: return "no-inner-derivations";
        case ErrorKind::invalid_derivation: return "invalid-derivation";
        case ErrorKind::invalid_gauge_element: return "invalid-gauge-element";
        case ErrorKind::precondition_violation: return "precondition-violation";
        case ErrorKind::incompatible_fields: return "incompatible-fields";
        case ErrorKind::dimension_error: return "dimension-error";
        case ErrorKind::unsupported: return "unsupported";
        case ErrorKind::not_representable: return "not-representable";
        case ErrorKind::sign_table_gap: return "sign-table-gap";
        case ErrorKind::invalid_fluctuation: return "invalid-fluctuation";
        case ErrorKind::invalid_cutoff: return "invalid-cutoff";
        case ErrorKind::degenerate_metric: return "degenerate-metric";
        case ErrorKind::degenerate_tetrad: return "degenerate-tetrad";
        case ErrorKind::config_error: return "config-error";
        case ErrorKind::optimization_failure: return "optimization-failure";
    }
    return "unknown";
}

bool Report::passed() const {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

const Check* Report::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

double max_abs(const Mat& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

Mat anti_hermitian_part(const Mat& m) { return 0.5 * (m - m.adjoint()); }

bool is_unitary(const Mat& g, double tol) {
    if (g.rows() != g.cols()) return false;
    return max_abs(g.adjoint() * g - Mat::Identity(g.rows(), g.cols())) <= tol;
}

Mat expi_hermitian(const Mat& H, double t) {
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (H + H.adjoint()));
    const Mat& V = es.eigenvectors();
    Eigen::VectorXcd ph(H.rows());
    for (int i = 0; i < H.rows(); ++i) ph(i) = std::exp(I * (t * es.eigenvalues()(i)));
    return V * ph.asDiagonal() * V.adjoint();
}

Mat Rng::complex_matrix(int rows, int cols) {
    Mat m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) {
            double re = normal();
            double im = normal();
            m(i, j) = cplx(re, im);
        }
    return m;
}

Mat Rng::hermitian(int n) {
    Mat m = complex_matrix(n, n);
    return 0.5 * (m + m.adjoint());
}

Mat Rng::anti_hermitian(int n) {
    Mat m = complex_matrix(n, n);
    return 0.5 * (m - m.adjoint());
}

Mat Rng::unitary(int n) {
    // QR of a Ginibre matrix with the phase of R's diagonal absorbed.
    Mat z = complex_matrix(n, n);
    Eigen::HouseholderQR<Mat> qr(z);
    Mat q = qr.householderQ();
    Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < n; ++i) {
        cplx d = r(i, i);
        double a = std::abs(d);
        if (a > 0) q.col(i) *= d / a;
    }
    return q;
}

RMat Rng::real_matrix(int rows, int cols) {
    RMat m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) m(i, j) = normal();
    return m;
}

}  // namespace gb
