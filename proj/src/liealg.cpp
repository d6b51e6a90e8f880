#include "gaugebench/liealg.hpp"

#include <cmath>

namespace gb {

namespace {

RMat compute_trace_form(const std::vector<Mat>& basis) {
    const int dim = static_cast<int>(basis.size());
    RMat g(dim, dim);
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) g(a, b) = (basis[a] * basis[b]).trace().real();
    return g;
}

}  // namespace

Eigen::VectorXcd LieData::coefficients(const Mat& x) const {
    const int d = dim();
    Eigen::VectorXcd rhs(d);
    for (int a = 0; a < d; ++a) rhs(a) = (basis[a] * x).trace();
    if (d == 0) return rhs;
    return trace_form.cast<cplx>().ldlt().solve(rhs);
}

Mat LieData::combine(const Eigen::VectorXcd& c) const {
    Mat out = Mat::Zero(n, n);
    for (int k = 0; k < dim(); ++k) out += c(k) * basis[k];
    return out;
}

Mat LieData::combine_real(const RVec& c) const {
    Mat out = Mat::Zero(n, n);
    for (int k = 0; k < dim(); ++k) out += c(k) * basis[k];
    return out;
}

LieData su_basis(int n) {
    if (n <= 0) throw Error(ErrorKind::invalid_argument, "su_basis needs n >= 1, got " + std::to_string(n));
    LieData d;
    d.n = n;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i) {
            Mat s = Mat::Zero(n, n);
            s(i, j) = 1.0;
            s(j, i) = 1.0;
            d.basis.push_back(s);
            Mat a = Mat::Zero(n, n);
            a(i, j) = -I;
            a(j, i) = I;
            d.basis.push_back(a);
        }
        Mat diag = Mat::Zero(n, n);
        const double c = std::sqrt(2.0 / (j * (j + 1.0)));
        for (int i = 0; i < j; ++i) diag(i, i) = c;
        diag(j, j) = -c * j;
        d.basis.push_back(diag);
    }
    d.trace_form = compute_trace_form(d.basis);
    d.C = structure_constants(d.basis);
    return d;
}

LiePtr make_su(int n) { return std::make_shared<const LieData>(su_basis(n)); }

StructureConstants structure_constants(const std::vector<Mat>& basis) {
    const int dim = static_cast<int>(basis.size());
    StructureConstants C(dim);
    if (dim == 0) return C;
    const RMat g = compute_trace_form(basis);
    Eigen::LDLT<RMat> solver(g);
    for (int k = 0; k < dim; ++k) {
        for (int l = k + 1; l < dim; ++l) {
            // i[E_k, E_l] = C^m_{kl} E_m
            const Mat x = I * comm(basis[k], basis[l]);
            Eigen::VectorXcd rhs(dim);
            for (int m = 0; m < dim; ++m) rhs(m) = (basis[m] * x).trace();
            const RVec re = solver.solve(rhs.real());
            const RVec im = solver.solve(rhs.imag());
            Mat recon = Mat::Zero(x.rows(), x.cols());
            for (int m = 0; m < dim; ++m) recon += re(m) * basis[m];
            const double resid = max_abs(x - recon);
            if (resid > 1e-10)
                throw Error(ErrorKind::not_a_lie_basis,
                            "commutator [E" + std::to_string(k + 1) + ",E" + std::to_string(l + 1) +
                                "] leaves the span (residual " + std::to_string(resid) + ")");
            if (im.size() > 0 && im.cwiseAbs().maxCoeff() > 1e-12)
                throw Error(ErrorKind::not_a_lie_basis, "structure constants are not real");
            for (int m = 0; m < dim; ++m) {
                C(m, k, l) = re(m);
                C(m, l, k) = -re(m);
            }
        }
    }
    return C;
}

double commutator_residual(const LieData& d) {
    double r = 0.0;
    const int dim = d.dim();
    for (int k = 0; k < dim; ++k)
        for (int l = 0; l < dim; ++l) {
            Mat rhs = Mat::Zero(d.n, d.n);
            for (int m = 0; m < dim; ++m) rhs += (-I * d.C(m, k, l)) * d.basis[m];
            r = std::max(r, max_abs(comm(d.basis[k], d.basis[l]) - rhs));
        }
    return r;
}

double jacobi_residual(const StructureConstants& C) {
    const int dim = C.dim();
    double r = 0.0;
    for (int k = 0; k < dim; ++k)
        for (int l = 0; l < dim; ++l)
            for (int m = 0; m < dim; ++m)
                for (int q = 0; q < dim; ++q) {
                    double s = 0.0;
                    for (int p = 0; p < dim; ++p)
                        s += C(p, k, l) * C(q, p, m) + C(p, l, m) * C(q, p, k) + C(p, m, k) * C(q, p, l);
                    r = std::max(r, std::abs(s));
                }
    return r;
}

Report validate_lie_data(const LieData& d) {
    constexpr double tol = 1e-12;
    Report rep;
    const int dim = d.dim();
    double herm = 0.0, trace = 0.0;
    for (const auto& e : d.basis) {
        herm = std::max(herm, max_abs(e - e.adjoint()));
        trace = std::max(trace, std::abs(e.trace()));
    }
    rep.add("hermitian", herm, tol);
    rep.add("traceless", trace, tol);

    double indep = 0.0;
    if (dim > 0) {
        const RMat g = compute_trace_form(d.basis);
        Eigen::SelfAdjointEigenSolver<RMat> es(g);
        indep = es.eigenvalues().minCoeff() > 1e-10 ? 0.0 : 1.0;
    }
    rep.add("independence", indep, tol);

    double anti = 0.0;
    if (d.C.dim() != dim) {
        anti = 1.0;
    } else {
        for (int m = 0; m < dim; ++m)
            for (int k = 0; k < dim; ++k)
                for (int l = 0; l < dim; ++l) anti = std::max(anti, std::abs(d.C(m, k, l) + d.C(m, l, k)));
    }
    rep.add("antisymmetry", anti, tol);
    rep.add("commutator", d.C.dim() == dim ? commutator_residual(d) : 1.0, tol);
    rep.add("jacobi", jacobi_residual(d.C), tol);
    return rep;
}

}  // namespace gb
