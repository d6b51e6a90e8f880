#pragma once

#include "gaugebench/liealg.hpp"
#include "gaugebench/multiindex.hpp"

#include <map>

namespace gb {

// Element of M_n ⊗ Λ^p sl_n*: coefficients on strictly increasing multi-indices
// (0-based), absent keys are zero.
class MatrixForm {
public:
    MatrixForm(LiePtr lie, int degree);

    static MatrixForm scalar(LiePtr lie, const Mat& a);
    static MatrixForm monomial(LiePtr lie, const Mat& a, const MultiIndex& idx);

    const LiePtr& lie() const { return lie_; }
    int degree() const { return degree_; }
    int n() const { return lie_->n; }
    const std::map<MultiIndex, Mat>& coeffs() const { return coeffs_; }

    Mat coeff(const MultiIndex& idx) const;
    void set(const MultiIndex& idx, const Mat& a);
    void add(const MultiIndex& idx, const Mat& a);

    // Value on (∂_{k_1}, ..., ∂_{k_p}) for an arbitrary index list.
    Mat on_basis(const MultiIndex& ks) const;

    double max_abs() const;

    MatrixForm& operator+=(const MatrixForm& o);
    MatrixForm& operator-=(const MatrixForm& o);
    MatrixForm& operator*=(cplx s);

private:
    void check_key(const MultiIndex& idx) const;

    LiePtr lie_;
    int degree_;
    std::map<MultiIndex, Mat> coeffs_;
};

MatrixForm operator+(MatrixForm a, const MatrixForm& b);
MatrixForm operator-(MatrixForm a, const MatrixForm& b);
MatrixForm operator*(cplx s, MatrixForm a);

MatrixForm wedge(const MatrixForm& w, const MatrixForm& e);
MatrixForm koszul_d(const MatrixForm& w);
MatrixForm canonical_theta(const LiePtr& lie);
MatrixForm involution(const MatrixForm& w);

// Evaluation on (ad_{γ_1}, ..., ad_{γ_p}); every γ must be traceless.
Mat evaluate(const MatrixForm& w, const std::vector<Mat>& gammas);
// Same, but accepts any γ: ad_γ only sees the traceless part.
Mat evaluate_ad(const MatrixForm& w, const std::vector<Mat>& gammas);

MatrixForm random_form(const LiePtr& lie, int degree, Rng& rng);

}  // namespace gb
