#pragma once

#include "gaugebench/ncforms.hpp"

namespace gb {

// A = A_k ⊗ θ^k; the full connection form is A - iθ.
struct MatrixConnection {
    LiePtr lie;
    std::vector<Mat> A;
    bool hermitian = false;  // every A_k anti-Hermitian

    // Sets the flag by inspection (tolerance 1e-12).
    static MatrixConnection make(LiePtr lie, std::vector<Mat> A);
    static MatrixConnection zero(LiePtr lie);
    static MatrixConnection derivation(LiePtr lie);  // A_k = iE_k

    MatrixForm as_form() const;
};

// F_{kl} = [A_k, A_l] - C^m_{kl} A_m for all ordered pairs.
std::vector<std::vector<Mat>> curvature_components(const MatrixConnection& c);
MatrixForm curvature(const MatrixConnection& c);

MatrixConnection gauge_transform(const MatrixConnection& c, const Mat& g, bool special = false);

// S[A] = (1/8n) sum_{k,l} ||F_{kl}||_F^2
double action(const MatrixConnection& c);

// ∇_X a for X = ad_γ: X·a + (A - iθ)(X) a
Mat covariant_derivative(const MatrixConnection& c, const Mat& a, const Mat& gamma);

MatrixConnection random_connection(const LiePtr& lie, Rng& rng, double scale = 1.0);

}  // namespace gb
