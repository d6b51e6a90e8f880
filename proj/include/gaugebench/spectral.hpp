#pragma once

#include "gaugebench/core.hpp"

#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace gb {

// Element of ⊕_i M_{d_i}(ℂ), one matrix per block.
using AlgebraElement = std::vector<Mat>;

// One summand of H: algebra block `block` acting as a ⊗ 1_multiplicity.
struct RepBlock {
    int block = 0;
    int multiplicity = 1;
};

struct KoSigns {
    int eps = 1, eps_prime = 1;
    std::optional<int> eps_dprime;
};

// Table of (ε, ε′, ε″) by KO-dimension mod 8.
KoSigns ko_signs(int ko_dim);

struct FiniteSpectralTriple {
    std::vector<int> blocks;    // algebra block sizes
    std::vector<RepBlock> rep;  // π(a) = ⊕ a_block ⊗ 1_mult
    Mat D;
    std::optional<Mat> gamma;
    std::optional<Mat> K;       // J v = K conj(v)
    int ko_dim = 0;

    int hilbert_dim() const;
    Mat pi(const AlgebraElement& a) const;
    // J X J⁻¹ = K conj(X) K⁻¹
    Mat conj_J(const Mat& X) const;
    AlgebraElement identity() const;
    // Matrix units of every block, a complex spanning set.
    std::vector<AlgebraElement> spanning_set() const;
};

Report check_axioms(const FiniteSpectralTriple& t);

using OneFormTerms = std::vector<std::pair<AlgebraElement, AlgebraElement>>;

Mat represent_one_form(const FiniteSpectralTriple& t, const OneFormTerms& terms);

// Adds the adjoint terms so that π_D of the result is Hermitian.
OneFormTerms hermitian_one_form(const OneFormTerms& terms);

// ω^u = uωu* + u d u* as a term list.
OneFormTerms gauge_one_form(const OneFormTerms& terms, const AlgebraElement& u);

FiniteSpectralTriple fluctuate(const FiniteSpectralTriple& t, const Mat& omega);
FiniteSpectralTriple gauge_transform_spectral(const FiniteSpectralTriple& t, const AlgebraElement& u);

using Cutoff = std::function<double(double)>;
double smooth_bump(double x);  // 1 on |x| ≤ 1, 0 on |x| ≥ 2, C∞ in between
double gaussian_cutoff(double x);
double spectral_action(const FiniteSpectralTriple& t, const Cutoff& chi, double Lambda);

// ℂ ⊕ ℂ on ℂ², D = [[0, m], [m, 0]], γ = diag(1, −1), no real structure.
FiniteSpectralTriple two_point_minimal(double m);

// Real even triple on the bimodule H = ⊕_{ij} M_{d_i × d_j}(ℂ) with J(V) = V†,
// γ = s_i s_j on sector (i, j), and D = Y + JYJ⁻¹ where Y multiplies from
// the left by couplings[(k, i)] : sector (i, j) → (k, j) (and its adjoint back).
struct Coupling {
    int from = 0, to = 0;
    Mat Y;  // d_to × d_from
};
FiniteSpectralTriple bimodule_triple(const std::vector<int>& blocks, const std::vector<int>& chirality,
                                     const std::vector<Coupling>& couplings);

// ℂ ⊕ ℂ bimodule on ℂ⁴ with mass m.
FiniteSpectralTriple two_point_real(double m);
// M_2(ℂ) ⊕ ℂ bimodule on ℂ⁹ with coupling y (2-vector).
FiniteSpectralTriple m2_plus_c(const Eigen::Vector2cd& y);

AlgebraElement random_algebra_element(const std::vector<int>& blocks, Rng& rng);
AlgebraElement random_unitary_element(const std::vector<int>& blocks, Rng& rng);

}  // namespace gb
