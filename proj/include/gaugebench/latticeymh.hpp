#pragma once

#include "gaugebench/lattice.hpp"
#include "gaugebench/liealg.hpp"

namespace gb {

// a_μ(x), component index μ.
struct GaugeFieldA : LatticeField {
    GaugeFieldA() = default;
    GaugeFieldA(const LatticeSpec& lat, int n) : LatticeField(lat, n, lat.d) {}
};

// b_k(x), component index k over the su(n) basis.
struct ScalarMultipletB : LatticeField {
    ScalarMultipletB() = default;
    ScalarMultipletB(const LatticeSpec& lat, int n) : LatticeField(lat, n, n * n - 1) {}
};

struct YMHParams {
    double mu = 1.0;
    LiePtr lie;
};

struct FieldStrength {
    int d = 0, dim = 0;
    std::vector<Mat> geo;  // site*d*d + μ*d + ν
    std::vector<Mat> mix;  // site*d*dim + μ*dim + k
    std::vector<Mat> alg;  // site*dim*dim + k*dim + l
};

FieldStrength field_strength(const GaugeFieldA& a, const ScalarMultipletB& b, const LieData& lie);

double ymh_action(const GaugeFieldA& a, const ScalarMultipletB& b, const YMHParams& p, int workers = 1);

// The three unweighted site sums Σ||F_geo||², Σ||F_mix||², Σ||F_alg||² (no h^d).
struct YMHTerms {
    double geo = 0.0, mix = 0.0, alg = 0.0;
};
YMHTerms ymh_terms(const GaugeFieldA& a, const ScalarMultipletB& b, const LieData& lie, int workers = 1);

struct GaugedFields {
    GaugeFieldA a;
    ScalarMultipletB b;
    double projection_residual = 0.0;
};

// g: one unitary per site.
GaugedFields gauge_transform_lattice(const GaugeFieldA& a, const ScalarMultipletB& b, const std::vector<Mat>& g);

double ym_action(const GaugeFieldA& a);
double chern_simons(const GaugeFieldA& a);

// Eigenvalues of a ↦ (μ²/2n) Σ_{μk} ||[a_μ, b0_k]||² over constant anti-Hermitian a,
// in the orthonormal basis {i1/√n, iE_k/√2}; d blocks of n² values, each ascending.
std::vector<double> mass_spectrum(const ScalarMultipletB& b0, const YMHParams& p);

// Real coefficients c with X = c_0 i1 + c_k iE_k (the driver's parametrization).
std::vector<Mat> u_n_basis(const LieData& lie);

GaugeFieldA constant_gauge_field(const LatticeSpec& lat, const std::vector<Mat>& a);
ScalarMultipletB constant_scalar(const LatticeSpec& lat, const std::vector<Mat>& b);
ScalarMultipletB vacuum_orbit2(const LatticeSpec& lat, const LieData& lie);

}  // namespace gb
