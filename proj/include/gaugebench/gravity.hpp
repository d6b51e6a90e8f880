#pragma once

#include "gaugebench/core.hpp"

#include <functional>
#include <vector>

namespace gb {

// Rectangular, non-periodic chart; x_μ(i) = lo_μ + i h_μ with h_μ = (hi_μ − lo_μ)/(N_μ − 1).
struct Chart {
    int d = 0;
    std::vector<double> lo, hi;
    std::vector<int> N;

    static Chart uniform(const std::vector<double>& lo, const std::vector<double>& hi, int n);
    void validate() const;
    double h(int mu) const { return (hi[mu] - lo[mu]) / (N[mu] - 1); }
    double cell_volume() const;
    int volume() const;
    std::vector<int> index(int site) const;
    RVec point(int site) const;
    int neighbor(int site, int mu, int step) const;  // no wraparound
    bool interior(int site, int margin) const;
};

enum class Signature { euclidean, lorentzian };

struct MetricGrid {
    Chart chart;
    std::vector<RMat> g;
    Signature signature = Signature::euclidean;

    static MetricGrid from_function(const Chart& c, const std::function<RMat(const RVec&)>& f,
                                    Signature s = Signature::euclidean);
};

// Γ^ρ_{μν} per site as G[site][ρ](μ, ν); NaN outside the margin.
struct ConnectionField {
    Chart chart;
    int d = 0;
    int margin = 0;
    std::vector<std::vector<RMat>> G;

    ConnectionField(const Chart& c, int margin);
    double operator()(int s, int rho, int mu, int nu) const { return G[s][rho](mu, nu); }
};

ConnectionField christoffel(const MetricGrid& m);

struct CurvatureTensors {
    Chart chart;
    int d = 0;
    int margin = 0;
    // riemann[s][ρ * d + σ](μ, ν) = R^ρ_{σμν}
    std::vector<std::vector<RMat>> riemann;
    std::vector<std::vector<RMat>> torsion;  // torsion[s][ρ](μ, ν)
    std::vector<RMat> ricci;                 // R_{σν}
};

CurvatureTensors curvature_tensors(const ConnectionField& Gamma);

// g^{σν} R_{σν}; NaN outside the curvature margin.
std::vector<double> scalar_curvature(const MetricGrid& m, const CurvatureTensors& c);

// ∂_ρ g_{μν} − Γ^σ_{ρμ} g_{σν} − Γ^σ_{ρν} g_{μσ}, max over sites with a two-site margin;
// ∂g by the five-point stencil.
double metric_compatibility_residual(const MetricGrid& m, const ConnectionField& Gamma);

struct ActionValue {
    double value = 0.0;
    bool dimension_warning = false;  // set when d != 4
};

ActionValue eh_action(const MetricGrid& m, double G_newton);

// Λ^a_μ (row a, column μ) and Γ^a_{bμ} as Gamma_spin[site][μ](a, b).
struct TetradField {
    Chart chart;
    std::vector<RMat> Lambda;
    std::vector<std::vector<RMat>> Gamma_spin;
    RMat eta;

    static TetradField from_function(const Chart& c, const std::function<RMat(const RVec&)>& f, const RMat& eta);
};

MetricGrid metric_from_tetrad(const TetradField& t);

// Solves the torsion-free, η-compatible system for Γ at every site with a
// one-site margin; NaN elsewhere.
void set_levi_civita_spin_connection(TetradField& t);

// Γ̃_μ = Λ⁻¹ Γ_μ Λ + Λ⁻¹ ∂_μ Λ, stored as G[s][ρ](μ, ν) = (Γ̃_μ)^ρ_ν.
ConnectionField composite_field(const TetradField& t);

// Λ ↦ h⁻¹Λ, Γ ↦ h⁻¹Γh + h⁻¹dh for a site field of η-orthogonal h.
TetradField rotate_tetrad(const TetradField& t, const std::vector<RMat>& h);

// Orientation factor applied to the ε symbol in the Palatini integrand.
inline constexpr double palatini_orientation = -1.0;

double palatini_action(const TetradField& t, double G_newton);

}  // namespace gb
