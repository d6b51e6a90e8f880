#pragma once

#include "gaugebench/lattice.hpp"
#include "gaugebench/latticeymh.hpp"
#include "gaugebench/liealg.hpp"
#include "gaugebench/multiindex.hpp"

#include <map>
#include <utility>
#include <vector>

namespace gb {

// Site -> real coefficient vector in the LieData basis.
struct KernelField {
    LatticeSpec lattice;
    int dim = 0;
    std::vector<double> data;  // site * dim + k

    KernelField() = default;
    KernelField(const LatticeSpec& lat, int dim);
    static KernelField constant(const LatticeSpec& lat, const RVec& v);

    Eigen::Map<RVec> at(int s) { return Eigen::Map<RVec>(data.data() + static_cast<size_t>(s) * dim, dim); }
    Eigen::Map<const RVec> at(int s) const {
        return Eigen::Map<const RVec>(data.data() + static_cast<size_t>(s) * dim, dim);
    }
    double max_abs() const;
    KernelField& operator+=(const KernelField& o);
    KernelField& operator*=(double a);
};

// Central difference of a kernel field at one site.
RVec kernel_diff(const KernelField& f, int s, int mu);

// [a, b]^m = C^m_{kl} a^k b^l
RVec lie_bracket(const LieData& lie, const RVec& a, const RVec& b);

// Section X ⊕ γ of TM ⊕ g over the lattice.
struct TLAElement {
    std::vector<double> X;  // site * d + mu
    KernelField gamma;

    TLAElement() = default;
    TLAElement(const LatticeSpec& lat, int dim);
    const LatticeSpec& lattice() const { return gamma.lattice; }
    double x(int s, int mu) const { return X[static_cast<size_t>(s) * lattice().d + mu]; }
    bool fiber_only() const;
};

TLAElement fiber_element(const KernelField& gamma);

// Anchor: X ⊕ γ -> X.
std::vector<double> anchor(const TLAElement& u);

// X·η = X^μ ∂_μ η
KernelField directional_derivative(const std::vector<double>& X, const KernelField& eta);

TLAElement bracket(const LieData& lie, const TLAElement& u, const TLAElement& v);

// g-valued form on TM ⊕ g. Indices 0..d-1 are base directions dx^μ and
// d..d+dim-1 are fiber directions θ^k; keys are strictly increasing.
class AlgebroidForm {
public:
    AlgebroidForm(LiePtr lie, const LatticeSpec& lat, int degree);

    const LiePtr& lie() const { return lie_; }
    const LatticeSpec& lattice() const { return lat_; }
    int degree() const { return degree_; }
    int base_dim() const { return lat_.d; }
    int fiber_dim() const { return lie_->dim(); }
    int index_count() const { return lat_.d + lie_->dim(); }
    const std::map<MultiIndex, KernelField>& coeffs() const { return coeffs_; }

    // (r, s) for a key: number of base and fiber indices.
    std::pair<int, int> bidegree(const MultiIndex& key) const;
    // Bidegree of a homogeneous form; throws invalid_argument on mixed forms.
    std::pair<int, int> bidegree() const;

    KernelField coeff(const MultiIndex& key) const;
    KernelField& slot(const MultiIndex& key);
    // Adds sign * v at any ordering of key.
    void add(MultiIndex key, const KernelField& v, double sign = 1.0);
    AlgebroidForm part(int r, int s) const;

    double max_abs() const;
    AlgebroidForm operator+(const AlgebroidForm& o) const;
    AlgebroidForm operator-(const AlgebroidForm& o) const;
    AlgebroidForm operator*(double a) const;

private:
    void require_same(const AlgebroidForm& o) const;

    LiePtr lie_;
    LatticeSpec lat_;
    int degree_;
    std::map<MultiIndex, KernelField> coeffs_;
};

// d̂ = d + s': lattice de Rham on base indices plus Chevalley-Eilenberg
// (adjoint) on fiber indices.
AlgebroidForm differential(const AlgebroidForm& f);

// ω(u_1, ..., u_p) by the determinant pairing.
KernelField evaluate(const AlgebroidForm& f, const std::vector<TLAElement>& u);

// (d̂ω)(u_0, ..., u_p) from the Koszul formula with the bracket and anchor.
KernelField koszul_evaluate(const AlgebroidForm& f, const std::vector<TLAElement>& u);

// Graded bracket of g-valued forms: [α, β] = α^a ∧ β^b ⊗ [v_a, v_b].
AlgebroidForm bracket_wedge(const AlgebroidForm& a, const AlgebroidForm& b);

AlgebroidForm interior(const TLAElement& xi, const AlgebroidForm& f);
AlgebroidForm lie_derivative(const TLAElement& xi, const AlgebroidForm& f);
std::pair<AlgebroidForm, AlgebroidForm> cartan_operation(const TLAElement& xi, const AlgebroidForm& f);

// ω̂ = ω_μ dx^μ + φ^m_k θ^k ⊗ e_m. Ordinary connections have φ = -Id.
struct GeneralizedConnection {
    LiePtr lie;
    LatticeSpec lattice;
    std::vector<double> omega;  // (site * d + mu) * dim + k
    std::vector<double> phi;    // (site * dim + m) * dim + k

    GeneralizedConnection() = default;
    GeneralizedConnection(LiePtr lie, const LatticeSpec& lat);
    static GeneralizedConnection ordinary(LiePtr lie, const LatticeSpec& lat);

    int d() const { return lattice.d; }
    int dim() const { return lie->dim(); }
    double& w(int s, int mu, int k) { return omega[(static_cast<size_t>(s) * d() + mu) * dim() + k]; }
    double w(int s, int mu, int k) const { return omega[(static_cast<size_t>(s) * d() + mu) * dim() + k]; }
    double& p(int s, int m, int k) { return phi[(static_cast<size_t>(s) * dim() + m) * dim() + k]; }
    double p(int s, int m, int k) const { return phi[(static_cast<size_t>(s) * dim() + m) * dim() + k]; }
    RVec omega_at(int s, int mu) const;
    RMat phi_at(int s) const;

    AlgebroidForm as_form() const;
    double max_abs() const;
};

struct MetricTriple {
    double h = 1.0;
    RMat fiber_h;
    GeneralizedConnection background;
    double fiber_volume = 1.0;
    double potential_weight = 1.0;

    // fiber_h = Killing-trace normalization 2·δ, flat background.
    static MetricTriple standard(LiePtr lie, const LatticeSpec& lat);
    // Scales chosen so that action_generalized reproduces ymh_action at mass mu.
    static MetricTriple ymh_calibrated(LiePtr lie, const LatticeSpec& lat, double mu);
    void validate(const GeneralizedConnection& w) const;
};

AlgebroidForm curvature_generalized(const GeneralizedConnection& w);

struct Decomposition {
    LatticeSpec lattice;
    int d = 0, dim = 0;
    std::vector<RMat> tau;                // per site, τ^m_k
    std::vector<std::vector<RMat>> R_tau; // per site, per m: (k, l)
    GeneralizedConnection omega_ord;
    std::vector<std::vector<RMat>> D_tau; // per site, per mu: (m, k)
    std::vector<std::vector<RVec>> F_hat; // per site, mu * d + nu
};

Decomposition decompose(const GeneralizedConnection& w, const MetricTriple& m);

// ρ*F̂ − (ρ*Dτ)∘ω̇ + ω̇*R_τ as a total-degree-2 form.
AlgebroidForm reassemble(const Decomposition& dec, const GeneralizedConnection& background);

double action_generalized(const GeneralizedConnection& w, const MetricTriple& m, int workers = 1);

// ω̂ + ε(d̂ξ + [ω̂, ξ]) for a fiber element ξ.
GeneralizedConnection infinitesimal_gauge(const GeneralizedConnection& w, const KernelField& xi, double eps);

// ω^k_μ from a_μ = ω^k iE_k, τ^m_k from b_k = τ^m_k iE_m, φ = τ − Id.
GeneralizedConnection from_lattice_fields(const GaugeFieldA& a, const ScalarMultipletB& b, LiePtr lie);
std::pair<GaugeFieldA, ScalarMultipletB> to_lattice_fields(const GeneralizedConnection& w);

}  // namespace gb
