#pragma once

#include "gaugebench/algebroid.hpp"
#include "gaugebench/latticeymh.hpp"
#include "gaugebench/ncgauge.hpp"

#include <string>
#include <vector>

namespace gb {

enum class ActionKind { matrix_model, lattice_ymh, algebroid };
enum class GradientMode { analytic, finite_difference };

const char* to_string(ActionKind k);
const char* to_string(GradientMode m);

// An action as a function of real coefficients. Matrix-valued fields are
// expanded in u_n_basis; algebroid connections use their raw ω and φ arrays.
struct ActionProblem {
    ActionKind kind = ActionKind::matrix_model;
    LiePtr lie;
    LatticeSpec lattice;  // unused for the matrix model
    double mu = 1.0;
    int workers = 1;

    static ActionProblem matrix_model(LiePtr lie);
    static ActionProblem lattice_ymh(LiePtr lie, const LatticeSpec& lat, double mu, int workers = 1);
    static ActionProblem algebroid(LiePtr lie, const LatticeSpec& lat, double mu, int workers = 1);

    int size() const;
    bool has_analytic_gradient() const { return kind != ActionKind::algebroid; }

    double value(const RVec& x) const;

    MatrixConnection connection(const RVec& x) const;
    std::pair<GaugeFieldA, ScalarMultipletB> fields(const RVec& x) const;
    GeneralizedConnection generalized(const RVec& x) const;

    RVec pack(const MatrixConnection& c) const;
    RVec pack(const GaugeFieldA& a, const ScalarMultipletB& b) const;
    RVec pack(const GeneralizedConnection& w) const;

    RVec zero_point() const;    // A = 0, or a = b = 0, or τ = 0
    RVec vacuum_point() const;  // A_k = iE_k, or b_k = iE_k, or τ = Id
};

struct Gradient {
    RVec coeffs;
    // Anti-Hermitian gradient per field component (empty for the algebroid).
    std::vector<Mat> matrices;
};

Gradient gradient(const ActionProblem& p, const RVec& x, GradientMode mode, double fd_step = 1e-6);
RVec fd_gradient(const ActionProblem& p, const RVec& x, double step = 1e-6);

struct MinimizeOptions {
    double step = 1.0;
    int max_iterations = 5000;
    double gradient_tol = 1e-8;
    double armijo_c = 1e-4;
    int max_halvings = 60;
    GradientMode mode = GradientMode::analytic;
    double fd_step = 1e-6;
};

struct MinimizeResult {
    RVec x;
    std::vector<double> trace;  // action after each accepted step, starting value first
    int iterations = 0;
    double gradient_norm = 0.0;
    bool converged = false;
    GradientMode mode = GradientMode::analytic;
};

class OptimizationFailure : public Error {
public:
    OptimizationFailure(const std::string& what, std::vector<double> trace)
        : Error(ErrorKind::optimization_failure, what), trace_(std::move(trace)) {}
    const std::vector<double>& trace() const { return trace_; }

private:
    std::vector<double> trace_;
};

// Steepest descent with Barzilai-Borwein trial steps and Armijo backtracking (halving).
// The first trial step is opt.step.
MinimizeResult minimize(const ActionProblem& p, const RVec& x0, const MinimizeOptions& opt);

enum class Orbit { orbit1, orbit2, other };
const char* to_string(Orbit o);

struct VacuumClass {
    Orbit orbit = Orbit::other;
    double distance_orbit1 = 0.0;  // ||G||_F
    double distance_orbit2 = 0.0;  // ||G - tr(E_k E_l)||_F
    double max_site_deviation = 0.0;
    RMat gram;
};

// Site-averaged Gram matrix Re tr(b_k† b_l).
VacuumClass classify_vacuum(const ScalarMultipletB& b, const LieData& lie, double tol = 1e-3);

}  // namespace gb
