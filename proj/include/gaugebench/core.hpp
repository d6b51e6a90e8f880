#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace gb {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

inline constexpr cplx I{0.0, 1.0};

enum class ErrorKind {
    invalid_argument,
    not_a_lie_basis,
    incompatible_algebras,
    no_inner_derivations,
    invalid_derivation,
    invalid_gauge_element,
    precondition_violation,
    incompatible_fields,
    dimension_error,
    unsupported,
    not_representable,
    sign_table_gap,
    invalid_fluctuation,
    invalid_cutoff,
    degenerate_metric,
    degenerate_tetrad,
    config_error,
    optimization_failure,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

// One named residual in a validation report.
struct Check {
    std::string name;
    double residual = 0.0;
    double tol = 0.0;
    bool passed = true;
    bool skipped = false;
};

struct Report {
    std::vector<Check> checks;

    void add(const std::string& name, double residual, double tol) {
        checks.push_back({name, residual, tol, residual <= tol, false});
    }
    void add_bool(const std::string& name, bool ok) {
        checks.push_back({name, ok ? 0.0 : 1.0, 0.0, ok, false});
    }
    void skip(const std::string& name) { checks.push_back({name, 0.0, 0.0, true, true}); }
    bool passed() const;
    const Check* find(const std::string& name) const;
};

inline Mat comm(const Mat& a, const Mat& b) { return a * b - b * a; }

double max_abs(const Mat& m);
Mat anti_hermitian_part(const Mat& m);
bool is_unitary(const Mat& g, double tol);
// exp(i t H) for Hermitian H, by eigendecomposition.
Mat expi_hermitian(const Mat& H, double t);

// Seeded generator used by all random constructors.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    double normal() { return nd_(eng_); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * ud_(eng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
    Mat complex_matrix(int rows, int cols);
    Mat hermitian(int n);
    Mat anti_hermitian(int n);
    Mat unitary(int n);
    RMat real_matrix(int rows, int cols);
    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
    std::normal_distribution<double> nd_{0.0, 1.0};
    std::uniform_real_distribution<double> ud_{0.0, 1.0};
};

}  // namespace gb
