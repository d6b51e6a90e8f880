#pragma once

#include "gaugebench/core.hpp"

#include <memory>
#include <vector>

namespace gb {

// Real table C(m, k, l) = C^m_{kl}.
class StructureConstants {
public:
    StructureConstants() = default;
    explicit StructureConstants(int dim) : dim_(dim), data_(static_cast<size_t>(dim) * dim * dim, 0.0) {}

    int dim() const { return dim_; }
    double operator()(int m, int k, int l) const { return data_[idx(m, k, l)]; }
    double& operator()(int m, int k, int l) { return data_[idx(m, k, l)]; }
    const std::vector<double>& raw() const { return data_; }

private:
    size_t idx(int m, int k, int l) const {
        return (static_cast<size_t>(m) * dim_ + k) * dim_ + l;
    }
    int dim_ = 0;
    std::vector<double> data_;
};

struct LieData {
    int n = 0;
    std::vector<Mat> basis;  // E_k, Hermitian traceless
    StructureConstants C;    // [E_k, E_l] = -i C^m_{kl} E_m
    RMat trace_form;         // tr(E_k E_l)

    int dim() const { return static_cast<int>(basis.size()); }

    // Complex coefficients c^k with x = c^k E_k (x traceless), via the trace form.
    Eigen::VectorXcd coefficients(const Mat& x) const;
    Mat combine(const Eigen::VectorXcd& c) const;
    Mat combine_real(const RVec& c) const;
};

using LiePtr = std::shared_ptr<const LieData>;

// Generalized Gell-Mann basis, tr(E_k E_l) = 2 delta_kl.
LieData su_basis(int n);
LiePtr make_su(int n);

StructureConstants structure_constants(const std::vector<Mat>& basis);

// Per-invariant max residuals; passes iff all <= 1e-12.
Report validate_lie_data(const LieData& d);

double commutator_residual(const LieData& d);
double jacobi_residual(const StructureConstants& C);

}  // namespace gb
