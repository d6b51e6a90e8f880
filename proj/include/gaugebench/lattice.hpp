#pragma once

#include "gaugebench/core.hpp"

#include <functional>
#include <vector>

namespace gb {

// Periodic hypercubic grid, lexicographic site order (axis 0 fastest).
struct LatticeSpec {
    int d = 0;
    std::vector<int> extents;
    double h = 1.0;

    static LatticeSpec cubic(int d, int N, double h);

    void validate() const;
    int volume() const;
    std::vector<int> coords(int site) const;
    int site(const std::vector<int>& x) const;
    int shift(int site, int mu, int step) const;
    double cell_volume() const;  // h^d
    bool operator==(const LatticeSpec& o) const { return d == o.d && extents == o.extents && h == o.h; }
};

// n×n matrix-valued field with ncomp components per site.
struct LatticeField {
    LatticeSpec lattice;
    int n = 0;
    int ncomp = 0;
    std::vector<Mat> data;  // site * ncomp + c

    LatticeField() = default;
    LatticeField(const LatticeSpec& lat, int n, int ncomp);

    Mat& at(int site, int c) { return data[static_cast<size_t>(site) * ncomp + c]; }
    const Mat& at(int site, int c) const { return data[static_cast<size_t>(site) * ncomp + c]; }

    double max_anti_hermitian_defect() const;
    double max_abs() const;
    void set_from(const std::function<Mat(const std::vector<int>&, int)>& f);
};

// Central difference along mu with periodic wraparound.
LatticeField finite_diff(const LatticeField& f, int mu);

// Runs body(begin, end) over [0, count) on up to `workers` threads.
void parallel_ranges(int count, int workers, const std::function<void(int, int)>& body);

// Sum of per-site contributions in lexicographic order.
double ordered_sum(const std::vector<double>& v);

}  // namespace gb
