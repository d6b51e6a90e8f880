#include "gaugebench/lattice.hpp"

#include <cmath>
#include <thread>

namespace gb {

LatticeSpec LatticeSpec::cubic(int d, int N, double h) {
    LatticeSpec s{d, std::vector<int>(d, N), h};
    s.validate();
    return s;
}

void LatticeSpec::validate() const {
    if (d < 1 || static_cast<int>(extents.size()) != d)
        throw Error(ErrorKind::invalid_argument, "lattice dimension and extents disagree");
    for (int N : extents)
        if (N < 3) throw Error(ErrorKind::invalid_argument, "lattice extents must be >= 3");
    if (!(h > 0.0)) throw Error(ErrorKind::invalid_argument, "lattice spacing must be positive");
}

int LatticeSpec::volume() const {
    int v = 1;
    for (int N : extents) v *= N;
    return v;
}

std::vector<int> LatticeSpec::coords(int s) const {
    std::vector<int> x(d);
    for (int mu = 0; mu < d; ++mu) {
        x[mu] = s % extents[mu];
        s /= extents[mu];
    }
    return x;
}

int LatticeSpec::site(const std::vector<int>& x) const {
    int s = 0;
    for (int mu = d - 1; mu >= 0; --mu) {
        const int N = extents[mu];
        s = s * N + ((x[mu] % N) + N) % N;
    }
    return s;
}

int LatticeSpec::shift(int s, int mu, int step) const {
    int stride = 1;
    for (int nu = 0; nu < mu; ++nu) stride *= extents[nu];
    const int N = extents[mu];
    const int xm = (s / stride) % N;
    const int xn = ((xm + step) % N + N) % N;
    return s + (xn - xm) * stride;
}

double LatticeSpec::cell_volume() const { return std::pow(h, d); }

LatticeField::LatticeField(const LatticeSpec& lat, int n_, int ncomp_)
    : lattice(lat), n(n_), ncomp(ncomp_),
      data(static_cast<size_t>(lat.volume()) * ncomp_, Mat::Zero(n_, n_)) {}

double LatticeField::max_anti_hermitian_defect() const {
    double r = 0.0;
    for (const auto& m : data) r = std::max(r, gb::max_abs(m + m.adjoint()));
    return r;
}

double LatticeField::max_abs() const {
    double r = 0.0;
    for (const auto& m : data) r = std::max(r, gb::max_abs(m));
    return r;
}

void LatticeField::set_from(const std::function<Mat(const std::vector<int>&, int)>& f) {
    const int V = lattice.volume();
    for (int s = 0; s < V; ++s) {
        const auto x = lattice.coords(s);
        for (int c = 0; c < ncomp; ++c) at(s, c) = f(x, c);
    }
}

LatticeField finite_diff(const LatticeField& f, int mu) {
    if (mu < 0 || mu >= f.lattice.d) throw Error(ErrorKind::invalid_argument, "direction out of range");
    LatticeField out(f.lattice, f.n, f.ncomp);
    const double inv = 1.0 / (2.0 * f.lattice.h);
    const int V = f.lattice.volume();
    for (int s = 0; s < V; ++s) {
        const int sp = f.lattice.shift(s, mu, 1), sm = f.lattice.shift(s, mu, -1);
        for (int c = 0; c < f.ncomp; ++c) out.at(s, c) = (f.at(sp, c) - f.at(sm, c)) * inv;
    }
    return out;
}

void parallel_ranges(int count, int workers, const std::function<void(int, int)>& body) {
    if (workers <= 1 || count < 2) {
        body(0, count);
        return;
    }
    workers = std::min(workers, count);
    std::vector<std::thread> pool;
    const int chunk = (count + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const int b = w * chunk, e = std::min(count, b + chunk);
        if (b >= e) break;
        pool.emplace_back(body, b, e);
    }
    for (auto& t : pool) t.join();
}

double ordered_sum(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

}  // namespace gb
