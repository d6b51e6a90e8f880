#pragma once

// Seeded smooth and random lattice configurations shared by the test binaries.

#include "gaugebench/algebroid.hpp"
#include "gaugebench/latticeymh.hpp"

#include <cmath>
#include <numbers>

namespace fx {

using namespace gb;

struct Mode {
    std::vector<int> k;
    double phase = 0.0;
    double amp = 0.0;
};

inline std::vector<Mode> random_modes(Rng& rng, int d, int count) {
    std::vector<Mode> m(count);
    for (auto& x : m) {
        x.k.resize(d);
        for (int mu = 0; mu < d; ++mu) x.k[mu] = rng.integer(-1, 1);
        x.phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
        x.amp = 0.5 * rng.normal();
    }
    return m;
}

inline double wave(const Mode& m, const std::vector<int>& x, const LatticeSpec& lat) {
    double arg = m.phase;
    for (int mu = 0; mu < lat.d; ++mu) arg += 2.0 * std::numbers::pi * m.k[mu] * x[mu] / lat.extents[mu];
    return m.amp * std::sin(arg);
}

// Anti-Hermitian field whose components are smooth waves on the torus; the
// same seed gives the same continuum field at any resolution. The sine of a
// wave sum is not band-limited, so central differences are not exact on it.
inline LatticeField smooth_field(const LatticeSpec& lat, const LieData& lie, int ncomp, double amp,
                                 std::uint64_t seed, bool traceless = true) {
    Rng rng(seed);
    const auto gens = u_n_basis(lie);
    const int first = traceless ? 1 : 0;
    std::vector<std::vector<Mode>> modes(ncomp * gens.size());
    for (auto& m : modes) m = random_modes(rng, lat.d, 2);
    LatticeField f(lat, lie.n, ncomp);
    f.set_from([&](const std::vector<int>& x, int c) {
        Mat v = Mat::Zero(lie.n, lie.n);
        for (int g = first; g < static_cast<int>(gens.size()); ++g) {
            double coef = 0.0;
            for (const auto& m : modes[c * gens.size() + g]) coef += wave(m, x, lat);
            v += (amp * std::sin(coef)) * gens[g];
        }
        return v;
    });
    return f;
}

inline GaugeFieldA smooth_a(const LatticeSpec& lat, const LieData& lie, double amp, std::uint64_t seed,
                            bool traceless = true) {
    GaugeFieldA a(lat, lie.n);
    static_cast<LatticeField&>(a) = smooth_field(lat, lie, lat.d, amp, seed, traceless);
    return a;
}

inline ScalarMultipletB smooth_b(const LatticeSpec& lat, const LieData& lie, double amp, std::uint64_t seed,
                                 bool traceless = true) {
    ScalarMultipletB b(lat, lie.n);
    static_cast<LatticeField&>(b) = smooth_field(lat, lie, lie.dim(), amp, seed, traceless);
    return b;
}

// Site-wise independent random anti-Hermitian data.
inline LatticeField random_field(const LatticeSpec& lat, int n, int ncomp, double amp, Rng& rng) {
    LatticeField f(lat, n, ncomp);
    for (auto& m : f.data) m = amp * rng.anti_hermitian(n);
    return f;
}

inline GaugeFieldA random_a(const LatticeSpec& lat, int n, double amp, Rng& rng) {
    GaugeFieldA a(lat, n);
    static_cast<LatticeField&>(a) = random_field(lat, n, lat.d, amp, rng);
    return a;
}

inline ScalarMultipletB random_b(const LatticeSpec& lat, int n, double amp, Rng& rng) {
    ScalarMultipletB b(lat, n);
    static_cast<LatticeField&>(b) = random_field(lat, n, n * n - 1, amp, rng);
    return b;
}

// g(x) = exp(i α sin(2π x_0 / L) H)
inline std::vector<Mat> smooth_gauge(const LatticeSpec& lat, const Mat& H, double alpha) {
    std::vector<Mat> g(lat.volume());
    for (int s = 0; s < lat.volume(); ++s) {
        const auto x = lat.coords(s);
        g[s] = expi_hermitian(H, alpha * std::sin(2.0 * std::numbers::pi * x[0] / lat.extents[0]));
    }
    return g;
}

inline KernelField smooth_kernel(const LatticeSpec& lat, int dim, double amp, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::vector<Mode>> modes(dim);
    for (auto& m : modes) m = random_modes(rng, lat.d, 2);
    KernelField f(lat, dim);
    for (int s = 0; s < lat.volume(); ++s) {
        const auto x = lat.coords(s);
        for (int k = 0; k < dim; ++k) {
            double c = 0.0;
            for (const auto& m : modes[k]) c += wave(m, x, lat);
            f.at(s)(k) = amp * std::sin(c);
        }
    }
    return f;
}

inline KernelField random_kernel(const LatticeSpec& lat, int dim, double amp, Rng& rng) {
    KernelField f(lat, dim);
    for (auto& v : f.data) v = amp * rng.normal();
    return f;
}

// Every coefficient of the given degree filled by gen().
template <class Gen>
AlgebroidForm fill_form(LiePtr lie, const LatticeSpec& lat, int degree, Gen gen) {
    AlgebroidForm f(lie, lat, degree);
    for (const auto& key : combinations(lat.d + lie->dim(), degree)) f.slot(key) = gen();
    return f;
}

inline std::vector<Mat> constant_gauge(const LatticeSpec& lat, const Mat& u) {
    return std::vector<Mat>(lat.volume(), u);
}

}  // namespace fx
