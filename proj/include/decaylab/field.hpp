#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

#include "decaylab/common.hpp"
#include "decaylab/grid.hpp"

namespace decaylab {

// Three complex amplitudes per lattice wavevector; component c holds u_hat_c(xi).
// Amplitudes follow the continuum Fourier-transform normalization (see fft.hpp),
// so norms carry the (delta_xi)^3 quadrature weight.
struct SpectralVectorField {
    Grid grid;
    std::array<aligned_vector<complexd>, 3> comp;

    SpectralVectorField() = default;
    explicit SpectralVectorField(const Grid& g) : grid(g) {
        for (auto& c : comp) c.assign(g.size(), complexd(0.0, 0.0));
    }

    complexd& operator()(int c, std::size_t idx) { return comp[c][idx]; }
    const complexd& operator()(int c, std::size_t idx) const { return comp[c][idx]; }

    void fill_zero() {
        for (auto& c : comp) std::fill(c.begin(), c.end(), complexd(0.0, 0.0));
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& c : comp)
            for (const auto& v : c) m = std::max(m, std::abs(v));
        return m;
    }

    bool has_nan() const {
        for (const auto& c : comp)
            for (const auto& v : c)
                if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return true;
        return false;
    }
};

struct RealVectorField {
    Grid grid;
    std::array<aligned_vector<double>, 3> comp;

    RealVectorField() = default;
    explicit RealVectorField(const Grid& g) : grid(g) {
        for (auto& c : comp) c.assign(g.size(), 0.0);
    }
};

struct ScalarSpectralField {
    Grid grid;
    aligned_vector<complexd> values;

    ScalarSpectralField() = default;
    explicit ScalarSpectralField(const Grid& g) : grid(g), values(g.size(), complexd(0.0, 0.0)) {}
};

// In-place linear algebra on fields (same grid assumed).
inline void axpy(SpectralVectorField& y, double a, const SpectralVectorField& x) {
    for (int c = 0; c < 3; ++c) {
        const std::size_t m = y.comp[c].size();
        for (std::size_t i = 0; i < m; ++i) y.comp[c][i] += a * x.comp[c][i];
    }
}

inline void scale(SpectralVectorField& u, double a) {
    for (auto& c : u.comp)
        for (auto& v : c) v *= a;
}

// The Hermitian pairing k <-> -k (mod n) identifies the Nyquist index n/2
// with itself while the wavevector convention assigns it +n/2*delta_xi, so
// odd-in-xi multipliers (divergence, Leray, Coriolis) cannot preserve the
// symmetry there. Solver states keep the Nyquist planes empty; dealiasing
// enforces this automatically.
inline void zero_nyquist_inplace(SpectralVectorField& u) {
    const int n = u.grid.n;
    const int q = n / 2;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (i != q && j != q && k != q) continue;
                const std::size_t idx = u.grid.flat(i, j, k);
                for (int c = 0; c < 3; ++c) u.comp[c][idx] = complexd(0.0, 0.0);
            }
}

// Max deviation from u_hat(-xi) = conj(u_hat(xi)), relative to max |u_hat|.
inline double hermitian_defect(const SpectralVectorField& u) {
    const int n = u.grid.n;
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const int ic = (n - i) % n;
        for (int j = 0; j < n; ++j) {
            const int jc = (n - j) % n;
            for (int k = 0; k < n; ++k) {
                const int kc = (n - k) % n;
                const std::size_t a = u.grid.flat(i, j, k);
                const std::size_t b = u.grid.flat(ic, jc, kc);
                for (int c = 0; c < 3; ++c)
                    worst = std::max(worst, std::abs(u.comp[c][a] - std::conj(u.comp[c][b])));
            }
        }
    }
    const double m = u.max_abs();
    return m > 0.0 ? worst / m : 0.0;
}

// Worst per-mode |xi . u_hat| / (|xi| |u_hat|). Modes at roundoff level
// relative to the field scale count as zero: a projection that annihilates a
// mode leaves an arbitrary-direction residue of size eps * |field|.
inline double divergence_defect(const SpectralVectorField& u) {
    const int n = u.grid.n;
    const auto xi = u.grid.axis_wavevectors();
    const double floor = 1e-13 * u.max_abs();
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const std::size_t idx = u.grid.flat(i, j, k);
                const complexd a = u.comp[0][idx], b = u.comp[1][idx], c = u.comp[2][idx];
                const double amp = std::sqrt(std::norm(a) + std::norm(b) + std::norm(c));
                if (amp <= floor) continue;
                const double x1 = xi[i], x2 = xi[j], x3 = xi[k];
                const double mod = std::sqrt(x1 * x1 + x2 * x2 + x3 * x3);
                if (mod == 0.0) continue;
                const complexd div = x1 * a + x2 * b + x3 * c;
                worst = std::max(worst, std::abs(div) / (mod * amp));
            }
    return worst;
}

inline bool is_divergence_free(const SpectralVectorField& u, double tol = 1e-12) {
    return divergence_defect(u) <= tol;
}

inline void require_same_grid(const Grid& a, const Grid& b, const char* where) {
    if (!(a == b)) throw std::invalid_argument(std::string(where) + ": grid mismatch");
}

}  // namespace decaylab
