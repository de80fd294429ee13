#pragma once

#include <cmath>

#include "decaylab/field.hpp"

namespace decaylab {

// Leray projection: u_hat -= xi (xi . u_hat)/|xi|^2. The zero mode is left
// untouched (mean-free convention keeps it at zero).
inline void leray_project_inplace(SpectralVectorField& u) {
    const int n = u.grid.n;
    const auto xi = u.grid.axis_wavevectors();
    for (int i = 0; i < n; ++i) {
        const double x1 = xi[i];
        for (int j = 0; j < n; ++j) {
            const double x2 = xi[j];
            for (int k = 0; k < n; ++k) {
                const double x3 = xi[k];
                const double k2 = x1 * x1 + x2 * x2 + x3 * x3;
                if (k2 == 0.0) continue;
                const std::size_t idx = u.grid.flat(i, j, k);
                const complexd d =
                    (x1 * u.comp[0][idx] + x2 * u.comp[1][idx] + x3 * u.comp[2][idx]) / k2;
                u.comp[0][idx] -= x1 * d;
                u.comp[1][idx] -= x2 * d;
                u.comp[2][idx] -= x3 * d;
            }
        }
    }
}

inline SpectralVectorField leray_project(const SpectralVectorField& u) {
    SpectralVectorField out = u;
    leray_project_inplace(out);
    return out;
}

// Riesz multiplier |xi|^s; the zero mode stays zero for every s.
inline void riesz_apply_inplace(SpectralVectorField& u, double s) {
    const int n = u.grid.n;
    const auto xi = u.grid.axis_wavevectors();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const std::size_t idx = u.grid.flat(i, j, k);
                const double k2 =
                    xi[i] * xi[i] + xi[j] * xi[j] + xi[k] * xi[k];
                if (k2 == 0.0) {
                    for (int c = 0; c < 3; ++c) u.comp[c][idx] = complexd(0.0, 0.0);
                    continue;
                }
                const double w = std::pow(k2, 0.5 * s);
                for (int c = 0; c < 3; ++c) u.comp[c][idx] *= w;
            }
}

inline SpectralVectorField riesz_apply(const SpectralVectorField& u, double s) {
    SpectralVectorField out = u;
    riesz_apply_inplace(out, s);
    return out;
}

// Discrete homogeneous Sobolev seminorm squared:
//   sum_xi |xi|^{2s} |u_hat(xi)|^2 (delta_xi)^3,
// the quadrature approximation of the continuum integral. The zero mode is
// always excluded (it is pinned to zero for solver states anyway).
inline double sobolev_seminorm_sq(const SpectralVectorField& u, double s) {
    const int n = u.grid.n;
    const auto xi = u.grid.axis_wavevectors();
    const double d = u.grid.delta_xi();
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const double k2 =
                    xi[i] * xi[i] + xi[j] * xi[j] + xi[k] * xi[k];
                if (k2 == 0.0) continue;
                const std::size_t idx = u.grid.flat(i, j, k);
                const double a2 = std::norm(u.comp[0][idx]) + std::norm(u.comp[1][idx]) +
                                  std::norm(u.comp[2][idx]);
                acc += (s == 0.0 ? 1.0 : std::pow(k2, s)) * a2;
            }
    return acc * d * d * d;
}

// <u, v>_{H^s} = sum |xi|^{2s} Re(u_hat . conj(v_hat)) (delta_xi)^3.
inline double sobolev_inner(const SpectralVectorField& u, const SpectralVectorField& v,
                            double s) {
    require_same_grid(u.grid, v.grid, "sobolev_inner");
    const int n = u.grid.n;
    const auto xi = u.grid.axis_wavevectors();
    const double d = u.grid.delta_xi();
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const double k2 =
                    xi[i] * xi[i] + xi[j] * xi[j] + xi[k] * xi[k];
                if (k2 == 0.0) continue;
                const std::size_t idx = u.grid.flat(i, j, k);
                double re = 0.0;
                for (int c = 0; c < 3; ++c)
                    re += (u.comp[c][idx] * std::conj(v.comp[c][idx])).real();
                acc += (s == 0.0 ? 1.0 : std::pow(k2, s)) * re;
            }
    return acc * d * d * d;
}

// 2/3-rule truncation: zero every mode with any |signed index| > n/3.
inline void dealias_inplace(SpectralVectorField& u) {
    const int n = u.grid.n;
    auto cut = [n](int k) {
        const int s = k <= n / 2 ? k : k - n;
        return 3 * std::abs(s) > n;
    };
    for (int i = 0; i < n; ++i) {
        const bool ci = cut(i);
        for (int j = 0; j < n; ++j) {
            const bool cj = ci || cut(j);
            for (int k = 0; k < n; ++k) {
                if (!(cj || cut(k))) continue;
                const std::size_t idx = u.grid.flat(i, j, k);
                for (int c = 0; c < 3; ++c) u.comp[c][idx] = complexd(0.0, 0.0);
            }
        }
    }
}

inline SpectralVectorField dealias(const SpectralVectorField& u) {
    SpectralVectorField out = u;
    dealias_inplace(out);
    return out;
}

}  // namespace decaylab
