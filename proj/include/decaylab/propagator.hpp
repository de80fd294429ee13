#pragma once

#include <array>
#include <cmath>

#include "decaylab/field.hpp"
#include "decaylab/spectral_ops.hpp"

namespace decaylab {

// Coriolis parameter; viscosity is fixed at 1 by the normalization of the
// equations, rescaling is the caller's job via box length and time units.
struct RotationParams {
    double omega = 0.0;
};

// R(xi) = [[0, x3, -x2], [-x3, 0, x1], [x2, -x1, 0]] / |xi|, acting as
// R(xi) v = v x xi/|xi|. rotation_matrix returns cos(theta) I + sin(theta) R(xi):
// a rotation about the axis xi/|xi| on the transverse plane, and cos(theta)
// times the identity along xi itself.
inline std::array<std::array<double, 3>, 3> rotation_matrix(const std::array<double, 3>& xi,
                                                            double theta) {
    const double mod = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
    if (mod == 0.0) throw std::domain_error("rotation_matrix: xi must be nonzero");
    const double x1 = xi[0] / mod, x2 = xi[1] / mod, x3 = xi[2] / mod;
    const double c = std::cos(theta), s = std::sin(theta);
    return {{{c, s * x3, -s * x2},
             {-s * x3, c, s * x1},
             {s * x2, -s * x1, c}}};
}

namespace detail {

// One mode of e^{t M(xi)}: heat factor times the transverse rotation,
//   v' = e^{-t|xi|^2} (cos(theta) v + sin(theta) (v x xihat)),
// with theta = Omega (xi3/|xi|) t. Exact for divergence-free data.
inline void semigroup_mode(double x1, double x2, double x3, double heat, double c, double s,
                           complexd& v1, complexd& v2, complexd& v3) {
    const complexd r1 = v2 * x3 - v3 * x2;
    const complexd r2 = v3 * x1 - v1 * x3;
    const complexd r3 = v1 * x2 - v2 * x1;
    v1 = heat * (c * v1 + s * r1);
    v2 = heat * (c * v2 + s * r2);
    v3 = heat * (c * v3 + s * r3);
}

inline void semigroup_apply_inplace_unchecked(SpectralVectorField& u, double t,
                                              const RotationParams& params) {
    const int n = u.grid.n;
    const auto xi = u.grid.axis_wavevectors();
    for (int i = 0; i < n; ++i) {
        const double x1 = xi[i];
        for (int j = 0; j < n; ++j) {
            const double x2 = xi[j];
            for (int k = 0; k < n; ++k) {
                const double x3 = xi[k];
                const double k2 = x1 * x1 + x2 * x2 + x3 * x3;
                const std::size_t idx = u.grid.flat(i, j, k);
                if (k2 == 0.0) {
                    for (int c = 0; c < 3; ++c) u.comp[c][idx] = complexd(0.0, 0.0);
                    continue;
                }
                const double mod = std::sqrt(k2);
                const double theta = params.omega * (x3 / mod) * t;
                semigroup_mode(x1 / mod, x2 / mod, x3 / mod, std::exp(-t * k2),
                               std::cos(theta), std::sin(theta), u.comp[0][idx],
                               u.comp[1][idx], u.comp[2][idx]);
            }
        }
    }
}

}  // namespace detail

// Exact Fourier-space solution operator of the linearized system:
//   u_hat(xi,t) = cos(Omega xi3 t/|xi|) e^{-t|xi|^2} u_hat0
//               + sin(Omega xi3 t/|xi|) e^{-t|xi|^2} R(xi) u_hat0.
// Requires divergence-free input; on the transverse plane the rotation factor
// is an isometry, so |u_hat(xi,t)| = e^{-t|xi|^2} |u_hat0(xi)| per mode.
inline SpectralVectorField semigroup_apply(const SpectralVectorField& u0, double t,
                                           const RotationParams& params) {
    if (t < 0.0) throw std::domain_error("semigroup_apply: t must be >= 0");
    if (!is_divergence_free(u0))
        throw std::invalid_argument("semigroup_apply: input is not divergence-free");
    SpectralVectorField out = u0;
    detail::semigroup_apply_inplace_unchecked(out, t, params);
    return out;
}

// Per-mode factors of e^{h M(xi)} for a fixed time increment: the stepper
// pays trig and normalization once per (grid, h, Omega). Stored as
// hc = e^{-h|xi|^2} cos(theta) and su = e^{-h|xi|^2} sin(theta) xi/|xi|, so
// one application is v' = hc v + v x su per mode.
struct SemigroupKernel {
    Grid grid;
    double h = 0.0;
    double omega = 0.0;
    aligned_vector<double> hc, su1, su2, su3;

    SemigroupKernel() = default;
    SemigroupKernel(const Grid& g, double h_, double omega_) : grid(g), h(h_), omega(omega_) {
        const int n = g.n;
        const auto xi = g.axis_wavevectors();
        hc.assign(g.size(), 0.0);
        su1.assign(g.size(), 0.0);
        su2.assign(g.size(), 0.0);
        su3.assign(g.size(), 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    const std::size_t idx = g.flat(i, j, k);
                    const double k2 =
                        xi[i] * xi[i] + xi[j] * xi[j] + xi[k] * xi[k];
                    if (k2 == 0.0) continue;  // zero mode stays pinned
                    const double mod = std::sqrt(k2);
                    const double theta = omega * (xi[k] / mod) * h;
                    const double heat = std::exp(-h * k2);
                    const double hs = heat * std::sin(theta);
                    hc[idx] = heat * std::cos(theta);
                    su1[idx] = hs * xi[i] / mod;
                    su2[idx] = hs * xi[j] / mod;
                    su3[idx] = hs * xi[k] / mod;
                }
    }

    void apply(SpectralVectorField& u) const {
        apply_to(u.comp[0].data(), u.comp[1].data(), u.comp[2].data());
    }

    void apply_to(complexd* v1, complexd* v2, complexd* v3) const {
        const std::size_t m = grid.size();
        for (std::size_t i = 0; i < m; ++i) {
            const complexd a = v1[i], b = v2[i], c = v3[i];
            v1[i] = hc[i] * a + (b * su3[i] - c * su2[i]);
            v2[i] = hc[i] * b + (c * su1[i] - a * su3[i]);
            v3[i] = hc[i] * c + (a * su2[i] - b * su1[i]);
        }
    }
};

// P(e3 x u) in spectral space; orthogonal to u in every H^s inner product,
// which is what makes the Coriolis term do no work.
inline SpectralVectorField coriolis_term(const SpectralVectorField& u) {
    SpectralVectorField out(u.grid);
    const std::size_t m = u.grid.size();
    for (std::size_t i = 0; i < m; ++i) {
        out.comp[0][i] = -u.comp[1][i];
        out.comp[1][i] = u.comp[0][i];
        out.comp[2][i] = complexd(0.0, 0.0);
    }
    leray_project_inplace(out);
    const std::size_t zero = u.grid.flat(0, 0, 0);
    for (int c = 0; c < 3; ++c) out.comp[c][zero] = complexd(0.0, 0.0);
    return out;
}

// Pressure recovered from the linear balance:
//   p_hat(xi) = i Omega |xi|^{-2} (xi2 u_hat1 - xi1 u_hat2).
inline ScalarSpectralField pressure_spectral(const SpectralVectorField& u,
                                             const RotationParams& params) {
    ScalarSpectralField p(u.grid);
    const int n = u.grid.n;
    const auto xi = u.grid.axis_wavevectors();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const double k2 =
                    xi[i] * xi[i] + xi[j] * xi[j] + xi[k] * xi[k];
                if (k2 == 0.0) continue;
                const std::size_t idx = u.grid.flat(i, j, k);
                p.values[idx] = complexd(0.0, params.omega / k2) *
                                (xi[j] * u.comp[0][idx] - xi[i] * u.comp[1][idx]);
            }
    return p;
}

}  // namespace decaylab
