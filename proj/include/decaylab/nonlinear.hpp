#pragma once

#include "decaylab/fft.hpp"
#include "decaylab/spectral_ops.hpp"

namespace decaylab {

// Scratch buffers for the pseudo-spectral quadratic term; reuse across steps.
struct NonlinearWorkspace {
    Grid grid;
    std::array<aligned_vector<double>, 3> vel;   // physical velocity
    std::array<aligned_vector<double>, 6> prod;  // u_i u_j, order 11,12,13,22,23,33
    aligned_vector<complexd> in, work;

    NonlinearWorkspace() = default;
    explicit NonlinearWorkspace(const Grid& g) : grid(g) {
        const std::size_t m = g.size();
        for (auto& v : vel) v.assign(m, 0.0);
        for (auto& p : prod) p.assign(m, 0.0);
        in.assign(m, complexd(0.0, 0.0));
        work.assign(m, complexd(0.0, 0.0));
    }
};

namespace detail {

// Forward transform of the packed product pair (pa + i pb), Hermitian-split in
// place, and the i xi_j contraction of both symmetric tensor slots accumulated
// into out -- one lattice pass instead of a store/reload of two spectra.
inline void forward_pair_divergence(const Grid& g, const double* pa, const double* pb,
                                    int rowA, int colA, int rowB, int colB,
                                    SpectralVectorField& out, aligned_vector<complexd>& in,
                                    aligned_vector<complexd>& work) {
    const int n = g.n;
    const std::size_t m = g.size();
    const double s = forward_scale(g);
    for (std::size_t i = 0; i < m; ++i) in[i] = complexd(pa[i], pb[i]);
    FftEngine::instance().forward_raw(n, in.data(), work.data());
    const auto xi = g.axis_wavevectors();
    const bool dupA = rowA != colA, dupB = rowB != colB;
    for (int i = 0; i < n; ++i) {
        const int ic = (n - i) % n;
        for (int j = 0; j < n; ++j) {
            const int jc = (n - j) % n;
            const std::size_t base = (static_cast<std::size_t>(i) * n + j) * n;
            const std::size_t cbase = (static_cast<std::size_t>(ic) * n + jc) * n;
            for (int k = 0; k < n; ++k) {
                const std::size_t idx = base + k;
                const complexd z = work[idx];
                const complexd zc = std::conj(work[cbase + (n - k) % n]);
                const complexd qa = 0.5 * s * (z + zc);
                const complexd qb = complexd(0.0, -0.5) * s * (z - zc);
                const double x[3] = {xi[i], xi[j], xi[k]};
                const complexd iqa = complexd(-qa.imag(), qa.real());
                const complexd iqb = complexd(-qb.imag(), qb.real());
                out.comp[rowA][idx] += x[colA] * iqa;
                if (dupA) out.comp[colA][idx] += x[rowA] * iqa;
                out.comp[rowB][idx] += x[colB] * iqb;
                if (dupB) out.comp[colB][idx] += x[rowB] * iqb;
            }
        }
    }
}

// negate, Leray-project, truncate and pin the zero mode in a single pass
inline void finalize_nonlinear(SpectralVectorField& out, bool do_dealias) {
    const Grid& g = out.grid;
    const int n = g.n;
    const auto xi = g.axis_wavevectors();
    auto cut = [n](int k) {
        const int sgn = k <= n / 2 ? k : k - n;
        return 3 * std::abs(sgn) > n;
    };
    for (int i = 0; i < n; ++i) {
        const double x1 = xi[i];
        const bool ci = cut(i);
        for (int j = 0; j < n; ++j) {
            const double x2 = xi[j];
            const bool cj = ci || cut(j);
            const std::size_t base = (static_cast<std::size_t>(i) * n + j) * n;
            for (int k = 0; k < n; ++k) {
                const std::size_t idx = base + k;
                if (do_dealias && (cj || cut(k))) {
                    for (int c = 0; c < 3; ++c) out.comp[c][idx] = complexd(0.0, 0.0);
                    continue;
                }
                const double x3 = xi[k];
                const double k2 = x1 * x1 + x2 * x2 + x3 * x3;
                if (k2 == 0.0) {
                    for (int c = 0; c < 3; ++c) out.comp[c][idx] = complexd(0.0, 0.0);
                    continue;
                }
                const complexd d = (x1 * out.comp[0][idx] + x2 * out.comp[1][idx] +
                                    x3 * out.comp[2][idx]) /
                                   k2;
                out.comp[0][idx] = -(out.comp[0][idx] - x1 * d);
                out.comp[1][idx] = -(out.comp[1][idx] - x2 * d);
                out.comp[2][idx] = -(out.comp[2][idx] - x3 * d);
            }
        }
    }
}

}  // namespace detail

// -P div(u (x) u), computed pseudo-spectrally: inverse transform of u, the six
// distinct products in physical space, forward transforms, i xi_j contraction,
// Leray projection, then the 2/3 truncation when enabled. Transforms are
// packed two real fields per complex FFT.
inline void nonlinear_term(const SpectralVectorField& u, SpectralVectorField& out,
                           NonlinearWorkspace& ws, bool do_dealias = true) {
    require_same_grid(u.grid, ws.grid, "nonlinear_term");
    const Grid& g = u.grid;
    const std::size_t m = g.size();

    backward_pair(g, u.comp[0].data(), u.comp[1].data(), ws.vel[0].data(), ws.vel[1].data(),
                  ws.in, ws.work);
    {  // third component alone
        const double s = backward_scale(g);
        std::copy(u.comp[2].begin(), u.comp[2].end(), ws.in.begin());
        FftEngine::instance().backward_raw(g.n, ws.in.data(), ws.work.data());
        for (std::size_t i = 0; i < m; ++i) ws.vel[2][i] = s * ws.work[i].real();
    }

    const double* v1 = ws.vel[0].data();
    const double* v2 = ws.vel[1].data();
    const double* v3 = ws.vel[2].data();
    for (std::size_t i = 0; i < m; ++i) {
        ws.prod[0][i] = v1[i] * v1[i];
        ws.prod[1][i] = v1[i] * v2[i];
        ws.prod[2][i] = v1[i] * v3[i];
        ws.prod[3][i] = v2[i] * v2[i];
        ws.prod[4][i] = v2[i] * v3[i];
        ws.prod[5][i] = v3[i] * v3[i];
    }

    if (!(out.grid == g)) out = SpectralVectorField(g);
    out.fill_zero();
    detail::forward_pair_divergence(g, ws.prod[0].data(), ws.prod[1].data(), 0, 0, 0, 1, out,
                                    ws.in, ws.work);
    detail::forward_pair_divergence(g, ws.prod[2].data(), ws.prod[3].data(), 0, 2, 1, 1, out,
                                    ws.in, ws.work);
    detail::forward_pair_divergence(g, ws.prod[4].data(), ws.prod[5].data(), 1, 2, 2, 2, out,
                                    ws.in, ws.work);
    detail::finalize_nonlinear(out, do_dealias);
}

inline SpectralVectorField nonlinear_term(const SpectralVectorField& u,
                                          bool do_dealias = true) {
    NonlinearWorkspace ws(u.grid);
    SpectralVectorField out(u.grid);
    nonlinear_term(u, out, ws, do_dealias);
    return out;
}

}  // namespace decaylab
