#pragma once

#include <vector>

#include "decaylab/nonlinear.hpp"
#include "decaylab/propagator.hpp"

namespace decaylab {

struct PicardResult {
    SpectralVectorField u;                  // k_max-th iterate at time T
    std::vector<double> iterate_distances;  // sup_t ||u^{k} - u^{k-1}||_{H^{1/2}} per sweep
};

// Picard iteration on the mild-solution map
//   G(u)(t) = T(t) u0 + \int_0^t T(t-s) N(u(s)) ds,   N(u) = -P div(u x u),
// with the Duhamel integral by composite trapezoid on quad_points panels.
// The semigroup property turns the integral into the panel recursion
//   I_j = T(dt) I_{j-1} + dt/2 (T(dt) N_{j-1} + N_j).
// Iterate 0 is the pure linear evolution.
inline PicardResult picard_solve(const SpectralVectorField& u0, double T, int k_max,
                                 int quad_points, const RotationParams& params = {},
                                 bool do_dealias = true) {
    if (!(T > 0.0)) throw std::domain_error("picard_solve: T must be > 0");
    if (quad_points < 2) throw std::domain_error("picard_solve: quad_points must be >= 2");
    if (k_max < 0) throw std::domain_error("picard_solve: k_max must be >= 0");
    if (!is_divergence_free(u0))
        throw std::invalid_argument("picard_solve: u0 is not divergence-free");

    const Grid& g = u0.grid;
    const int m = quad_points;
    const double dt = T / m;
    SemigroupKernel E(g, dt, params.omega);

    std::vector<SpectralVectorField> lin(m + 1, SpectralVectorField(g));
    lin[0] = u0;
    if (do_dealias) dealias_inplace(lin[0]);
    for (int j = 1; j <= m; ++j) {
        lin[j] = lin[j - 1];
        E.apply(lin[j]);
    }

    PicardResult out;
    std::vector<SpectralVectorField> u = lin;
    if (k_max == 0) {
        out.u = u[m];
        return out;
    }

    NonlinearWorkspace ws(g);
    std::vector<SpectralVectorField> N(m + 1, SpectralVectorField(g));
    SpectralVectorField I(g), tmp(g);
    int rising = 0;
    for (int k = 1; k <= k_max; ++k) {
        for (int j = 0; j <= m; ++j) nonlinear_term(u[j], N[j], ws, do_dealias);
        I.fill_zero();
        double dist = 0.0;
        for (int j = 1; j <= m; ++j) {
            E.apply(I);
            tmp = N[j - 1];
            E.apply(tmp);
            axpy(I, 0.5 * dt, tmp);
            axpy(I, 0.5 * dt, N[j]);
            tmp = lin[j];
            axpy(tmp, 1.0, I);
            axpy(u[j], -1.0, tmp);  // u[j] now holds old - new
            dist = std::max(dist, std::sqrt(sobolev_seminorm_sq(u[j], 0.5)));
            u[j] = tmp;
        }
        if (!out.iterate_distances.empty() && dist > out.iterate_distances.back()) {
            if (++rising >= 3)
                throw NonContractionError(
                    "picard_solve: iterate distances increased for 3 consecutive sweeps "
                    "(data too large)");
        } else {
            rising = 0;
        }
        out.iterate_distances.push_back(dist);
    }
    out.u = u[m];
    return out;
}

}  // namespace decaylab
