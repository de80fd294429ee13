#pragma once

#include <cmath>

#include "decaylab/nonlinear.hpp"
#include "decaylab/spectral_ops.hpp"

namespace decaylab {

enum class ScheduleVariant { log_schedule, power_schedule };

// Ball-radius schedules g(t) from the Fourier splitting argument:
//   log_schedule:   g^2(t) = (3/2) / ((e+t) ln(e+t))
//   power_schedule: g^2(t) = (alpha/2) (1+t)^{-1}
// The proof needs alpha > max{3/2+q*, 1} + 1; the default 4 covers q* <= 3/2.
struct SplittingSchedule {
    ScheduleVariant variant = ScheduleVariant::power_schedule;
    double alpha = 4.0;
};

inline double splitting_radius(double t, const SplittingSchedule& schedule) {
    if (t < 0.0) throw std::domain_error("splitting_radius: t must be >= 0");
    switch (schedule.variant) {
        case ScheduleVariant::log_schedule: {
            const double e = std::exp(1.0);
            return std::sqrt(1.5 / ((e + t) * std::log(e + t)));
        }
        case ScheduleVariant::power_schedule:
            if (!(schedule.alpha > 0.0))
                throw std::domain_error("splitting_radius: alpha must be > 0");
            return std::sqrt(0.5 * schedule.alpha / (1.0 + t));
    }
    throw std::logic_error("splitting_radius: unknown variant");
}

// Share of the H^s mass carried by modes |xi| <= g; 0 for the zero field.
inline double low_mode_fraction(const SpectralVectorField& u, double s, double g) {
    if (s < 0.0) throw std::domain_error("low_mode_fraction: s must be >= 0");
    const int n = u.grid.n;
    const auto xi = u.grid.axis_wavevectors();
    const double g2 = g * g;
    double inside = 0.0, total = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const double k2 =
                    xi[i] * xi[i] + xi[j] * xi[j] + xi[k] * xi[k];
                if (k2 == 0.0) continue;
                const std::size_t idx = u.grid.flat(i, j, k);
                const double a2 = std::norm(u.comp[0][idx]) + std::norm(u.comp[1][idx]) +
                                  std::norm(u.comp[2][idx]);
                const double w = (s == 0.0 ? 1.0 : std::pow(k2, s)) * a2;
                total += w;
                if (k2 <= g2) inside += w;
            }
    return total > 0.0 ? inside / total : 0.0;
}

// <Lambda^{1/2} u, Lambda^{1/2} P div(u x u)> / (||u||_{H^{1/2}} ||grad u||^2_{H^{1/2}}),
// scale-invariant by the (3,3) homogeneity of numerator and denominator.
inline double bilinear_ratio(const SpectralVectorField& u, bool do_dealias = false) {
    const double hhalf_sq = sobolev_seminorm_sq(u, 0.5);
    if (!(hhalf_sq > 0.0)) throw std::domain_error("bilinear_ratio: zero field");
    SpectralVectorField nl = nonlinear_term(u, do_dealias);
    // nonlinear_term returns -P div(u x u)
    const double num = -sobolev_inner(u, nl, 0.5);
    const double den = std::sqrt(hhalf_sq) * sobolev_seminorm_sq(u, 1.5);
    return num / den;
}

}  // namespace decaylab
