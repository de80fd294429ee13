#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <tuple>
#include <utility>
#include <vector>

#include "decaylab/field.hpp"
#include "decaylab/quadrature.hpp"
#include "decaylab/radial_profile.hpp"
#include "decaylab/spectral_ops.hpp"

namespace decaylab {

struct DecayIndicator {
    double value = 0.0;  // rho^{-2r-3} * ball integral at the smallest radius
    bool converged = false;
};

struct DecayEstimate {
    double r_star = 0.0;
    double slope = 0.0;     // limiting log-log slope of the ball mass, = 3 + 2 r*
    double residual = 0.0;  // RMS log misfit of the fitted power model
    std::vector<double> radii;
    double indicator_value = 0.0;  // P_r at the fitted r, smallest radius
    bool capped = false;           // optimizer hit the upper bound (P_r ~ 0 data)
};

// Spectral mass inside the ball |xi| <= rho: lattice sum times (delta_xi)^3.
inline double ball_spectrum_integral(const SpectralVectorField& u, double rho) {
    const double d = u.grid.delta_xi();
    if (rho < 2.0 * d)
        throw InsufficientResolutionError(
            "ball_spectrum_integral: rho below 2*delta_xi lattice resolution");
    const int n = u.grid.n;
    const auto xi = u.grid.axis_wavevectors();
    const double rho2 = rho * rho;
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const double k2 =
                    xi[i] * xi[i] + xi[j] * xi[j] + xi[k] * xi[k];
                if (k2 == 0.0 || k2 > rho2) continue;
                const std::size_t idx = u.grid.flat(i, j, k);
                acc += std::norm(u.comp[0][idx]) + std::norm(u.comp[1][idx]) +
                       std::norm(u.comp[2][idx]);
            }
    return acc * d * d * d;
}

// 4 pi \int_0^rho r^2 a(r)^2 dr by adaptive quadrature.
inline double ball_spectrum_integral(const RadialProfile& profile, double rho) {
    if (!(rho > 0.0)) throw std::domain_error("ball_spectrum_integral: rho must be > 0");
    const double upper = std::min(rho, profile.support_end);
    const double val = integrate(
        [&profile](double r) {
            const double a = profile(r);
            return r * r * a * a;
        },
        0.0, upper);
    return 4.0 * pi * val;
}

// ||e^{t Delta} u0||^2_{H^s} = 4 pi \int_0^inf rho^{2s+2} e^{-2 t rho^2} a(rho)^2 drho.
inline double continuum_linear_norm(const RadialProfile& profile, double s, double t) {
    if (s < 0.0) throw std::domain_error("continuum_linear_norm: s must be >= 0");
    if (t < 0.0) throw std::domain_error("continuum_linear_norm: t must be >= 0");
    double upper = profile.support_end;
    const double rate = 2.0 * t + profile.gauss_rate;
    if (!std::isfinite(upper)) {
        if (rate <= 0.0)
            throw std::domain_error("continuum_linear_norm: integrand does not decay");
        upper = std::sqrt(120.0 / rate);
    } else if (rate > 0.0) {
        upper = std::min(upper, std::sqrt(120.0 / rate));
    }
    auto f = [&profile, s, t](double rho) {
        const double a = profile(rho);
        return std::pow(rho, 2.0 * s + 2.0) * std::exp(-2.0 * t * rho * rho) * a * a;
    };
    // split at the diffusive scale so the adaptive pass sees the peak
    const double split = rate > 0.0 ? std::min(std::sqrt(1.0 / rate), 0.5 * upper) : 0.5 * upper;
    return 4.0 * pi * (integrate(f, 0.0, split) + integrate(f, split, upper));
}

namespace detail {

inline void check_radii(const std::vector<double>& radii) {
    if (radii.size() < 2) throw std::invalid_argument("radii: need at least two radii");
    for (std::size_t i = 1; i < radii.size(); ++i)
        if (!(radii[i] < radii[i - 1]))
            throw std::invalid_argument("radii: must be strictly decreasing");
}

}  // namespace detail

// Geometric radius schedule standing in for the rho -> 0 limit.
inline std::vector<double> default_radii(double rho_max, int count = 12, double ratio = 0.75) {
    std::vector<double> radii(count);
    for (int i = 0; i < count; ++i) radii[i] = rho_max * std::pow(ratio, i);
    return radii;
}

inline std::vector<double> default_radii(const Grid& grid, int count = 12, double ratio = 0.75) {
    return default_radii(std::min(1.0, grid.n * grid.delta_xi() / 8.0), count, ratio);
}

// P_r along the radius schedule: the scaled ball integral at the smallest
// radius, flagged converged when the last three values vary by <= 5%.
template <class Input>
DecayIndicator decay_indicator(const Input& u, double r, const std::vector<double>& radii) {
    detail::check_radii(radii);
    std::vector<double> p;
    p.reserve(radii.size());
    for (double rho : radii)
        p.push_back(std::pow(rho, -2.0 * r - 3.0) * ball_spectrum_integral(u, rho));
    DecayIndicator out;
    out.value = p.back();
    const std::size_t m = p.size();
    const std::size_t lo = m >= 3 ? m - 3 : 0;
    double pmax = 0.0, pmin = std::numeric_limits<double>::infinity();
    for (std::size_t i = lo; i < m; ++i) {
        pmax = std::max(pmax, p[i]);
        pmin = std::min(pmin, p[i]);
    }
    out.converged = pmax == 0.0 ? true : (pmax - pmin) <= 0.05 * pmax;
    return out;
}

namespace detail {

// Ball masses of the model amplitude c |xi|^{2r} e^{-kappa |xi|^2}, evaluated
// with the same quadrature as the measurement (lattice sum for fields, radial
// integral for profiles) so discretization bias cancels in the fit.
struct LatticeBallModel {
    std::vector<double> xi_sorted;    // |xi| of modes inside the largest radius
    std::vector<double> xi_sq;
    std::vector<std::size_t> bounds;  // per radius: #modes with |xi| <= rho
    double cell_volume = 0.0;
    mutable double cached_r = std::numeric_limits<double>::quiet_NaN();
    mutable std::vector<double> pow_cache;

    LatticeBallModel(const Grid& g, const std::vector<double>& radii) {
        const double rmax = radii.front();
        const int n = g.n;
        const auto xi = g.axis_wavevectors();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    const double k2 =
                        xi[i] * xi[i] + xi[j] * xi[j] + xi[k] * xi[k];
                    if (k2 == 0.0 || k2 > rmax * rmax) continue;
                    xi_sorted.push_back(std::sqrt(k2));
                }
        std::sort(xi_sorted.begin(), xi_sorted.end());
        xi_sq.resize(xi_sorted.size());
        for (std::size_t i = 0; i < xi_sorted.size(); ++i) xi_sq[i] = xi_sorted[i] * xi_sorted[i];
        for (double rho : radii)
            bounds.push_back(std::upper_bound(xi_sorted.begin(), xi_sorted.end(), rho) -
                             xi_sorted.begin());
        const double d = g.delta_xi();
        cell_volume = d * d * d;
    }

    // log of model ball masses for unit c (radii order = input order, descending)
    std::vector<double> log_masses(double r, double kappa) const {
        if (r != cached_r) {
            pow_cache.resize(xi_sorted.size());
            for (std::size_t i = 0; i < xi_sorted.size(); ++i)
                pow_cache[i] = std::pow(xi_sorted[i], 2.0 * r);
            cached_r = r;
        }
        std::vector<double> out(bounds.size());
        double acc = 0.0;
        std::size_t pos = 0;
        // bounds are non-increasing along descending radii; accumulate ascending
        for (std::size_t i = 0; i < bounds.size(); ++i) {
            const std::size_t oi = bounds.size() - 1 - i;
            const std::size_t b = bounds[oi];
            for (; pos < b; ++pos) acc += pow_cache[pos] * std::exp(-kappa * xi_sq[pos]);
            out[oi] = std::log(acc * cell_volume);
        }
        return out;
    }
};

struct ProfileBallModel {
    std::vector<double> radii;

    std::vector<double> log_masses(double r, double kappa) const {
        std::vector<double> out(radii.size());
        for (std::size_t i = 0; i < radii.size(); ++i) {
            const double v = integrate(
                [r, kappa](double p) {
                    return std::pow(p, 2.0 + 2.0 * r) * std::exp(-kappa * p * p);
                },
                0.0, radii[i], 1e-9);
            out[i] = std::log(4.0 * pi * v);
        }
        return out;
    }
};

// RMS of centered residuals: the additive constant log c is profiled out.
inline double centered_rms(const std::vector<double>& a, const std::vector<double>& b) {
    double mean = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) mean += a[i] - b[i];
    mean /= a.size();
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i] - mean;
        acc += d * d;
    }
    return std::sqrt(acc / a.size());
}

template <class F>
double golden_min(const F& f, double lo, double hi, double tol) {
    const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

template <class Model>
DecayEstimate fit_character_model(const Model& model, const std::vector<double>& log_meas,
                                  const std::vector<double>& radii, double ball_at_min) {
    constexpr double r_lo = -1.4999, r_hi = 8.0, kappa_hi = 64.0;
    auto misfit_at = [&](double r) {
        auto inner = [&](double kappa) {
            return centered_rms(log_meas, model.log_masses(r, kappa));
        };
        const double kappa = golden_min(inner, 0.0, kappa_hi, 1e-3);
        return std::pair<double, double>(inner(kappa), kappa);
    };
    // coarse scan, then golden refinement around the best cell
    double best_r = r_lo, best_f = std::numeric_limits<double>::infinity();
    for (double r = r_lo; r <= r_hi + 1e-12; r += 0.25) {
        const double f = misfit_at(r).first;
        if (f < best_f) {
            best_f = f;
            best_r = r;
        }
    }
    const double lo = std::max(r_lo, best_r - 0.3), hi = std::min(r_hi, best_r + 0.3);
    const double r_star =
        golden_min([&](double r) { return misfit_at(r).first; }, lo, hi, 1e-5);
    const double residual = misfit_at(r_star).first;

    if (r_star <= r_lo + 1e-3)
        throw std::domain_error(
            "estimate_decay_character: estimate at/below the admissible limit -3/2");
    if (residual > 0.1) throw IllDefinedCharacterError(residual);

    DecayEstimate est;
    est.r_star = r_star;
    est.slope = 3.0 + 2.0 * r_star;
    est.residual = residual;
    est.radii = radii;
    est.capped = r_star >= r_hi - 1e-3;
    est.indicator_value = std::pow(radii.back(), -2.0 * r_star - 3.0) * ball_at_min;
    return est;
}

}  // namespace detail

// Decay-character estimation: fit the ball-mass model of c |xi|^{2r} e^{-kappa xi^2}
// to the measured ball sums, with the model evaluated through the same
// quadrature as the data. The requested radii must span at least one decade;
// for lattice fields they are clamped to [2 delta_xi, rho_max].
inline DecayEstimate estimate_decay_character(const SpectralVectorField& u,
                                              std::vector<double> radii) {
    detail::check_radii(radii);
    if (radii.size() < 5 || radii.front() < 10.0 * radii.back())
        throw std::invalid_argument(
            "estimate_decay_character: need >= 5 radii spanning at least one decade");
    const double d = u.grid.delta_xi();
    std::erase_if(radii, [d](double r) { return r < 2.0 * d; });
    if (radii.size() < 4)
        throw InsufficientResolutionError(
            "estimate_decay_character: fewer than 4 radii remain above 2*delta_xi");
    std::vector<double> log_meas;
    for (double rho : radii) {
        const double s = ball_spectrum_integral(u, rho);
        if (!(s > 0.0))
            throw std::invalid_argument("estimate_decay_character: no spectral mass in ball");
        log_meas.push_back(std::log(s));
    }
    detail::LatticeBallModel model(u.grid, radii);
    return detail::fit_character_model(model, log_meas, radii,
                                       std::exp(log_meas.back()));
}

inline DecayEstimate estimate_decay_character(const RadialProfile& profile,
                                              std::vector<double> radii) {
    detail::check_radii(radii);
    if (radii.size() < 5 || radii.front() < 10.0 * radii.back())
        throw std::invalid_argument(
            "estimate_decay_character: need >= 5 radii spanning at least one decade");
    std::vector<double> log_meas;
    for (double rho : radii) {
        const double s = ball_spectrum_integral(profile, rho);
        if (!(s > 0.0))
            throw std::invalid_argument("estimate_decay_character: no spectral mass in ball");
        log_meas.push_back(std::log(s));
    }
    detail::ProfileBallModel model{radii};
    return detail::fit_character_model(model, log_meas, radii,
                                       std::exp(log_meas.back()));
}

inline DecayEstimate estimate_decay_character(const SpectralVectorField& u) {
    return estimate_decay_character(u, default_radii(u.grid));
}

namespace detail {

// Divergence-free, Hermitian, mean-free field with |u0_hat(xi)| =
// |xi|^{exponent} e^{-|xi|^2/width^2} times a seeded random transverse unit
// direction and phase. Nyquist planes are zeroed so the Hermitian pairing is
// a clean bijection. The H^{1/2} norm is rescaled to `amplitude`.
inline SpectralVectorField synthesize_power_gauss(double exponent, const Grid& grid,
                                                  unsigned long seed, double amplitude,
                                                  double width) {
    if (!(amplitude > 0.0)) throw std::domain_error("synthesize: amplitude must be > 0");
    if (!(width > 0.0)) throw std::domain_error("synthesize: envelope width must be > 0");
    SpectralVectorField u(grid);
    const int n = grid.n;
    const auto xi = grid.axis_wavevectors();
    const double w2 = width * width;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 2.0 * pi);

    auto is_nyquist = [n](int k) { return k == n / 2; };
    for (int i = 0; i < n; ++i) {
        const int ic = (n - i) % n;
        for (int j = 0; j < n; ++j) {
            const int jc = (n - j) % n;
            for (int k = 0; k < n; ++k) {
                const int kc = (n - k) % n;
                if (i == 0 && j == 0 && k == 0) continue;
                if (is_nyquist(i) || is_nyquist(j) || is_nyquist(k)) continue;
                // fill each Hermitian pair once, from its lexicographic leader
                if (std::tie(ic, jc, kc) < std::tie(i, j, k)) continue;
                const double x1 = xi[i], x2 = xi[j], x3 = xi[k];
                const double k2 = x1 * x1 + x2 * x2 + x3 * x3;
                const double mod = std::sqrt(k2);
                const double mag = std::pow(mod, exponent) * std::exp(-k2 / w2);
                // random transverse unit direction
                double d1, d2, d3, dn;
                do {
                    const double g1 = gauss(rng), g2 = gauss(rng), g3 = gauss(rng);
                    const double proj = (g1 * x1 + g2 * x2 + g3 * x3) / k2;
                    d1 = g1 - proj * x1;
                    d2 = g2 - proj * x2;
                    d3 = g3 - proj * x3;
                    dn = std::sqrt(d1 * d1 + d2 * d2 + d3 * d3);
                } while (dn < 1e-12);
                const complexd phase = std::polar(mag / dn, unif(rng));
                const std::size_t a = grid.flat(i, j, k);
                const std::size_t b = grid.flat(ic, jc, kc);
                u.comp[0][a] = phase * d1;
                u.comp[1][a] = phase * d2;
                u.comp[2][a] = phase * d3;
                u.comp[0][b] = std::conj(u.comp[0][a]);
                u.comp[1][b] = std::conj(u.comp[1][a]);
                u.comp[2][b] = std::conj(u.comp[2][a]);
            }
        }
    }
    const double norm = std::sqrt(sobolev_seminorm_sq(u, 0.5));
    if (!(norm > 0.0)) throw std::runtime_error("synthesize: degenerate field");
    scale(u, amplitude / norm);
    return u;
}

}  // namespace detail

// Synthetic data with decay character r*( u0 ) = r_star.
inline SpectralVectorField synthesize_with_character(double r_star, const Grid& grid,
                                                     unsigned long seed, double amplitude,
                                                     double envelope_width = 1.0) {
    if (r_star <= -1.5)
        throw std::domain_error("synthesize_with_character: r_star must be > -3/2");
    return detail::synthesize_power_gauss(r_star, grid, seed, amplitude, envelope_width);
}

// Synthetic data with decay character of the half-shifted datum
// r*(Lambda^{1/2} u0) = q_star, i.e. |u0_hat| ~ |xi|^{q* - 1/2}. This is the
// parameterization the nonlinear decay theorems are framed in.
inline SpectralVectorField synthesize_with_shifted_character(double q_star, const Grid& grid,
                                                             unsigned long seed,
                                                             double amplitude,
                                                             double envelope_width = 1.0) {
    if (q_star <= -1.5)
        throw std::domain_error("synthesize_with_shifted_character: q_star must be > -3/2");
    return detail::synthesize_power_gauss(q_star - 0.5, grid, seed, amplitude, envelope_width);
}

}  // namespace decaylab
