#pragma once

#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>

#include "decaylab/common.hpp"

namespace decaylab {

namespace detail {
inline std::string short_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}
}  // namespace detail

// Radially symmetric spectral amplitude rho -> a(rho) = |u0_hat|(rho),
// the input to the continuum oracles. support_end < inf or gauss_rate > 0
// guarantees the L^2 mass integral converges at infinity; integrability near
// zero is the caller's responsibility (power exponents > -3/2 throughout).
struct RadialProfile {
    std::function<double(double)> amplitude;
    double support_end = std::numeric_limits<double>::infinity();
    // a(rho)^2 <~ e^{-gauss_rate * rho^2} for large rho (0 = no Gaussian tail)
    double gauss_rate = 0.0;
    std::string name;

    double operator()(double rho) const { return amplitude(rho); }
};

// |u0_hat| = rho^{r*} e^{-rho^2/width^2}; decay character r*.
inline RadialProfile power_gauss_profile(double r_star, double width = 1.0) {
    if (r_star <= -1.5) throw std::domain_error("power_gauss_profile: r_star must be > -3/2");
    if (!(width > 0.0)) throw std::domain_error("power_gauss_profile: width must be positive");
    RadialProfile p;
    const double w2 = width * width;
    p.amplitude = [r_star, w2](double rho) {
        return std::pow(rho, r_star) * std::exp(-rho * rho / w2);
    };
    p.gauss_rate = 2.0 / w2;
    p.name = "power_gauss(r*=" + detail::short_num(r_star) + ")";
    return p;
}

// |u0_hat| = 1 on (0, cutoff]; bounded away from zero at the origin, r* = 0.
inline RadialProfile indicator_profile(double cutoff) {
    if (!(cutoff > 0.0)) throw std::domain_error("indicator_profile: cutoff must be positive");
    RadialProfile p;
    p.amplitude = [cutoff](double rho) { return rho <= cutoff ? 1.0 : 0.0; };
    p.support_end = cutoff;
    p.name = "indicator(cutoff=" + detail::short_num(cutoff) + ")";
    return p;
}

// |u0_hat| = rho^{exponent} on (0, cutoff]; r* = exponent. exponent = -1 with
// cutoff 1 models the L^{3/2} \cap L^2 class (r* = -1).
inline RadialProfile power_cut_profile(double exponent, double cutoff) {
    if (exponent <= -1.5) throw std::domain_error("power_cut_profile: exponent must be > -3/2");
    if (!(cutoff > 0.0)) throw std::domain_error("power_cut_profile: cutoff must be positive");
    RadialProfile p;
    p.amplitude = [exponent, cutoff](double rho) {
        return rho <= cutoff ? std::pow(rho, exponent) : 0.0;
    };
    p.support_end = cutoff;
    p.name = "power_cut(e=" + detail::short_num(exponent) + ")";
    return p;
}

}  // namespace decaylab
