#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace decaylab {

namespace detail {

// 15-point Kronrod / 7-point Gauss pair (QUADPACK dqk15 abscissae/weights).
inline constexpr double gk_x[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double gk_wk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double gk_wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct GkResult {
    double integral;
    double error;
};

template <class F>
GkResult gk15(const F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double kron = gk_wk[7] * fc;
    double gauss = gk_wg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * gk_x[i];
        const double fsum = f(c - dx) + f(c + dx);
        kron += gk_wk[i] * fsum;
        if (i % 2 == 1) gauss += gk_wg[i / 2] * fsum;
    }
    return {kron * h, std::abs((kron - gauss) * h)};
}

template <class F>
double adapt(const F& f, double a, double b, double tol, int depth) {
    const GkResult r = gk15(f, a, b);
    if (r.error <= tol || depth >= 48 || b - a < 1e-300) return r.integral;
    const double m = 0.5 * (a + b);
    return adapt(f, a, m, 0.5 * tol, depth + 1) + adapt(f, m, b, 0.5 * tol, depth + 1);
}

}  // namespace detail

// Adaptive Gauss-Kronrod on [a,b] with a relative tolerance target. Two
// passes: the first sets the absolute budget from a coarse estimate.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double rel_tol = 1e-10) {
    if (!(b > a)) return 0.0;
    const auto coarse = detail::gk15(f, a, b);
    double scale = std::abs(coarse.integral);
    if (scale == 0.0) scale = 1e-300;
    double result = detail::adapt(f, a, b, rel_tol * scale, 0);
    if (std::abs(result) > 4.0 * scale) {
        // coarse pass badly underestimated the mass; redo with the new scale
        result = detail::adapt(f, a, b, rel_tol * std::abs(result), 0);
    }
    if (!std::isfinite(result)) throw std::domain_error("integrate: divergent integrand");
    return result;
}

}  // namespace decaylab
