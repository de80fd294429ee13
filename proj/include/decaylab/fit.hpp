#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "decaylab/common.hpp"

namespace decaylab {

enum class Verdict { matches, faster_than_bound, violates_bound };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::matches: return "matches";
        case Verdict::faster_than_bound: return "faster_than_bound";
        case Verdict::violates_bound: return "violates_bound";
    }
    return "?";
}

struct FitResult {
    std::string norm;  // which norm the fit applies to
    double beta = 0.0;        // fitted exponent of y ~ (1+t)^{-beta}
    double r_squared = 0.0;
    double window_t0 = 0.0, window_t1 = 0.0;
    double predicted = std::numeric_limits<double>::quiet_NaN();
    Verdict verdict = Verdict::matches;
};

// Least squares of log y against log(1+t) over the window; beta = -slope.
inline FitResult fit_power_law(const std::vector<double>& t, const std::vector<double>& y,
                               double t0, double t1) {
    if (t.size() != y.size()) throw std::invalid_argument("fit_power_law: length mismatch");
    std::vector<double> x, z;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < t0 || t[i] > t1) continue;
        if (!(y[i] > 0.0))
            throw std::domain_error("fit_power_law: nonpositive sample inside window");
        x.push_back(std::log1p(t[i]));
        z.push_back(std::log(y[i]));
    }
    if (x.size() < 8)
        throw std::invalid_argument("fit_power_law: fewer than 8 samples in window");
    const std::size_t n = x.size();
    double mx = 0.0, mz = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        mz += z[i];
    }
    mx /= n;
    mz /= n;
    double sxx = 0.0, sxz = 0.0, szz = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxz += (x[i] - mx) * (z[i] - mz);
        szz += (z[i] - mz) * (z[i] - mz);
    }
    const double slope = sxz / sxx;
    FitResult out;
    out.beta = -slope;
    out.window_t0 = t0;
    out.window_t1 = t1;
    if (szz == 0.0) {
        out.r_squared = 1.0;
    } else {
        double ss_res = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double resid = z[i] - mz - slope * (x[i] - mx);
            ss_res += resid * resid;
        }
        out.r_squared = 1.0 - ss_res / szz;
    }
    return out;
}

// The theorems are upper bounds on the norm, so decaying faster than
// predicted is legal; only a slower fit violates.
inline Verdict classify(double beta, double predicted, double tol) {
    if (std::abs(beta - predicted) <= tol) return Verdict::matches;
    return beta > predicted ? Verdict::faster_than_bound : Verdict::violates_bound;
}

}  // namespace decaylab
