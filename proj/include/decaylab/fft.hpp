#pragma once

#include <fftw3.h>

#include <map>
#include <mutex>

#include "decaylab/common.hpp"
#include "decaylab/field.hpp"

namespace decaylab {

// Spectral amplitudes approximate the continuum Fourier transform in the
// unitary convention u_hat(xi) = (2pi)^{-3/2} \int u(x) e^{-i xi.x} dx,
// discretized on the torus:
//
//   forward:  u_hat_k = (2pi)^{-3/2} (L/n)^3      sum_m u_m e^{-2pi i k.m/n}
//   backward: u_m     = (2pi)^{-3/2} (2pi/L)^3    sum_k u_hat_k e^{+2pi i k.m/n}
//
// With these factors Plancherel holds exactly between lattice sums:
//   sum_m |u_m|^2 (L/n)^3 = sum_k |u_hat_k|^2 (delta_xi)^3,
// so every Sobolev norm below uses the (delta_xi)^3 quadrature weight and is
// directly comparable to continuum radial integrals.
class FftEngine {
  public:
    static FftEngine& instance() {
        static FftEngine e;
        return e;
    }

    // Thread-safe: plan creation is serialized, new-array execution is not
    // (distinct buffers per caller, uniform 64-byte alignment).
    void forward_raw(int n, complexd* in, complexd* out) {
        fftw_execute_dft(plan(n).fwd, reinterpret_cast<fftw_complex*>(in),
                         reinterpret_cast<fftw_complex*>(out));
    }
    void backward_raw(int n, complexd* in, complexd* out) {
        fftw_execute_dft(plan(n).bwd, reinterpret_cast<fftw_complex*>(in),
                         reinterpret_cast<fftw_complex*>(out));
    }

  private:
    struct Plans {
        fftw_plan fwd = nullptr;
        fftw_plan bwd = nullptr;
        aligned_vector<complexd> a, b;
    };

    Plans& plan(int n) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = plans_.find(n);
        if (it != plans_.end()) return it->second;
        Plans& p = plans_[n];
        const std::size_t m = static_cast<std::size_t>(n) * n * n;
        p.a.assign(m, complexd(0.0, 0.0));
        p.b.assign(m, complexd(0.0, 0.0));
        auto* a = reinterpret_cast<fftw_complex*>(p.a.data());
        auto* b = reinterpret_cast<fftw_complex*>(p.b.data());
        p.fwd = fftw_plan_dft_3d(n, n, n, a, b, FFTW_FORWARD, FFTW_MEASURE);
        p.bwd = fftw_plan_dft_3d(n, n, n, a, b, FFTW_BACKWARD, FFTW_MEASURE);
        return p;
    }

    FftEngine() = default;
    std::mutex mutex_;
    std::map<int, Plans> plans_;
};

inline double forward_scale(const Grid& g) {
    const double h = g.spacing();
    return std::pow(2.0 * pi, -1.5) * h * h * h;
}

inline double backward_scale(const Grid& g) {
    const double d = g.delta_xi();
    return std::pow(2.0 * pi, -1.5) * d * d * d;
}

inline RealVectorField to_physical(const SpectralVectorField& u) {
    const Grid& g = u.grid;
    RealVectorField out(g);
    const std::size_t m = g.size();
    aligned_vector<complexd> in(m), work(m);
    const double s = backward_scale(g);
    for (int c = 0; c < 3; ++c) {
        std::copy(u.comp[c].begin(), u.comp[c].end(), in.begin());
        FftEngine::instance().backward_raw(g.n, in.data(), work.data());
        for (std::size_t i = 0; i < m; ++i) out.comp[c][i] = s * work[i].real();
    }
    return out;
}

inline SpectralVectorField to_spectral(const RealVectorField& f) {
    const Grid& g = f.grid;
    SpectralVectorField out(g);
    const std::size_t m = g.size();
    aligned_vector<complexd> in(m), work(m);
    const double s = forward_scale(g);
    for (int c = 0; c < 3; ++c) {
        for (std::size_t i = 0; i < m; ++i) in[i] = complexd(f.comp[c][i], 0.0);
        FftEngine::instance().forward_raw(g.n, in.data(), work.data());
        for (std::size_t i = 0; i < m; ++i) out.comp[c][i] = s * work[i];
    }
    return out;
}

// Two Hermitian spectra at once: ifft(A + iB) has A's field in the real part
// and B's in the imaginary part.
inline void backward_pair(const Grid& g, const complexd* ha, const complexd* hb,
                          double* a, double* b, aligned_vector<complexd>& in,
                          aligned_vector<complexd>& work) {
    const std::size_t m = g.size();
    const double s = backward_scale(g);
    for (std::size_t i = 0; i < m; ++i)
        in[i] = ha[i] + complexd(0.0, 1.0) * hb[i];
    FftEngine::instance().backward_raw(g.n, in.data(), work.data());
    for (std::size_t i = 0; i < m; ++i) {
        a[i] = s * work[i].real();
        b[i] = s * work[i].imag();
    }
}

// Inverse of the packing trick: split fft(a + ib) for real a, b using
// A(k) = (Z(k) + conj(Z(-k)))/2, B(k) = (Z(k) - conj(Z(-k)))/(2i).
inline void forward_pair(const Grid& g, const double* a, const double* b,
                         complexd* ha, complexd* hb, aligned_vector<complexd>& in,
                         aligned_vector<complexd>& work) {
    const int n = g.n;
    const std::size_t m = g.size();
    const double s = forward_scale(g);
    for (std::size_t i = 0; i < m; ++i) in[i] = complexd(a[i], b[i]);
    FftEngine::instance().forward_raw(n, in.data(), work.data());
    for (int i = 0; i < n; ++i) {
        const int ic = (n - i) % n;
        for (int j = 0; j < n; ++j) {
            const int jc = (n - j) % n;
            for (int k = 0; k < n; ++k) {
                const int kc = (n - k) % n;
                const complexd z = work[g.flat(i, j, k)];
                const complexd zc = std::conj(work[g.flat(ic, jc, kc)]);
                const std::size_t idx = g.flat(i, j, k);
                ha[idx] = 0.5 * s * (z + zc);
                hb[idx] = complexd(0.0, -0.5) * s * (z - zc);
            }
        }
    }
}

}  // namespace decaylab
