#pragma once

#include <complex>
#include <cstdlib>
#include <new>
#include <stdexcept>
#include <string>
#include <vector>

namespace decaylab {

using complexd = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

// Raised by the time stepper when the state picks up NaN/Inf.
struct BlowUpError : std::runtime_error {
    explicit BlowUpError(double t)
        : std::runtime_error("solution blew up at t = " + std::to_string(t)), time(t) {}
    double time;
};

// Raised by picard_solve when successive iterates stop contracting.
struct NonContractionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised by the decay-character estimator when no power law fits the ball sums.
struct IllDefinedCharacterError : std::runtime_error {
    IllDefinedCharacterError(double res)
        : std::runtime_error("decay character ill-defined: fit residual " +
                             std::to_string(res) + " exceeds 0.1"),
          residual(res) {}
    double residual;
};

// Raised when a requested ball radius probes below the lattice resolution.
struct InsufficientResolutionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// 64-byte aligned allocator so FFTW new-array execution sees a uniform
// alignment class across all field buffers.
template <class T>
struct AlignedAlloc {
    using value_type = T;
    static constexpr std::size_t alignment = 64;

    AlignedAlloc() = default;
    template <class U>
    AlignedAlloc(const AlignedAlloc<U>&) {}

    T* allocate(std::size_t n) {
        if (n == 0) return nullptr;
        void* p = std::aligned_alloc(alignment, ((n * sizeof(T) + alignment - 1) / alignment) * alignment);
        if (!p) throw std::bad_alloc();
        return static_cast<T*>(p);
    }
    void deallocate(T* p, std::size_t) noexcept { std::free(p); }

    template <class U>
    bool operator==(const AlignedAlloc<U>&) const { return true; }
};

template <class T>
using aligned_vector = std::vector<T, AlignedAlloc<T>>;

}  // namespace decaylab
