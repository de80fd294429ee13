#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "decaylab/common.hpp"

namespace decaylab {

// Periodic cubic box: n points per axis, physical edge length box_length.
// Mode spacing is delta_xi = 2*pi/box_length; index k maps to the signed
// wavevector component delta_xi*k for k <= n/2 and delta_xi*(k-n) otherwise.
struct Grid {
    int n = 0;
    double box_length = 0.0;

    Grid() = default;
    Grid(int n_, double box_length_) : n(n_), box_length(box_length_) {
        if (n < 8 || n % 2 != 0)
            throw std::invalid_argument("Grid: n must be even and >= 8");
        if (!(box_length > 0.0))
            throw std::invalid_argument("Grid: box_length must be positive");
    }

    double delta_xi() const { return 2.0 * pi / box_length; }
    double spacing() const { return box_length / n; }
    std::size_t size() const {
        return static_cast<std::size_t>(n) * n * n;
    }

    int signed_index(int k) const {
        if (k < 0 || k >= n) throw std::out_of_range("Grid: index out of range");
        return k <= n / 2 ? k : k - n;
    }

    std::array<double, 3> wavevector(int i, int j, int k) const {
        const double d = delta_xi();
        return {d * signed_index(i), d * signed_index(j), d * signed_index(k)};
    }

    std::size_t flat(int i, int j, int k) const {
        return (static_cast<std::size_t>(i) * n + j) * n + k;
    }

    // Signed wavevector components along one axis, indexed by lattice index.
    std::vector<double> axis_wavevectors() const {
        std::vector<double> xi(n);
        const double d = delta_xi();
        for (int k = 0; k < n; ++k) xi[k] = d * (k <= n / 2 ? k : k - n);
        return xi;
    }

    // Largest wavevector modulus on the lattice (corner mode).
    double xi_max() const {
        const double m = delta_xi() * (n / 2);
        return m * std::sqrt(3.0);
    }

    bool operator==(const Grid& o) const {
        return n == o.n && box_length == o.box_length;
    }
};

}  // namespace decaylab
