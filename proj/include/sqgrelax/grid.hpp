#pragma once

#include <cmath>
#include <cstddef>

#include "sqgrelax/errors.hpp"

namespace sqg {

// Uniform n-by-n periodic grid on the square [-L/2, L/2)^2.
//
// Physical samples sit at x_i = -L/2 + i*dx, dx = L/n.  Spectral
// coefficients live on the integer lattice m in [-n/2, n/2)^2 with
// physical wavenumber k = (2*pi/L) * m.  Storage index s in [0, n)
// maps to m = s for s < n/2 and m = s - n otherwise.
struct GridSpec {
    int n = 0;
    double box_length = 0.0;

    GridSpec() = default;
    GridSpec(int n_, double box_length_) : n(n_), box_length(box_length_) {
        if (n < 16 || n % 2 != 0)
            throw ConfigInvalid("grid: n must be even and at least 16");
        if (!(box_length > 0.0) || !std::isfinite(box_length))
            throw ConfigInvalid("grid: box length must be positive and finite");
    }

    double dx() const { return box_length / n; }
    double dk() const { return 2.0 * M_PI / box_length; }
    std::size_t size() const { return static_cast<std::size_t>(n) * n; }

    // Signed integer mode for a storage index.
    int mode(int s) const { return s < n / 2 ? s : s - n; }

    // Physical wavenumber component for a storage index.
    double wavenumber(int s) const { return dk() * mode(s); }

    // |k| for a storage index pair.
    double wavenumber_norm(int s1, int s2) const {
        const double k1 = wavenumber(s1);
        const double k2 = wavenumber(s2);
        return std::sqrt(k1 * k1 + k2 * k2);
    }

    // Physical coordinate for a sample index, centered on the box.
    double coordinate(int i) const { return -0.5 * box_length + dx() * i; }

    std::size_t flat(int i1, int i2) const {
        return static_cast<std::size_t>(i2) * n + i1;
    }

    bool operator==(const GridSpec& o) const {
        return n == o.n && box_length == o.box_length;
    }
    bool operator!=(const GridSpec& o) const { return !(*this == o); }
};

inline void require_same_grid(const GridSpec& a, const GridSpec& b,
                              const char* where) {
    if (a != b)
        throw GridMismatch(std::string(where) + ": fields live on different grids");
}

}  // namespace sqg
