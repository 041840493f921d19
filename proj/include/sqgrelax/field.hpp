#pragma once

#include <complex>
#include <vector>

#include "sqgrelax/grid.hpp"

namespace sqg {

using cplx = std::complex<double>;

// A real scalar field on a GridSpec, carried in physical samples and/or
// spectral coefficients.  The spectral convention is
//
//   f(x) = sum_m c_m exp(i k_m . x),   k_m = (2 pi / L) m,
//
// so c_0 * L^2 equals the integral of f over the box and Parseval reads
// ||f||_{L^2}^2 = L^2 * sum |c_m|^2.  Both representations are stored;
// flags track which are current.  Transforms are explicit: operations
// state which representation they read, and nothing mutates a Field
// behind the caller's back, so const Fields are safe to share across
// threads.
class Field {
  public:
    Field() = default;
    explicit Field(const GridSpec& grid);

    static Field from_physical(const GridSpec& grid, std::vector<double> values);
    static Field from_spectral(const GridSpec& grid, std::vector<cplx> coeffs);
    static Field zero(const GridSpec& grid);

    const GridSpec& grid() const { return grid_; }

    bool has_physical() const { return has_phys_; }
    bool has_spectral() const { return has_spec_; }

    // Read access; throws std::logic_error if the representation is stale.
    const std::vector<double>& physical() const;
    const std::vector<cplx>& spectral() const;

    // Write access; marks the other representation stale.
    std::vector<double>& mutable_physical();
    std::vector<cplx>& mutable_spectral();

    // Compute the missing representation if needed.  Returns *this.
    Field& to_physical();
    Field& to_spectral();

    // Largest imaginary residue (relative to the max magnitude) seen when
    // the last spectral-to-physical transform discarded imaginary parts.
    double imag_residual() const { return imag_residual_; }

    // Mean over the box, i.e. c_0 (transforms if only physical is held).
    cplx zero_mode() const;

    // sqrt(sum |c_m|^2): the L^2 norm divided by L.
    double spectral_l2() const;

  private:
    GridSpec grid_;
    std::vector<double> phys_;
    std::vector<cplx> spec_;
    bool has_phys_ = false;
    bool has_spec_ = false;
    double imag_residual_ = 0.0;
};

// A velocity field; components share one grid.
struct VectorField {
    Field x1;
    Field x2;

    const GridSpec& grid() const { return x1.grid(); }
};

}  // namespace sqg
