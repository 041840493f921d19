#pragma once

#include <cstdint>
#include <vector>

#include "sqgrelax/field.hpp"

namespace sqg {

enum class ForcingKind { ring, algebraic_cutoff, explicit_spectral, zero };

struct ExplicitMode {
    int m1 = 0;
    int m2 = 0;
    double re = 0.0;
    double im = 0.0;
};

// Description of a time-independent force.  Every realization is exactly
// mean-free.  The ring kind populates the lattice annulus
// band_lo <= |k| <= band_hi with unit coefficients of seeded random
// phase; algebraic_cutoff shapes the spectrum as |k|^(1+delta) exp(-|k|^2)
// so the transform vanishes algebraically at frequency zero.  Both are
// rescaled so the L^2 norm equals epsilon.  explicit_spectral places the
// listed modes (conjugate partners added automatically) scaled by
// epsilon, without renormalization.
struct ForcingSpec {
    ForcingKind kind = ForcingKind::zero;
    double epsilon = 0.0;
    double band_lo = 1.0;
    double band_hi = 2.0;
    double delta = 0.5;
    std::uint64_t seed = 0;
    std::vector<ExplicitMode> modes;
};

Field realize_forcing(const ForcingSpec& spec, const GridSpec& grid);

// Seeded random real field with Gaussian coefficients under the envelope
// exp(-(|k|/spectral_width)^2), normalized to unit L^2 norm.  Used by the
// property suites; mean_zero controls whether the zero mode is wiped.
Field random_smooth_field(const GridSpec& grid, std::uint64_t seed,
                          double spectral_width, bool mean_zero);

}  // namespace sqg
