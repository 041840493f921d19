#pragma once

#include <functional>

#include "sqgrelax/field.hpp"
#include "sqgrelax/params.hpp"

namespace sqg {

// Logarithmic time for the self-similar frame: tau = log(1+t).  The
// dissipation weight a(tau) = 1 - exp(-tau) interpolates the semigroup
// kernel between the identity and its fixed profile.
struct ScaledTime {
    double tau;

    explicit ScaledTime(double tau_) : tau(tau_) {
        if (!(tau >= 0.0)) throw ConfigInvalid("scaled time must be >= 0");
    }
    double t() const { return std::expm1(tau); }
    double a() const { return -std::expm1(-tau); }
};

// Gridded self-similar profile: the real radial field whose spectrum is
// exp(-|k|^alpha).  Its integral over the box is exactly 1.
Field profile_G(const GridSpec& grid, const ModelParams& params);

// Generalized profile with spectrum |k|^(-alpha*mu) exp(-|k|^alpha);
// an eigenfunction of the scaled generator with eigenvalue 1 + mu - 3/alpha.
// Only mu <= 0 keeps the spectrum bounded near k = 0.
Field psi_profile(const GridSpec& grid, const ModelParams& params, double mu);

// The scaled-frame generator
//   L V = -Lambda^alpha V + (1/alpha) eta . grad V + (1 - 1/alpha) V
// with eta the centered box coordinate.  The coordinate multiplication is
// only faithful for fields that decay inside the box, enforced through
// the same tail-mass precondition as the weighted norms.
Field apply_L(const Field& V, const ModelParams& params,
              double tail_threshold = 1e-6);

// Analytic spectrum: returns the continuum transform f^(xi) at arbitrary
// frequency.  Required by the semigroup, which samples off-lattice.
using SpectralClosure = std::function<cplx(double, double)>;

// Exact semigroup of L applied through its spectral representation:
//   (e^{tau L} f)^(xi) = e^{(1-3/alpha) tau} e^{-a(tau)|xi|^alpha}
//                        f^(e^{-tau/alpha} xi),
// evaluated on the grid's wavenumber lattice.  The closure must use the
// continuum convention f^(xi) = integral f exp(-i x.xi) dx; the returned
// Field's coefficients are those samples divided by L^2.
Field semigroup_apply(const SpectralClosure& fhat, double tau,
                      const GridSpec& grid, const ModelParams& params);

// Closure view of a gridded field by bilinear interpolation of its
// spectral lattice (zero outside).  For diagnostics only; interpolation
// error makes it unsuitable for sharp identity checks.
SpectralClosure closure_from_field(const Field& f);

// Spectral projection onto the profile direction: P0 f = (integral f) G,
// and its complement Q0 = Id - P0.
Field project_P0(const Field& f, const Field& G);
Field project_Q0(const Field& f, const Field& G);

// Relative L^2 mismatch between e^{tau L} grad f and
// e^{-tau/alpha} grad e^{tau L} f, both evaluated independently.
double commutation_check(const SpectralClosure& fhat, double tau,
                         const GridSpec& grid, const ModelParams& params);

// Self-similar comparison profile in unscaled variables: the field with
// spectrum a0 * exp(-(1+t)|k|^alpha).  Realized spectrally, which is the
// dilation of the profile's spectrum without any interpolation.
Field comparison_profile(double a0, double t, const GridSpec& grid,
                         const ModelParams& params);

// Transport of L^p norms between frames: the scaled-frame norm equals
// (1+t)^(1 - 1/alpha - 2/(alpha p)) times the unscaled norm at t
// (exponent 1 - 1/alpha for p = infinity).
double norm_transport(double unscaled_norm, double t, double p,
                      const ModelParams& params);

}  // namespace sqg
