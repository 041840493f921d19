#pragma once

#include "sqgrelax/field.hpp"
#include "sqgrelax/params.hpp"

namespace sqg {

// Spectral multiplier |k|^a, a.k.a. the fractional Zygmund operator.
// The zero mode is mapped to zero for every a != 0.  For a < 0 the input
// must be mean-free: |c_0| <= 1e-12 * sqrt(sum |c_m|^2), else
// ZeroModeViolation.  Input must hold spectral coefficients.
Field fractional_power(const Field& f, double a);

// Spectral partial derivative along axis (0 or 1): multiplication by i*k.
Field derivative(const Field& f, int axis);

// Divergence-free velocity recovered from a scalar stream-like field:
//   u = Lambda^{-1} (-d2 theta, d1 theta),
// i.e. u1^ = -i k2/|k| theta^, u2^ = i k1/|k| theta^, zero mode zero.
VectorField perp_velocity(const Field& theta);

// Largest retained |mode| under the sharp dealias cutoff.  Keeping
// max(|m1|,|m2|) <= floor(fraction * n/2) (n/3 for the default 2/3)
// removes every aliased image a quadratic product can deposit inside the
// retained band, and keeps the collocation quadrature of cubic
// invariants exact on the listed grid sizes.
int dealias_mode_cap(const GridSpec& grid, const ModelParams& params);

// Sharp spectral cutoff: coefficients with max(|m1|,|m2|) above the cap
// are zeroed.  Idempotent.
Field dealias(const Field& f, const ModelParams& params);

// Dealiased advection u . grad(s) for a given velocity: inputs are
// truncated, the products are formed pointwise in physical space, and
// the result is truncated again.
Field advect(const VectorField& u, const Field& s, const ModelParams& params);

// Dealiased self-advection u_theta . grad(theta).  Its zero mode
// vanishes to rounding (the integrand is a divergence).
Field advection(const Field& theta, const ModelParams& params);

// Spectral divergence of the dealiased flux s*u:  i k . (s u)^.
// Equals advect(u, s, .) when div u = 0, but in this form the zero mode
// of the result is exactly zero.
Field div_flux(const Field& s, const VectorField& u, const ModelParams& params);

// Quadrature of |f|^(p-2) f * Lambda^alpha f over the box, p >= 2.
// Nonnegative up to quadrature error for every such p; for p = 2 it
// equals ||Lambda^(alpha/2) f||_{L^2}^2 by Parseval.
double coercivity_probe(const Field& f, double p, const ModelParams& params);

// a*f + b*g on the spectral side.
Field linear_combination(double a, const Field& f, double b, const Field& g);

}  // namespace sqg
