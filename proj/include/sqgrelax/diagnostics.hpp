#pragma once

#include <limits>
#include <string>
#include <vector>

#include "sqgrelax/field.hpp"
#include "sqgrelax/params.hpp"

namespace sqg {

// L^p norm by collocation quadrature, dx^2 * sum.  p in (1, inf];
// pass p = infinity() for the sup norm.
double lp_norm(const Field& f, double p);

// Weighted norm sqrt( integral (1+|x|^2)^m |f|^2 ).  The weight blows up
// boundary contamination, so the field must first pass a tail-mass check:
// the L^2 fraction outside |x| > 0.8*(L/2) must not exceed tail_threshold.
double weighted_l2m(const Field& f, double m, double tail_threshold = 1e-6);

// || Lambda^s f ||_{L^p}.  Negative s demands a mean-free field.
double sobolev_seminorm(const Field& f, double s, double p);

// Fraction of integral |f|^2 held outside the disc of radius
// radius_fraction * (L/2).
double tail_mass(const Field& f, double radius_fraction = 0.8);

// Integral of (a - b) over the box: the conserved mass of a perturbation.
double alpha0(const Field& a, const Field& b);

// L^p distance between v and the pointwise self-similar comparison
// profile carrying mass a0 at time t (see comparison_profile).  Only
// meaningful for p in (1, 2].
double leading_term_residual(const Field& v, double a0, double t, double p,
                             const ModelParams& params);

// Result of a power-law fit of a positive time series against (1+t).
struct RateReport {
    std::string quantity;
    double window_lo = 0.0;
    double window_hi = 0.0;
    int samples_used = 0;
    double fitted_exponent = 0.0;
    double predicted_exponent = 0.0;
    double r_squared = 0.0;
    bool pass = false;
};

struct RateFitOptions {
    double exponent_tolerance = 0.05;
    double r_squared_floor = 0.99;
};

// Least-squares slope of log(value) against log(1+t) over the samples
// falling inside [window_lo, window_hi].  Requires at least 10 samples in
// the window (InsufficientData) and strictly positive values
// (NonpositiveValues).  pass is set from the options.
RateReport fit_rate(const std::vector<double>& times,
                    const std::vector<double>& values, double window_lo,
                    double window_hi, double predicted_exponent,
                    const std::string& quantity,
                    const RateFitOptions& options = {});

inline double infinity() { return std::numeric_limits<double>::infinity(); }

}  // namespace sqg
