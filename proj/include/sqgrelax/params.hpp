#pragma once

#include "sqgrelax/errors.hpp"

namespace sqg {

// Model parameters for the dissipative transport equation
//   theta_t + u.grad(theta) + Lambda^alpha theta = f,
// with the velocity recovered from theta through the perpendicular
// Riesz transform.  The dissipation order alpha is restricted to the
// subcritical-but-not-smooth range (1, 2), open at both ends.
struct ModelParams {
    double alpha;
    double dealias_fraction;

    explicit ModelParams(double alpha_, double dealias_fraction_ = 2.0 / 3.0)
        : alpha(alpha_), dealias_fraction(dealias_fraction_) {
        if (!(alpha > 1.0) || !(alpha < 2.0))
            throw ConfigInvalid("params: alpha must lie strictly inside (1, 2)");
        if (!(dealias_fraction > 0.0) || !(dealias_fraction <= 1.0))
            throw ConfigInvalid("params: dealias fraction must lie in (0, 1]");
    }
};

}  // namespace sqg
