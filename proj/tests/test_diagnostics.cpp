#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "sqgrelax/diagnostics.hpp"
#include "sqgrelax/errors.hpp"
#include "sqgrelax/field.hpp"
#include "sqgrelax/params.hpp"
#include "sqgrelax/scaled.hpp"
#include "sqgrelax/spectral.hpp"

using namespace sqg;

namespace {

Field from_samples(const GridSpec& g,
                   const std::function<double(double, double)>& fn) {
    std::vector<double> v(g.size());
    for (int i2 = 0; i2 < g.n; ++i2)
        for (int i1 = 0; i1 < g.n; ++i1)
            v[g.flat(i1, i2)] = fn(g.coordinate(i1), g.coordinate(i2));
    return Field::from_physical(g, std::move(v));
}

}  // namespace

TEST_CASE("Lp norms of a pure cosine match closed forms") {
    GridSpec g{128, 2.0 * M_PI};
    Field f = from_samples(g, [](double x1, double) { return std::cos(x1); });
    const double L = g.box_length;
    CHECK(lp_norm(f, 2.0) == doctest::Approx(std::sqrt(L * L / 2.0)).epsilon(1e-13));
    CHECK(lp_norm(f, 4.0) ==
          doctest::Approx(std::pow(L * L * 3.0 / 8.0, 0.25)).epsilon(1e-13));
    // integral of |cos|^3 over the period is 8/3; the box adds a factor L.
    // |cos|^3 is only C^2 at its zeros, so quadrature is O(n^-4) here,
    // not spectral.
    CHECK(lp_norm(f, 3.0) ==
          doctest::Approx(std::cbrt(L * 8.0 / 3.0)).epsilon(1e-7));
    CHECK(lp_norm(f, infinity()) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS((void)lp_norm(f, 1.0), std::logic_error);
}

TEST_CASE("sup norm hits the gaussian peak sample") {
    GridSpec g{128, 40.0};
    Field f = from_samples(g, [](double x1, double x2) {
        return 2.5 * std::exp(-(x1 * x1 + x2 * x2));
    });
    CHECK(lp_norm(f, infinity()) == doctest::Approx(2.5).epsilon(1e-14));
}

TEST_CASE("weighted norm of a gaussian matches its integral") {
    // integral (1+|x|^2) exp(-2|x|^2) dx = pi/2 + pi/4 = 3 pi / 4.
    GridSpec g{256, 40.0};
    Field f = from_samples(g, [](double x1, double x2) {
        return std::exp(-(x1 * x1 + x2 * x2));
    });
    CHECK(weighted_l2m(f, 1.0) ==
          doctest::Approx(std::sqrt(3.0 * M_PI / 4.0)).epsilon(1e-12));
}

TEST_CASE("weighted norm refuses boundary-heavy data") {
    GridSpec g{64, 10.0};
    Field f = from_samples(g, [](double, double) { return 1.0; });
    CHECK_THROWS_AS((void)weighted_l2m(f, 1.0), TailMassExceeded);
}

TEST_CASE("tail mass splits a constant by area") {
    GridSpec g{512, 10.0};
    Field f = from_samples(g, [](double, double) { return 1.0; });
    // disc of radius 0.4 L inside the unit-fraction box: outside share
    // 1 - 0.16 pi, up to one pixel ring of quadrature error.
    CHECK(tail_mass(f) == doctest::Approx(1.0 - 0.16 * M_PI).epsilon(5e-3));

    Field gauss = from_samples(g, [](double x1, double x2) {
        return std::exp(-(x1 * x1 + x2 * x2));
    });
    CHECK(tail_mass(gauss) < 1e-10);
}

TEST_CASE("sobolev seminorm scales a single mode by |k|^s") {
    GridSpec g{64, 2.0 * M_PI};
    Field f = from_samples(g, [](double x1, double) { return std::cos(3.0 * x1); });
    f.to_spectral();
    const double base = lp_norm(f, 2.0);
    CHECK(sobolev_seminorm(f, 0.75, 2.0) ==
          doctest::Approx(std::pow(3.0, 0.75) * base).epsilon(1e-12));
    CHECK(sobolev_seminorm(f, -0.5, 2.0) ==
          doctest::Approx(std::pow(3.0, -0.5) * base).epsilon(1e-12));

    Field carrier = from_samples(g, [](double x1, double) {
        return 1.0 + std::cos(x1);
    });
    carrier.to_spectral();
    CHECK_THROWS_AS((void)sobolev_seminorm(carrier, -0.5, 2.0),
                    ZeroModeViolation);
}

TEST_CASE("alpha0 is the conserved mass of the difference") {
    GridSpec g{256, 40.0};
    const double A = 0.7, w = 1.5;
    Field a = from_samples(g, [&](double x1, double x2) {
        return A * std::exp(-(x1 * x1 + x2 * x2) / (w * w));
    });
    Field b = Field::zero(g);
    CHECK(alpha0(a, b) == doctest::Approx(A * M_PI * w * w).epsilon(1e-12));

    GridSpec other{256, 41.0};
    Field c = Field::zero(other);
    CHECK_THROWS_AS((void)alpha0(a, c), GridMismatch);
}

TEST_CASE("leading term residual vanishes on the profile itself") {
    GridSpec g{128, 60.0};
    ModelParams params(1.5);
    const double a0 = 2.5, t = 3.0;
    Field v = comparison_profile(a0, t, g, params);
    const double res = leading_term_residual(v, a0, t, 2.0, params);
    v.to_physical();
    CHECK(res < 1e-13 * lp_norm(v, 2.0));
    CHECK_THROWS_AS((void)leading_term_residual(v, a0, t, 3.0, params),
                    std::logic_error);
}

TEST_CASE("rate fitting recovers an exact power law") {
    std::vector<double> times, values;
    for (double t = 0.25; t <= 30.0; t += 0.25) {
        times.push_back(t);
        values.push_back(3.7 * std::pow(1.0 + t, -1.37));
    }
    RateReport r = fit_rate(times, values, 1.0, 20.0, -1.37, "probe");
    CHECK(r.fitted_exponent == doctest::Approx(-1.37).epsilon(1e-10));
    CHECK(r.r_squared > 1.0 - 1e-12);
    CHECK(r.samples_used == 77);
    CHECK(r.quantity == "probe");
    CHECK(r.pass);

    RateReport wrong = fit_rate(times, values, 1.0, 20.0, -1.5, "probe");
    CHECK_FALSE(wrong.pass);

    RateFitOptions tight;
    tight.exponent_tolerance = 0.2;
    CHECK(fit_rate(times, values, 1.0, 20.0, -1.5, "probe", tight).pass);
}

TEST_CASE("rate fitting rejects starved or invalid data") {
    std::vector<double> times, values;
    for (double t = 1.0; t <= 9.0; t += 1.0) {
        times.push_back(t);
        values.push_back(std::pow(1.0 + t, -1.0));
    }
    CHECK_THROWS_AS((void)fit_rate(times, values, 0.0, 100.0, -1.0, "q"),
                    InsufficientData);

    times.push_back(10.0);
    values.push_back(0.0);
    CHECK_THROWS_AS((void)fit_rate(times, values, 0.0, 100.0, -1.0, "q"),
                    NonpositiveValues);

    // An offending sample outside the window must not block the fit.
    std::vector<double> dense_t, dense_v;
    for (double t = 0.5; t <= 9.0; t += 0.5) {
        dense_t.push_back(t);
        dense_v.push_back(std::pow(1.0 + t, -1.0));
    }
    dense_t.push_back(10.0);
    dense_v.push_back(-1.0);
    RateReport r = fit_rate(dense_t, dense_v, 0.0, 9.5, -1.0, "q");
    CHECK(r.samples_used == 18);
}

TEST_CASE("window endpoints are inclusive") {
    std::vector<double> times, values;
    for (double t = 1.0; t <= 12.0; t += 1.0) {
        times.push_back(t);
        values.push_back(std::pow(1.0 + t, -2.0));
    }
    RateReport r = fit_rate(times, values, 1.0, 12.0, -2.0, "q");
    CHECK(r.samples_used == 12);
    CHECK(r.window_lo == 1.0);
    CHECK(r.window_hi == 12.0);
}
