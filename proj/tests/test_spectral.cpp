#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "sqgrelax/errors.hpp"
#include "sqgrelax/field.hpp"
#include "sqgrelax/forcing.hpp"
#include "sqgrelax/params.hpp"
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

double max_abs_vs(const Field& f,
                  const std::function<double(double, double)>& fn) {
    Field c = f;
    c.to_physical();
    const GridSpec& g = c.grid();
    double worst = 0.0;
    for (int i2 = 0; i2 < g.n; ++i2)
        for (int i1 = 0; i1 < g.n; ++i1)
            worst = std::max(worst,
                             std::abs(c.physical()[g.flat(i1, i2)] -
                                      fn(g.coordinate(i1), g.coordinate(i2))));
    return worst;
}

double rel_l2(const Field& a, const Field& b) {
    Field d = linear_combination(1.0, a, -1.0, b);
    return d.spectral_l2() / b.spectral_l2();
}

const GridSpec kTrig{64, 2.0 * M_PI};

}  // namespace

TEST_CASE("transform round trip is tight") {
    GridSpec g{96, 37.5};
    Field f = random_smooth_field(g, 42, g.dk() * 10.0, false);
    Field copy = f;
    copy.to_physical();
    Field back = Field::from_physical(g, copy.physical());
    back.to_spectral();
    CHECK(rel_l2(back, f) < 1e-13);
    CHECK(copy.imag_residual() < 1e-13);
}

TEST_CASE("Parseval ties quadrature to coefficients") {
    GridSpec g{128, 60.0};
    Field f = random_smooth_field(g, 7, g.dk() * 12.0, false);
    Field p = f;
    p.to_physical();
    double quad = 0.0;
    for (double x : p.physical()) quad += x * x;
    quad *= g.dx() * g.dx();
    double spec = 0.0;
    for (const cplx& c : f.spectral()) spec += std::norm(c);
    spec *= g.box_length * g.box_length;
    CHECK(quad == doctest::Approx(spec).epsilon(1e-12));
}

TEST_CASE("a pure cosine lands on its two lattice modes") {
    Field f = from_samples(kTrig, [](double x1, double) { return std::cos(3.0 * x1); });
    f.to_spectral();
    const int n = kTrig.n;
    CHECK(std::abs(f.spectral()[kTrig.flat(3, 0)] - cplx(0.5, 0.0)) < 1e-14);
    CHECK(std::abs(f.spectral()[kTrig.flat(n - 3, 0)] - cplx(0.5, 0.0)) < 1e-14);
    double rest = 0.0;
    for (int s2 = 0; s2 < n; ++s2)
        for (int s1 = 0; s1 < n; ++s1) {
            if ((s1 == 3 || s1 == n - 3) && s2 == 0) continue;
            rest = std::max(rest, std::abs(f.spectral()[kTrig.flat(s1, s2)]));
        }
    CHECK(rest < 1e-15);
}

TEST_CASE("zero mode is the mean") {
    Field f = from_samples(kTrig, [](double x1, double x2) {
        return 4.25 + std::sin(x1) - 0.3 * std::cos(2.0 * x2);
    });
    CHECK(f.zero_mode().real() == doctest::Approx(4.25).epsilon(1e-14));
    CHECK(std::abs(f.zero_mode().imag()) < 1e-15);
}

TEST_CASE("fractional powers act mode by mode") {
    ModelParams params(1.5);
    Field f = from_samples(kTrig, [](double x1, double x2) {
        return std::cos(3.0 * x1 + 2.0 * x2);
    });
    f.to_spectral();

    SUBCASE("positive power scales by |k|^a and kills the mean") {
        Field g = from_samples(kTrig, [](double x1, double x2) {
            return 1.0 + std::cos(3.0 * x1 + 2.0 * x2);
        });
        g.to_spectral();
        Field out = fractional_power(g, 1.5);
        const double kn = std::sqrt(13.0);
        const double want = 0.5 * std::pow(kn, 1.5);
        CHECK(std::abs(out.spectral()[kTrig.flat(3, 2)] - cplx(want, 0.0)) <
              1e-13);
        CHECK(std::abs(out.zero_mode()) == 0.0);
    }
    SUBCASE("negative power inverts the positive one") {
        Field down = fractional_power(fractional_power(f, 1.5), -1.5);
        CHECK(rel_l2(down, f) < 1e-13);
    }
    SUBCASE("negative power refuses a mean-carrying field") {
        Field g = from_samples(kTrig, [](double x1, double) {
            return 1.0 + std::cos(x1);
        });
        g.to_spectral();
        CHECK_THROWS_AS((void)fractional_power(g, -1.0), ZeroModeViolation);
    }
}

TEST_CASE("derivatives are exact on trigonometric data") {
    Field f = from_samples(kTrig, [](double x1, double x2) {
        return std::cos(3.0 * x1) + std::sin(2.0 * x2);
    });
    f.to_spectral();
    CHECK(max_abs_vs(derivative(f, 0), [](double x1, double) {
              return -3.0 * std::sin(3.0 * x1);
          }) < 1e-12);
    CHECK(max_abs_vs(derivative(f, 1), [](double, double x2) {
              return 2.0 * std::cos(2.0 * x2);
          }) < 1e-12);
    CHECK_THROWS_AS((void)derivative(f, 2), std::logic_error);
}

TEST_CASE("perp velocity is the rotated unit-order gradient") {
    Field theta = from_samples(kTrig, [](double x1, double) { return std::sin(x1); });
    theta.to_spectral();
    VectorField u = perp_velocity(theta);
    CHECK(max_abs_vs(u.x1, [](double, double) { return 0.0; }) < 1e-13);
    CHECK(max_abs_vs(u.x2, [](double x1, double) { return std::cos(x1); }) < 1e-13);
}

TEST_CASE("perp velocity is divergence free") {
    GridSpec g{96, 45.0};
    Field theta = random_smooth_field(g, 3, g.dk() * 10.0, false);
    VectorField u = perp_velocity(theta);
    Field div = linear_combination(1.0, derivative(u.x1, 0), 1.0,
                                   derivative(u.x2, 1));
    Field lam1 = fractional_power(theta, 1.0);
    CHECK(div.spectral_l2() < 1e-13 * lam1.spectral_l2());
}

TEST_CASE("self advection vanishes when gradient rides the velocity") {
    ModelParams params(1.5);
    Field theta = from_samples(kTrig, [](double x1, double x2) {
        return std::sin(x1) + std::cos(x2);
    });
    theta.to_spectral();
    Field adv = advection(theta, params);
    CHECK(max_abs_vs(adv, [](double, double) { return 0.0; }) < 1e-13);
}

TEST_CASE("self advection matches the closed form") {
    // theta = sin x1 + cos 2x2 gives u = (sin 2x2, cos x1) and
    // u . grad theta = -cos x1 sin 2x2.
    ModelParams params(1.5);
    Field theta = from_samples(kTrig, [](double x1, double x2) {
        return std::sin(x1) + std::cos(2.0 * x2);
    });
    theta.to_spectral();
    Field adv = advection(theta, params);
    CHECK(max_abs_vs(adv, [](double x1, double x2) {
              return -std::cos(x1) * std::sin(2.0 * x2);
          }) < 1e-12);
}

TEST_CASE("flux divergence equals advection and is exactly mean free") {
    ModelParams params(1.5);
    GridSpec g{96, 30.0};
    Field theta = random_smooth_field(g, 11, g.dk() * 8.0, false);
    Field thetad = dealias(theta, params);
    VectorField u = perp_velocity(thetad);
    Field a = advect(u, theta, params);
    Field d = div_flux(thetad, u, params);
    CHECK(rel_l2(d, a) < 1e-12);
    CHECK(d.spectral()[0] == cplx(0.0, 0.0));
}

TEST_CASE("dealias keeps the cap and zeroes above it") {
    GridSpec g{96, 10.0};
    ModelParams params(1.5);
    CHECK(dealias_mode_cap(g, params) == 32);

    std::vector<cplx> spec(g.size(), cplx(0.0, 0.0));
    spec[g.flat(32, 0)] = cplx(1.0, 0.0);
    spec[g.flat(96 - 32, 0)] = cplx(1.0, 0.0);
    spec[g.flat(33, 5)] = cplx(1.0, 0.0);
    spec[g.flat(96 - 33, 96 - 5)] = cplx(1.0, 0.0);
    Field f = Field::from_spectral(g, std::move(spec));
    Field cut = dealias(f, params);
    CHECK(cut.spectral()[g.flat(32, 0)] == cplx(1.0, 0.0));
    CHECK(cut.spectral()[g.flat(33, 5)] == cplx(0.0, 0.0));
    Field twice = dealias(cut, params);
    CHECK(rel_l2(twice, cut) == 0.0);
}

TEST_CASE("coercivity probe at p = 2 is the dissipation quadratic form") {
    GridSpec g{96, 42.0};
    ModelParams params(1.7);
    Field f = random_smooth_field(g, 5, g.dk() * 9.0, true);
    double spectral = 0.0;
    for (int s2 = 0; s2 < g.n; ++s2)
        for (int s1 = 0; s1 < g.n; ++s1)
            spectral += std::pow(g.wavenumber_norm(s1, s2), params.alpha) *
                        std::norm(f.spectral()[g.flat(s1, s2)]);
    spectral *= g.box_length * g.box_length;
    CHECK(coercivity_probe(f, 2.0, params) ==
          doctest::Approx(spectral).epsilon(1e-12));
    CHECK(coercivity_probe(f, 3.0, params) >= -1e-12);
    CHECK_THROWS_AS((void)coercivity_probe(f, 1.5, params), std::logic_error);
}

TEST_CASE("linear combinations are exact and grid checked") {
    GridSpec g{64, 12.0};
    Field a = random_smooth_field(g, 1, g.dk() * 6.0, false);
    Field b = random_smooth_field(g, 2, g.dk() * 6.0, false);
    Field c = linear_combination(2.0, a, -3.0, b);
    for (std::size_t i = 0; i < g.size(); ++i)
        CHECK(c.spectral()[i] == 2.0 * a.spectral()[i] - 3.0 * b.spectral()[i]);

    GridSpec other{64, 13.0};
    Field d = random_smooth_field(other, 1, other.dk() * 6.0, false);
    CHECK_THROWS_AS((void)linear_combination(1.0, a, 1.0, d), GridMismatch);
}
