#include "sqgrelax/scaled.hpp"

#include <cmath>

#include "sqgrelax/diagnostics.hpp"
#include "sqgrelax/spectral.hpp"

namespace sqg {
namespace {

Field from_radial_symbol(const GridSpec& g,
                         const std::function<double(double)>& symbol) {
    const double inv_L2 = 1.0 / (g.box_length * g.box_length);
    std::vector<cplx> spec(g.size());
    for (int s2 = 0; s2 < g.n; ++s2)
        for (int s1 = 0; s1 < g.n; ++s1)
            spec[g.flat(s1, s2)] =
                cplx(symbol(g.wavenumber_norm(s1, s2)) * inv_L2, 0.0);
    Field f = Field::from_spectral(g, std::move(spec));
    f.to_physical();
    return f;
}

}  // namespace

Field profile_G(const GridSpec& grid, const ModelParams& params) {
    const double a = params.alpha;
    return from_radial_symbol(grid,
                              [a](double kn) { return std::exp(-std::pow(kn, a)); });
}

Field psi_profile(const GridSpec& grid, const ModelParams& params, double mu) {
    const double a = params.alpha;
    return from_radial_symbol(grid, [a, mu](double kn) {
        if (kn == 0.0) return mu == 0.0 ? 1.0 : 0.0;
        return std::pow(kn, -a * mu) * std::exp(-std::pow(kn, a));
    });
}

Field apply_L(const Field& V, const ModelParams& params, double tail_threshold) {
    const GridSpec& g = V.grid();
    const double tail = tail_mass(V, 0.8);
    if (tail > tail_threshold)
        throw TailMassExceeded("apply_L: boundary mass fraction " +
                               std::to_string(tail) + " exceeds threshold " +
                               std::to_string(tail_threshold));

    Field Vs = V;
    Vs.to_spectral();
    Field lap = fractional_power(Vs, params.alpha);
    Field g1 = derivative(Vs, 0);
    Field g2 = derivative(Vs, 1);
    lap.to_physical();
    g1.to_physical();
    g2.to_physical();
    Vs.to_physical();

    const double inv_alpha = 1.0 / params.alpha;
    const double c = 1.0 - inv_alpha;
    std::vector<double> out(g.size());
    for (int i2 = 0; i2 < g.n; ++i2) {
        const double x2 = g.coordinate(i2);
        for (int i1 = 0; i1 < g.n; ++i1) {
            const double x1 = g.coordinate(i1);
            const std::size_t idx = g.flat(i1, i2);
            out[idx] = -lap.physical()[idx] +
                       inv_alpha * (x1 * g1.physical()[idx] +
                                    x2 * g2.physical()[idx]) +
                       c * Vs.physical()[idx];
        }
    }
    return Field::from_physical(g, std::move(out));
}

Field semigroup_apply(const SpectralClosure& fhat, double tau,
                      const GridSpec& grid, const ModelParams& params) {
    const ScaledTime st(tau);
    const double alpha = params.alpha;
    const double growth = std::exp((1.0 - 3.0 / alpha) * tau);
    const double shrink = std::exp(-tau / alpha);
    const double a = st.a();
    const double inv_L2 = 1.0 / (grid.box_length * grid.box_length);

    std::vector<cplx> spec(grid.size());
    for (int s2 = 0; s2 < grid.n; ++s2) {
        const double k2 = grid.wavenumber(s2);
        for (int s1 = 0; s1 < grid.n; ++s1) {
            const double k1 = grid.wavenumber(s1);
            const double kn = std::sqrt(k1 * k1 + k2 * k2);
            const double damp = std::exp(-a * std::pow(kn, alpha));
            spec[grid.flat(s1, s2)] =
                growth * damp * fhat(shrink * k1, shrink * k2) * inv_L2;
        }
    }
    return Field::from_spectral(grid, std::move(spec));
}

SpectralClosure closure_from_field(const Field& f) {
    Field fs = f;
    fs.to_spectral();
    const GridSpec g = fs.grid();
    const std::vector<cplx> spec = fs.spectral();
    const double L2 = g.box_length * g.box_length;
    const double dk = g.dk();
    const int n = g.n;

    return [g, spec, L2, dk, n](double xi1, double xi2) -> cplx {
        // Fractional lattice position in signed-mode units.
        const double p1 = xi1 / dk;
        const double p2 = xi2 / dk;
        const double f1 = std::floor(p1);
        const double f2 = std::floor(p2);
        const double w1 = p1 - f1;
        const double w2 = p2 - f2;
        cplx acc(0.0, 0.0);
        for (int d2 = 0; d2 <= 1; ++d2)
            for (int d1 = 0; d1 <= 1; ++d1) {
                const long m1 = static_cast<long>(f1) + d1;
                const long m2 = static_cast<long>(f2) + d2;
                if (m1 < -n / 2 || m1 >= n / 2 || m2 < -n / 2 || m2 >= n / 2)
                    continue;
                const int s1 = static_cast<int>(m1 < 0 ? m1 + n : m1);
                const int s2 = static_cast<int>(m2 < 0 ? m2 + n : m2);
                const double w =
                    (d1 ? w1 : 1.0 - w1) * (d2 ? w2 : 1.0 - w2);
                acc += w * spec[g.flat(s1, s2)];
            }
        return acc * L2;
    };
}

Field project_P0(const Field& f, const Field& G) {
    require_same_grid(f.grid(), G.grid(), "project_P0");
    const double mass = Field(f).to_spectral().zero_mode().real() *
                        f.grid().box_length * f.grid().box_length;
    Field Gs = G;
    Gs.to_spectral();
    return linear_combination(mass, Gs, 0.0, Gs);
}

Field project_Q0(const Field& f, const Field& G) {
    Field fs = f;
    fs.to_spectral();
    return linear_combination(1.0, fs, -1.0, project_P0(fs, G));
}

double commutation_check(const SpectralClosure& fhat, double tau,
                         const GridSpec& grid, const ModelParams& params) {
    const double shrink = std::exp(-tau / params.alpha);
    double num2 = 0.0, den2 = 0.0;
    for (int axis = 0; axis < 2; ++axis) {
        // Path one: differentiate first, then flow.
        SpectralClosure dfhat = [&fhat, axis](double x1, double x2) {
            return cplx(0.0, axis == 0 ? x1 : x2) * fhat(x1, x2);
        };
        Field lhs = semigroup_apply(dfhat, tau, grid, params);
        // Path two: flow first, then differentiate on the grid and rescale.
        Field flowed = semigroup_apply(fhat, tau, grid, params);
        Field rhs = derivative(flowed, axis);
        const std::vector<cplx>& ls = lhs.spectral();
        const std::vector<cplx>& rs = rhs.spectral();
        for (std::size_t i = 0; i < ls.size(); ++i) {
            const cplx d = ls[i] - shrink * rs[i];
            num2 += std::norm(d);
            den2 += std::norm(shrink * rs[i]);
        }
    }
    return den2 > 0.0 ? std::sqrt(num2 / den2) : std::sqrt(num2);
}

Field comparison_profile(double a0, double t, const GridSpec& grid,
                         const ModelParams& params) {
    const double alpha = params.alpha;
    const double s = 1.0 + t;
    return from_radial_symbol(grid, [a0, s, alpha](double kn) {
        return a0 * std::exp(-s * std::pow(kn, alpha));
    });
}

double norm_transport(double unscaled_norm, double t, double p,
                      const ModelParams& params) {
    const double alpha = params.alpha;
    const double exponent = std::isinf(p)
                                ? 1.0 - 1.0 / alpha
                                : 1.0 - 1.0 / alpha - 2.0 / (alpha * p);
    return unscaled_norm * std::pow(1.0 + t, exponent);
}

}  // namespace sqg
