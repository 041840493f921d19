#include "sqgrelax/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace sqg {

Field fractional_power(const Field& f, double a) {
    const GridSpec& g = f.grid();
    const std::vector<cplx>& in = f.spectral();

    if (a == 0.0) return Field::from_spectral(g, in);
    if (a < 0.0) {
        const double scale = f.spectral_l2();
        if (std::abs(in[0]) > 1e-12 * scale)
            throw ZeroModeViolation(
                "fractional_power: negative power applied to a field with "
                "nonzero mean");
    }

    std::vector<cplx> out(g.size());
    for (int s2 = 0; s2 < g.n; ++s2)
        for (int s1 = 0; s1 < g.n; ++s1) {
            const std::size_t idx = g.flat(s1, s2);
            const double kn = g.wavenumber_norm(s1, s2);
            out[idx] = (kn == 0.0) ? cplx(0.0, 0.0) : in[idx] * std::pow(kn, a);
        }
    return Field::from_spectral(g, std::move(out));
}

Field derivative(const Field& f, int axis) {
    if (axis != 0 && axis != 1) throw std::logic_error("derivative: bad axis");
    const GridSpec& g = f.grid();
    const std::vector<cplx>& in = f.spectral();
    std::vector<cplx> out(g.size());
    for (int s2 = 0; s2 < g.n; ++s2)
        for (int s1 = 0; s1 < g.n; ++s1) {
            const std::size_t idx = g.flat(s1, s2);
            const double k = g.wavenumber(axis == 0 ? s1 : s2);
            out[idx] = cplx(0.0, k) * in[idx];
        }
    return Field::from_spectral(g, std::move(out));
}

VectorField perp_velocity(const Field& theta) {
    const GridSpec& g = theta.grid();
    const std::vector<cplx>& in = theta.spectral();
    std::vector<cplx> u1(g.size()), u2(g.size());
    for (int s2 = 0; s2 < g.n; ++s2)
        for (int s1 = 0; s1 < g.n; ++s1) {
            const std::size_t idx = g.flat(s1, s2);
            const double kn = g.wavenumber_norm(s1, s2);
            if (kn == 0.0) {
                u1[idx] = u2[idx] = cplx(0.0, 0.0);
            } else {
                const cplx v = in[idx] / kn;
                u1[idx] = cplx(0.0, -g.wavenumber(s2)) * v;
                u2[idx] = cplx(0.0, g.wavenumber(s1)) * v;
            }
        }
    VectorField u;
    u.x1 = Field::from_spectral(g, std::move(u1));
    u.x2 = Field::from_spectral(g, std::move(u2));
    return u;
}

int dealias_mode_cap(const GridSpec& grid, const ModelParams& params) {
    return static_cast<int>(std::floor(params.dealias_fraction * (grid.n / 2.0)));
}

Field dealias(const Field& f, const ModelParams& params) {
    const GridSpec& g = f.grid();
    const std::vector<cplx>& in = f.spectral();
    const int cap = dealias_mode_cap(g, params);
    std::vector<cplx> out(g.size());
    for (int s2 = 0; s2 < g.n; ++s2) {
        const int m2 = std::abs(g.mode(s2));
        for (int s1 = 0; s1 < g.n; ++s1) {
            const int m1 = std::abs(g.mode(s1));
            const std::size_t idx = g.flat(s1, s2);
            out[idx] = (std::max(m1, m2) > cap) ? cplx(0.0, 0.0) : in[idx];
        }
    }
    return Field::from_spectral(g, std::move(out));
}

Field advect(const VectorField& u, const Field& s, const ModelParams& params) {
    const GridSpec& g = s.grid();
    require_same_grid(g, u.grid(), "advect");

    Field sd = dealias(s, params);
    Field u1 = dealias(u.x1, params);
    Field u2 = dealias(u.x2, params);
    Field g1 = derivative(sd, 0);
    Field g2 = derivative(sd, 1);
    u1.to_physical();
    u2.to_physical();
    g1.to_physical();
    g2.to_physical();

    std::vector<double> prod(g.size());
    const std::vector<double>& a1 = u1.physical();
    const std::vector<double>& a2 = u2.physical();
    const std::vector<double>& b1 = g1.physical();
    const std::vector<double>& b2 = g2.physical();
    for (std::size_t i = 0; i < g.size(); ++i)
        prod[i] = a1[i] * b1[i] + a2[i] * b2[i];

    Field w = Field::from_physical(g, std::move(prod));
    w.to_spectral();
    return dealias(w, params);
}

Field advection(const Field& theta, const ModelParams& params) {
    Field td = dealias(theta, params);
    return advect(perp_velocity(td), td, params);
}

Field div_flux(const Field& s, const VectorField& u, const ModelParams& params) {
    const GridSpec& g = s.grid();
    require_same_grid(g, u.grid(), "div_flux");

    Field sd = dealias(s, params);
    Field u1 = dealias(u.x1, params);
    Field u2 = dealias(u.x2, params);
    sd.to_physical();
    u1.to_physical();
    u2.to_physical();

    std::vector<double> f1(g.size()), f2(g.size());
    const std::vector<double>& sp = sd.physical();
    for (std::size_t i = 0; i < g.size(); ++i) {
        f1[i] = sp[i] * u1.physical()[i];
        f2[i] = sp[i] * u2.physical()[i];
    }
    Field w1 = Field::from_physical(g, std::move(f1));
    Field w2 = Field::from_physical(g, std::move(f2));
    w1.to_spectral();
    w2.to_spectral();

    std::vector<cplx> out(g.size());
    for (int s2 = 0; s2 < g.n; ++s2)
        for (int s1 = 0; s1 < g.n; ++s1) {
            const std::size_t idx = g.flat(s1, s2);
            out[idx] = cplx(0.0, g.wavenumber(s1)) * w1.spectral()[idx] +
                       cplx(0.0, g.wavenumber(s2)) * w2.spectral()[idx];
        }
    out[0] = cplx(0.0, 0.0);
    Field w = Field::from_spectral(g, std::move(out));
    return dealias(w, params);
}

double coercivity_probe(const Field& f, double p, const ModelParams& params) {
    if (!(p >= 2.0)) throw std::logic_error("coercivity_probe: p must be >= 2");
    const GridSpec& g = f.grid();

    Field lap = fractional_power(f, params.alpha);
    lap.to_physical();
    Field fp = f;
    fp.to_physical();

    const std::vector<double>& fv = fp.physical();
    const std::vector<double>& lv = lap.physical();
    double sum = 0.0;
    if (p == 2.0) {
        for (std::size_t i = 0; i < g.size(); ++i) sum += fv[i] * lv[i];
    } else {
        for (std::size_t i = 0; i < g.size(); ++i)
            sum += std::pow(std::abs(fv[i]), p - 2.0) * fv[i] * lv[i];
    }
    return sum * g.dx() * g.dx();
}

Field linear_combination(double a, const Field& f, double b, const Field& g) {
    require_same_grid(f.grid(), g.grid(), "linear_combination");
    const std::vector<cplx>& fa = f.spectral();
    const std::vector<cplx>& gb = g.spectral();
    std::vector<cplx> out(fa.size());
    for (std::size_t i = 0; i < fa.size(); ++i) out[i] = a * fa[i] + b * gb[i];
    return Field::from_spectral(f.grid(), std::move(out));
}

}  // namespace sqg
