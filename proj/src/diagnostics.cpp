#include "sqgrelax/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

#include "sqgrelax/scaled.hpp"
#include "sqgrelax/spectral.hpp"

namespace sqg {
namespace {

// Physical samples of f, borrowing if current, else through a transform
// of a local copy.
const std::vector<double>& physical_of(const Field& f, Field& storage) {
    if (f.has_physical()) return f.physical();
    storage = f;
    storage.to_physical();
    return storage.physical();
}

}  // namespace

double lp_norm(const Field& f, double p) {
    if (!(p > 1.0)) throw std::logic_error("lp_norm: p must exceed 1");
    Field storage;
    const std::vector<double>& v = physical_of(f, storage);

    if (std::isinf(p)) {
        double mx = 0.0;
        for (double x : v) mx = std::max(mx, std::abs(x));
        return mx;
    }
    double sum = 0.0;
    if (p == 2.0) {
        for (double x : v) sum += x * x;
    } else {
        for (double x : v) sum += std::pow(std::abs(x), p);
    }
    const double dx = f.grid().dx();
    return std::pow(sum * dx * dx, 1.0 / p);
}

double weighted_l2m(const Field& f, double m, double tail_threshold) {
    const double tail = tail_mass(f, 0.8);
    if (tail > tail_threshold)
        throw TailMassExceeded("weighted_l2m: boundary mass fraction " +
                               std::to_string(tail) + " exceeds threshold " +
                               std::to_string(tail_threshold));

    const GridSpec& g = f.grid();
    Field storage;
    const std::vector<double>& v = physical_of(f, storage);
    double sum = 0.0;
    for (int i2 = 0; i2 < g.n; ++i2) {
        const double x2 = g.coordinate(i2);
        for (int i1 = 0; i1 < g.n; ++i1) {
            const double x1 = g.coordinate(i1);
            const double w = std::pow(1.0 + x1 * x1 + x2 * x2, m);
            const double val = v[g.flat(i1, i2)];
            sum += w * val * val;
        }
    }
    return std::sqrt(sum * g.dx() * g.dx());
}

double sobolev_seminorm(const Field& f, double s, double p) {
    return lp_norm(fractional_power(f, s), p);
}

double tail_mass(const Field& f, double radius_fraction) {
    const GridSpec& g = f.grid();
    Field storage;
    const std::vector<double>& v = physical_of(f, storage);
    const double r2 = std::pow(radius_fraction * 0.5 * g.box_length, 2);
    double inside = 0.0, outside = 0.0;
    for (int i2 = 0; i2 < g.n; ++i2) {
        const double x2 = g.coordinate(i2);
        for (int i1 = 0; i1 < g.n; ++i1) {
            const double x1 = g.coordinate(i1);
            const double val = v[g.flat(i1, i2)];
            if (x1 * x1 + x2 * x2 > r2)
                outside += val * val;
            else
                inside += val * val;
        }
    }
    const double total = inside + outside;
    return total > 0.0 ? outside / total : 0.0;
}

double alpha0(const Field& a, const Field& b) {
    require_same_grid(a.grid(), b.grid(), "alpha0");
    const double L2 = a.grid().box_length * a.grid().box_length;
    return (a.zero_mode().real() - b.zero_mode().real()) * L2;
}

double leading_term_residual(const Field& v, double a0, double t, double p,
                             const ModelParams& params) {
    if (!(p > 1.0) || !(p <= 2.0))
        throw std::logic_error("leading_term_residual: p must lie in (1, 2]");
    Field profile = comparison_profile(a0, t, v.grid(), params);
    Field diff = linear_combination(1.0, Field(v).to_spectral(), -1.0, profile);
    return lp_norm(diff, p);
}

RateReport fit_rate(const std::vector<double>& times,
                    const std::vector<double>& values, double window_lo,
                    double window_hi, double predicted_exponent,
                    const std::string& quantity,
                    const RateFitOptions& options) {
    if (times.size() != values.size())
        throw std::logic_error("fit_rate: times/values length mismatch");

    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double t = times[i];
        if (t < window_lo || t > window_hi) continue;
        const double val = values[i];
        if (!(val > 0.0))
            throw NonpositiveValues("fit_rate: nonpositive value at t = " +
                                    std::to_string(t));
        xs.push_back(std::log1p(t));
        ys.push_back(std::log(val));
    }
    if (xs.size() < 10)
        throw InsufficientData("fit_rate: only " + std::to_string(xs.size()) +
                               " samples inside the window");

    const double np = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= np;
    my /= np;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dxi = xs[i] - mx;
        const double dyi = ys[i] - my;
        sxx += dxi * dxi;
        sxy += dxi * dyi;
        syy += dyi * dyi;
    }
    if (sxx == 0.0) throw InsufficientData("fit_rate: degenerate window");

    RateReport r;
    r.quantity = quantity;
    r.window_lo = window_lo;
    r.window_hi = window_hi;
    r.samples_used = static_cast<int>(xs.size());
    r.fitted_exponent = sxy / sxx;
    r.predicted_exponent = predicted_exponent;
    // Coefficient of determination of the fitted line.
    r.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    r.pass = std::abs(r.fitted_exponent - predicted_exponent) <=
                 options.exponent_tolerance &&
             r.r_squared >= options.r_squared_floor;
    return r;
}

}  // namespace sqg
