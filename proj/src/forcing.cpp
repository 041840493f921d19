#include "sqgrelax/forcing.hpp"

#include <cmath>
#include <random>

#include "sqgrelax/errors.hpp"

namespace sqg {
namespace {

// Fill the upper half-plane of modes (m2 > 0, plus the m2 = 0 half-row
// with m1 > 0) from `draw`, mirroring conjugates so the field is real.
// Rows at the Nyquist index are skipped: they have no conjugate partner
// on the lattice and sit beyond every dealias cap we use.
template <typename Draw>
std::vector<cplx> hermitian_fill(const GridSpec& g, Draw&& draw) {
    std::vector<cplx> spec(g.size(), cplx(0.0, 0.0));
    const int n = g.n;
    for (int m2 = 0; m2 < n / 2; ++m2) {
        for (int m1 = -n / 2 + 1; m1 < n / 2; ++m1) {
            const bool upper = m2 > 0 || (m2 == 0 && m1 > 0);
            if (!upper) continue;
            const cplx c = draw(m1, m2);
            if (c == cplx(0.0, 0.0)) continue;
            const int s1 = m1 < 0 ? m1 + n : m1;
            const int s2 = m2;
            const int t1 = -m1 < 0 ? -m1 + n : -m1;
            const int t2 = -m2 < 0 ? -m2 + n : -m2;
            spec[g.flat(s1, s2)] = c;
            spec[g.flat(t1, t2)] = std::conj(c);
        }
    }
    return spec;
}

Field normalized_field(const GridSpec& g, std::vector<cplx> spec,
                       double target_l2) {
    double sum = 0.0;
    for (const cplx& c : spec) sum += std::norm(c);
    const double l2 = g.box_length * std::sqrt(sum);
    if (l2 > 0.0) {
        const double scale = target_l2 / l2;
        for (cplx& c : spec) c *= scale;
    }
    return Field::from_spectral(g, std::move(spec));
}

}  // namespace

Field realize_forcing(const ForcingSpec& spec, const GridSpec& grid) {
    switch (spec.kind) {
        case ForcingKind::zero:
            return Field::zero(grid);

        case ForcingKind::ring: {
            if (!(spec.band_lo >= 0.0) || !(spec.band_hi >= spec.band_lo))
                throw ConfigInvalid("forcing: malformed ring band");
            std::mt19937_64 rng(spec.seed);
            std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
            int hits = 0;
            auto draw = [&](int m1, int m2) -> cplx {
                const double kn = grid.dk() * std::sqrt(double(m1) * m1 +
                                                        double(m2) * m2);
                if (kn < spec.band_lo || kn > spec.band_hi)
                    return cplx(0.0, 0.0);
                ++hits;
                return std::polar(1.0, angle(rng));
            };
            std::vector<cplx> coeffs = hermitian_fill(grid, draw);
            if (hits == 0)
                throw BandEmpty("forcing: no lattice wavenumbers in band [" +
                                std::to_string(spec.band_lo) + ", " +
                                std::to_string(spec.band_hi) + "]");
            return normalized_field(grid, std::move(coeffs), spec.epsilon);
        }

        case ForcingKind::algebraic_cutoff: {
            if (!(spec.delta > 0.0))
                throw ConfigInvalid("forcing: delta must be positive");
            std::mt19937_64 rng(spec.seed);
            std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
            const double expo = 1.0 + spec.delta;
            auto draw = [&](int m1, int m2) -> cplx {
                const double kn = grid.dk() * std::sqrt(double(m1) * m1 +
                                                        double(m2) * m2);
                const double mag = std::pow(kn, expo) * std::exp(-kn * kn);
                return std::polar(mag, angle(rng));
            };
            return normalized_field(grid, hermitian_fill(grid, draw),
                                    spec.epsilon);
        }

        case ForcingKind::explicit_spectral: {
            std::vector<cplx> coeffs(grid.size(), cplx(0.0, 0.0));
            const int n = grid.n;
            for (const ExplicitMode& mode : spec.modes) {
                if (mode.m1 == 0 && mode.m2 == 0)
                    throw ConfigInvalid(
                        "forcing: explicit mode at zero frequency would carry "
                        "mean");
                if (std::abs(mode.m1) >= n / 2 || std::abs(mode.m2) >= n / 2)
                    throw ConfigInvalid("forcing: explicit mode off the grid");
                const cplx c =
                    spec.epsilon * cplx(mode.re, mode.im);
                const int s1 = mode.m1 < 0 ? mode.m1 + n : mode.m1;
                const int s2 = mode.m2 < 0 ? mode.m2 + n : mode.m2;
                const int t1 = -mode.m1 < 0 ? -mode.m1 + n : -mode.m1;
                const int t2 = -mode.m2 < 0 ? -mode.m2 + n : -mode.m2;
                coeffs[grid.flat(s1, s2)] += c;
                coeffs[grid.flat(t1, t2)] += std::conj(c);
            }
            return Field::from_spectral(grid, std::move(coeffs));
        }
    }
    throw ConfigInvalid("forcing: unknown kind");
}

Field random_smooth_field(const GridSpec& grid, std::uint64_t seed,
                          double spectral_width, bool mean_zero) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto draw = [&](int m1, int m2) -> cplx {
        const double kn = grid.dk() * std::sqrt(double(m1) * m1 +
                                                double(m2) * m2);
        const double env = std::exp(-std::pow(kn / spectral_width, 2));
        const double re = gauss(rng);
        const double im = gauss(rng);
        return env * cplx(re, im);
    };
    std::vector<cplx> coeffs = hermitian_fill(grid, draw);
    if (!mean_zero) coeffs[0] = cplx(std::abs(gauss(rng)), 0.0);
    return normalized_field(grid, std::move(coeffs), 1.0);
}

}  // namespace sqg
