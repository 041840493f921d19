#include "sqgrelax/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "sqgrelax/diagnostics.hpp"
#include "sqgrelax/errors.hpp"
#include "sqgrelax/scaled.hpp"
#include "sqgrelax/spectral.hpp"

namespace sqg {

namespace {

constexpr double kUmaxFloor = 1e-8;

double phi1(double z) { return z == 0.0 ? 1.0 : std::expm1(z) / z; }

double phi2(double z) {
    // The closed form loses digits to cancellation near zero; switch to
    // the series when it is accurate past machine precision.
    if (std::abs(z) < 0.01)
        return 0.5 +
               z * (1.0 / 6.0 +
                    z * (1.0 / 24.0 + z * (1.0 / 120.0 + z * (1.0 / 720.0))));
    return (std::expm1(z) - z) / (z * z);
}

// Integrator weights for one step size; rebuilt only when dt changes.
struct EtdTable {
    double dt = -1.0;
    std::vector<double> E, w1, w2;  // exp(-mu), dt phi1(-mu), dt phi2(-mu)

    void ensure(const std::vector<double>& symbol, double step) {
        if (step == dt) return;
        dt = step;
        const std::size_t size = symbol.size();
        E.resize(size);
        w1.resize(size);
        w2.resize(size);
        for (std::size_t i = 0; i < size; ++i) {
            const double z = -symbol[i] * dt;
            E[i] = std::exp(z);
            w1[i] = dt * phi1(z);
            w2[i] = dt * phi2(z);
        }
    }
};

std::vector<double> dissipation_symbol(const GridSpec& g, double alpha) {
    std::vector<double> s(g.size());
    for (int s2 = 0; s2 < g.n; ++s2)
        for (int s1 = 0; s1 < g.n; ++s1) {
            const double kn = g.wavenumber_norm(s1, s2);
            s[g.flat(s1, s2)] = kn == 0.0 ? 0.0 : std::pow(kn, alpha);
        }
    return s;
}

// The non-stiff right-hand side.  Also tracks the sup of the advecting
// velocity for the adaptive step.
class NonlinearTerm {
  public:
    NonlinearTerm(EvolutionMode mode, const Field& background,
                  const ModelParams& params)
        : mode_(mode), params_(params) {
        if (mode_ == EvolutionMode::theta) {
            source_ = background;
            source_.to_spectral();
        } else {
            bg_ = dealias(background, params_);
            source_ = flux(bg_);  // subtracting it leaves the perturbation flux
        }
    }

    Field operator()(const Field& state) {
        Field sd = dealias(state, params_);
        if (mode_ == EvolutionMode::perturbation)
            sd = linear_combination(1.0, bg_, 1.0, sd);
        return linear_combination(1.0, source_, -1.0, flux(sd));
    }

    double umax() const { return umax_; }

  private:
    // div(s u_s) from an already-truncated s, with an exactly null zero
    // mode.
    Field flux(const Field& sd) {
        const GridSpec& g = sd.grid();
        VectorField u = perp_velocity(sd);
        u.x1.to_physical();
        u.x2.to_physical();
        Field sp = sd;
        sp.to_physical();

        const std::vector<double>& u1 = u.x1.physical();
        const std::vector<double>& u2 = u.x2.physical();
        const std::vector<double>& sv = sp.physical();
        double sup = 0.0;
        std::vector<double> f1(g.size()), f2(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) {
            sup = std::max(sup, std::hypot(u1[i], u2[i]));
            f1[i] = sv[i] * u1[i];
            f2[i] = sv[i] * u2[i];
        }
        umax_ = sup;

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
        return dealias(Field::from_spectral(g, std::move(out)), params_);
    }

    EvolutionMode mode_;
    ModelParams params_;
    Field bg_;
    Field source_;
    double umax_ = 0.0;
};

void advance(Field& state, const Field& n1, NonlinearTerm& nl,
             const EtdTable& tab) {
    const GridSpec& g = state.grid();
    const std::vector<cplx>& sh = state.spectral();
    const std::vector<cplx>& nh = n1.spectral();

    std::vector<cplx> st(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        st[i] = tab.E[i] * sh[i] + tab.w1[i] * nh[i];
    Field stage = Field::from_spectral(g, std::move(st));

    Field n2 = nl(stage);
    const std::vector<cplx>& n2h = n2.spectral();
    const std::vector<cplx>& sth = stage.spectral();
    std::vector<cplx> out(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        out[i] = sth[i] + tab.w2[i] * (n2h[i] - nh[i]);
    state = Field::from_spectral(g, std::move(out));
}

std::string fmt_g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

}  // namespace

std::vector<double> Trajectory::column(const std::string& name) const {
    auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end())
        throw std::logic_error("trajectory has no column named " + name);
    const std::size_t j = static_cast<std::size_t>(it - columns.begin());
    std::vector<double> out(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) out[i] = rows[i][j];
    return out;
}

double cfl_dt(const Field& theta, const ModelParams&, double cfl_number) {
    const GridSpec& g = theta.grid();
    Field t = theta;
    t.to_spectral();
    VectorField u = perp_velocity(t);
    u.x1.to_physical();
    u.x2.to_physical();
    double sup = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
        sup = std::max(sup, std::hypot(u.x1.physical()[i], u.x2.physical()[i]));
    return std::min(cfl_number, cfl_number * g.dx() / std::max(sup, kUmaxFloor));
}

Trajectory evolve(Field& state, const Field& background, EvolutionMode mode,
                  const ModelParams& params, const StepperConfig& config,
                  const DiagnosticsRequest& request) {
    const GridSpec& g = state.grid();
    require_same_grid(g, background.grid(), "evolve");
    const bool fixed = config.dt > 0.0;
    const bool adaptive = config.cfl_number > 0.0;
    if (fixed == adaptive)
        throw ConfigInvalid("evolve: set exactly one of dt and cfl_number");
    if (adaptive && config.cfl_number > 1.0)
        throw ConfigInvalid("evolve: cfl_number must lie in (0, 1]");
    if (!(config.t_end > 0.0)) throw ConfigInvalid("evolve: t_end must be positive");
    if (config.diagnostic_stride < 1)
        throw ConfigInvalid("evolve: diagnostic_stride must be >= 1");

    state.to_spectral();
    const bool has_m = std::isfinite(request.m);

    Trajectory traj;
    traj.columns = {"time", "one_plus_t"};
    for (double p : request.p_list)
        traj.columns.push_back(std::isinf(p) ? "linf" : "l" + fmt_g(p));
    if (has_m) traj.columns.push_back("l2m_" + fmt_g(request.m));
    traj.columns.push_back("mean");
    traj.columns.push_back("tail_mass");
    if (request.reference) traj.columns.push_back("dist_ref_l2");
    if (request.leading_term) {
        traj.columns.push_back("ltr_" + fmt_g(request.ltr_p));
        traj.columns.push_back("cp_unit_l2");
    }

    auto record = [&](double t) {
        state.to_physical();
        std::vector<double> row = {t, 1.0 + t};
        for (double p : request.p_list) row.push_back(lp_norm(state, p));
        if (has_m) {
            double v;
            try {
                v = weighted_l2m(state, request.m, request.tail_threshold);
            } catch (const TailMassExceeded&) {
                v = std::numeric_limits<double>::quiet_NaN();
            }
            row.push_back(v);
        }
        row.push_back(state.zero_mode().real());
        row.push_back(tail_mass(state));
        if (request.reference) {
            Field d = linear_combination(1.0, state, -1.0, *request.reference);
            row.push_back(g.box_length * d.spectral_l2());
        }
        if (request.leading_term) {
            row.push_back(leading_term_residual(state, request.a0, t,
                                                request.ltr_p, params));
            Field cp = comparison_profile(1.0, t, g, params);
            row.push_back(g.box_length * cp.spectral_l2());
        }
        traj.times.push_back(t);
        traj.rows.push_back(std::move(row));
    };

    std::vector<double> stops = config.snapshot_times;
    std::sort(stops.begin(), stops.end());
    stops.erase(std::unique(stops.begin(), stops.end()), stops.end());
    for (double s : stops)
        if (s < 0.0 || s > config.t_end)
            throw ConfigInvalid("evolve: snapshot time outside [0, t_end]");
    std::size_t next_stop = 0;
    while (next_stop < stops.size() && stops[next_stop] <= 0.0) {
        traj.snapshots.emplace_back(0.0, state);
        ++next_stop;
    }

    const double norm_cap = 1e6 * std::max(state.spectral_l2(), kUmaxFloor);
    NonlinearTerm nl(mode, background, params);
    EtdTable tab;
    const std::vector<double> symbol = dissipation_symbol(g, params.alpha);

    record(0.0);
    double t = 0.0;
    while (t < config.t_end) {
        Field n1 = nl(state);
        double dt = fixed ? config.dt
                          : std::min(config.cfl_number,
                                     config.cfl_number * g.dx() /
                                         std::max(nl.umax(), kUmaxFloor));
        double stop = config.t_end;
        if (next_stop < stops.size()) stop = std::min(stop, stops[next_stop]);
        bool landed = false;
        if (t + dt >= stop * (1.0 - 1e-12)) {
            dt = stop - t;
            landed = true;
        }

        tab.ensure(symbol, dt);
        advance(state, n1, nl, tab);
        t = landed ? stop : t + dt;
        ++traj.steps;

        const double l2 = state.spectral_l2();
        if (!std::isfinite(l2) || l2 > norm_cap)
            throw Instability("evolve: L^2 norm blew up at t = " + fmt_g(t));

        bool snapped = false;
        while (next_stop < stops.size() && stops[next_stop] <= t) {
            traj.snapshots.emplace_back(t, state);
            ++next_stop;
            snapped = true;
        }
        if (traj.steps % config.diagnostic_stride == 0 || snapped ||
            t >= config.t_end)
            record(t);
    }
    return traj;
}

Field step_theta(const Field& theta, const Field& forcing,
                 const ModelParams& params, double dt) {
    if (!(dt > 0.0)) throw ConfigInvalid("step_theta: dt must be positive");
    Field state = theta;
    state.to_spectral();
    NonlinearTerm nl(EvolutionMode::theta, forcing, params);
    EtdTable tab;
    tab.ensure(dissipation_symbol(state.grid(), params.alpha), dt);
    Field n1 = nl(state);
    advance(state, n1, nl, tab);
    return state;
}

Field step_perturbation(const Field& v, const Field& theta_bg,
                        const ModelParams& params, double dt) {
    if (!(dt > 0.0)) throw ConfigInvalid("step_perturbation: dt must be positive");
    Field state = v;
    state.to_spectral();
    NonlinearTerm nl(EvolutionMode::perturbation, theta_bg, params);
    EtdTable tab;
    tab.ensure(dissipation_symbol(state.grid(), params.alpha), dt);
    Field n1 = nl(state);
    advance(state, n1, nl, tab);
    return state;
}

}  // namespace sqg
