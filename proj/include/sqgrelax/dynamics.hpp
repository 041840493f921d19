#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "sqgrelax/field.hpp"
#include "sqgrelax/params.hpp"

namespace sqg {

// Which equation evolve() integrates:
//   theta         d/dt theta = -Lambda^alpha theta - div(theta u_theta) + f,
//                 background = the forcing f.
//   perturbation  v = theta - theta_bg around a stationary background,
//                 d/dt v = -Lambda^alpha v - [div(theta u_theta) - div(theta_bg u_bg)],
//                 background = theta_bg; the forcing cancels exactly.
enum class EvolutionMode { theta, perturbation };

struct StepperConfig {
    // Exactly one of the two must be positive: a fixed step, or an
    // advective CFL number in (0,1] for an adaptive step
    //   dt = cfl * dx / max(|u|_inf, 1e-8),
    // capped at the CFL number itself (dissipation is integrated
    // exactly, so only transport constrains the step).
    double dt = 0.0;
    double cfl_number = 0.0;
    double t_end = 0.0;
    std::vector<double> snapshot_times;  // hit exactly by clipping the step
    int diagnostic_stride = 1;           // record every k-th step
};

// Which columns the trajectory carries.  Norm evaluations happen at
// recording time only.
struct DiagnosticsRequest {
    std::vector<double> p_list = {2.0};  // L^p norms (infinity() for sup)
    double m = std::numeric_limits<double>::quiet_NaN();  // weighted norm if finite
    double tail_threshold = 1e-6;   // guard for the weighted norm; NaN cell on breach
    const Field* reference = nullptr;  // extra column: L^2 distance to this field
    bool leading_term = false;         // extra columns: profile residual + unit-mass
    double a0 = 0.0;                   //   profile norm, using this conserved mass
    double ltr_p = 2.0;
};

struct Trajectory {
    std::vector<std::string> columns;
    std::vector<double> times;
    std::vector<std::vector<double>> rows;  // rows[i][j] belongs to columns[j]
    std::vector<std::pair<double, Field>> snapshots;
    long steps = 0;

    std::vector<double> column(const std::string& name) const;
};

// Integrate from t = 0 to config.t_end with the two-stage exponential
// scheme
//   theta* = E theta^n + dt phi1 N(theta^n),
//   theta^{n+1} = theta* + dt phi2 (N(theta*) - N(theta^n)),
// where E = exp(-dt |k|^alpha) and phi1, phi2 are the standard
// exponential-integrator weights evaluated at -dt |k|^alpha.  The
// dissipative part is integrated exactly, and so is any state on which N
// is constant in time (in particular every stationary point and every
// linear problem with time-independent sources), so steady states are
// fixed points of the discrete map up to the residual of the state
// itself.  The mode-zero weight is exp(0) = 1, which together with the
// exactly null zero mode of the flux divergence conserves the mean to
// the last bit when the forcing is mean-free.
//
// state is advanced in place and the recorded time series returned.
// Throws Instability when the L^2 norm exceeds 1e6 times its initial
// value (floored at 1e-8), or turns non-finite.
Trajectory evolve(Field& state, const Field& background, EvolutionMode mode,
                  const ModelParams& params, const StepperConfig& config,
                  const DiagnosticsRequest& request = {});

// Single steps of the same scheme, for convergence studies.
Field step_theta(const Field& theta, const Field& forcing,
                 const ModelParams& params, double dt);
Field step_perturbation(const Field& v, const Field& theta_bg,
                        const ModelParams& params, double dt);

// Advective step size for the velocity induced by theta.
double cfl_dt(const Field& theta, const ModelParams& params, double cfl_number);

}  // namespace sqg
