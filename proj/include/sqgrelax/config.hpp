#pragma once

#include <string>
#include <vector>

#include "sqgrelax/dynamics.hpp"
#include "sqgrelax/forcing.hpp"
#include "sqgrelax/grid.hpp"
#include "sqgrelax/io.hpp"
#include "sqgrelax/steady.hpp"

namespace sqg {

// One initial-data building block.
//   none           zero field
//   gaussian       amplitude * exp(-|x|^2 / width^2)      (carries mass)
//   g_profile      amplitude * G                          (carries mass)
//   mean_zero_ring random ring-spectrum field, L^2 norm = amplitude,
//                  mean-free by construction
struct InitialPreset {
    std::string kind = "none";
    double amplitude = 1.0;
    double width = 1.0;
};

// initial_data for a run.  When add_steady is set ("steady_plus"), the
// initial state is theta_tilde + preset; the preset alone is then the
// initial perturbation.
struct InitialSpec {
    InitialPreset preset;
    bool add_steady = false;
};

struct ExperimentConfig {
    std::string experiment;  // steady_state | relaxation | sharp_rate |
                             // semigroup_suite | property_suite
    double alpha = 1.5;
    GridSpec grid{256, 60.0};
    double dealias_fraction = 2.0 / 3.0;
    ForcingSpec forcing;  // zero unless configured
    InitialSpec initial;
    StepperConfig stepper;
    std::vector<double> p_list = {2.0};
    double m = std::numeric_limits<double>::quiet_NaN();  // weighted diagnostics
    double tail_threshold = 1e-6;
    std::string evolution_mode = "perturbation";  // or "theta"

    // Rate-fit controls (relaxation / sharp_rate).
    double fit_lo = 0.0;
    double fit_hi = 0.0;  // 0 means t_end
    bool respect_wraparound = true;
    double rate_tolerance = 0.05;
    double r_squared_floor = 0.99;

    bool fixedness_check = false;  // start from theta_tilde itself and
                                   // verify it stays put
    PicardOptions picard;
    unsigned long long seed = 0;
    std::string output_dir = "out";
    bool dump_fields = false;
    bool emit_plots_data = false;  // set by the CLI flag, not the file

    ModelParams params() const { return ModelParams(alpha, dealias_fraction); }
};

// Parse/serialize the JSON schema described in the README.  Errors are
// ConfigInvalid and name the offending field.
ExperimentConfig config_from_json(const io::json& j);
io::json config_to_json(const ExperimentConfig& c);
ExperimentConfig load_config(const std::string& path);

// Estimated time at which self-similar spreading reaches the box edge,
// (0.3 L / 2)^alpha; algebraic-decay fits are only faithful before it.
double wraparound_time(const GridSpec& grid, double alpha);

}  // namespace sqg
