#include "sqgrelax/config.hpp"

#include <cmath>

#include "sqgrelax/errors.hpp"

namespace sqg {

namespace {

const io::json& need(const io::json& j, const char* key) {
    if (!j.contains(key))
        throw ConfigInvalid(std::string("missing required field: ") + key);
    return j.at(key);
}

double get_num(const io::json& j, const char* key, double def) {
    if (!j.contains(key)) return def;
    const auto& v = j.at(key);
    if (!v.is_number()) throw ConfigInvalid(std::string(key) + ": expected a number");
    return v.get<double>();
}

bool get_bool(const io::json& j, const char* key, bool def) {
    if (!j.contains(key)) return def;
    const auto& v = j.at(key);
    if (!v.is_boolean()) throw ConfigInvalid(std::string(key) + ": expected a boolean");
    return v.get<bool>();
}

std::string get_str(const io::json& j, const char* key, const std::string& def) {
    if (!j.contains(key)) return def;
    const auto& v = j.at(key);
    if (!v.is_string()) throw ConfigInvalid(std::string(key) + ": expected a string");
    return v.get<std::string>();
}

ForcingKind forcing_kind(const std::string& s) {
    if (s == "ring") return ForcingKind::ring;
    if (s == "algebraic_cutoff") return ForcingKind::algebraic_cutoff;
    if (s == "explicit_spectral") return ForcingKind::explicit_spectral;
    if (s == "zero") return ForcingKind::zero;
    throw ConfigInvalid("forcing.kind: unknown value '" + s + "'");
}

std::string forcing_kind_name(ForcingKind k) {
    switch (k) {
        case ForcingKind::ring: return "ring";
        case ForcingKind::algebraic_cutoff: return "algebraic_cutoff";
        case ForcingKind::explicit_spectral: return "explicit_spectral";
        case ForcingKind::zero: return "zero";
    }
    return "zero";
}

ForcingSpec parse_forcing(const io::json& j) {
    ForcingSpec f;
    f.kind = forcing_kind(get_str(j, "kind", "zero"));
    f.epsilon = get_num(j, "amplitude", 0.0);
    if (f.epsilon < 0.0) throw ConfigInvalid("forcing.amplitude: must be >= 0");
    if (j.contains("band")) {
        const auto& b = j.at("band");
        if (!b.is_array() || b.size() != 2)
            throw ConfigInvalid("forcing.band: expected [k_lo, k_hi]");
        f.band_lo = b[0].get<double>();
        f.band_hi = b[1].get<double>();
        if (!(f.band_lo > 0.0) || !(f.band_hi >= f.band_lo))
            throw ConfigInvalid("forcing.band: need 0 < k_lo <= k_hi");
    }
    f.delta = get_num(j, "delta", 0.5);
    if (f.kind == ForcingKind::algebraic_cutoff && !(f.delta > 0.0))
        throw ConfigInvalid("forcing.delta: must be > 0");
    f.seed = static_cast<std::uint64_t>(get_num(j, "seed", 0.0));
    if (j.contains("modes")) {
        for (const auto& m : j.at("modes")) {
            ExplicitMode em;
            em.m1 = m.at("m1").get<int>();
            em.m2 = m.at("m2").get<int>();
            em.re = m.value("re", 0.0);
            em.im = m.value("im", 0.0);
            f.modes.push_back(em);
        }
    }
    return f;
}

InitialPreset parse_preset(const io::json& j, const char* where) {
    InitialPreset p;
    p.kind = get_str(j, "preset", "none");
    if (p.kind != "none" && p.kind != "gaussian" && p.kind != "g_profile" &&
        p.kind != "mean_zero_ring")
        throw ConfigInvalid(std::string(where) + ".preset: unknown value '" +
                            p.kind + "'");
    p.amplitude = get_num(j, "amplitude", 1.0);
    p.width = get_num(j, "width", 1.0);
    if (p.kind == "gaussian" && !(p.width > 0.0))
        throw ConfigInvalid(std::string(where) + ".width: must be > 0");
    return p;
}

InitialSpec parse_initial(const io::json& j) {
    InitialSpec spec;
    const std::string kind = get_str(j, "preset", "none");
    if (kind == "steady_plus") {
        spec.add_steady = true;
        if (!j.contains("perturbation"))
            throw ConfigInvalid(
                "initial_data.perturbation: required for preset steady_plus");
        spec.preset = parse_preset(j.at("perturbation"), "initial_data.perturbation");
    } else {
        spec.preset = parse_preset(j, "initial_data");
    }
    return spec;
}

StepperConfig parse_stepper(const io::json& j) {
    StepperConfig s;
    s.dt = get_num(j, "dt", 0.0);
    s.cfl_number = get_num(j, "cfl_number", 0.0);
    s.t_end = get_num(j, "t_end", 0.0);
    s.diagnostic_stride = static_cast<int>(get_num(j, "diagnostic_stride", 1.0));
    if (j.contains("snapshot_times"))
        for (const auto& t : j.at("snapshot_times"))
            s.snapshot_times.push_back(t.get<double>());
    return s;
}

}  // namespace

double wraparound_time(const GridSpec& grid, double alpha) {
    return std::pow(0.3 * grid.box_length / 2.0, alpha);
}

ExperimentConfig config_from_json(const io::json& j) {
    ExperimentConfig c;
    c.experiment = need(j, "experiment").get<std::string>();
    if (c.experiment != "steady_state" && c.experiment != "relaxation" &&
        c.experiment != "sharp_rate" && c.experiment != "semigroup_suite" &&
        c.experiment != "property_suite")
        throw ConfigInvalid("experiment: unknown value '" + c.experiment + "'");

    c.alpha = get_num(j, "alpha", 1.5);
    if (!(c.alpha > 1.0) || !(c.alpha < 2.0))
        throw ConfigInvalid("alpha: must lie in (1, 2)");

    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        c.grid = GridSpec{static_cast<int>(get_num(g, "n", 256.0)),
                          get_num(g, "box_length", 60.0)};
    }
    c.dealias_fraction = get_num(j, "dealias_fraction", 2.0 / 3.0);

    if (j.contains("forcing")) c.forcing = parse_forcing(j.at("forcing"));
    if (j.contains("initial_data")) c.initial = parse_initial(j.at("initial_data"));
    if (j.contains("stepper")) c.stepper = parse_stepper(j.at("stepper"));

    if (j.contains("p_list")) {
        c.p_list.clear();
        for (const auto& p : j.at("p_list")) {
            const double v = p.get<double>();
            if (!(v > 1.0)) throw ConfigInvalid("p_list: entries must be > 1");
            c.p_list.push_back(v);
        }
    }
    c.m = get_num(j, "m", std::numeric_limits<double>::quiet_NaN());
    if (std::isfinite(c.m) && (!(c.m > 1.0) || !(c.m < 3.0 - c.alpha)))
        throw ConfigInvalid("m: must lie in (1, 3 - alpha)");
    c.tail_threshold = get_num(j, "tail_threshold", 1e-6);

    c.evolution_mode = get_str(j, "evolution_mode", "perturbation");
    if (c.evolution_mode != "perturbation" && c.evolution_mode != "theta")
        throw ConfigInvalid("evolution_mode: must be 'perturbation' or 'theta'");

    if (j.contains("fit_window")) {
        const auto& w = j.at("fit_window");
        if (!w.is_array() || w.size() != 2)
            throw ConfigInvalid("fit_window: expected [lo, hi]");
        c.fit_lo = w[0].get<double>();
        c.fit_hi = w[1].get<double>();
        // [0, 0] is the unset sentinel (hi falls back to t_end).
        const bool unset = c.fit_lo == 0.0 && c.fit_hi == 0.0;
        if (!unset && (!(c.fit_lo >= 0.0) || !(c.fit_hi > c.fit_lo)))
            throw ConfigInvalid("fit_window: need 0 <= lo < hi");
    }
    c.respect_wraparound = get_bool(j, "respect_wraparound", true);
    c.rate_tolerance = get_num(j, "rate_tolerance", 0.05);
    c.r_squared_floor = get_num(j, "r_squared_floor", 0.99);
    c.fixedness_check = get_bool(j, "fixedness_check", false);

    if (j.contains("picard")) {
        const auto& p = j.at("picard");
        c.picard.tol_rel = get_num(p, "tol_rel", 1e-12);
        c.picard.max_iter = static_cast<int>(get_num(p, "max_iter", 200.0));
    }
    c.seed = static_cast<unsigned long long>(get_num(j, "seed", 0.0));
    c.output_dir = get_str(j, "output_dir", "out");
    c.dump_fields = get_bool(j, "dump_fields", false);

    // Presets must be realizable on the grid.
    if (c.initial.preset.kind == "gaussian" &&
        !(c.initial.preset.width > c.grid.dx() &&
          c.initial.preset.width < c.grid.box_length / 2.0))
        throw ConfigInvalid("initial_data.width: not resolvable on the grid");
    return c;
}

io::json config_to_json(const ExperimentConfig& c) {
    io::json j;
    j["experiment"] = c.experiment;
    j["alpha"] = c.alpha;
    j["grid"] = {{"n", c.grid.n}, {"box_length", c.grid.box_length}};
    j["dealias_fraction"] = c.dealias_fraction;
    io::json f;
    f["kind"] = forcing_kind_name(c.forcing.kind);
    f["amplitude"] = c.forcing.epsilon;
    f["band"] = {c.forcing.band_lo, c.forcing.band_hi};
    f["delta"] = c.forcing.delta;
    f["seed"] = c.forcing.seed;
    j["forcing"] = f;
    io::json ip;
    ip["preset"] = c.initial.preset.kind;
    ip["amplitude"] = c.initial.preset.amplitude;
    ip["width"] = c.initial.preset.width;
    if (c.initial.add_steady)
        j["initial_data"] = {{"preset", "steady_plus"}, {"perturbation", ip}};
    else
        j["initial_data"] = ip;
    j["stepper"] = {{"dt", c.stepper.dt},
                    {"cfl_number", c.stepper.cfl_number},
                    {"t_end", c.stepper.t_end},
                    {"snapshot_times", c.stepper.snapshot_times},
                    {"diagnostic_stride", c.stepper.diagnostic_stride}};
    j["p_list"] = c.p_list;
    if (std::isfinite(c.m)) j["m"] = c.m;
    j["tail_threshold"] = c.tail_threshold;
    j["evolution_mode"] = c.evolution_mode;
    j["fit_window"] = {c.fit_lo, c.fit_hi};
    j["respect_wraparound"] = c.respect_wraparound;
    j["rate_tolerance"] = c.rate_tolerance;
    j["r_squared_floor"] = c.r_squared_floor;
    j["fixedness_check"] = c.fixedness_check;
    j["picard"] = {{"tol_rel", c.picard.tol_rel}, {"max_iter", c.picard.max_iter}};
    j["seed"] = c.seed;
    j["output_dir"] = c.output_dir;
    j["dump_fields"] = c.dump_fields;
    return j;
}

ExperimentConfig load_config(const std::string& path) {
    io::json j;
    try {
        j = io::read_json(path);
    } catch (const std::exception& e) {
        throw ConfigInvalid(std::string("cannot parse ") + path + ": " + e.what());
    }
    return config_from_json(j);
}

}  // namespace sqg
