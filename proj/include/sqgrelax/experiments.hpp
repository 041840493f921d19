#pragma once

#include <string>
#include <vector>

#include "sqgrelax/config.hpp"

namespace sqg {

struct RunResult {
    int exit_code = 0;  // 0 pass, 1 criteria failure, 2 config error,
                        // 3 numerical error (Diverged / Instability / ...)
    bool passed = false;
    io::json summary;  // also written to <output_dir>/summary.json
};

// Execute one experiment.  Never throws: failures are encoded in the
// exit code and the summary's "error" entry.  Deterministic for a fixed
// config (no timestamps in any output).
RunResult run(const ExperimentConfig& config);

// Run several independent configs and aggregate a pass/fail matrix.
// Throws ConfigInvalid if two configs share an output_dir; individual
// run failures are reported per-entry, never dropped.
RunResult run_suite(const std::vector<ExperimentConfig>& configs);

// Build the initial-data field a preset describes.
Field realize_initial(const InitialPreset& preset, const GridSpec& grid,
                      const ModelParams& params, unsigned long long seed);

}  // namespace sqg
