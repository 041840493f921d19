// Command-line entry point: load experiment configs, run them, report.
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sqgrelax/experiments.hpp"
#include "sqgrelax/fft.hpp"

namespace {

std::string stem(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pseudo-spectral relaxation experiments for the dissipative "
                 "surface transport equation"};
    app.require_subcommand(0, 1);

    bool list_experiments = false;
    app.add_flag("--list-experiments", list_experiments,
                 "Print the available experiment names and exit");

    std::vector<std::string> config_paths;
    std::string output_dir;
    int threads = 1;
    bool emit_plots = false;

    CLI::App* run_cmd = app.add_subcommand("run", "Execute experiment configs");
    run_cmd->add_option("configs", config_paths, "JSON config file(s)")
        ->required()
        ->check(CLI::ExistingFile);
    run_cmd->add_option("--output-dir", output_dir,
                        "Override output directory (with several configs, "
                        "each run lands in <dir>/<config-stem>)");
    run_cmd->add_option("--threads", threads, "FFT threads")
        ->check(CLI::PositiveNumber);
    run_cmd->add_flag("--emit-plots-data", emit_plots,
                      "Also write tidy long-format CSV for external plotting");

    CLI11_PARSE(app, argc, argv);

    if (list_experiments) {
        std::printf(
            "steady_state\nrelaxation\nsharp_rate\nsemigroup_suite\n"
            "property_suite\n");
        return 0;
    }
    if (!run_cmd->parsed()) {
        std::fprintf(stderr, "%s\n", app.help().c_str());
        return 2;
    }

    sqg::fft::set_threads(threads);

    std::vector<sqg::ExperimentConfig> configs;
    try {
        for (const auto& path : config_paths) {
            sqg::ExperimentConfig c = sqg::load_config(path);
            if (!output_dir.empty()) {
                c.output_dir = config_paths.size() == 1
                                   ? output_dir
                                   : output_dir + "/" + stem(path);
            }
            c.emit_plots_data = emit_plots;
            configs.push_back(std::move(c));
        }
    } catch (const sqg::ConfigInvalid& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const sqg::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }

    sqg::RunResult result;
    if (configs.size() == 1) {
        result = sqg::run(configs.front());
        std::printf("%s: %s (exit %d)\n", configs.front().experiment.c_str(),
                    result.passed ? "PASS" : "FAIL", result.exit_code);
        if (result.summary.contains("error"))
            std::printf("  %s\n",
                        result.summary["error"].get<std::string>().c_str());
    } else {
        try {
            result = sqg::run_suite(configs);
        } catch (const sqg::ConfigInvalid& e) {
            std::fprintf(stderr, "config error: %s\n", e.what());
            return 2;
        }
        const auto& runs = result.summary["runs"];
        for (std::size_t i = 0; i < configs.size(); ++i) {
            const auto& entry = runs[i];
            std::printf("%-14s %-24s %s\n",
                        entry["experiment"].get<std::string>().c_str(),
                        entry["output_dir"].get<std::string>().c_str(),
                        entry["passed"].get<bool>() ? "PASS" : "FAIL");
        }
        std::printf("suite: %s (exit %d)\n", result.passed ? "PASS" : "FAIL",
                    result.exit_code);
    }
    return result.exit_code;
}
