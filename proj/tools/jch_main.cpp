// Command-line runner:
//   jch <experiment> --config <path> [--out <dir>] [--jobs <n>] [--preset <name>]
//   jch presets                       list built-in presets
//   jch reproduce [--out <dir>] [--jobs <n>]
//                                     run every preset into <dir>/<preset>/ and
//                                     write <dir>/manifest.csv with file hashes
// Exit codes: 0 success, 1 configuration error, 2 runtime error.

#include "jch/config.hpp"
#include "jch/experiments.hpp"
#include "jch/presets.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int kConfigError = 1;
constexpr int kRuntimeError = 2;

std::filesystem::path default_out(const std::string& leaf) {
    if (const char* env = std::getenv("JCH_OUT_DIR"); env && *env) return std::filesystem::path(env);
    return std::filesystem::path("out") / leaf;
}

void print_presets() {
    for (const auto& p : jch::kPresets) std::cout << p.name << "\t" << p.summary << "\n";
}

int reproduce(const std::filesystem::path& root, unsigned jobs) {
    jch::prepare_dir(root);
    std::ofstream manifest(root / "manifest.csv", std::ios::binary | std::ios::trunc);
    manifest << "preset,file,fnv1a64\n";
    for (const auto& p : jch::kPresets) {
        const auto cfg = jch::expand_preset(p.name);
        const auto dir = root / std::string(p.name);
        const auto result = jch::run_experiment(cfg, dir, jobs);
        for (const auto& f : result.files) {
            manifest << p.name << ',' << f.filename().string() << ',' << jch::hex64(jch::fnv1a_file(f)) << '\n';
        }
        std::cout << p.name << ": " << result.files.size() << " files in " << dir.string() << "\n";
    }
    if (!manifest) throw std::runtime_error("failed writing manifest");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Single-excitation Jaynes-Cummings-Hubbard chain experiments"};
    std::string experiment;
    std::string config_path;
    std::string preset;
    std::string out;
    unsigned jobs = 1;
    app.add_option("experiment", experiment,
                   "spacetime | dispersion-sweep | profiles | spin-chain | limits-report | presets | reproduce")
        ->required();
    app.add_option("--config", config_path, "configuration file (key-value or JSON)");
    app.add_option("--preset", preset, "built-in preset to start from; --config keys override it");
    app.add_option("--out", out, "output directory (default: $JCH_OUT_DIR or out/<name>)");
    app.add_option("--jobs", jobs, "worker threads for sweeps")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kConfigError;
    }

    try {
        if (experiment == "presets") {
            print_presets();
            return 0;
        }
        if (experiment == "reproduce") return reproduce(out.empty() ? default_out("reproduce") : std::filesystem::path(out), jobs);

        const auto kind = jch::parse_experiment(experiment);
        if (!kind) throw jch::ConfigError("unknown experiment '" + experiment + "'");
        if (config_path.empty() && preset.empty()) throw jch::ConfigError("--config or --preset is required");

        jch::ExperimentConfig cfg;
        if (!preset.empty()) {
            cfg = jch::expand_preset(preset);
            if (cfg.experiment != *kind) {
                throw jch::ConfigError("preset '" + preset + "' is a " + jch::to_string(cfg.experiment) + " experiment");
            }
        }
        if (!config_path.empty()) cfg = jch::load_config(config_path, kind, cfg);

        const auto dir = out.empty() ? default_out(preset.empty() ? experiment : preset) : std::filesystem::path(out);
        const auto result = jch::run_experiment(cfg, dir, jobs);
        for (const auto& f : result.files) std::cout << "wrote " << f.string() << "\n";
        for (const auto& n : result.notes) std::cout << n << "\n";
        return 0;
    } catch (const jch::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kRuntimeError;
    }
}
