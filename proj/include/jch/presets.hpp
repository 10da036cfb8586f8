// presets.hpp: built-in configurations, one per figure panel, written in the
// same key-value format users pass with --config.

#pragma once

#include "jch/config.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace jch {

struct Preset {
    std::string_view name;
    std::string_view summary;
    std::string_view text;
};

inline constexpr std::array kPresets = {
    // Space-time diagrams, uniform chain, |1>(|g,1>+|e,0>)/sqrt2; atomic and photonic panels share a run.
    Preset{"fig2a", "uniform, kappa/beta = 1e-3, atomic panel",
           "experiment = spacetime\nn_cavities = 100\nkappa_over_beta = 1e-3\ninitial = localized\n"},
    Preset{"fig2b", "uniform, kappa/beta = 1e-3, photonic panel",
           "experiment = spacetime\nn_cavities = 100\nkappa_over_beta = 1e-3\ninitial = localized\n"},
    Preset{"fig2c", "uniform, kappa/beta = 10, atomic panel",
           "experiment = spacetime\nn_cavities = 100\nkappa_over_beta = 10\ninitial = localized\n"},
    Preset{"fig2d", "uniform, kappa/beta = 10, photonic panel",
           "experiment = spacetime\nn_cavities = 100\nkappa_over_beta = 10\ninitial = localized\n"},
    Preset{"fig2e", "uniform, kappa/beta = 1e3, atomic panel",
           "experiment = spacetime\nn_cavities = 100\nkappa_over_beta = 1e3\ninitial = localized\n"},
    Preset{"fig2f", "uniform, kappa/beta = 1e3, photonic panel",
           "experiment = spacetime\nn_cavities = 100\nkappa_over_beta = 1e3\ninitial = localized\n"},

    Preset{"fig3", "dispersion at T = N/(4 kappa) versus kappa/beta, uniform, localized start",
           "experiment = dispersion-sweep\nn_cavities = 100\nprofile = uniform\ninitial = localized\n"
           "sweep_min = 1e-3\nsweep_max = 1e3\nsweep_points = 61\nsample_time = 0.25\n"},

    // Single-magnon spin chain, J = 1.
    Preset{"fig4a", "spin chain, uniform, |1>",
           "experiment = spin-chain\nn_cavities = 100\nj_coupling = 1\nprofile = uniform\ninitial = localized\n"
           "t_max = 200\n"},
    Preset{"fig4b", "spin chain, parabolic, |1>",
           "experiment = spin-chain\nn_cavities = 100\nj_coupling = 1\nprofile = parabolic\ninitial = localized\n"
           "t_max = 18.84955592153876\n"},
    Preset{"fig4c", "spin chain, uniform, Gaussian Qc = 50, s = 10, k = pi/2",
           "experiment = spin-chain\nn_cavities = 100\nj_coupling = 1\nprofile = uniform\ninitial = gaussian\n"
           "qc = 50\nwidth = 10\nwavenumber = 1.5707963267948966\nt_max = 200\n"},
    Preset{"fig5a", "spin chain position and dispersion, uniform, |1>",
           "experiment = spin-chain\nn_cavities = 100\nj_coupling = 1\nprofile = uniform\ninitial = localized\n"
           "t_max = 200\nn_samples = 801\n"},
    Preset{"fig5b", "spin chain position and dispersion, parabolic, |1>",
           "experiment = spin-chain\nn_cavities = 100\nj_coupling = 1\nprofile = parabolic\ninitial = localized\n"
           "t_max = 18.84955592153876\nn_samples = 801\n"},
    Preset{"fig5c", "spin chain position and dispersion, uniform Gaussian",
           "experiment = spin-chain\nn_cavities = 100\nj_coupling = 1\nprofile = uniform\ninitial = gaussian\n"
           "qc = 50\nwidth = 10\nwavenumber = 1.5707963267948966\nt_max = 200\nn_samples = 801\n"},

    // Parabolic JCH chain; t_max spans two revival periods of the relevant spin chain.
    Preset{"fig6a", "parabolic, kappa/beta = 1e-4, atomic panel",
           "experiment = spacetime\nn_cavities = 100\nprofile = parabolic\nkappa_over_beta = 1e-4\n"
           "initial = localized\nt_max = 125663.70614359173\n"},
    Preset{"fig6b", "parabolic, kappa/beta = 1e-4, photonic panel",
           "experiment = spacetime\nn_cavities = 100\nprofile = parabolic\nkappa_over_beta = 1e-4\n"
           "initial = localized\nt_max = 125663.70614359173\n"},
    Preset{"fig6c", "parabolic, kappa/beta = 1, atomic panel",
           "experiment = spacetime\nn_cavities = 100\nprofile = parabolic\nkappa_over_beta = 1\n"
           "initial = localized\nt_max = 12.566370614359172\n"},
    Preset{"fig6d", "parabolic, kappa/beta = 1, photonic panel",
           "experiment = spacetime\nn_cavities = 100\nprofile = parabolic\nkappa_over_beta = 1\n"
           "initial = localized\nt_max = 12.566370614359172\n"},
    Preset{"fig6e", "parabolic, kappa/beta = 1e3, atomic panel",
           "experiment = spacetime\nn_cavities = 100\nprofile = parabolic\nkappa_over_beta = 1e3\n"
           "initial = localized\nt_max = 6.283185307179586e-3\n"},
    Preset{"fig6f", "parabolic, kappa/beta = 1e3, photonic panel",
           "experiment = spacetime\nn_cavities = 100\nprofile = parabolic\nkappa_over_beta = 1e3\n"
           "initial = localized\nt_max = 6.283185307179586e-3\n"},

    Preset{"fig7", "dispersion at T = N/(4 kappa) versus kappa/beta, parabolic, localized start",
           "experiment = dispersion-sweep\nn_cavities = 100\nprofile = parabolic\ninitial = localized\n"
           "sweep_min = 1e-3\nsweep_max = 1e3\nsweep_points = 61\nsample_time = 0.25\n"},

    // Uniform chain, Gaussian start (Qc = N/2, s = N/10, k = pi/2); one wall-to-wall round trip.
    Preset{"fig8a", "Gaussian, kappa/beta = 1e-2, atomic panel",
           "experiment = spacetime\nn_cavities = 100\nkappa_over_beta = 1e-2\ninitial = gaussian\nt_max = 2e4\n"},
    Preset{"fig8b", "Gaussian, kappa/beta = 1e-2, photonic panel",
           "experiment = spacetime\nn_cavities = 100\nkappa_over_beta = 1e-2\ninitial = gaussian\nt_max = 2e4\n"},
    Preset{"fig8c", "Gaussian, kappa/beta = 1, atomic panel",
           "experiment = spacetime\nn_cavities = 100\nkappa_over_beta = 1\ninitial = gaussian\nt_max = 200\n"},
    Preset{"fig8d", "Gaussian, kappa/beta = 1, photonic panel",
           "experiment = spacetime\nn_cavities = 100\nkappa_over_beta = 1\ninitial = gaussian\nt_max = 200\n"},
    Preset{"fig8e", "Gaussian, kappa/beta = 1e3, atomic panel",
           "experiment = spacetime\nn_cavities = 100\nkappa_over_beta = 1e3\ninitial = gaussian\nt_max = 0.1\n"},
    Preset{"fig8f", "Gaussian, kappa/beta = 1e3, photonic panel",
           "experiment = spacetime\nn_cavities = 100\nkappa_over_beta = 1e3\ninitial = gaussian\nt_max = 0.1\n"},

    Preset{"fig9", "dispersion at T = N/(8 kappa) versus kappa/beta, uniform, Gaussian start",
           "experiment = dispersion-sweep\nn_cavities = 100\nprofile = uniform\ninitial = gaussian\n"
           "sweep_min = 1e-3\nsweep_max = 1e3\nsweep_points = 61\nsample_time = 0.125\n"},

    // Pulse profiles of the J = 1 spin chain at fixed instants.
    Preset{"fig10a", "profiles, uniform spin chain, |1>",
           "experiment = profiles\nsystem = spin\nn_cavities = 100\nj_coupling = 1\nprofile = uniform\n"
           "initial = localized\nsnapshot_times = 0, 10, 20, 30, 40\n"},
    Preset{"fig10b", "profiles, parabolic spin chain, |1>",
           "experiment = profiles\nsystem = spin\nn_cavities = 100\nj_coupling = 1\nprofile = parabolic\n"
           "initial = localized\nsnapshot_times = 0, 0.7853981633974483, 1.5707963267948966, "
           "2.356194490192345, 3.141592653589793\n"},
    Preset{"fig10c", "profiles, uniform spin chain, Gaussian",
           "experiment = profiles\nsystem = spin\nn_cavities = 100\nj_coupling = 1\nprofile = uniform\n"
           "initial = gaussian\nqc = 50\nwidth = 10\nsnapshot_times = 0, 10, 20, 30, 40\n"},

    // Large detuning, Delta/beta = 1e3, kappa = beta.
    Preset{"fig11a", "large detuning, uniform, localized start",
           "experiment = spacetime\nn_cavities = 100\nkappa_over_beta = 1\ndelta_over_beta = 1e3\n"
           "initial = localized\nt_max = 100\n"},
    Preset{"fig11b", "large detuning, parabolic, localized start",
           "experiment = spacetime\nn_cavities = 100\nprofile = parabolic\nkappa_over_beta = 1\n"
           "delta_over_beta = 1e3\ninitial = localized\nt_max = 6.283185307179586\n"},
    Preset{"fig11c", "large detuning, uniform, Gaussian start",
           "experiment = spacetime\nn_cavities = 100\nkappa_over_beta = 1\ndelta_over_beta = 1e3\n"
           "initial = gaussian\nt_max = 100\n"},

    Preset{"limits", "measured versus predicted speeds in the three limit regimes and one intermediate point",
           "experiment = limits-report\nn_cavities = 100\n"
           "limit_points = 1e-3:0, 1e3:0, 1:1e3, 1:0\n"},
};

inline std::optional<Preset> find_preset(std::string_view name) {
    for (const auto& p : kPresets)
        if (p.name == name) return p;
    return std::nullopt;
}

inline ExperimentConfig expand_preset(std::string_view name) {
    const auto p = find_preset(name);
    if (!p) throw ConfigError("unknown preset '" + std::string(name) + "'");
    auto cfg = parse_config(std::string(p->text), "preset " + std::string(name));
    cfg.preset = std::string(name);
    return cfg;
}

/// Figure-panel presets only (everything named fig*).
inline std::vector<std::string_view> figure_presets() {
    std::vector<std::string_view> out;
    for (const auto& p : kPresets)
        if (p.name.starts_with("fig")) out.push_back(p.name);
    return out;
}

}  // namespace jch
