// experiments.hpp: runners that turn an ExperimentConfig into CSV files and a
// gnuplot script.
//
// Every CSV starts with a "# config: ..." line holding the resolved config,
// then a header row. Reals are written as %.11e (12 significant digits) through
// std::to_chars, so output is locale-independent and byte-stable. Missing
// values (an unoccupied mode, no prediction) are written as NA.

#pragma once

#include "jch/config.hpp"
#include "jch/dynamics.hpp"
#include "jch/effective.hpp"
#include "jch/model.hpp"
#include "jch/observables.hpp"
#include "jch/oracle.hpp"
#include "jch/spectral.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace jch {

namespace fs = std::filesystem;

// ------------------------------------ CSV ------------------------------------

inline std::string format_real(double v) {
    if (!std::isfinite(v)) return "NA";
    char buf[48];
    const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 11);
    return std::string(buf, r.ptr);
}

inline std::string format_real(std::optional<double> v) { return v ? format_real(*v) : "NA"; }

class CsvWriter {
public:
    CsvWriter(const fs::path& path, const ExperimentConfig& cfg, const std::vector<std::string>& header)
        : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
        if (!out_) throw std::runtime_error("cannot write " + path.string());
        out_ << "# config: " << describe(cfg) << '\n';
        row(header);
    }

    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
        out_ << '\n';
    }

    void close() {
        out_.close();
        if (!out_) throw std::runtime_error("failed writing " + path_.string());
    }

private:
    fs::path path_;
    std::ofstream out_;
};

/// 64-bit FNV-1a of a file's bytes.
inline std::uint64_t fnv1a_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::uint64_t h = 0xcbf29ce484222325ull;
    char buf[1 << 14];
    while (in) {
        in.read(buf, sizeof buf);
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 0x100000001b3ull;
        }
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    char buf[17];
    const auto r = std::to_chars(buf, buf + 16, v, 16);
    std::string s(buf, r.ptr);
    return std::string(16 - s.size(), '0') + s;
}

// -------------------------------- worker pool --------------------------------

/// Evaluates fn(0..count-1) on up to `jobs` threads; results come back in index
/// order. The first exception (by index) is rethrown.
template <class Fn>
auto parallel_map(std::size_t count, unsigned jobs, Fn fn) -> std::vector<decltype(fn(std::size_t{}))> {
    using R = decltype(fn(std::size_t{}));
    std::vector<std::optional<R>> slots(count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                slots[i].emplace(fn(i));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned n_threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    }
    std::vector<R> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        if (errors[i]) std::rethrow_exception(errors[i]);
        out.push_back(std::move(*slots[i]));
    }
    return out;
}

// ------------------------------ shared helpers -------------------------------

inline SingleExcitationState initial_state(const ExperimentConfig& cfg, const ChainParams& p) {
    const int n = cfg.n_cavities;
    switch (cfg.initial.kind) {
        case InitialKind::localized: {
            Eigen::VectorXcd v = Eigen::VectorXcd::Zero(2 * n);
            v(2 * (cfg.initial.q0 - 1)) = v(2 * (cfg.initial.q0 - 1) + 1) = 1.0 / std::sqrt(2.0);
            return SingleExcitationState(std::move(v));
        }
        case InitialKind::dressed: return initial_dressed(n, cfg.initial.q0, cfg.initial.branch, p);
        default: return initial_gaussian_jch(n, cfg.gaussian_center(), cfg.gaussian_width(), cfg.initial.wavenumber);
    }
}

inline SpinChainState initial_state(const ExperimentConfig& cfg) {
    if (cfg.initial.kind == InitialKind::gaussian) {
        return initial_spin(cfg.n_cavities, GaussianStart{cfg.gaussian_center(), cfg.gaussian_width(), cfg.initial.wavenumber});
    }
    return initial_spin(cfg.n_cavities, LocalizedStart{cfg.initial.q0});
}

inline std::vector<double> time_grid(const ExperimentConfig& cfg) {
    return linspace(0.0, cfg.resolved_t_max(), cfg.n_samples);
}

/// Closed-form route for uniform/parabolic chains, dense diagonalization otherwise.
inline JchTrajectory jch_trajectory(const SingleExcitationState& psi0, const ChainParams& p, std::span<const double> times) {
    if (is_custom(p.profile)) return evolve_series(psi0, build_dense(p), times);
    return evolve_series(psi0, jch_spectrum(p), times);
}

/// Log-spaced points with exact endpoints.
inline std::vector<double> log_space(double lo, double hi, int points) {
    std::vector<double> out(static_cast<std::size_t>(points));
    if (points == 1) {
        out[0] = lo;
        return out;
    }
    const double a = std::log(lo), b = std::log(hi);
    for (int i = 0; i < points; ++i) out[static_cast<std::size_t>(i)] = std::exp(a + (b - a) * i / (points - 1));
    out.front() = lo;
    out.back() = hi;
    return out;
}

inline std::optional<DispersionSample> try_position(std::span<const double> profile, Channel c) {
    double mass = 0.0;
    for (double x : profile) mass += x;
    if (!(mass > kUnoccupiedWeight)) return std::nullopt;
    return position_moments(profile, c);
}

/// Analytic position envelope for one channel, or nullopt when none applies.
struct EnvelopeModel {
    EnvelopeKind kind{EnvelopeKind::none};
    double speed{0.0};
    double start{1.0};
    bool mirrored{false};

    std::optional<double> at(int n, double t) const {
        if (kind == EnvelopeKind::none) return std::nullopt;
        if (speed == 0.0) return start;
        double q = 0.0;
        switch (kind) {
            case EnvelopeKind::triangle: q = triangle_wave(n, speed, t); break;
            case EnvelopeKind::triangle_centered: q = triangle_wave_centered(n, speed, t); break;
            case EnvelopeKind::parabolic: q = parabolic_position(n, speed, t); break;
            default: return std::nullopt;
        }
        return mirrored ? n + 1 - q : q;
    }
};

inline EnvelopeKind automatic_envelope(const ExperimentConfig& cfg) {
    if (cfg.envelope != EnvelopeKind::automatic) return cfg.envelope;
    if (is_custom(cfg.profile)) return EnvelopeKind::none;
    if (cfg.initial.kind == InitialKind::gaussian) {
        return is_uniform(cfg.profile) ? EnvelopeKind::triangle_centered : EnvelopeKind::none;
    }
    if (cfg.initial.q0 != 1) return EnvelopeKind::none;
    return is_uniform(cfg.profile) ? EnvelopeKind::triangle : EnvelopeKind::parabolic;
}

inline EnvelopeModel envelope_model(const ExperimentConfig& cfg, std::optional<double> speed) {
    EnvelopeModel m;
    m.kind = speed ? automatic_envelope(cfg) : EnvelopeKind::none;
    if (m.kind == EnvelopeKind::none) return m;
    m.speed = *speed;
    m.start = cfg.initial.kind == InitialKind::gaussian ? cfg.gaussian_center() : double(cfg.initial.q0);
    // exp(-ikQ) with sin k > 0 travels toward Q = 1, opposite to the centered wave
    m.mirrored = m.kind == EnvelopeKind::triangle_centered && std::sin(cfg.initial.wavenumber) > 0.0;
    return m;
}

struct RunResult {
    std::vector<fs::path> files;
    std::vector<std::string> notes;  // human-readable summary lines
};

inline std::vector<std::string> cavity_header(int n) {
    std::vector<std::string> h{"t"};
    for (int q = 1; q <= n; ++q) h.push_back("Q" + std::to_string(q));
    return h;
}

inline void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

inline void prepare_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw std::runtime_error("cannot create output directory " + dir.string());
}

// --------------------------------- spacetime ---------------------------------

/// Each panel is (channel name, envelope.csv column holding its envelope).
inline std::string spacetime_plot(const std::vector<std::pair<std::string, int>>& panels) {
    std::ostringstream g;
    g << "# gnuplot script; run with: gnuplot plot.gp\n"
      << "set datafile separator ','\n"
      << "set terminal pngcairo size " << 600 * panels.size() << ",500\n"
      << "set output 'spacetime.png'\n"
      << "set multiplot layout 1," << panels.size() << "\n"
      << "set xlabel 't'\nset ylabel 'cavity Q'\nset cblabel 'occupation'\nset palette rgb 33,13,10\n";
    for (std::size_t i = 0; i < panels.size(); ++i) {
        g << "set title '" << panels[i].first << "'\n"
          << "plot 'spacetime_" << panels[i].first << ".csv' matrix columnheaders rowheaders using 2:1:3 with image notitle, \\\n"
          << "     'envelope.csv' using 1:" << panels[i].second << " with lines dt 2 lc rgb 'white' title 'envelope'\n";
    }
    g << "unset multiplot\n";
    return g.str();
}

inline RunResult run_spacetime(const ExperimentConfig& cfg, const fs::path& out_dir) {
    if (cfg.system == System::spin) throw ConfigError("spacetime runs on the jch system; use spin-chain for spin chains");
    prepare_dir(out_dir);
    const ChainParams p = cfg.chain();
    const auto times = time_grid(cfg);
    const auto traj = jch_trajectory(initial_state(cfg, p), p, times);

    const auto prediction = predicted_speeds(p);
    const auto env_ph = envelope_model(cfg, prediction ? std::optional(prediction->j_photonic) : std::nullopt);
    const auto env_at = envelope_model(cfg, prediction ? std::optional(prediction->j_atomic) : std::nullopt);

    const int n = cfg.n_cavities;
    CsvWriter ph(out_dir / "spacetime_photonic.csv", cfg, cavity_header(n));
    CsvWriter at(out_dir / "spacetime_atomic.csv", cfg, cavity_header(n));
    CsvWriter env(out_dir / "envelope.csv", cfg,
                  {"t", "q_mean_photonic", "q_std_photonic", "q_mean_atomic", "q_std_atomic", "envelope_photonic",
                   "envelope_atomic"});
    for (std::size_t i = 0; i < times.size(); ++i) {
        const auto occ = occupations(traj.states[i]);
        std::vector<std::string> r_ph{format_real(times[i])}, r_at{format_real(times[i])};
        for (int q = 0; q < n; ++q) {
            r_ph.push_back(format_real(occ.photonic[static_cast<std::size_t>(q)]));
            r_at.push_back(format_real(occ.atomic[static_cast<std::size_t>(q)]));
        }
        ph.row(r_ph);
        at.row(r_at);
        const auto mp = try_position(occ.photonic, Channel::photonic);
        const auto ma = try_position(occ.atomic, Channel::atomic);
        env.row({format_real(times[i]), format_real(mp ? std::optional(mp->q_mean) : std::nullopt),
                 format_real(mp ? std::optional(mp->q_std) : std::nullopt),
                 format_real(ma ? std::optional(ma->q_mean) : std::nullopt),
                 format_real(ma ? std::optional(ma->q_std) : std::nullopt), format_real(env_ph.at(n, times[i])),
                 format_real(env_at.at(n, times[i]))});
    }
    ph.close();
    at.close();
    env.close();
    write_text(out_dir / "plot.gp", spacetime_plot({{"atomic", 7}, {"photonic", 6}}));

    RunResult r;
    r.files = {out_dir / "spacetime_photonic.csv", out_dir / "spacetime_atomic.csv", out_dir / "envelope.csv",
               out_dir / "plot.gp"};
    r.notes.push_back("regime: " + std::string(prediction ? to_string(prediction->regime) : "no prediction"));
    return r;
}

// --------------------------------- spin chain --------------------------------

inline RunResult run_spin_chain(const ExperimentConfig& cfg, const fs::path& out_dir) {
    prepare_dir(out_dir);
    const auto sp = cfg.spin();
    const auto times = time_grid(cfg);
    const auto traj = spin_evolve_series(initial_state(cfg), sp, times);
    const auto env = envelope_model(cfg, sp.j_coupling);
    const int n = cfg.n_cavities;

    CsvWriter grid(out_dir / "spacetime_spin.csv", cfg, cavity_header(n));
    CsvWriter moments(out_dir / "envelope.csv", cfg, {"t", "q_mean", "q_std", "envelope"});
    for (std::size_t i = 0; i < times.size(); ++i) {
        const auto occ = occupations(traj.states[i]);
        std::vector<std::string> row{format_real(times[i])};
        for (double x : occ) row.push_back(format_real(x));
        grid.row(row);
        const auto m = position_moments(occ, Channel::spin);
        moments.row({format_real(times[i]), format_real(m.q_mean), format_real(m.q_std), format_real(env.at(n, times[i]))});
    }
    grid.close();
    moments.close();

    std::ostringstream g;
    g << "# gnuplot script; run with: gnuplot plot.gp\n"
      << "set datafile separator ','\nset terminal pngcairo size 1200,500\nset output 'spin_chain.png'\n"
      << "set multiplot layout 1,2\nset xlabel 't'\nset ylabel 'site Q'\nset palette rgb 33,13,10\n"
      << "plot 'spacetime_spin.csv' matrix columnheaders rowheaders using 2:1:3 with image notitle, \\\n"
      << "     'envelope.csv' using 1:4 with lines dt 2 lc rgb 'white' title 'envelope'\n"
      << "set ylabel 'Q'\n"
      << "plot 'envelope.csv' using 1:2 with lines title '<Q>', '' using 1:3 with lines dt 2 title 'dQ'\n"
      << "unset multiplot\n";
    write_text(out_dir / "plot.gp", g.str());
    return {{out_dir / "spacetime_spin.csv", out_dir / "envelope.csv", out_dir / "plot.gp"}, {}};
}

// ------------------------------ dispersion sweep -----------------------------

struct DispersionRow {
    double kappa_over_beta{0.0};
    std::optional<double> dq_photonic, dq_atomic, dq_heis_j_kappa, dq_heis_j_2kappa;
};

/// Spin-chain reference dispersions for the sweep. Uniform localized starts use
/// the quarter-way (J = kappa) and half-way (J = 2 kappa) fronts; parabolic
/// chains are evaluated at T directly; a Gaussian start does not disperse, so
/// both columns carry its initial width.
inline std::pair<double, double> sweep_references(const ExperimentConfig& cfg, double kappa, double t) {
    const int n = cfg.n_cavities;
    if (cfg.initial.kind == InitialKind::gaussian) {
        const double s = position(initial_state(cfg)).q_std;
        return {s, s};
    }
    if (is_uniform(cfg.profile) && cfg.initial.kind == InitialKind::localized && cfg.initial.q0 == 1) {
        return {heisenberg_dispersion_reference(n, kappa, FrontFraction::quarter),
                heisenberg_dispersion_reference(n, 2.0 * kappa, FrontFraction::half)};
    }
    const auto start = initial_spin(n, LocalizedStart{cfg.initial.q0});
    return {position(spin_evolve(start, SpinChainParams{n, kappa, cfg.profile}, t)).q_std,
            position(spin_evolve(start, SpinChainParams{n, 2.0 * kappa, cfg.profile}, t)).q_std};
}

inline DispersionRow dispersion_point(const ExperimentConfig& cfg, double kappa_over_beta) {
    const ChainParams p = cfg.chain_at(kappa_over_beta, cfg.delta_over_beta);
    const double t = cfg.sample_time * cfg.n_cavities / p.kappa;
    const auto occ = occupations(evolve(initial_state(cfg, p), jch_spectrum(p), t));
    DispersionRow row{kappa_over_beta, {}, {}, {}, {}};
    if (const auto m = try_position(occ.photonic, Channel::photonic)) row.dq_photonic = m->q_std;
    if (const auto m = try_position(occ.atomic, Channel::atomic)) row.dq_atomic = m->q_std;
    const auto [a, b] = sweep_references(cfg, p.kappa, t);
    row.dq_heis_j_kappa = a;
    row.dq_heis_j_2kappa = b;
    return row;
}

inline std::vector<DispersionRow> dispersion_sweep(const ExperimentConfig& cfg, unsigned jobs = 1) {
    const auto ratios = log_space(cfg.sweep_min, cfg.sweep_max, cfg.sweep_points);
    return parallel_map(ratios.size(), jobs, [&](std::size_t i) { return dispersion_point(cfg, ratios[i]); });
}

inline RunResult run_dispersion_sweep(const ExperimentConfig& cfg, const fs::path& out_dir, unsigned jobs = 1) {
    prepare_dir(out_dir);
    const auto rows = dispersion_sweep(cfg, jobs);
    CsvWriter csv(out_dir / "dispersion.csv", cfg,
                  {"kappa_over_beta", "dq_photonic", "dq_atomic", "dq_heis_J_kappa", "dq_heis_J_2kappa"});
    for (const auto& r : rows) {
        csv.row({format_real(r.kappa_over_beta), format_real(r.dq_photonic), format_real(r.dq_atomic),
                 format_real(r.dq_heis_j_kappa), format_real(r.dq_heis_j_2kappa)});
    }
    csv.close();
    write_text(out_dir / "plot.gp",
               "# gnuplot script; run with: gnuplot plot.gp\n"
               "set datafile separator ','\nset datafile missing 'NA'\nset terminal pngcairo size 800,500\n"
               "set output 'dispersion.png'\nset logscale x\nset format x '10^{%L}'\n"
               "set xlabel 'kappa/beta'\nset ylabel 'dQ'\nset key top left\n"
               "plot 'dispersion.csv' using 1:3 with lines lw 2 title 'atomic', \\\n"
               "     '' using 1:2 with lines dt 2 lw 2 title 'photonic', \\\n"
               "     '' using 1:5 with lines dt 3 title 'Heisenberg J = 2 kappa', \\\n"
               "     '' using 1:4 with lines dt 4 title 'Heisenberg J = kappa'\n");
    return {{out_dir / "dispersion.csv", out_dir / "plot.gp"}, {std::to_string(rows.size()) + " sweep points"}};
}

// ---------------------------------- profiles ---------------------------------

inline std::vector<double> snapshot_times(const ExperimentConfig& cfg) {
    if (!cfg.snapshot_times.empty()) return cfg.snapshot_times;
    const double t = cfg.resolved_t_max();
    return {0.0, 0.25 * t, 0.5 * t, 0.75 * t, t};
}

inline RunResult run_profiles(const ExperimentConfig& cfg, const fs::path& out_dir) {
    prepare_dir(out_dir);
    const auto times = snapshot_times(cfg);
    const int n = cfg.n_cavities;
    if (cfg.system == System::spin) {
        CsvWriter csv(out_dir / "profiles.csv", cfg, {"t", "cavity", "spin"});
        const auto sp = cfg.spin();
        const auto psi0 = initial_state(cfg);
        for (double t : times) {
            const auto occ = occupations(spin_evolve(psi0, sp, t));
            for (int q = 0; q < n; ++q) csv.row({format_real(t), std::to_string(q + 1), format_real(occ[static_cast<std::size_t>(q)])});
        }
        csv.close();
    } else {
        CsvWriter csv(out_dir / "profiles.csv", cfg, {"t", "cavity", "photonic", "atomic"});
        const ChainParams p = cfg.chain();
        std::vector<double> sorted = times;
        std::sort(sorted.begin(), sorted.end());
        const auto traj = jch_trajectory(initial_state(cfg, p), p, sorted);
        for (double t : times) {
            const auto idx = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), t) - sorted.begin());
            const auto occ = occupations(traj.states[idx]);
            for (int q = 0; q < n; ++q) {
                const auto uq = static_cast<std::size_t>(q);
                csv.row({format_real(t), std::to_string(q + 1), format_real(occ.photonic[uq]), format_real(occ.atomic[uq])});
            }
        }
        csv.close();
    }
    std::ostringstream g;
    g << "# gnuplot script; run with: gnuplot plot.gp\n"
      << "set datafile separator ','\nset terminal pngcairo size 800,500\nset output 'profiles.png'\n"
      << "set xlabel 'cavity Q'\nset ylabel 'occupation'\n"
      << "stats 'profiles.csv' using 1 nooutput\n"
      << "plot for [i=0:" << times.size() - 1 << "] 'profiles.csv' every ::(i*" << n << ")::((i+1)*" << n
      << "-1) using 2:3 with lines title sprintf('snapshot %d', i)\n";
    write_text(out_dir / "plot.gp", g.str());
    return {{out_dir / "profiles.csv", out_dir / "plot.gp"}, {}};
}

// -------------------------------- limits report -------------------------------

struct LimitsRow {
    LimitPoint point;
    std::optional<SpeedPrediction> prediction;
    double measured_photonic{0.0};
    double measured_atomic{0.0};

    std::optional<double> rel_error_photonic() const {
        if (!prediction || prediction->j_photonic == 0.0) return std::nullopt;
        return std::abs(measured_photonic - prediction->j_photonic) / prediction->j_photonic;
    }
    std::optional<double> rel_error_atomic() const {
        if (!prediction || prediction->j_atomic == 0.0) return std::nullopt;
        return std::abs(measured_atomic - prediction->j_atomic) / prediction->j_atomic;
    }
};

/// Front speed of one channel over t in [0.1, 0.4] N / J_window, 31 samples.
inline double measure_channel_speed(const ChainParams& p, const SingleExcitationState& psi0, Channel c, double j_window) {
    const double span = p.n_cavities / j_window;
    const auto times = linspace(0.1 * span, 0.4 * span, 31);
    const auto traj = jch_trajectory(psi0, p, times);
    return measure_speed(traj, c).speed;
}

/// Measured versus predicted speeds for one (kappa/beta, Delta/beta) point. The
/// fit window follows the predicted speed of each mode; without a prediction
/// (or for a frozen mode) the photon hopping bound 2 kappa sets it.
inline LimitsRow limits_point(const ExperimentConfig& cfg, const LimitPoint& lp) {
    const ChainParams p = cfg.chain_at(lp.kappa_over_beta, lp.delta_over_beta);
    const auto psi0 = initial_state(cfg, p);
    LimitsRow row{lp, predicted_speeds(p), 0.0, 0.0};
    const double fallback = 2.0 * p.kappa;
    const double j_ph = row.prediction && row.prediction->j_photonic > 0.0 ? row.prediction->j_photonic : fallback;
    const double j_at = row.prediction && row.prediction->j_atomic > 0.0 ? row.prediction->j_atomic : fallback;
    row.measured_photonic = measure_channel_speed(p, psi0, Channel::photonic, j_ph);
    row.measured_atomic = measure_channel_speed(p, psi0, Channel::atomic, j_at);
    return row;
}

inline std::vector<LimitsRow> limits_report(const ExperimentConfig& cfg, unsigned jobs = 1) {
    return parallel_map(cfg.limit_points.size(), jobs, [&](std::size_t i) { return limits_point(cfg, cfg.limit_points[i]); });
}

inline RunResult run_limits_report(const ExperimentConfig& cfg, const fs::path& out_dir, unsigned jobs = 1) {
    prepare_dir(out_dir);
    const auto rows = limits_report(cfg, jobs);
    CsvWriter csv(out_dir / "limits.csv", cfg,
                  {"regime", "kappa_over_beta", "delta_over_beta", "j_predicted_photonic", "j_measured_photonic",
                   "j_predicted_atomic", "j_measured_atomic", "rel_error", "rel_error_atomic"});
    RunResult result;
    for (const auto& r : rows) {
        const bool has = r.prediction.has_value();
        csv.row({has ? to_string(r.prediction->regime) : "no_prediction", format_real(r.point.kappa_over_beta),
                 format_real(r.point.delta_over_beta),
                 format_real(has ? std::optional(r.prediction->j_photonic) : std::nullopt), format_real(r.measured_photonic),
                 format_real(has ? std::optional(r.prediction->j_atomic) : std::nullopt), format_real(r.measured_atomic),
                 format_real(r.rel_error_photonic()), format_real(r.rel_error_atomic())});
        result.notes.push_back(std::string(has ? to_string(r.prediction->regime) : "no_prediction") +
                               ": photonic " + format_real(r.measured_photonic) + ", atomic " + format_real(r.measured_atomic));
    }
    csv.close();
    write_text(out_dir / "plot.gp",
               "# gnuplot script; run with: gnuplot plot.gp\n"
               "set datafile separator ','\nset datafile missing 'NA'\nset terminal pngcairo size 800,500\n"
               "set output 'limits.png'\nset style data histograms\nset style fill solid 0.6\n"
               "set logscale y\nset ylabel 'speed'\n"
               "plot 'limits.csv' using 4:xtic(1) title 'predicted photonic', '' using 5 title 'measured photonic', \\\n"
               "     '' using 6 title 'predicted atomic', '' using 7 title 'measured atomic'\n");
    result.files = {out_dir / "limits.csv", out_dir / "plot.gp"};
    return result;
}

// --------------------------------- dispatch ----------------------------------

inline RunResult run_experiment(const ExperimentConfig& cfg, const fs::path& out_dir, unsigned jobs = 1) {
    switch (cfg.experiment) {
        case Experiment::spacetime: return run_spacetime(cfg, out_dir);
        case Experiment::dispersion_sweep: return run_dispersion_sweep(cfg, out_dir, jobs);
        case Experiment::profiles: return run_profiles(cfg, out_dir);
        case Experiment::spin_chain: return run_spin_chain(cfg, out_dir);
        default: return run_limits_report(cfg, out_dir, jobs);
    }
}

}  // namespace jch
