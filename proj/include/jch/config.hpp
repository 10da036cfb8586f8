// config.hpp: declarative experiment configuration.
//
// Two input formats resolve to the same ExperimentConfig:
//
//   key-value text                      JSON
//   --------------                      ----
//   # shared keys                       {
//   n_cavities = 100                      "n_cavities": 100,
//   kappa_over_beta = 1e-3                "spacetime": { "t_max": 2e5 }
//                                       }
//   [spacetime]          <- section named after an experiment; its keys
//   t_max = 2e5             override the shared ones when that experiment runs
//
// Lists are comma separated in the text format ("weights = 1, 2, 1") and
// arrays in JSON. Limit points are "kappa_over_beta:delta_over_beta" pairs.
// Unknown keys, unknown sections and malformed values are errors that carry
// the line number and the key.
//
// Defaults: beta = 1, delta = 0, uniform profile, localized start, 400 time
// samples, t_max = N/kappa (N/J for the spin system).

#pragma once

#include "jch/dynamics.hpp"
#include "jch/model.hpp"
#include "jch/spectral.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace jch {

enum class Experiment { spacetime, dispersion_sweep, profiles, spin_chain, limits_report };

inline constexpr Experiment kAllExperiments[] = {Experiment::spacetime, Experiment::dispersion_sweep,
                                                 Experiment::profiles, Experiment::spin_chain,
                                                 Experiment::limits_report};

inline const char* to_string(Experiment e) noexcept {
    switch (e) {
        case Experiment::spacetime: return "spacetime";
        case Experiment::dispersion_sweep: return "dispersion-sweep";
        case Experiment::profiles: return "profiles";
        case Experiment::spin_chain: return "spin-chain";
        default: return "limits-report";
    }
}

inline std::optional<Experiment> parse_experiment(std::string_view s) {
    for (Experiment e : kAllExperiments)
        if (s == to_string(e)) return e;
    return std::nullopt;
}

/// Raised for anything wrong with a configuration; the CLI maps it to exit code 1.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class System { jch, spin };
enum class InitialKind { localized, dressed, gaussian };
enum class EnvelopeKind { automatic, none, triangle, triangle_centered, parabolic };

struct InitialSpec {
    InitialKind kind{InitialKind::localized};
    int q0{1};
    Branch branch{Branch::plus};
    std::optional<double> center;  // default N/2
    std::optional<double> width;   // default N/10
    double wavenumber{std::numbers::pi / 2};
};

struct LimitPoint {
    double kappa_over_beta{1.0};
    double delta_over_beta{0.0};
};

struct ExperimentConfig {
    Experiment experiment{Experiment::spacetime};
    std::string preset;  // empty unless expanded from a preset
    System system{System::jch};

    int n_cavities{100};
    double beta{1.0};
    double kappa_over_beta{1.0};
    double delta_over_beta{0.0};
    CouplingProfile profile{Uniform{}};
    double j_coupling{1.0};

    InitialSpec initial;

    std::optional<double> t_max;
    int n_samples{400};
    EnvelopeKind envelope{EnvelopeKind::automatic};

    double sweep_min{1e-3};
    double sweep_max{1e3};
    int sweep_points{25};
    double sample_time{0.25};  // units of N/kappa

    std::vector<double> snapshot_times;  // empty: experiment default
    std::vector<LimitPoint> limit_points{{1e-3, 0.0}, {1e3, 0.0}, {1.0, 1e3}, {1.0, 0.0}};

    double kappa() const { return kappa_over_beta * beta; }
    double delta() const { return delta_over_beta * beta; }

    ChainParams chain() const { return {n_cavities, beta, kappa(), delta(), profile}; }
    ChainParams chain_at(double k_over_b, double d_over_b) const {
        return {n_cavities, beta, k_over_b * beta, d_over_b * beta, profile};
    }
    SpinChainParams spin() const { return {n_cavities, j_coupling, profile}; }

    double resolved_t_max() const {
        if (t_max) return *t_max;
        return system == System::spin ? n_cavities / j_coupling : n_cavities / kappa();
    }
    double gaussian_center() const { return initial.center.value_or(n_cavities / 2.0); }
    double gaussian_width() const { return initial.width.value_or(n_cavities / 10.0); }
};

// ------------------------------- formatting ----------------------------------

/// Shortest round-trip representation; used for the resolved-config record.
inline std::string format_shortest(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

inline const char* to_string(System s) noexcept { return s == System::spin ? "spin" : "jch"; }

inline const char* to_string(InitialKind k) noexcept {
    switch (k) {
        case InitialKind::localized: return "localized";
        case InitialKind::dressed: return "dressed";
        default: return "gaussian";
    }
}

inline const char* to_string(EnvelopeKind k) noexcept {
    switch (k) {
        case EnvelopeKind::automatic: return "auto";
        case EnvelopeKind::none: return "none";
        case EnvelopeKind::triangle: return "triangle";
        case EnvelopeKind::triangle_centered: return "triangle_centered";
        default: return "parabolic";
    }
}

/// Canonical one-line rendering of every resolved field, in a fixed order.
inline std::string describe(const ExperimentConfig& c) {
    std::ostringstream o;
    auto list = [](const std::vector<double>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_shortest(v[i]);
        return s;
    };
    o << "experiment=" << to_string(c.experiment);
    if (!c.preset.empty()) o << " preset=" << c.preset;
    o << " system=" << to_string(c.system) << " n_cavities=" << c.n_cavities << " beta=" << format_shortest(c.beta)
      << " kappa_over_beta=" << format_shortest(c.kappa_over_beta)
      << " delta_over_beta=" << format_shortest(c.delta_over_beta) << " profile=" << profile_name(c.profile);
    if (const auto* w = std::get_if<Custom>(&c.profile)) o << " weights=" << list(w->weights);
    o << " j_coupling=" << format_shortest(c.j_coupling) << " initial=" << to_string(c.initial.kind);
    switch (c.initial.kind) {
        case InitialKind::localized: o << " q0=" << c.initial.q0; break;
        case InitialKind::dressed:
            o << " q0=" << c.initial.q0 << " branch=" << (c.initial.branch == Branch::plus ? "plus" : "minus");
            break;
        case InitialKind::gaussian:
            o << " qc=" << format_shortest(c.gaussian_center()) << " width=" << format_shortest(c.gaussian_width())
              << " wavenumber=" << format_shortest(c.initial.wavenumber);
            break;
    }
    o << " t_max=" << format_shortest(c.resolved_t_max()) << " n_samples=" << c.n_samples
      << " envelope=" << to_string(c.envelope) << " sweep_min=" << format_shortest(c.sweep_min)
      << " sweep_max=" << format_shortest(c.sweep_max) << " sweep_points=" << c.sweep_points
      << " sample_time=" << format_shortest(c.sample_time) << " snapshot_times=" << list(c.snapshot_times)
      << " limit_points=";
    for (std::size_t i = 0; i < c.limit_points.size(); ++i) {
        o << (i ? "," : "") << format_shortest(c.limit_points[i].kappa_over_beta) << ':'
          << format_shortest(c.limit_points[i].delta_over_beta);
    }
    return o.str();
}

// -------------------------------- raw entries --------------------------------

namespace detail {

/// One key = value assignment with its origin, before interpretation.
struct RawEntry {
    std::string key;
    std::vector<std::string> values;  // list items; scalars have exactly one
    int line{0};                      // 0 when the source has no line numbers
};

struct RawConfig {
    std::vector<RawEntry> shared;
    std::map<std::string, std::vector<RawEntry>> sections;  // experiment name -> entries
};

inline std::string where(const std::string& source, int line) {
    return line > 0 ? source + ":" + std::to_string(line) : source;
}

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(v);
    while (std::getline(in, item, ',')) out.push_back(trim(item));
    return out;
}

inline RawConfig parse_key_value(std::istream& in, const std::string& source) {
    RawConfig raw;
    std::vector<RawEntry>* target = &raw.shared;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto hash = line.find('#');
        const std::string body = trim(hash == std::string::npos ? line : line.substr(0, hash));
        if (body.empty()) continue;
        if (body.front() == '[') {
            if (body.back() != ']') throw ConfigError(where(source, number) + ": malformed section header '" + body + "'");
            const std::string name = trim(std::string_view(body).substr(1, body.size() - 2));
            if (!parse_experiment(name)) throw ConfigError(where(source, number) + ": unknown section '" + name + "'");
            if (raw.sections.count(name)) throw ConfigError(where(source, number) + ": duplicate section '" + name + "'");
            target = &raw.sections[name];
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string::npos) throw ConfigError(where(source, number) + ": expected 'key = value', got '" + body + "'");
        RawEntry e{trim(std::string_view(body).substr(0, eq)), split_list(trim(std::string_view(body).substr(eq + 1))), number};
        if (e.key.empty()) throw ConfigError(where(source, number) + ": missing key");
        target->push_back(std::move(e));
    }
    return raw;
}

inline std::string json_scalar(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number()) return format_shortest(v.get<double>());
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    throw ConfigError("unsupported JSON value " + v.dump());
}

inline RawEntry json_entry(const std::string& key, const nlohmann::json& v) {
    RawEntry e{key, {}, 0};
    if (v.is_array()) {
        for (const auto& item : v) {
            // limit points may be given as [kappa_over_beta, delta_over_beta]
            if (item.is_array() && item.size() == 2) {
                e.values.push_back(json_scalar(item[0]) + ":" + json_scalar(item[1]));
            } else {
                e.values.push_back(json_scalar(item));
            }
        }
    } else {
        e.values.push_back(json_scalar(v));
    }
    return e;
}

inline RawConfig parse_json(std::istream& in, const std::string& source) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& err) {
        throw ConfigError(source + ": " + err.what());
    }
    if (!doc.is_object()) throw ConfigError(source + ": top level must be an object");
    RawConfig raw;
    for (const auto& [key, value] : doc.items()) {
        if (value.is_object()) {
            if (!parse_experiment(key)) throw ConfigError(source + ": unknown section '" + key + "'");
            auto& section = raw.sections[key];
            for (const auto& [k, v] : value.items()) section.push_back(json_entry(k, v));
        } else {
            raw.shared.push_back(json_entry(key, value));
        }
    }
    return raw;
}

// ----------------------------- interpretation --------------------------------

class Applier {
public:
    Applier(ExperimentConfig& cfg, std::string source) : cfg_(cfg), source_(std::move(source)) {}

    void apply(const RawEntry& e) {
        entry_ = &e;
        const std::string& k = e.key;
        if (k == "experiment") {
            const auto x = parse_experiment(scalar());
            if (!x) fail("unknown experiment '" + scalar() + "'");
            cfg_.experiment = *x;
        } else if (k == "system") {
            const auto s = scalar();
            if (s == "jch") cfg_.system = System::jch;
            else if (s == "spin") cfg_.system = System::spin;
            else fail("expected jch or spin");
        } else if (k == "n_cavities" || k == "n") {
            cfg_.n_cavities = integer();
        } else if (k == "beta") {
            cfg_.beta = real();
        } else if (k == "kappa_over_beta") {
            exclusive("kappa", "kappa_over_beta");
            cfg_.kappa_over_beta = real();
        } else if (k == "kappa") {
            exclusive("kappa_over_beta", "kappa");
            kappa_abs_ = real();
        } else if (k == "delta_over_beta") {
            exclusive("delta", "delta_over_beta");
            cfg_.delta_over_beta = real();
        } else if (k == "delta") {
            exclusive("delta_over_beta", "delta");
            delta_abs_ = real();
        } else if (k == "profile") {
            const auto s = scalar();
            if (s == "uniform") cfg_.profile = Uniform{};
            else if (s == "parabolic") cfg_.profile = Parabolic{};
            else if (s == "custom") {
                if (!is_custom(cfg_.profile)) cfg_.profile = Custom{};
            } else fail("expected uniform, parabolic or custom");
        } else if (k == "weights") {
            cfg_.profile = Custom{reals()};
        } else if (k == "j_coupling" || k == "J") {
            cfg_.j_coupling = real();
        } else if (k == "initial") {
            const auto s = scalar();
            if (s == "localized") cfg_.initial.kind = InitialKind::localized;
            else if (s == "dressed") cfg_.initial.kind = InitialKind::dressed;
            else if (s == "gaussian") cfg_.initial.kind = InitialKind::gaussian;
            else fail("expected localized, dressed or gaussian");
        } else if (k == "q0") {
            cfg_.initial.q0 = integer();
        } else if (k == "branch") {
            const auto s = scalar();
            if (s == "plus") cfg_.initial.branch = Branch::plus;
            else if (s == "minus") cfg_.initial.branch = Branch::minus;
            else fail("expected plus or minus");
        } else if (k == "qc") {
            cfg_.initial.center = real();
        } else if (k == "width") {
            cfg_.initial.width = real();
        } else if (k == "wavenumber") {
            cfg_.initial.wavenumber = real();
        } else if (k == "t_max") {
            cfg_.t_max = real();
        } else if (k == "n_samples") {
            cfg_.n_samples = integer();
        } else if (k == "envelope") {
            const auto s = scalar();
            bool found = false;
            for (EnvelopeKind kind : {EnvelopeKind::automatic, EnvelopeKind::none, EnvelopeKind::triangle,
                                      EnvelopeKind::triangle_centered, EnvelopeKind::parabolic}) {
                if (s == to_string(kind)) {
                    cfg_.envelope = kind;
                    found = true;
                }
            }
            if (!found) fail("expected auto, none, triangle, triangle_centered or parabolic");
        } else if (k == "sweep_min") {
            cfg_.sweep_min = real();
        } else if (k == "sweep_max") {
            cfg_.sweep_max = real();
        } else if (k == "sweep_points") {
            cfg_.sweep_points = integer();
        } else if (k == "sample_time") {
            cfg_.sample_time = real();
        } else if (k == "snapshot_times") {
            cfg_.snapshot_times = reals();
        } else if (k == "limit_points") {
            cfg_.limit_points.clear();
            for (const auto& item : e.values) {
                const auto colon = item.find(':');
                if (colon == std::string::npos) fail("limit point '" + item + "' is not kappa_over_beta:delta_over_beta");
                cfg_.limit_points.push_back({to_real(item.substr(0, colon)), to_real(item.substr(colon + 1))});
            }
        } else {
            fail("unknown key");
        }
        seen_.push_back(k);
    }

    /// Absolute kappa/delta are stored relative to the final beta.
    void finish() {
        if (kappa_abs_) cfg_.kappa_over_beta = *kappa_abs_ / cfg_.beta;
        if (delta_abs_) cfg_.delta_over_beta = *delta_abs_ / cfg_.beta;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ConfigError(where(source_, entry_->line) + ": key '" + entry_->key + "': " + what);
    }

    void exclusive(const char* other, const char* self) {
        if (std::find(seen_.begin(), seen_.end(), other) != seen_.end()) {
            fail(std::string("cannot combine '") + other + "' with '" + self + "'");
        }
        // a later absolute/relative form replaces the earlier one of the other kind
        if (std::string_view(self) == "kappa_over_beta") kappa_abs_.reset();
        if (std::string_view(self) == "delta_over_beta") delta_abs_.reset();
    }

    const std::string& scalar() const {
        if (entry_->values.size() != 1) fail("expected a single value");
        return entry_->values.front();
    }

    double to_real(const std::string& s) const {
        double v = 0.0;
        const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
        if (r.ec != std::errc{} || r.ptr != s.data() + s.size() || !std::isfinite(v)) fail("'" + s + "' is not a number");
        return v;
    }

    double real() const { return to_real(scalar()); }

    int integer() const {
        const auto& s = scalar();
        int v = 0;
        const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
        if (r.ec != std::errc{} || r.ptr != s.data() + s.size()) fail("'" + s + "' is not an integer");
        return v;
    }

    std::vector<double> reals() const {
        std::vector<double> out;
        for (const auto& s : entry_->values) out.push_back(to_real(s));
        return out;
    }

    ExperimentConfig& cfg_;
    std::string source_;
    const RawEntry* entry_{nullptr};
    std::vector<std::string> seen_;
    std::optional<double> kappa_abs_, delta_abs_;
};

inline bool looks_like_json(const std::string& text) {
    const auto p = text.find_first_not_of(" \t\r\n");
    return p != std::string::npos && text[p] == '{';
}

}  // namespace detail

/// Checks the experiment-independent and experiment-specific invariants.
inline void validate_config(const ExperimentConfig& c) {
    auto bad = [](const std::string& m) { throw ConfigError("invalid config: " + m); };
    if (c.system == System::jch) {
        const auto report = validate(c.chain());
        if (!report.ok()) bad(report.summary());
        if (!(c.kappa() > 0.0) && !c.t_max) bad("t_max must be given when kappa = 0");
    } else {
        const auto report = validate(c.spin());
        if (!report.ok()) bad(report.summary());
    }
    if (c.n_samples < 1) bad("n_samples >= 1 required");
    if (!(c.resolved_t_max() >= 0.0)) bad("t_max must be >= 0");
    if (c.n_samples > 1 && !(c.resolved_t_max() > 0.0)) bad("t_max must be > 0 with more than one sample");
    if (c.initial.q0 < 1 || c.initial.q0 > c.n_cavities) bad("q0 must lie in 1..n_cavities");
    if (c.initial.kind == InitialKind::gaussian && !(c.gaussian_width() > 0.0)) bad("width must be > 0");
    if (c.initial.kind == InitialKind::dressed && c.system == System::spin) bad("dressed start needs the jch system");
    if (c.experiment == Experiment::dispersion_sweep) {
        if (c.system != System::jch) bad("dispersion-sweep runs on the jch system");
        if (!(c.sweep_min > 0.0 && c.sweep_max > 0.0)) bad("sweep bounds must be positive");
        if (c.sweep_min > c.sweep_max) bad("sweep_min must not exceed sweep_max");
        if (c.sweep_points < 1) bad("sweep_points >= 1 required");
        if (!(c.sample_time > 0.0)) bad("sample_time must be > 0");
        if (is_custom(c.profile)) bad("dispersion-sweep supports uniform and parabolic profiles");
    }
    if (c.experiment == Experiment::limits_report) {
        if (c.system != System::jch) bad("limits-report runs on the jch system");
        if (c.limit_points.empty()) bad("limit_points must not be empty");
        for (const auto& p : c.limit_points) {
            if (!(p.kappa_over_beta > 0.0)) bad("limit point kappa_over_beta must be > 0");
        }
    }
    if (c.experiment == Experiment::spin_chain && c.system != System::spin) bad("spin-chain needs system = spin");
    for (double t : c.snapshot_times) {
        if (!(t >= 0.0)) bad("snapshot_times must be >= 0");
    }
}

/// Parses `text` (key-value or JSON) on top of `base`. `source` labels
/// diagnostics. When `want` is given, that experiment's section is applied
/// after the shared keys; otherwise the experiment comes from the `experiment`
/// key or from the file's only section.
inline ExperimentConfig parse_config(const std::string& text, const std::string& source,
                                     std::optional<Experiment> want = std::nullopt,
                                     ExperimentConfig base = {}) {
    std::istringstream in(text);
    const detail::RawConfig raw = detail::looks_like_json(text) ? detail::parse_json(in, source)
                                                                : detail::parse_key_value(in, source);
    ExperimentConfig cfg = std::move(base);
    detail::Applier apply(cfg, source);
    bool experiment_given = false;
    for (const auto& e : raw.shared) {
        apply.apply(e);
        experiment_given |= e.key == "experiment";
    }
    if (want) {
        if (experiment_given && cfg.experiment != *want) {
            throw ConfigError(source + ": config is for '" + to_string(cfg.experiment) + "', not '" + to_string(*want) + "'");
        }
        cfg.experiment = *want;
    } else if (!experiment_given && raw.sections.size() == 1) {
        cfg.experiment = *parse_experiment(raw.sections.begin()->first);
    }
    const auto it = raw.sections.find(to_string(cfg.experiment));
    if (it != raw.sections.end()) {
        for (const auto& e : it->second) {
            if (e.key == "experiment") throw ConfigError(detail::where(source, e.line) + ": key 'experiment' not allowed inside a section");
            apply.apply(e);
        }
    }
    apply.finish();
    if (cfg.experiment == Experiment::spin_chain) cfg.system = System::spin;
    validate_config(cfg);
    return cfg;
}

inline ExperimentConfig load_config(const std::string& path, std::optional<Experiment> want = std::nullopt,
                                    ExperimentConfig base = {}) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path + ": cannot open config file");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), path, want, std::move(base));
}

}  // namespace jch
