// observables.hpp: occupations, conditional position and dispersion, analytic
// position envelopes and empirical speed extraction.

#pragma once

#include "jch/dynamics.hpp"
#include "jch/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace jch {

struct OccupationProfile {
    std::vector<double> photonic;  // <a†_Q a_Q>
    std::vector<double> atomic;    // <σ+_Q σ-_Q>

    double total() const {
        double s = 0.0;
        for (double x : photonic) s += x;
        for (double x : atomic) s += x;
        return s;
    }
};

inline OccupationProfile occupations(const SingleExcitationState& s) {
    const int n = s.n_cavities();
    OccupationProfile out;
    out.photonic.resize(static_cast<std::size_t>(n));
    out.atomic.resize(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q) {
        out.photonic[static_cast<std::size_t>(q)] = std::norm(s.amplitudes()(2 * q));
        out.atomic[static_cast<std::size_t>(q)] = std::norm(s.amplitudes()(2 * q + 1));
    }
    return out;
}

inline std::vector<double> occupations(const SpinChainState& s) {
    std::vector<double> out(static_cast<std::size_t>(s.n_sites()));
    for (int q = 0; q < s.n_sites(); ++q) out[static_cast<std::size_t>(q)] = std::norm(s.amplitudes()(q));
    return out;
}

enum class Channel { photonic, atomic, spin };

inline const char* to_string(Channel c) noexcept {
    switch (c) {
        case Channel::photonic: return "photonic";
        case Channel::atomic: return "atomic";
        default: return "spin";
    }
}

inline Channel channel_of(Mode m) noexcept { return m == Mode::photonic ? Channel::photonic : Channel::atomic; }

inline std::vector<double> channel_profile(const SingleExcitationState& s, Channel c) {
    if (c == Channel::spin) throw std::invalid_argument("channel_profile: JCH state has no spin channel");
    auto occ = occupations(s);
    return c == Channel::photonic ? std::move(occ.photonic) : std::move(occ.atomic);
}

inline std::vector<double> channel_profile(const SpinChainState& s, Channel c) {
    if (c != Channel::spin) throw std::invalid_argument("channel_profile: spin state only has the spin channel");
    return occupations(s);
}

struct DispersionSample {
    Channel channel{Channel::spin};
    double q_mean{0.0};
    double q_std{0.0};
    double mode_weight{0.0};
};

/// Below this probability a mode counts as unoccupied and has no position.
inline constexpr double kUnoccupiedWeight = 1e-12;

/// Mean and standard deviation of the cavity index Q = 1..N under the
/// (unnormalized) weights p_Q, after renormalizing p to unit mass.
inline DispersionSample position_moments(std::span<const double> p, Channel c) {
    double mass = 0.0;
    double first = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        mass += p[i];
        first += double(i + 1) * p[i];
    }
    if (!(mass > kUnoccupiedWeight)) throw std::domain_error(std::string("mode unoccupied: ") + to_string(c));
    const double mean = first / mass;
    double var = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double d = double(i + 1) - mean;
        var += d * d * p[i];
    }
    return {c, mean, std::sqrt(var / mass), mass};
}

inline DispersionSample conditional_position(const SingleExcitationState& s, Mode m) {
    const auto p = channel_profile(s, channel_of(m));
    return position_moments(p, channel_of(m));
}

inline DispersionSample conditional_position(const SingleExcitationState& s, Channel c) {
    const auto p = channel_profile(s, c);
    return position_moments(p, c);
}

inline DispersionSample position(const SpinChainState& s) {
    const auto p = occupations(s);
    return position_moments(p, Channel::spin);
}

inline DispersionSample conditional_position(const SpinChainState& s, Channel c) {
    const auto p = channel_profile(s, c);
    return position_moments(p, c);
}

// ---------------------------- analytic envelopes -----------------------------

/// Wavefront of |1> bouncing between the walls:
///   (N-1)/π · asin(sin(π(Jt/N - 1/2))) + (N+1)/2.
/// Its slope is ±J(N-1)/N, which tends to J for long chains.
inline double triangle_wave(int n, double j, double t) {
    if (!(j > 0.0)) throw std::invalid_argument("triangle_wave: J > 0 required");
    const double pi = std::numbers::pi;
    return (n - 1) / pi * std::asin(std::sin(pi * (j * t / n - 0.5))) + 0.5 * (n + 1);
}

/// Same wave shifted to start mid-chain: (N-1)/π · asin(sin(Jπt/N)) + (N+1)/2.
inline double triangle_wave_centered(int n, double j, double t) {
    if (!(j > 0.0)) throw std::invalid_argument("triangle_wave_centered: J > 0 required");
    const double pi = std::numbers::pi;
    return (n - 1) / pi * std::asin(std::sin(j * pi * t / n)) + 0.5 * (n + 1);
}

/// <Q(t)> of |1> on the parabolic chain: [N + 1 - (N-1) cos(Jt)] / 2.
inline double parabolic_position(int n, double j, double t) {
    if (!(j > 0.0)) throw std::invalid_argument("parabolic_position: J > 0 required");
    return 0.5 * ((n + 1) - (n - 1) * std::cos(j * t));
}

enum class FrontFraction { quarter, half };

/// First time at which the triangle-wave front reaches Q = fraction·N. On the
/// rising segment the wave is 1 + (N-1)Jt/N.
inline double front_arrival_time(int n, double j, FrontFraction f) {
    if (n < 2 || !(j > 0.0)) throw std::invalid_argument("front_arrival_time: N >= 2 and J > 0 required");
    const double target = (f == FrontFraction::quarter ? 0.25 : 0.5) * n;
    return (target - 1.0) * n / ((n - 1) * j);
}

/// ΔQ of the uniform spin chain started in |1>, at the moment its front is a
/// quarter (or half) of the way along the chain.
inline double heisenberg_dispersion_reference(int n, double j, FrontFraction f) {
    const SpinChainParams sp{n, j, Uniform{}};
    const double t = front_arrival_time(n, j, f);
    return position(spin_evolve(initial_spin(n, LocalizedStart{1}), sp, t)).q_std;
}

// ------------------------------ speed extraction -----------------------------

enum class SpeedEstimator {
    front,     // location of the occupation maximum, interpolated between cavities
    centroid,  // conditional mean position
};

struct SpeedFit {
    double speed{0.0};     // least-squares slope of position vs time
    double residual{0.0};  // RMS deviation of the samples from the fitted line
    int samples{0};
};

/// Position of the largest occupation; interior maxima are refined with a
/// three-point parabola.
inline double peak_position(std::span<const double> p) {
    if (p.empty()) throw std::invalid_argument("peak_position: empty profile");
    const auto it = std::max_element(p.begin(), p.end());
    const std::size_t i = static_cast<std::size_t>(it - p.begin());
    double pos = double(i + 1);
    if (i > 0 && i + 1 < p.size()) {
        const double a = p[i - 1], b = p[i], c = p[i + 1];
        const double curv = a - 2.0 * b + c;
        if (curv < 0.0) pos += 0.5 * (a - c) / curv;
    }
    return pos;
}

inline SpeedFit fit_line_slope(std::span<const double> t, std::span<const double> x) {
    const std::size_t n = t.size();
    double tm = 0.0, xm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        tm += t[i];
        xm += x[i];
    }
    tm /= double(n);
    xm /= double(n);
    double stt = 0.0, stx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        stt += (t[i] - tm) * (t[i] - tm);
        stx += (t[i] - tm) * (x[i] - xm);
    }
    const double slope = stx / stt;
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = x[i] - (xm + slope * (t[i] - tm));
        rss += r * r;
    }
    return {slope, std::sqrt(rss / double(n)), static_cast<int>(n)};
}

/// Slope of the chosen position estimator over the whole trajectory. The
/// trajectory should cover only the free-flight window (before the mode first
/// touches the far wall).
template <class State, class Params>
SpeedFit measure_speed(const Trajectory<State, Params>& traj, Channel c,
                       SpeedEstimator estimator = SpeedEstimator::front) {
    if (traj.size() < 5) throw std::invalid_argument("measure_speed: fit window needs at least 5 samples");
    std::vector<double> pos;
    pos.reserve(traj.size());
    for (const auto& s : traj.states) {
        const auto p = channel_profile(s, c);
        const auto moments = position_moments(p, c);  // throws if the mode is unoccupied
        pos.push_back(estimator == SpeedEstimator::front ? peak_position(p) : moments.q_mean);
    }
    return fit_line_slope(traj.times, pos);
}

}  // namespace jch
