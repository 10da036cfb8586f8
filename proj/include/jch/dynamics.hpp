// dynamics.hpp: initial states and exact spectral time evolution.
//
// Evolution projects the initial state once onto the closed-form eigenbasis and
// then only rotates phases: ψ(t) = Σ_{k,±} exp(-i E±^k t) |±,k><±,k|ψ(0)>.
// No time stepping is involved, so any t (including negative) is exact up to
// roundoff.

#pragma once

#include "jch/model.hpp"
#include "jch/oracle.hpp"
#include "jch/spectral.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

namespace jch {

// ------------------------------ initial states -------------------------------

/// |1>⊗(|g,1> + |e,0>)/sqrt(2).
inline SingleExcitationState initial_localized_superposition(int n) {
    if (n < 2) throw std::invalid_argument("initial_localized_superposition: N >= 2 required");
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(2 * n);
    v(0) = v(1) = 1.0 / std::sqrt(2.0);
    return SingleExcitationState(std::move(v));
}

/// Single-cavity dressed state |±,1> placed in cavity q0.
inline SingleExcitationState initial_dressed(int n, int q0, Branch branch, const ChainParams& p) {
    if (n < 2) throw std::invalid_argument("initial_dressed: N >= 2 required");
    if (q0 < 1 || q0 > n) throw std::out_of_range("initial_dressed: cavity out of range");
    const auto pair = dressed_state(1, p.delta, p.beta);
    const auto& c = branch == Branch::plus ? pair.plus : pair.minus;
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(2 * n);
    v(static_cast<Eigen::Index>(basis_index(q0, Mode::photonic, n))) = c.c_ground_photon;
    v(static_cast<Eigen::Index>(basis_index(q0, Mode::atomic, n))) = c.c_excited_atom;
    return SingleExcitationState(std::move(v));
}

namespace detail {

/// exp(-(Q-Qc)²/(2s²)) exp(-ikQ), Q = 1..N, normalized on the finite chain.
inline Eigen::VectorXcd gaussian_envelope(int n, double center, double width, double wavenumber) {
    if (n < 2) throw std::invalid_argument("gaussian envelope: N >= 2 required");
    if (!(width > 0.0)) throw std::invalid_argument("gaussian envelope: width must be > 0");
    Eigen::VectorXcd g(n);
    for (int q = 1; q <= n; ++q) {
        const double x = q - center;
        g(q - 1) = std::exp(-x * x / (2.0 * width * width)) * std::polar(1.0, -wavenumber * q);
    }
    const double norm = g.norm();
    if (!(norm > 0.0)) throw std::invalid_argument("gaussian envelope: underflows on the chain");
    return g / norm;
}

}  // namespace detail

inline SingleExcitationState initial_gaussian_jch(int n, double center, double width, double wavenumber) {
    const Eigen::VectorXcd g = detail::gaussian_envelope(n, center, width, wavenumber);
    Eigen::VectorXcd v(2 * n);
    const double r = 1.0 / std::sqrt(2.0);
    for (int q = 0; q < n; ++q) v(2 * q) = v(2 * q + 1) = r * g(q);
    return SingleExcitationState(std::move(v));
}

struct LocalizedStart {
    int site{1};
};
struct GaussianStart {
    double center{0.0};
    double width{1.0};
    double wavenumber{std::numbers::pi / 2};
};
using SpinInitial = std::variant<LocalizedStart, GaussianStart>;

/// Pulse centered at N/2 with width N/10 and k = π/2.
inline GaussianStart default_gaussian(int n) { return {n / 2.0, n / 10.0, std::numbers::pi / 2}; }

inline SpinChainState initial_spin(int n, const SpinInitial& kind) {
    if (n < 2) throw std::invalid_argument("initial_spin: N >= 2 required");
    if (const auto* loc = std::get_if<LocalizedStart>(&kind)) {
        if (loc->site < 1 || loc->site > n) throw std::out_of_range("initial_spin: site out of range");
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
        v(loc->site - 1) = 1.0;
        return SpinChainState(std::move(v));
    }
    const auto& g = std::get<GaussianStart>(kind);
    return SpinChainState(detail::gaussian_envelope(n, g.center, g.width, g.wavenumber));
}

// -------------------------------- trajectories -------------------------------

template <class State, class Params>
struct Trajectory {
    std::vector<double> times;
    std::vector<State> states;
    Params params;

    std::size_t size() const noexcept { return times.size(); }
};

using JchTrajectory = Trajectory<SingleExcitationState, ChainParams>;
using SpinTrajectory = Trajectory<SpinChainState, SpinChainParams>;

inline std::vector<double> linspace(double t0, double t1, int n) {
    if (n < 1) throw std::invalid_argument("linspace: n >= 1 required");
    if (n == 1) return {t0};
    std::vector<double> t(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) t[static_cast<std::size_t>(i)] = t0 + (t1 - t0) * i / (n - 1);
    return t;
}

namespace detail {

inline void require_increasing(std::span<const double> times) {
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (!(times[i] > times[i - 1])) throw std::invalid_argument("time grid must be strictly increasing");
    }
}

}  // namespace detail

// ------------------------------ JCH propagation ------------------------------

/// Holds <±,k|ψ(0)> so that each sample costs two N×N products.
class SpectralPropagator {
public:
    SpectralPropagator(const SingleExcitationState& psi0, BlockSpectrum spectrum) : spec_(std::move(spectrum)) {
        const int n = spec_.n_cavities();
        if (psi0.n_cavities() != n) throw std::invalid_argument("evolve: state and spectrum sizes differ");
        Eigen::VectorXcd ph(n), at(n);
        for (int q = 0; q < n; ++q) {
            ph(q) = psi0.amplitudes()(2 * q);
            at(q) = psi0.amplitudes()(2 * q + 1);
        }
        const Eigen::MatrixXd& v = spec_.spatial->vectors;
        const Eigen::VectorXcd ph_k = v.transpose().cast<cplx>() * ph;
        const Eigen::VectorXcd at_k = v.transpose().cast<cplx>() * at;
        plus_.resize(n);
        minus_.resize(n);
        for (int k = 0; k < n; ++k) {
            const auto& mp = spec_.mix(k, Branch::plus);
            const auto& mm = spec_.mix(k, Branch::minus);
            plus_(k) = mp.c_ground_photon * ph_k(k) + mp.c_excited_atom * at_k(k);
            minus_(k) = mm.c_ground_photon * ph_k(k) + mm.c_excited_atom * at_k(k);
        }
    }

    SingleExcitationState at(double t) const {
        const int n = spec_.n_cavities();
        Eigen::VectorXcd ph_k(n), at_k(n);
        for (int k = 0; k < n; ++k) {
            const cplx cp = plus_(k) * std::polar(1.0, -spec_.energy(k, Branch::plus) * t);
            const cplx cm = minus_(k) * std::polar(1.0, -spec_.energy(k, Branch::minus) * t);
            const auto& mp = spec_.mix(k, Branch::plus);
            const auto& mm = spec_.mix(k, Branch::minus);
            ph_k(k) = mp.c_ground_photon * cp + mm.c_ground_photon * cm;
            at_k(k) = mp.c_excited_atom * cp + mm.c_excited_atom * cm;
        }
        const Eigen::MatrixXd& v = spec_.spatial->vectors;
        const Eigen::VectorXcd ph = v.cast<cplx>() * ph_k;
        const Eigen::VectorXcd at = v.cast<cplx>() * at_k;
        Eigen::VectorXcd out(2 * n);
        for (int q = 0; q < n; ++q) {
            out(2 * q) = ph(q);
            out(2 * q + 1) = at(q);
        }
        return SingleExcitationState(std::move(out));
    }

    const BlockSpectrum& spectrum() const noexcept { return spec_; }

private:
    BlockSpectrum spec_;
    Eigen::VectorXcd plus_;
    Eigen::VectorXcd minus_;
};

inline SingleExcitationState evolve(const SingleExcitationState& psi0, const BlockSpectrum& spectrum, double t) {
    return SpectralPropagator(psi0, spectrum).at(t);
}

inline JchTrajectory evolve_series(const SingleExcitationState& psi0, const BlockSpectrum& spectrum,
                                   std::span<const double> times) {
    detail::require_increasing(times);
    const SpectralPropagator prop(psi0, spectrum);
    JchTrajectory out{{times.begin(), times.end()}, {}, spectrum.params};
    out.states.reserve(times.size());
    for (double t : times) out.states.push_back(prop.at(t));
    return out;
}

/// Dense-eigenbasis route, for custom profiles that have no closed form.
inline JchTrajectory evolve_series(const SingleExcitationState& psi0, const DenseHamiltonian& h,
                                   std::span<const double> times) {
    detail::require_increasing(times);
    if (psi0.amplitudes().size() != h.matrix.rows()) throw std::invalid_argument("evolve_series: dimension mismatch");
    const auto es = dense_eigensystem(h);
    const Eigen::VectorXcd c0 = es.vectors.transpose().cast<cplx>() * psi0.amplitudes();
    JchTrajectory out{{times.begin(), times.end()}, {}, h.params};
    out.states.reserve(times.size());
    for (double t : times) {
        Eigen::VectorXcd c = c0;
        for (Eigen::Index i = 0; i < c.size(); ++i) c(i) *= std::polar(1.0, -es.eigenvalues(i) * t);
        out.states.emplace_back(es.vectors.cast<cplx>() * c);
    }
    return out;
}

// --------------------------- spin chain propagation --------------------------

/// Single magnon under -(J/2) A, using the same closed-form spatial modes.
class SpinPropagator {
public:
    SpinPropagator(const SpinChainState& psi0, const SpinChainParams& p) : params_(p) {
        require_valid(p);
        if (is_custom(p.profile)) {
            throw std::invalid_argument("spin_evolve: custom profile has no closed form; use the dense oracle");
        }
        if (psi0.n_sites() != p.n_sites) throw std::invalid_argument("spin_evolve: state and chain sizes differ");
        modes_ = adjacency_eigs(p.profile, p.n_sites);
        coeff_ = modes_.vectors.transpose().cast<cplx>() * psi0.amplitudes();
    }

    SpinChainState at(double t) const {
        Eigen::VectorXcd c = coeff_;
        for (Eigen::Index k = 0; k < c.size(); ++k) {
            c(k) *= std::polar(1.0, 0.5 * params_.j_coupling * modes_.eigenvalues(k) * t);
        }
        return SpinChainState(modes_.vectors.cast<cplx>() * c);
    }

private:
    SpinChainParams params_;
    AdjacencyEigs modes_;
    Eigen::VectorXcd coeff_;
};

inline SpinChainState spin_evolve(const SpinChainState& psi0, const SpinChainParams& p, double t) {
    return SpinPropagator(psi0, p).at(t);
}

inline SpinTrajectory spin_evolve_series(const SpinChainState& psi0, const SpinChainParams& p,
                                         std::span<const double> times) {
    detail::require_increasing(times);
    const SpinPropagator prop(psi0, p);
    SpinTrajectory out{{times.begin(), times.end()}, {}, p};
    out.states.reserve(times.size());
    for (double t : times) out.states.push_back(prop.at(t));
    return out;
}

}  // namespace jch
