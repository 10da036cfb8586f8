// model.hpp: chain parameters, coupling profiles, the interleaved one-excitation
// basis and the state vector types shared by every other header.
//
// Basis convention: amplitude index 2(Q-1) is |Q>⊗|g,1> (photon in cavity Q),
// index 2(Q-1)+1 is |Q>⊗|e,0> (atom excited in cavity Q), Q = 1..N.
//
// Only the detuning Δ = ω - ε enters the one-excitation Hamiltonian; the mean
// energy (ω + ε)/2 is a multiple of the identity there and is not stored.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

namespace jch {

using cplx = std::complex<double>;

enum class Mode { photonic, atomic };

inline const char* to_string(Mode m) noexcept {
    return m == Mode::photonic ? "photonic" : "atomic";
}

// ------------------------------ coupling profiles ----------------------------

/// Nearest-neighbour weights A_{i,i+1} = 1.
struct Uniform {};
/// A_{i,i+1} = sqrt(i (N - i)), i = 1..N-1.
struct Parabolic {};
/// Arbitrary positive weights, weights[i-1] = A_{i,i+1}.
struct Custom {
    std::vector<double> weights;
};

using CouplingProfile = std::variant<Uniform, Parabolic, Custom>;

inline bool is_uniform(const CouplingProfile& p) noexcept { return std::holds_alternative<Uniform>(p); }
inline bool is_parabolic(const CouplingProfile& p) noexcept { return std::holds_alternative<Parabolic>(p); }
inline bool is_custom(const CouplingProfile& p) noexcept { return std::holds_alternative<Custom>(p); }

inline std::string profile_name(const CouplingProfile& p) {
    if (is_uniform(p)) return "uniform";
    if (is_parabolic(p)) return "parabolic";
    return "custom";
}

/// Hopping weights A_{i,i+1}, length N-1.
inline std::vector<double> hopping_weights(const CouplingProfile& profile, int n) {
    if (n < 2) throw std::invalid_argument("hopping_weights: n_cavities >= 2 required");
    std::vector<double> w(static_cast<std::size_t>(n - 1));
    if (is_uniform(profile)) {
        std::fill(w.begin(), w.end(), 1.0);
    } else if (is_parabolic(profile)) {
        for (int i = 1; i < n; ++i) w[static_cast<std::size_t>(i - 1)] = std::sqrt(double(i) * double(n - i));
    } else {
        const auto& c = std::get<Custom>(profile);
        if (c.weights.size() != w.size()) {
            throw std::invalid_argument("hopping_weights: custom profile needs n_cavities - 1 weights");
        }
        w = c.weights;
    }
    return w;
}

/// Dense N×N adjacency matrix of the path graph with the profile's weights.
inline Eigen::MatrixXd adjacency_matrix(const CouplingProfile& profile, int n) {
    const auto w = hopping_weights(profile, n);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i) {
        a(i, i + 1) = w[static_cast<std::size_t>(i)];
        a(i + 1, i) = w[static_cast<std::size_t>(i)];
    }
    return a;
}

// ------------------------------- parameters ----------------------------------

struct ChainParams {
    int n_cavities{2};
    double beta{1.0};   // atom-photon coupling
    double kappa{0.0};  // inter-cavity hopping
    double delta{0.0};  // detuning ω - ε
    CouplingProfile profile{Uniform{}};
};

struct SpinChainParams {
    int n_sites{2};
    double j_coupling{1.0};
    CouplingProfile profile{Uniform{}};
};

struct ValidationIssue {
    std::string field;
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> errors;
    std::vector<ValidationIssue> warnings;

    bool ok() const noexcept { return errors.empty(); }

    std::string summary() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < errors.size(); ++i) {
            if (i) os << "; ";
            os << errors[i].field << ": " << errors[i].message;
        }
        return os.str();
    }
};

namespace detail {

inline void check_profile(const CouplingProfile& profile, int n, ValidationReport& r) {
    if (const auto* c = std::get_if<Custom>(&profile)) {
        if (n >= 2 && c->weights.size() != static_cast<std::size_t>(n - 1)) {
            r.errors.push_back({"profile", "custom profile needs n_cavities - 1 weights"});
        }
        for (double w : c->weights) {
            if (!(w > 0.0) || !std::isfinite(w)) {
                r.errors.push_back({"profile", "weights must be positive"});
                break;
            }
        }
    }
}

}  // namespace detail

inline ValidationReport validate(const ChainParams& p) {
    ValidationReport r;
    if (p.n_cavities < 2) r.errors.push_back({"n_cavities", "n_cavities >= 2 required"});
    if (!(p.beta >= 0.0) || !std::isfinite(p.beta)) r.errors.push_back({"beta", "beta must be finite and >= 0"});
    if (!(p.kappa >= 0.0) || !std::isfinite(p.kappa)) r.errors.push_back({"kappa", "kappa must be finite and >= 0"});
    if (!std::isfinite(p.delta)) r.errors.push_back({"delta", "delta must be finite"});
    detail::check_profile(p.profile, p.n_cavities, r);
    if (p.beta == 0.0 && p.kappa == 0.0) {
        r.warnings.push_back({"beta,kappa", "beta = kappa = 0: excitation does not move"});
    }
    return r;
}

inline ValidationReport validate(const SpinChainParams& p) {
    ValidationReport r;
    if (p.n_sites < 2) r.errors.push_back({"n_sites", "n_sites >= 2 required"});
    if (!(p.j_coupling > 0.0) || !std::isfinite(p.j_coupling)) r.errors.push_back({"j_coupling", "J must be > 0"});
    detail::check_profile(p.profile, p.n_sites, r);
    return r;
}

template <class Params>
void require_valid(const Params& p) {
    const auto r = validate(p);
    if (!r.ok()) throw std::invalid_argument("invalid parameters: " + r.summary());
}

// --------------------------------- basis -------------------------------------

inline std::size_t basis_index(int q, Mode mode, int n_cavities) {
    if (q < 1 || q > n_cavities) throw std::out_of_range("basis_index: cavity number out of range");
    return 2 * static_cast<std::size_t>(q - 1) + (mode == Mode::atomic ? 1 : 0);
}

inline std::pair<int, Mode> decode_index(std::size_t index, int n_cavities) {
    if (index >= 2 * static_cast<std::size_t>(n_cavities)) throw std::out_of_range("decode_index: index out of range");
    return {static_cast<int>(index / 2) + 1, (index % 2) ? Mode::atomic : Mode::photonic};
}

// --------------------------------- states ------------------------------------

/// Complex amplitudes over the 2N-dimensional interleaved one-excitation basis.
class SingleExcitationState {
public:
    explicit SingleExcitationState(Eigen::VectorXcd amplitudes) : amps_(std::move(amplitudes)) {
        if (amps_.size() < 4 || amps_.size() % 2 != 0) {
            throw std::invalid_argument("SingleExcitationState: length must be 2N with N >= 2");
        }
    }

    static SingleExcitationState normalized(Eigen::VectorXcd amplitudes) {
        const double n = amplitudes.norm();
        if (!(n > 0.0)) throw std::invalid_argument("SingleExcitationState: zero vector");
        return SingleExcitationState(amplitudes / n);
    }

    int n_cavities() const noexcept { return static_cast<int>(amps_.size() / 2); }
    const Eigen::VectorXcd& amplitudes() const noexcept { return amps_; }
    cplx amplitude(int q, Mode m) const { return amps_(static_cast<Eigen::Index>(basis_index(q, m, n_cavities()))); }

    /// Spatially reflected state Q -> N+1-Q.
    SingleExcitationState mirrored() const {
        const Eigen::Index n = n_cavities();
        Eigen::VectorXcd out(amps_.size());
        for (Eigen::Index q = 0; q < n; ++q) {
            out(2 * q) = amps_(2 * (n - 1 - q));
            out(2 * q + 1) = amps_(2 * (n - 1 - q) + 1);
        }
        return SingleExcitationState(std::move(out));
    }

private:
    Eigen::VectorXcd amps_;
};

/// Single up-spin amplitudes over |1>..|N>.
class SpinChainState {
public:
    explicit SpinChainState(Eigen::VectorXcd amplitudes) : amps_(std::move(amplitudes)) {
        if (amps_.size() < 2) throw std::invalid_argument("SpinChainState: n_sites >= 2 required");
    }

    static SpinChainState normalized(Eigen::VectorXcd amplitudes) {
        const double n = amplitudes.norm();
        if (!(n > 0.0)) throw std::invalid_argument("SpinChainState: zero vector");
        return SpinChainState(amplitudes / n);
    }

    int n_sites() const noexcept { return static_cast<int>(amps_.size()); }
    const Eigen::VectorXcd& amplitudes() const noexcept { return amps_; }
    cplx amplitude(int q) const {
        if (q < 1 || q > n_sites()) throw std::out_of_range("SpinChainState: site out of range");
        return amps_(q - 1);
    }

    SpinChainState mirrored() const { return SpinChainState(amps_.reverse()); }

private:
    Eigen::VectorXcd amps_;
};

template <class S>
concept StateVector = requires(const S& s) {
    { s.amplitudes() } -> std::convertible_to<const Eigen::VectorXcd&>;
};

template <StateVector S>
cplx inner_product(const S& a, const S& b) {
    if (a.amplitudes().size() != b.amplitudes().size()) {
        throw std::invalid_argument("inner_product: length mismatch");
    }
    return a.amplitudes().dot(b.amplitudes());  // conjugates the first argument
}

template <StateVector S>
double norm(const S& s) {
    return std::sqrt(inner_product(s, s).real());
}

}  // namespace jch
