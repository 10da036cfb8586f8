// spectral.hpp: closed-form eigensystems of the one-excitation JCH chain.
//
// The spatial part is diagonalized first (sine modes for the uniform chain,
// Krawtchouk modes for the parabolic chain); in that basis the Hamiltonian
// falls apart into independent 2×2 atom/photon blocks
//
//     H(k) = [[Δ/2 - κ λ_k, β], [β, -Δ/2]]      (photonic first)
//
// with λ_k the k-th adjacency eigenvalue. Columns of AdjacencyEigs are stored
// in descending λ order; column index c maps to the conventional label
// k = c + 1 (uniform, k = 1..N) or k = c (parabolic, k = 0..N-1).
//
// Uniform modes: the normalization prefactor
//     sqrt(2) (-1)^k sin(Nkπ/(N+1)) / [sqrt(N+1) sin(kπ/(N+1))]
// reduces to ±sqrt(2/(N+1)) because sin(Nkπ/(N+1)) = (-1)^(k+1) sin(kπ/(N+1)).
// We use +sqrt(2/(N+1)) so the first entry of every mode is positive.
//
// Sign of the hopping term: H contains -κA, so blocks carry -κλ_k. Writing the
// uniform block with +2κcos(kπ/(N+1)) is the same set of blocks under k -> N+1-k.

#pragma once

#include "jch/model.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace jch {

struct AdjacencyEigs {
    Eigen::VectorXd eigenvalues;  // descending
    Eigen::MatrixXd vectors;      // column c is the unit-norm mode for eigenvalues(c)
    int label_offset{0};          // conventional k label of column 0

    int size() const noexcept { return static_cast<int>(eigenvalues.size()); }
};

inline AdjacencyEigs uniform_adjacency_eigs(int n) {
    if (n < 2) throw std::invalid_argument("uniform_adjacency_eigs: N >= 2 required");
    const double pi = std::numbers::pi;
    const double scale = std::sqrt(2.0 / (n + 1));
    AdjacencyEigs out;
    out.label_offset = 1;
    out.eigenvalues.resize(n);
    out.vectors.resize(n, n);
    for (int k = 1; k <= n; ++k) {
        const double arg = k * pi / (n + 1);
        out.eigenvalues(k - 1) = 2.0 * std::cos(arg);
        for (int q = 1; q <= n; ++q) out.vectors(q - 1, k - 1) = scale * std::sin(q * arg);
    }
    return out;
}

/// Krawtchouk polynomial K_k(l; p, N) = 2F1(-k, -l; -N; 1/p), evaluated with the
/// degree recurrence
///   p(N-n) K_{n+1} = [p(N-n) + n(1-p) - l] K_n - n(1-p) K_{n-1}.
inline double krawtchouk(int k, int l, double p, int n) {
    if (n < 0 || k < 0 || k > n || l < 0 || l > n) throw std::domain_error("krawtchouk: need 0 <= k, l <= N");
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("krawtchouk: p must lie in (0, 1)");
    // At p = 1/2 the reflections K_{N-k}(l) = (-1)^l K_k(l) and
    // K_k(N-l) = (-1)^k K_k(l) move (k, l) into the lower quadrant, where the
    // recurrence grows with the wanted solution. Self-duality K_k(l) = K_l(k)
    // then keeps it short; extended precision absorbs the remaining cancellation.
    double sign = 1.0;
    if (p == 0.5) {
        if (2 * k > n) {
            k = n - k;
            if (l % 2) sign = -sign;
        }
        if (2 * l > n) {
            l = n - l;
            if (k % 2) sign = -sign;
        }
    }
    if (l < k) std::swap(k, l);
    using real = long double;
    real prev = 1.0L;
    if (k == 0) return sign;
    const real pp = p, q = 1.0L - pp;
    real cur = 1.0L - real(l) / (pp * n);
    for (int m = 1; m < k; ++m) {
        const real next = ((pp * (n - m) + m * q - l) * cur - m * q * prev) / (pp * (n - m));
        prev = cur;
        cur = next;
    }
    return sign * static_cast<double>(cur);
}

/// Eigenbasis of the parabolic adjacency sqrt(i(N-i)): eigenvalues N-1-2k and
/// modes sqrt(C(M,k) C(M,x) / 2^M) K_k(x; 1/2, M), M = N-1, x = Q-1.
///
/// The modes are generated with the orthonormal form of the degree recurrence
///   sqrt((M-k)(k+1)) u_{k+1} = (M-2x) u_k - sqrt(k(M-k+1)) u_{k-1}
/// for k <= M/2 only, where it runs in its growing direction, and filled for
/// k > M/2 through u_{M-k}(x) = (-1)^x u_k(x). Each column is renormalized.
inline AdjacencyEigs parabolic_adjacency_eigs(int n) {
    if (n < 2) throw std::invalid_argument("parabolic_adjacency_eigs: N >= 2 required");
    const int m = n - 1;
    AdjacencyEigs out;
    out.label_offset = 0;
    out.eigenvalues.resize(n);
    out.vectors.resize(n, n);
    for (int k = 0; k < n; ++k) out.eigenvalues(k) = double(m - 2 * k);

    const int half = m / 2;
    const double log_norm = std::lgamma(m + 1.0) - m * std::numbers::ln2;
    for (int x = 0; x <= m; ++x) {
        double prev = std::exp(0.5 * (log_norm - std::lgamma(x + 1.0) - std::lgamma(m - x + 1.0)));
        out.vectors(x, 0) = prev;
        if (half >= 1) {
            double cur = (m - 2.0 * x) * prev / std::sqrt(double(m));
            out.vectors(x, 1) = cur;
            for (int k = 1; k < half; ++k) {
                const double next =
                    ((m - 2.0 * x) * cur - std::sqrt(double(k) * (m - k + 1)) * prev) / std::sqrt(double(m - k) * (k + 1));
                prev = cur;
                cur = next;
                out.vectors(x, k + 1) = cur;
            }
        }
        const double parity = (x % 2 == 0) ? 1.0 : -1.0;
        for (int k = half + 1; k <= m; ++k) out.vectors(x, k) = parity * out.vectors(x, m - k);
    }
    for (int k = 0; k < n; ++k) out.vectors.col(k).normalize();
    return out;
}

inline AdjacencyEigs adjacency_eigs(const CouplingProfile& profile, int n) {
    if (is_uniform(profile)) return uniform_adjacency_eigs(n);
    if (is_parabolic(profile)) return parabolic_adjacency_eigs(n);
    throw std::invalid_argument("no closed-form spectrum for a custom profile; use the dense oracle (oracle.hpp)");
}

// --------------------------- single-cavity dressed states ----------------------

/// Coefficients of |g,n> and |e,n-1> in a dressed state.
struct DressedCoefficients {
    double c_ground_photon{0.0};
    double c_excited_atom{0.0};
};

struct DressedPair {
    DressedCoefficients plus;
    DressedCoefficients minus;
};

/// Generalized Rabi frequency χ(n) = sqrt(n β² + Δ²/4).
inline double rabi(int n, double delta, double beta) {
    if (n < 1) throw std::invalid_argument("rabi: n >= 1 required");
    return std::sqrt(n * beta * beta + 0.25 * delta * delta);
}

/// |±,n> = [β sqrt(n) |g,n> + (-Δ/2 ± χ(n)) |e,n-1>] / sqrt(2χ² ∓ χΔ), written
/// through the mixing angle tan 2θ = β sqrt(n) / (Δ/2) so that neither branch
/// cancels when |Δ| >> β:  |+,n> = (cos θ, sin θ),  |-,n> = (sin θ, -cos θ).
inline DressedPair dressed_state(int n, double delta, double beta) {
    if (n < 1) throw std::invalid_argument("dressed_state: n >= 1 required");
    if (beta == 0.0 && delta == 0.0) throw std::invalid_argument("dressed basis degenerate (beta = delta = 0)");
    const double theta = 0.5 * std::atan2(beta * std::sqrt(double(n)), 0.5 * delta);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {{c, s}, {s, -c}};
}

// ------------------------------- 2×2 blocks ----------------------------------

inline Eigen::Matrix2d jch_block(double adjacency_eigenvalue, const ChainParams& p) {
    Eigen::Matrix2d h;
    h << 0.5 * p.delta - p.kappa * adjacency_eigenvalue, p.beta,
         p.beta, -0.5 * p.delta;
    return h;
}

/// Block for column `k_index` (0-based, descending λ) of the profile's closed-form basis.
inline Eigen::Matrix2d jch_block(int k_index, const ChainParams& p) {
    require_valid(p);
    if (is_custom(p.profile)) {
        throw std::invalid_argument("jch_block: custom profile has no closed form; use the dense oracle");
    }
    if (k_index < 0 || k_index >= p.n_cavities) throw std::out_of_range("jch_block: k out of range");
    const double lambda = is_uniform(p.profile)
        ? 2.0 * std::cos((k_index + 1) * std::numbers::pi / (p.n_cavities + 1))
        : double(p.n_cavities - 1 - 2 * k_index);
    return jch_block(lambda, p);
}

enum class Branch { plus, minus };

struct BlockEigen {
    double e_plus{0.0};
    double e_minus{0.0};
    DressedCoefficients mix_plus;
    DressedCoefficients mix_minus;
};

/// Eigenpairs of [[a, β], [β, d]] as mean ± hypot((a-d)/2, β). Eigenvectors
/// (cos θ, sin θ) and (-sin θ, cos θ) with θ = atan2(β, (a-d)/2)/2; these are the
/// normalized (Δ + 2E, 2β) vectors, and remain defined at β = 0.
inline BlockEigen solve_block(const Eigen::Matrix2d& h) {
    const double mean = 0.5 * (h(0, 0) + h(1, 1));
    const double half_gap = 0.5 * (h(0, 0) - h(1, 1));
    const double beta = h(0, 1);
    const double r = std::hypot(half_gap, beta);
    const double theta = 0.5 * std::atan2(beta, half_gap);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {mean + r, mean - r, {c, s}, {-s, c}};
}

// ------------------------------ full spectrum --------------------------------

/// All 2N eigenpairs E±^k, |±,k> = mix ⊗ |k>.
struct BlockSpectrum {
    ChainParams params;
    std::shared_ptr<const AdjacencyEigs> spatial;
    std::vector<BlockEigen> blocks;  // one per column of spatial->vectors

    int n_cavities() const noexcept { return params.n_cavities; }

    double energy(int k_index, Branch b) const {
        const auto& blk = blocks.at(static_cast<std::size_t>(k_index));
        return b == Branch::plus ? blk.e_plus : blk.e_minus;
    }

    const DressedCoefficients& mix(int k_index, Branch b) const {
        const auto& blk = blocks.at(static_cast<std::size_t>(k_index));
        return b == Branch::plus ? blk.mix_plus : blk.mix_minus;
    }

    Eigen::VectorXd eigenvector(int k_index, Branch b) const {
        const auto& m = mix(k_index, b);
        const int n = n_cavities();
        Eigen::VectorXd v(2 * n);
        for (int q = 0; q < n; ++q) {
            const double spatial_amp = spatial->vectors(q, k_index);
            v(2 * q) = m.c_ground_photon * spatial_amp;
            v(2 * q + 1) = m.c_excited_atom * spatial_amp;
        }
        return v;
    }

    /// Energies ordered as (k0+, k0-, k1+, k1-, ...), matching eigenvectors().
    Eigen::VectorXd energies() const {
        Eigen::VectorXd e(2 * n_cavities());
        for (int k = 0; k < n_cavities(); ++k) {
            e(2 * k) = blocks[static_cast<std::size_t>(k)].e_plus;
            e(2 * k + 1) = blocks[static_cast<std::size_t>(k)].e_minus;
        }
        return e;
    }

    Eigen::MatrixXd eigenvectors() const {
        const int n = n_cavities();
        Eigen::MatrixXd v(2 * n, 2 * n);
        for (int k = 0; k < n; ++k) {
            v.col(2 * k) = eigenvector(k, Branch::plus);
            v.col(2 * k + 1) = eigenvector(k, Branch::minus);
        }
        return v;
    }
};

inline BlockSpectrum jch_spectrum(const ChainParams& p) {
    require_valid(p);
    if (is_custom(p.profile)) {
        throw std::invalid_argument("jch_spectrum: custom profile has no closed form; use the dense oracle");
    }
    BlockSpectrum s;
    s.params = p;
    s.spatial = std::make_shared<const AdjacencyEigs>(adjacency_eigs(p.profile, p.n_cavities));
    s.blocks.reserve(static_cast<std::size_t>(p.n_cavities));
    for (int k = 0; k < p.n_cavities; ++k) {
        s.blocks.push_back(solve_block(jch_block(s.spatial->eigenvalues(k), p)));
    }
    return s;
}

}  // namespace jch
