// oracle.hpp: dense one-excitation Hamiltonian and numeric eigendecomposition.
//
// Built straight from  H = Δ/2 I⊗Z + β I⊗X - κ A⊗(I+Z)/2  in the interleaved
// basis, without going through any of the closed forms in spectral.hpp. Every
// analytic claim is checked against this path.

#pragma once

#include "jch/model.hpp"
#include "jch/spectral.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace jch {

struct DenseHamiltonian {
    Eigen::MatrixXd matrix;
    ChainParams params;
};

inline DenseHamiltonian build_dense(const ChainParams& p) {
    require_valid(p);
    const int n = p.n_cavities;
    const auto w = hopping_weights(p.profile, n);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (int q = 0; q < n; ++q) {
        h(2 * q, 2 * q) = 0.5 * p.delta;
        h(2 * q + 1, 2 * q + 1) = -0.5 * p.delta;
        h(2 * q, 2 * q + 1) = p.beta;
        h(2 * q + 1, 2 * q) = p.beta;
    }
    for (int q = 0; q + 1 < n; ++q) {
        const double hop = -p.kappa * w[static_cast<std::size_t>(q)];
        h(2 * q, 2 * (q + 1)) = hop;
        h(2 * (q + 1), 2 * q) = hop;
    }
    return {std::move(h), p};
}

/// -(J/2) A on the single-magnon sector.
inline Eigen::MatrixXd dense_spin_hamiltonian(const SpinChainParams& p) {
    require_valid(p);
    return -0.5 * p.j_coupling * adjacency_matrix(p.profile, p.n_sites);
}

struct DenseEigensystem {
    Eigen::VectorXd eigenvalues;  // ascending
    Eigen::MatrixXd vectors;      // orthonormal columns
};

enum class Precision { standard, extended };

/// Householder tridiagonalization plus implicit symmetric QR (Eigen). The
/// extended variant runs the same algorithm in long double and rounds the
/// result; it resolves eigenvectors whose gaps sit near eps * ||H||.
inline DenseEigensystem dense_eigensystem(const Eigen::MatrixXd& h, Precision precision = Precision::standard) {
    if (h.rows() != h.cols() || h.rows() == 0) throw std::invalid_argument("dense_eigensystem: square, non-empty matrix required");
    if ((h - h.transpose()).cwiseAbs().maxCoeff() != 0.0) {
        throw std::invalid_argument("dense_eigensystem: matrix is not symmetric");
    }
    if (precision == Precision::extended) {
        using MatrixXld = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
        Eigen::SelfAdjointEigenSolver<MatrixXld> solver(h.cast<long double>());
        if (solver.info() != Eigen::Success) throw std::runtime_error("dense_eigensystem: decomposition failed");
        return {solver.eigenvalues().cast<double>(), solver.eigenvectors().cast<double>()};
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    if (solver.info() != Eigen::Success) throw std::runtime_error("dense_eigensystem: decomposition failed");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

inline DenseEigensystem dense_eigensystem(const DenseHamiltonian& h, Precision precision = Precision::standard) {
    return dense_eigensystem(h.matrix, precision);
}

/// V exp(-iΛt) Vᵀ ψ.
inline Eigen::VectorXcd propagate(const DenseEigensystem& es, const Eigen::VectorXcd& psi, double t) {
    if (psi.size() != es.eigenvalues.size()) throw std::invalid_argument("propagate: dimension mismatch");
    Eigen::VectorXcd c = es.vectors.transpose().cast<cplx>() * psi;
    for (Eigen::Index i = 0; i < c.size(); ++i) c(i) *= std::polar(1.0, -es.eigenvalues(i) * t);
    return es.vectors.cast<cplx>() * c;
}

inline SingleExcitationState oracle_evolve(const SingleExcitationState& psi, const DenseEigensystem& es, double t) {
    return SingleExcitationState(propagate(es, psi.amplitudes(), t));
}

inline SingleExcitationState oracle_evolve(const SingleExcitationState& psi, const DenseHamiltonian& h, double t) {
    if (psi.amplitudes().size() != h.matrix.rows()) throw std::invalid_argument("oracle_evolve: dimension mismatch");
    return oracle_evolve(psi, dense_eigensystem(h), t);
}

// --------------------------- spectrum comparison -----------------------------

struct SpectrumComparison {
    double max_eigenvalue_deviation{0.0};
    double max_subspace_angle{0.0};  // radians
    double energy_scale{0.0};        // max |E| of the reference set
};

/// Compares two eigensystems of the same operator: eigenvalues as sorted
/// multisets, eigenvectors through the largest principal angle between matched
/// eigenspaces. Eigenvalues closer than `cluster_tol * max(1, max|E|)` form one
/// (near-)degenerate cluster and are compared as a subspace.
inline SpectrumComparison compare_eigensystems(const Eigen::VectorXd& values_a, const Eigen::MatrixXd& vectors_a,
                                               const Eigen::VectorXd& values_b, const Eigen::MatrixXd& vectors_b,
                                               double cluster_tol = 1e-8) {
    const Eigen::Index dim = values_a.size();
    if (values_b.size() != dim || vectors_a.cols() != dim || vectors_b.cols() != dim || vectors_a.rows() != vectors_b.rows()) {
        throw std::invalid_argument("compare_eigensystems: dimension mismatch");
    }
    auto order = [](const Eigen::VectorXd& v) {
        std::vector<Eigen::Index> idx(static_cast<std::size_t>(v.size()));
        std::iota(idx.begin(), idx.end(), Eigen::Index{0});
        std::stable_sort(idx.begin(), idx.end(), [&](Eigen::Index i, Eigen::Index j) { return v(i) < v(j); });
        return idx;
    };
    const auto ia = order(values_a);
    const auto ib = order(values_b);

    SpectrumComparison out;
    out.energy_scale = values_a.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < dim; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        out.max_eigenvalue_deviation = std::max(out.max_eigenvalue_deviation, std::abs(values_a(ia[ui]) - values_b(ib[ui])));
    }

    const double tol = cluster_tol * std::max(1.0, out.energy_scale);
    Eigen::Index begin = 0;
    while (begin < dim) {
        Eigen::Index end = begin + 1;
        while (end < dim && values_a(ia[static_cast<std::size_t>(end)]) - values_a(ia[static_cast<std::size_t>(end - 1)]) <= tol) ++end;
        const Eigen::Index m = end - begin;
        Eigen::MatrixXd ua(vectors_a.rows(), m), ub(vectors_b.rows(), m);
        for (Eigen::Index j = 0; j < m; ++j) {
            ua.col(j) = vectors_a.col(ia[static_cast<std::size_t>(begin + j)]);
            ub.col(j) = vectors_b.col(ib[static_cast<std::size_t>(begin + j)]);
        }
        // sin of the largest principal angle = ||(I - Ub Ubᵀ) Ua||_2
        const Eigen::MatrixXd residual = ua - ub * (ub.transpose() * ua);
        const double sin_angle = Eigen::JacobiSVD<Eigen::MatrixXd>(residual).singularValues()(0);
        out.max_subspace_angle = std::max(out.max_subspace_angle, std::asin(std::min(1.0, sin_angle)));
        begin = end;
    }
    return out;
}

inline SpectrumComparison compare_spectra(const BlockSpectrum& analytic, const DenseEigensystem& numeric, double cluster_tol = 1e-8) {
    return compare_eigensystems(analytic.energies(), analytic.eigenvectors(), numeric.eigenvalues, numeric.vectors, cluster_tol);
}

}  // namespace jch
