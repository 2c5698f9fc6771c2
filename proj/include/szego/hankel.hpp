#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

#include "szego/common.hpp"
#include "szego/hardy.hpp"

namespace szego {

/// A(n, p) = u_{n+p}, 0 <= n, p < M.
inline MatrixXcd hankel_matrix(const HardyFunction& u, std::size_t M) {
    require(M >= 1, "Hankel truncation must be >= 1");
    MatrixXcd A(M, M);
    for (std::size_t n = 0; n < M; ++n)
        for (std::size_t p = 0; p < M; ++p) A(n, p) = u[static_cast<long>(n + p)];
    return A;
}

/// A(n, p) = u_{n+p+1}: the Hankel matrix of S^* u.
inline MatrixXcd shifted_hankel_matrix(const HardyFunction& u, std::size_t M) {
    require(M >= 1, "Hankel truncation must be >= 1");
    MatrixXcd A(M, M);
    for (std::size_t n = 0; n < M; ++n)
        for (std::size_t p = 0; p < M; ++p) A(n, p) = u[static_cast<long>(n + p + 1)];
    return A;
}

/// Singular values of H_u (rho) and K_u (sigma), decreasing, with equal values
/// merged and their multiplicities kept.
struct HankelSpectrum {
    std::vector<double> rho;
    std::vector<double> sigma;
    std::vector<int> rho_multiplicity;
    std::vector<int> sigma_multiplicity;
    std::size_t truncation_M = 0;
    double tail_mass = 0.0;

    /// rho_1, sigma_1, rho_2, sigma_2, ... until both lists are exhausted.
    std::vector<double> merged() const {
        std::vector<double> s;
        for (std::size_t i = 0; i < std::max(rho.size(), sigma.size()); ++i) {
            if (i < rho.size()) s.push_back(rho[i]);
            if (i < sigma.size()) s.push_back(sigma[i]);
        }
        return s;
    }
};

namespace detail {

// Eigenvalues of A A^*, ascending.
inline VectorXd gram_eigenvalues(const MatrixXcd& A) {
    const MatrixXcd G = A * A.adjoint();
    Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(G, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) fail(ErrorKind::SingularMatrix, "Hermitian eigensolver did not converge");
    return solver.eigenvalues();
}

// Square roots of the eigenvalues above floor, decreasing, merged within gap.
inline void select_singular_values(const VectorXd& ev, double floor, double gap, std::vector<double>& values,
                                   std::vector<int>& multiplicity) {
    values.clear();
    multiplicity.clear();
    for (Eigen::Index i = ev.size() - 1; i >= 0; --i) {
        if (ev(i) <= floor) break;
        const double s = std::sqrt(ev(i));
        if (!values.empty() && values.back() - s <= gap) {
            ++multiplicity.back();
        } else {
            values.push_back(s);
            multiplicity.push_back(1);
        }
    }
}

}  // namespace detail

/// Discarded trace  sum_{n >= M} (1+n) |u_n|^2.
inline double hankel_tail_mass(const HardyFunction& u, std::size_t M) {
    double tail = 0.0;
    for (std::size_t n = M; n < u.size(); ++n) tail += (1.0 + static_cast<double>(n)) * std::norm(u[static_cast<long>(n)]);
    return tail;
}

inline HankelSpectrum pair_singular_values(const HardyFunction& u, std::size_t M, const Tolerances& tol = {}) {
    require(M >= 1, "Hankel truncation must be >= 1");
    HankelSpectrum out;
    out.truncation_M = M;
    out.tail_mass = hankel_tail_mass(u, M);
    const double total = sobolev_norm(u, 0.5) * sobolev_norm(u, 0.5);
    if (total > 0.0 && out.tail_mass > tol.tail * total)
        fail(ErrorKind::InsufficientTruncation, "discarded trace " + std::to_string(out.tail_mass) + " of total " +
                                                    std::to_string(total) + " at M = " + std::to_string(M));

    const VectorXd ev_h = detail::gram_eigenvalues(hankel_matrix(u, M));
    const VectorXd ev_k = detail::gram_eigenvalues(shifted_hankel_matrix(u, M));
    const double top = ev_h.size() ? std::max(ev_h(ev_h.size() - 1), 0.0) : 0.0;
    if (top == 0.0) return out;
    const double floor = tol.rank * top;
    const double gap = tol.eigen_gap * std::sqrt(top);
    detail::select_singular_values(ev_h, floor, gap, out.rho, out.rho_multiplicity);
    detail::select_singular_values(ev_k, floor, gap, out.sigma, out.sigma_multiplicity);
    return out;
}

/// |sum mult * rho^2 - ||u||_{H^{1/2}}^2|, less the tail allowance.
inline double check_trace_identity(const HardyFunction& u, const HankelSpectrum& spec) {
    double sum = 0.0;
    for (std::size_t j = 0; j < spec.rho.size(); ++j) sum += spec.rho_multiplicity[j] * spec.rho[j] * spec.rho[j];
    const double h = sobolev_norm(u, 0.5);
    return std::max(0.0, std::abs(sum - h * h) - spec.tail_mass);
}

/// |sum rho^2 + sum sigma^2 - sum (1+2n)|u_n|^2|, less the tail allowance.
inline double check_sum_rule(const HardyFunction& u, const HankelSpectrum& spec) {
    double sum = 0.0;
    for (std::size_t j = 0; j < spec.rho.size(); ++j) sum += spec.rho_multiplicity[j] * spec.rho[j] * spec.rho[j];
    for (std::size_t k = 0; k < spec.sigma.size(); ++k)
        sum += spec.sigma_multiplicity[k] * spec.sigma[k] * spec.sigma[k];
    double expected = 0.0;
    for (std::size_t n = 0; n < u.size(); ++n)
        expected += (1.0 + 2.0 * static_cast<double>(n)) * std::norm(u[static_cast<long>(n)]);
    return std::max(0.0, std::abs(sum - expected) - 2.0 * spec.tail_mass);
}

/// Largest violation of rho_1 >= sigma_1 >= rho_2 >= ... (0 when interlaced).
inline double interlacing_violation(const HankelSpectrum& spec) {
    const auto s = spec.merged();
    double worst = 0.0;
    for (std::size_t r = 0; r + 1 < s.size(); ++r) worst = std::max(worst, s[r + 1] - s[r]);
    return worst;
}

inline bool is_interlaced(const HankelSpectrum& spec, const Tolerances& tol = {}) {
    const double scale = spec.rho.empty() ? 1.0 : spec.rho.front();
    return interlacing_violation(spec) <= tol.eigen_gap * scale;
}

/// max_{j,k < M/2} |(K K^*)_{jk} - (H H^*)_{jk} + u_j conj(u_k)|, i.e. the
/// residual of K_u^2 = H_u^2 - (.|u) u on the block free of truncation effects.
inline double check_rank_one_identity(const HardyFunction& u, std::size_t M) {
    require(M >= 2, "rank-one check needs M >= 2");
    for (std::size_t n = M / 2 + 1; n < u.size(); ++n)
        require(u[static_cast<long>(n)] == cplx{0.0}, "rank-one check needs u supported in [0, M/2]");
    const MatrixXcd H = hankel_matrix(u, M);
    const MatrixXcd K = shifted_hankel_matrix(u, M);
    const MatrixXcd HH = H * H.adjoint();
    const MatrixXcd KK = K * K.adjoint();
    double worst = 0.0;
    for (std::size_t j = 0; j < M / 2; ++j)
        for (std::size_t k = 0; k < M / 2; ++k) {
            const cplx r = KK(j, k) - HH(j, k) + u[static_cast<long>(j)] * std::conj(u[static_cast<long>(k)]);
            worst = std::max(worst, std::abs(r));
        }
    return worst;
}

}  // namespace szego
