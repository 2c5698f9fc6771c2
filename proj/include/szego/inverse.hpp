#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "szego/common.hpp"
#include "szego/hardy.hpp"
#include "szego/spectral_data.hpp"

namespace szego {

struct CMatrix {
    MatrixXcd matrix;
    cplx z;
};

namespace detail {

// rho_j^2 - sigma_k^2, refusing near-equal squares.
inline double checked_denominator(double rho, double sigma, const Tolerances& tol) {
    const double den = diff_of_squares(rho, sigma);
    if (std::abs(den) < tol.denominator * std::max(rho * rho, sigma * sigma))
        fail(ErrorKind::DegenerateSpectrum, "rho^2 - sigma^2 = " + std::to_string(den) + " for rho = " +
                                                std::to_string(rho) + ", sigma = " + std::to_string(sigma));
    return den;
}

}  // namespace detail

/// C_N(z)_{jk} = (rho_j e^{i psi} - z sigma_k e^{i psi}) / (rho_j^2 - sigma_k^2).
inline CMatrix build_c_matrix(const SpectralData& d, cplx z, const Tolerances& tol = {}) {
    const std::size_t N = d.N();
    MatrixXcd C(N, N);
    for (std::size_t j = 0; j < N; ++j)
        for (std::size_t k = 0; k < N; ++k) {
            const double den = detail::checked_denominator(d.rho(j), d.sigma(k), tol);
            C(j, k) = (d.rho_phase(j) - z * d.sigma_phase(k)) / den;
        }
    return {std::move(C), z};
}

/// Cdot_{jk} = sigma_k e^{i psi} / (rho_j^2 - sigma_k^2), so that C(z) = C(0) - z Cdot.
inline MatrixXcd build_c_dot_matrix(const SpectralData& d, const Tolerances& tol = {}) {
    const std::size_t N = d.N();
    MatrixXcd C(N, N);
    for (std::size_t j = 0; j < N; ++j)
        for (std::size_t k = 0; k < N; ++k)
            C(j, k) = d.sigma_phase(k) / detail::checked_denominator(d.rho(j), d.sigma(k), tol);
    return C;
}

namespace detail {

// Solve A x = b after scaling rows then columns to unit max modulus.
// The condition guard is applied to the scaled matrix.
inline VectorXcd equilibrated_solve(const MatrixXcd& A, const VectorXcd& b, const Tolerances& tol) {
    const Eigen::Index n = A.rows();
    VectorXd row(n), col(n);
    MatrixXcd S = A;
    for (Eigen::Index i = 0; i < n; ++i) {
        row(i) = S.row(i).cwiseAbs().maxCoeff();
        if (!(row(i) > 0.0) || !std::isfinite(row(i))) fail(ErrorKind::SingularMatrix, "zero or non-finite row in C_N");
        S.row(i) /= row(i);
    }
    for (Eigen::Index k = 0; k < n; ++k) {
        col(k) = S.col(k).cwiseAbs().maxCoeff();
        if (!(col(k) > 0.0)) fail(ErrorKind::SingularMatrix, "zero column in C_N");
        S.col(k) /= col(k);
    }
    Eigen::PartialPivLU<MatrixXcd> lu(S);
    const double rc = lu.rcond();
    if (!(rc > 0.0) || 1.0 / rc > tol.condition)
        fail(ErrorKind::SingularMatrix, "condition estimate " + std::to_string(rc > 0.0 ? 1.0 / rc : INFINITY) +
                                            " exceeds " + std::to_string(tol.condition));
    VectorXcd rhs = b.cwiseQuotient(row.cast<cplx>());
    VectorXcd y = lu.solve(rhs);
    return y.cwiseQuotient(col.cast<cplx>());
}

}  // namespace detail

/// u_N(z) = <C_N(z)^{-1} 1, 1>.
inline cplx reconstruct_point(const SpectralData& d, cplx z, const Tolerances& tol = {}) {
    const CMatrix C = build_c_matrix(d, z, tol);
    const VectorXcd x = detail::equilibrated_solve(C.matrix, VectorXcd::Ones(C.matrix.rows()), tol);
    return x.sum();
}

/// Same value through C(z) = C(0)(I - z C(0)^{-1} Cdot).
inline cplx reconstruct_point_factored(const SpectralData& d, cplx z, const Tolerances& tol = {}) {
    const MatrixXcd C0 = build_c_matrix(d, 0.0, tol).matrix;
    const MatrixXcd Cd = build_c_dot_matrix(d, tol);
    const Eigen::Index N = C0.rows();
    MatrixXcd P(N, N);
    for (Eigen::Index k = 0; k < N; ++k) P.col(k) = detail::equilibrated_solve(C0, Cd.col(k), tol);
    const VectorXcd x0 = detail::equilibrated_solve(C0, VectorXcd::Ones(N), tol);
    const MatrixXcd R = MatrixXcd::Identity(N, N) - z * P;
    return detail::equilibrated_solve(R, x0, tol).sum();
}

/// Taylor coefficients u_0..u_{M-1} of u_N.
///
/// u_N is rational with its poles outside the closed unit disc, so it is
/// sampled on the unit circle itself; the check circle sits at radius 0.9.
inline HardyFunction reconstruct_function(const SpectralData& d, std::size_t M, const Tolerances& tol = {}) {
    require(M >= 1, "need at least one mode");
    DiscSampling opts;
    opts.radius = 1.0;
    auto all = oversampled_disc_coefficients([&](cplx z) { return reconstruct_point(d, z, tol); }, M, opts, tol);

    double kept = 0.0, lost = 0.0;
    for (std::size_t n = 0; n < M; ++n) kept += (1.0 + static_cast<double>(n)) * std::norm(all[n]);
    for (std::size_t n = M; n < 2 * M; ++n) lost += (1.0 + static_cast<double>(n)) * std::norm(all[n]);
    if (lost > tol.tail * kept)
        fail(ErrorKind::InsufficientTruncation, "modes beyond M = " + std::to_string(M) + " carry " +
                                                    std::to_string(lost / kept) + " of the H^{1/2} mass");
    all.resize(M);
    return HardyFunction(std::move(all), 1.0);
}

//
// Explicit inverse of C_N(0).
//
// With a_j = rho_j^2, b_k = sigma_k^2,
//   (C_N(0)^{-1})_{kj} = (-1)^{j+k+N+1} alpha_j beta_k / ((a_j - b_k) rho_j e^{i psi_{2j-1}})
//   alpha_j = prod_l (a_j - b_l) / (prod_{l<j} (a_l - a_j) prod_{l>j} (a_j - a_l))
//   beta_k  = prod_l (a_l - b_k) / (prod_{l<k} (b_l - b_k) prod_{l>k} (b_k - b_l))
// Everything is accumulated as log-magnitudes plus a sign, since the
// products under/overflow long before N = 50 for geometric data.
//
namespace detail {

struct SignedLog {
    double log_abs = 0.0;
    int sign = 1;

    void mul(double x) {
        log_abs += std::log(std::abs(x));
        if (x < 0.0) sign = -sign;
    }
    void div(double x) {
        log_abs -= std::log(std::abs(x));
        if (x < 0.0) sign = -sign;
    }
};

inline std::vector<SignedLog> cauchy_alpha(const SpectralData& d) {
    const std::size_t N = d.N();
    std::vector<SignedLog> out(N);
    for (std::size_t j = 0; j < N; ++j) {
        for (std::size_t l = 0; l < N; ++l) {
            out[j].mul(diff_of_squares(d.rho(j), d.sigma(l)));
            if (l < j) out[j].div(diff_of_squares(d.rho(l), d.rho(j)));
            if (l > j) out[j].div(diff_of_squares(d.rho(j), d.rho(l)));
        }
    }
    return out;
}

inline std::vector<SignedLog> cauchy_beta(const SpectralData& d) {
    const std::size_t N = d.N();
    std::vector<SignedLog> out(N);
    for (std::size_t k = 0; k < N; ++k) {
        for (std::size_t l = 0; l < N; ++l) {
            out[k].mul(diff_of_squares(d.rho(l), d.sigma(k)));
            if (l < k) out[k].div(diff_of_squares(d.sigma(l), d.sigma(k)));
            if (l > k) out[k].div(diff_of_squares(d.sigma(k), d.sigma(l)));
        }
    }
    return out;
}

}  // namespace detail

inline MatrixXcd cauchy_inverse_c0(const SpectralData& d, const Tolerances& tol = {}) {
    const std::size_t N = d.N();
    for (std::size_t j = 0; j < N; ++j)
        for (std::size_t k = 0; k < N; ++k) detail::checked_denominator(d.rho(j), d.sigma(k), tol);
    const auto alpha = detail::cauchy_alpha(d);
    const auto beta = detail::cauchy_beta(d);
    MatrixXcd inv(N, N);
    for (std::size_t k = 0; k < N; ++k)
        for (std::size_t j = 0; j < N; ++j) {
            detail::SignedLog e;
            e.log_abs = alpha[j].log_abs + beta[k].log_abs;
            e.sign = alpha[j].sign * beta[k].sign * (((j + k + N + 1) % 2) ? -1 : 1);
            e.div(diff_of_squares(d.rho(j), d.sigma(k)));
            e.div(d.rho(j));
            inv(k, j) = static_cast<double>(e.sign) * std::exp(e.log_abs) * std::polar(1.0, -d[2 * j].psi);
        }
    return inv;
}

/// B_delta = prod_{m >= 1} (1 - delta^{4m})^{-2}.
inline double b_delta(double delta) {
    require(delta >= 0.0 && delta < 1.0, "delta must lie in [0, 1)");
    double prod = 1.0;
    for (int m = 1;; ++m) {
        const double q = std::pow(delta, 4.0 * m);
        if (q < 1e-16) break;
        prod *= (1.0 - q) * (1.0 - q);
    }
    return 1.0 / prod;
}

inline double a_explicit(double delta) {
    const double B = b_delta(delta);
    const double d2 = delta * delta;
    return 2.0 * (delta * B / std::pow(1.0 - d2, 4)) * ((1.0 + 3.0 * d2) / (1.0 + d2)) +
           2.0 * delta * B / ((1.0 - d2) * (1.0 - d2) * (1.0 - d2 * d2));
}

inline double c_delta_bound(double delta, double s1) {
    return 2.0 * b_delta(delta) * s1 / std::pow(1.0 - delta * delta, 3);
}

struct EntryBound {
    std::size_t k = 0;  // 1-based row
    std::size_t j = 0;  // 1-based column
    double value = 0.0;
    double bound = 0.0;
    double ratio() const { return value / bound; }
};

/// |(C_N(0)^{-1})_{kj}| against B/(1-delta^2) * s_{2j-1} * {delta^{2(k-j)}, 1, delta^{2(j-k-1)}}.
inline std::vector<EntryBound> inverse_entry_bounds(const SpectralData& d, const Tolerances& tol = {}) {
    const MatrixXcd inv = cauchy_inverse_c0(d, tol);
    const double delta = d.delta();
    const double base = b_delta(delta) / (1.0 - delta * delta);
    std::vector<EntryBound> table;
    for (std::size_t k = 1; k <= d.N(); ++k)
        for (std::size_t j = 1; j <= d.N(); ++j) {
            double factor = 1.0;
            if (j < k) factor = std::pow(delta, 2.0 * static_cast<double>(k - j));
            else if (j > k + 1) factor = std::pow(delta, 2.0 * static_cast<double>(j - k - 1));
            table.push_back({k, j, std::abs(inv(k - 1, j - 1)), base * d.rho(j - 1) * factor});
        }
    return table;
}

struct OperatorBoundsReport {
    double delta = 0.0;
    double l1_norm_c0inv_sum = 0.0;
    double l1_norm_product = 0.0;
    double bound_value = 0.0;
    double c_delta_bound = 0.0;
    double b_delta = 0.0;
    double spectral_radius = 0.0;
    std::optional<double> certified_radius;
};

inline MatrixXcd c0_inverse_times_c_dot(const SpectralData& d, const Tolerances& tol = {}) {
    return cauchy_inverse_c0(d, tol) * build_c_dot_matrix(d, tol);
}

inline OperatorBoundsReport operator_bounds(const SpectralData& d, const Tolerances& tol = {}) {
    OperatorBoundsReport rep;
    rep.delta = d.delta();
    const MatrixXcd inv = cauchy_inverse_c0(d, tol);
    const MatrixXcd P = inv * build_c_dot_matrix(d, tol);
    rep.l1_norm_c0inv_sum = inv.cwiseAbs().sum();
    rep.l1_norm_product = P.cwiseAbs().colwise().sum().maxCoeff();
    rep.b_delta = b_delta(rep.delta);
    rep.bound_value = a_explicit(rep.delta);
    rep.c_delta_bound = c_delta_bound(rep.delta, d[0].s);
    rep.spectral_radius = Eigen::ComplexEigenSolver<MatrixXcd>(P, false).eigenvalues().cwiseAbs().maxCoeff();
    if (rep.l1_norm_product > 0.0) {
        const double rho = 1.0 / rep.l1_norm_product - 1.0;
        if (rho > 0.0) rep.certified_radius = rho;
    } else {
        rep.certified_radius = std::numeric_limits<double>::infinity();
    }
    return rep;
}

/// Neumann-series bound on |u_N| over |z| <= radius; infinite when the series does not converge.
inline double neumann_bound(const OperatorBoundsReport& rep, double radius) {
    const double q = radius * rep.l1_norm_product;
    if (q >= 1.0) return std::numeric_limits<double>::infinity();
    return rep.l1_norm_c0inv_sum / (1.0 - q);
}

//
// C^1 norm for vanishing angles.
//
struct C1ClosedForm {
    double value = 0.0;
    std::vector<double> terms;
};

inline C1ClosedForm c1_closed_form(const SpectralData& d, const Tolerances& tol = {}) {
    if (!d.angles_zero(tol.positive)) fail(ErrorKind::AnglesNotZero, "c1_closed_form requires psi_r = 0 for every r");
    const std::size_t N = d.N();
    for (std::size_t r = 0; r + 1 < d.size(); ++r)
        if (d[r].s - d[r + 1].s < tol.denominator * d[r].s)
            fail(ErrorKind::DegenerateSpectrum, "s_" + std::to_string(r + 1) + " and s_" + std::to_string(r + 2) +
                                                    " are numerically equal");
    C1ClosedForm out;
    for (std::size_t k = 0; k < N; ++k) {
        const double sk = d.sigma(k);
        double t = sk;
        for (std::size_t j = 0; j < N; ++j) t *= (d.rho(j) + sk) / (d.rho(j) - sk);
        for (std::size_t l = 0; l < N; ++l)
            if (l != k) t *= (sk + d.sigma(l)) / (d.sigma(l) - sk);
        if (!(t > 0.0))
            fail(ErrorKind::DegenerateSpectrum, "summand " + std::to_string(k + 1) + " is not positive: " + std::to_string(t));
        out.terms.push_back(t);
        out.value += t;
    }
    return out;
}

struct C1LowerBound {
    double lower_bound = 0.0;
    double eq4_bound = 0.0;
};

/// sum_k sigma_k (rho_k + sigma_k)/(rho_k - sigma_k) and sum_j rho_j sigma_j/(rho_j - sigma_j).
inline C1LowerBound c1_lower_bound(const SpectralData& d, const Tolerances& tol = {}) {
    C1LowerBound out;
    for (std::size_t k = 0; k < d.N(); ++k) {
        const double r = d.rho(k), s = d.sigma(k);
        if (r - s < tol.denominator * r)
            fail(ErrorKind::DegenerateSpectrum, "rho_" + std::to_string(k + 1) + " and sigma_" + std::to_string(k + 1) +
                                                    " are numerically equal");
        out.lower_bound += s * (r + s) / (r - s);
        out.eq4_bound += r * s / (r - s);
    }
    return out;
}

/// The Cauchy matrix 1/(rho_j + sigma_k) (C_N(1) for vanishing angles, up to row scaling).
inline MatrixXd cauchy_c1_matrix(const std::vector<double>& rho, const std::vector<double>& sigma) {
    MatrixXd C(rho.size(), sigma.size());
    for (std::size_t j = 0; j < rho.size(); ++j)
        for (std::size_t k = 0; k < sigma.size(); ++k) C(j, k) = 1.0 / (rho[j] + sigma[k]);
    return C;
}

struct CauchyOnes {
    VectorXd x;  // C x = 1
    VectorXd y;  // C^T y = 1
};

inline CauchyOnes cauchy_ones_solve(const std::vector<double>& rho, const std::vector<double>& sigma,
                                    const Tolerances& tol = {}) {
    require(!rho.empty() && rho.size() == sigma.size(), "rho and sigma must be nonempty and of equal length");
    std::vector<double> merged;
    for (std::size_t i = 0; i < rho.size(); ++i) {
        merged.push_back(rho[i]);
        merged.push_back(sigma[i]);
    }
    for (std::size_t r = 0; r < merged.size(); ++r) {
        require(std::isfinite(merged[r]) && merged[r] > 0.0, "rho and sigma must be positive and finite");
        if (r + 1 < merged.size() && merged[r] - merged[r + 1] <= tol.denominator * merged[r])
            fail(ErrorKind::DegenerateSpectrum, "interlacing not strict at position " + std::to_string(r + 1));
    }
    const std::size_t N = rho.size();
    CauchyOnes out{VectorXd(N), VectorXd(N)};
    for (std::size_t k = 0; k < N; ++k) {
        double v = 1.0;
        for (std::size_t j = 0; j < N; ++j) v *= rho[j] + sigma[k];
        for (std::size_t l = 0; l < N; ++l)
            if (l != k) v /= sigma[k] - sigma[l];
        out.x(k) = v;
    }
    for (std::size_t j = 0; j < N; ++j) {
        double v = 1.0;
        for (std::size_t l = 0; l < N; ++l) v *= rho[j] + sigma[l];
        for (std::size_t i = 0; i < N; ++i)
            if (i != j) v /= rho[j] - rho[i];
        out.y(j) = v;
    }
    return out;
}

}  // namespace szego
