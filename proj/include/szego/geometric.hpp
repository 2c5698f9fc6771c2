#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/LU>

#include "szego/common.hpp"
#include "szego/f_gamma.hpp"
#include "szego/spectral_data.hpp"
#include "szego/winding.hpp"

namespace szego {

/// omega = e^{-h(1 - i theta)}, gamma = |omega|^2.
class GeometricParams {
public:
    GeometricParams(double h, double theta) : h_(h), theta_(theta) {
        require(std::isfinite(h) && h > 0.0, "h must be positive");
        require(std::isfinite(theta), "theta must be finite");
        omega_ = std::exp(cplx{-h, h * theta});
        gamma_ = std::norm(omega_);
    }

    double h() const noexcept { return h_; }
    double theta() const noexcept { return theta_; }
    cplx omega() const noexcept { return omega_; }
    double gamma() const noexcept { return gamma_; }

private:
    double h_, theta_;
    cplx omega_;
    double gamma_;
};

/// s_r = e^{-rh}, psi_r = r theta h for r = 1..2N.
inline SpectralData geometric_spectral_data(const GeometricParams& p, std::size_t N) {
    require(N >= 1, "N must be >= 1");
    std::vector<SpectralPair> pairs;
    for (std::size_t r = 1; r <= 2 * N; ++r) {
        const double rr = static_cast<double>(r);
        pairs.push_back({std::exp(-rr * p.h()), rr * p.theta() * p.h()});
    }
    return SpectralData(std::move(pairs));
}

/// Phi(z, zeta) = F(zeta) - z omega F(zeta omega^2).
inline cplx phi_symbol(const GeometricParams& p, cplx z, cplx zeta, const Tolerances& tol = {}) {
    const cplx w = p.omega();
    const cplx a = f_gamma(p.gamma(), zeta, tol);
    if (z == cplx{0.0}) return a;
    return a - z * w * f_gamma(p.gamma(), zeta * w * w, tol);
}

/// c_l = (1 - z omega^{2l+1}) / (1 - gamma^{2l+1}); for l < 0 multiplied
/// through by gamma^q, q = -(2l+1), to stay finite.
inline cplx symbol_coefficient(const GeometricParams& p, cplx z, long l) {
    const double g = p.gamma();
    if (l >= 0) {
        const double e = static_cast<double>(2 * l + 1);
        return (1.0 - z * std::pow(p.omega(), e)) / (1.0 - std::pow(g, e));
    }
    const double q = static_cast<double>(-(2 * l + 1));
    const double gq = std::pow(g, q);
    return (gq - z * std::pow(std::conj(p.omega()), q)) / (gq - 1.0);
}

/// T_{N,r}(z)(j, k) = r^{k-j} c_{k-j}.
inline MatrixXcd geometric_toeplitz(const GeometricParams& p, cplx z, double r, std::size_t N) {
    return toeplitz_truncated([&](long d) { return std::pow(r, static_cast<double>(-d)) * symbol_coefficient(p, z, -d); },
                              N);
}

inline std::vector<StabilityPoint> stability_scan(const GeometricParams& p, cplx z, double r,
                                                  const std::vector<std::size_t>& N_list) {
    std::vector<StabilityPoint> out;
    for (auto N : N_list) out.push_back({N, inverse_norm(geometric_toeplitz(p, z, r, N))});
    return out;
}

/// u_N(z) = < T_{N,r}(z)^{-1} (r^{-j} conj(omega)^{2j-1}), (r^k) >.
inline cplx u_via_toeplitz(const GeometricParams& p, cplx z, double r, std::size_t N) {
    require(N >= 1, "N must be >= 1");
    require(r > p.gamma() && r < 1.0, "r must lie in (gamma, 1)");
    const MatrixXcd T = geometric_toeplitz(p, z, r, N);
    VectorXcd b(N), w(N);
    const cplx wb = std::conj(p.omega());
    for (std::size_t j = 1; j <= N; ++j) {
        const double jj = static_cast<double>(j);
        b(j - 1) = std::pow(r, -jj) * std::pow(wb, 2.0 * jj - 1.0);
        w(j - 1) = std::pow(r, jj);
    }
    Eigen::PartialPivLU<MatrixXcd> lu(T);
    const double rc = lu.rcond();
    if (!(rc > 1e-13)) fail(ErrorKind::SingularTruncation, "T_{N,r} is numerically singular at N = " + std::to_string(N));
    const VectorXcd x = lu.solve(b);
    return (x.array() * w.array()).sum();
}

/// Winding index of zeta -> Phi(z, zeta) on |zeta| = r.
inline long symbol_index(const GeometricParams& p, cplx z, double r, const Tolerances& tol = {}) {
    return winding_index([&](cplx zeta) { return phi_symbol(p, z, zeta, tol); }, r, 256, tol);
}

/// Start at r0 and move halfway to 1 until the symbol has index 0 on |zeta| = r.
inline double choose_toeplitz_radius(const GeometricParams& p, cplx z, double r0 = 0.95, int attempts = 8,
                                     const Tolerances& tol = {}) {
    double r = r0;
    long idx = 0;
    for (int a = 0; a < attempts; ++a) {
        if (r > p.gamma()) {
            idx = symbol_index(p, z, r, tol);
            if (idx == 0) return r;
        }
        r = 0.5 * (1.0 + r);
    }
    fail(ErrorKind::NonzeroIndex, "no radius in [" + std::to_string(r0) + ", 1) gave index 0 (last index " +
                                      std::to_string(idx) + ")");
}

struct IndexEntry {
    double R = 0.0;
    long index = 0;
    std::optional<ErrorKind> flag;
    std::string message;
};

/// Winding index of zeta -> F_gamma(R zeta) for each R; failures are recorded per radius.
inline std::vector<IndexEntry> index_profile(double gamma, const std::vector<double>& radii, const Tolerances& tol = {}) {
    std::vector<IndexEntry> out;
    for (double R : radii) {
        IndexEntry e{R, 0, std::nullopt, {}};
        try {
            e.index = winding_index([&](cplx zeta) { return f_gamma(gamma, zeta, tol); }, R, 256, tol);
        } catch (const Error& err) {
            e.flag = err.kind();
            e.message = err.what();
        }
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace szego
