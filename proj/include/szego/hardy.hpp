#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "szego/common.hpp"
#include "szego/fft.hpp"

namespace szego {

/// A function in L^2_+(T) given by its first M Taylor coefficients u_0 .. u_{M-1}.
///
/// declared_radius records the largest disc radius on which the coefficient
/// list is trusted; eval_disc refuses points beyond it.
class HardyFunction {
public:
    HardyFunction() : coeffs_(1, cplx{0.0}) {}

    explicit HardyFunction(std::vector<cplx> coeffs, double declared_radius = 1.0)
        : coeffs_(std::move(coeffs)), radius_(declared_radius) {
        require(!coeffs_.empty(), "HardyFunction needs at least one coefficient");
        require(all_finite(coeffs_), "HardyFunction coefficients must be finite");
        require(declared_radius > 0.0 && declared_radius <= 1.0,
                "declared_radius must lie in (0, 1]");
    }

    static HardyFunction zero(std::size_t M) { return HardyFunction(std::vector<cplx>(std::max<std::size_t>(M, 1))); }

    std::size_t size() const noexcept { return coeffs_.size(); }
    double declared_radius() const noexcept { return radius_; }
    std::span<const cplx> coeffs() const noexcept { return coeffs_; }

    /// Coefficient u_n; zero outside the stored range.
    cplx operator[](long n) const noexcept {
        return (n < 0 || static_cast<std::size_t>(n) >= coeffs_.size()) ? cplx{0.0} : coeffs_[static_cast<std::size_t>(n)];
    }

    /// Copy truncated or zero-padded to M coefficients.
    HardyFunction resized(std::size_t M) const {
        std::vector<cplx> c(std::max<std::size_t>(M, 1), cplx{0.0});
        std::copy_n(coeffs_.begin(), std::min(c.size(), coeffs_.size()), c.begin());
        return HardyFunction(std::move(c), radius_);
    }

private:
    std::vector<cplx> coeffs_;
    double radius_ = 1.0;
};

/// A trigonometric polynomial on T with coefficients v_n, n in [-M, M].
class FullCircleFunction {
public:
    explicit FullCircleFunction(std::size_t M) : M_(M), coeffs_(2 * M + 1, cplx{0.0}) {}

    FullCircleFunction(std::size_t M, std::vector<cplx> coeffs) : M_(M), coeffs_(std::move(coeffs)) {
        require(coeffs_.size() == 2 * M + 1, "FullCircleFunction needs 2M+1 coefficients");
        require(all_finite(coeffs_), "FullCircleFunction coefficients must be finite");
    }

    std::size_t half_width() const noexcept { return M_; }

    cplx operator[](long n) const noexcept {
        const long m = static_cast<long>(M_);
        return (n < -m || n > m) ? cplx{0.0} : coeffs_[static_cast<std::size_t>(n + m)];
    }

    cplx& at(long n) {
        const long m = static_cast<long>(M_);
        require(n >= -m && n <= m, "FullCircleFunction index out of range");
        return coeffs_[static_cast<std::size_t>(n + m)];
    }

private:
    std::size_t M_;
    std::vector<cplx> coeffs_;
};

/// Szego projection: keep the modes n >= 0.
inline HardyFunction szego_project(const FullCircleFunction& v) {
    const long m = static_cast<long>(v.half_width());
    std::vector<cplx> c(static_cast<std::size_t>(m + 1));
    for (long n = 0; n <= m; ++n) c[static_cast<std::size_t>(n)] = v[n];
    return HardyFunction(std::move(c));
}

/// Embed u in the full-circle representation (negative modes zero).
inline FullCircleFunction to_full_circle(const HardyFunction& u) {
    FullCircleFunction v(u.size() - 1);
    for (std::size_t n = 0; n < u.size(); ++n) v.at(static_cast<long>(n)) = u[static_cast<long>(n)];
    return v;
}

/// sum_n u_n z^n by Horner's rule.
inline cplx eval_disc(const HardyFunction& u, cplx z) {
    if (std::abs(z) > u.declared_radius() * (1.0 + 1e-14))
        fail(ErrorKind::DomainError, "|z| = " + std::to_string(std::abs(z)) + " exceeds declared radius " +
                                         std::to_string(u.declared_radius()));
    const auto c = u.coeffs();
    cplx acc{0.0};
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
}

/// sqrt(sum (1+n)^{2s} |u_n|^2).
inline double sobolev_norm(const HardyFunction& u, double s) {
    require(s >= 0.0, "Sobolev index must be >= 0");
    double acc = 0.0;
    for (std::size_t n = 0; n < u.size(); ++n)
        acc += std::pow(1.0 + static_cast<double>(n), 2.0 * s) * std::norm(u[static_cast<long>(n)]);
    return std::sqrt(acc);
}

inline double l2_norm(const HardyFunction& u) { return sobolev_norm(u, 0.0); }

/// sum_{n>=1} n Re u_n; equals u'(1) when the coefficients are nonnegative,
/// which is the only case accepted.
inline double weighted_first_moment(const HardyFunction& u, const Tolerances& tol = {}) {
    double acc = 0.0;
    for (std::size_t n = 0; n < u.size(); ++n) {
        const cplx c = u[static_cast<long>(n)];
        if (c.real() < -tol.positive || std::abs(c.imag()) > tol.positive)
            fail(ErrorKind::NegativeCoefficients,
                 "coefficient " + std::to_string(n) + " = (" + std::to_string(c.real()) + ", " +
                     std::to_string(c.imag()) + ") is not real nonnegative");
        acc += static_cast<double>(n) * c.real();
    }
    return acc;
}

/// Samples u(e^{2 pi i k / K}), k = 0..K-1; K must be >= size() to avoid aliasing.
inline std::vector<cplx> circle_samples(const HardyFunction& u, std::size_t K) {
    require(K >= u.size(), "circle_samples: K must be at least the number of modes");
    std::vector<cplx> c(K, cplx{0.0});
    for (std::size_t n = 0; n < u.size(); ++n) c[n] = u[static_cast<long>(n)];
    return fft::samples(c);
}

/// Dyadic Besov-type sum  sum_j 2^j (1/2pi) int |Delta_j u|^p.
///
/// Block 0 holds modes {0, 1}; block j >= 1 holds [2^j, 2^{j+1}). Each block
/// is integrated on 4 * 2^{j+1} circle nodes (at least 8).
inline double besov_seminorm(const HardyFunction& u, double p) {
    require(p > 0.0 && std::isfinite(p), "Besov exponent must lie in (0, inf)");
    double total = 0.0;
    const std::size_t M = u.size();
    for (std::size_t j = 0;; ++j) {
        const std::size_t lo = (j == 0) ? 0 : (std::size_t{1} << j);
        const std::size_t hi = std::size_t{1} << (j + 1);
        if (lo >= M) break;
        const std::size_t K = std::max<std::size_t>(8, 4 * hi);
        std::vector<cplx> block(K, cplx{0.0});
        bool any = false;
        for (std::size_t n = lo; n < std::min(hi, M); ++n) {
            block[n] = u[static_cast<long>(n)];
            any = any || block[n] != cplx{0.0};
        }
        if (!any) continue;
        const auto vals = fft::samples(block);
        double integral = 0.0;
        for (const auto& v : vals) integral += std::pow(std::abs(v), p);
        total += std::ldexp(integral / static_cast<double>(K), static_cast<int>(j));
    }
    return total;
}

//
// Taylor coefficients of a function holomorphic on |z| <= r0 from samples on
// the circle of radius r0. A second extraction at 0.9 * r0 guards against
// aliasing and singularities inside the sampling circle.
//
struct DiscSampling {
    double radius = 0.75;
    std::size_t oversampling = 4;
    double check_ratio = 0.9;
    bool check = true;
};

namespace detail {

template <typename F>
std::vector<cplx> raw_disc_coefficients(F&& f, double radius, std::size_t K, double* max_modulus) {
    std::vector<cplx> samples(K);
    double peak = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
        const double angle = two_pi * static_cast<double>(k) / static_cast<double>(K);
        samples[k] = f(std::polar(radius, angle));
        peak = std::max(peak, std::abs(samples[k]));
    }
    if (!all_finite(samples)) fail(ErrorKind::InconsistentSamples, "non-finite sample on the extraction circle");
    if (max_modulus) *max_modulus = peak;
    auto c = fft::coefficients(samples);
    double scale = 1.0;
    for (std::size_t n = 0; n < K; ++n) {
        c[n] *= scale;
        scale /= radius;
    }
    return c;
}

}  // namespace detail

/// Full oversampled coefficient list (K = oversampling * M entries, the upper
/// half being aliases of negative frequencies) plus the sampled peak modulus.
template <typename F>
std::vector<cplx> oversampled_disc_coefficients(F&& f, std::size_t M, const DiscSampling& opts,
                                                const Tolerances& tol = {}) {
    require(M >= 1, "need at least one mode");
    require(opts.radius > 0.0 && opts.radius <= 1.0, "sampling radius must lie in (0, 1]");
    require(opts.oversampling >= 2, "oversampling factor must be >= 2");
    const std::size_t K = opts.oversampling * M;
    double peak = 0.0;
    auto primary = detail::raw_disc_coefficients(f, opts.radius, K, &peak);
    if (opts.check) {
        const double r1 = opts.radius * opts.check_ratio;
        auto secondary = detail::raw_disc_coefficients(f, r1, K, nullptr);
        double amplification = 1.0;
        for (std::size_t n = 0; n < M; ++n) {
            const double allowed = tol.sample_consistency * std::max(peak, 1e-300) * std::max(1.0, amplification);
            if (std::abs(primary[n] - secondary[n]) > allowed)
                fail(ErrorKind::InconsistentSamples,
                     "coefficient " + std::to_string(n) + " differs between radii " + std::to_string(opts.radius) +
                         " and " + std::to_string(r1) + " by " + std::to_string(std::abs(primary[n] - secondary[n])));
            amplification /= r1;
        }
    }
    return primary;
}

template <typename F>
HardyFunction coeffs_from_disc_samples(F&& f, std::size_t M, const DiscSampling& opts = {},
                                       const Tolerances& tol = {}) {
    auto all = oversampled_disc_coefficients(std::forward<F>(f), M, opts, tol);
    all.resize(M);
    return HardyFunction(std::move(all), opts.radius);
}

}  // namespace szego
