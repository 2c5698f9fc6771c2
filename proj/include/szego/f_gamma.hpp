#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "szego/common.hpp"

namespace szego {

//
// F_gamma(zeta) = sum_{l in Z} gamma^l / (1 - zeta gamma^{2l})
//
// Poles at gamma^{2l}, zeros at gamma^{2l+1}. Terms with l = -m < 0 are
// rewritten as gamma^m / (gamma^{2m} - zeta) so nothing overflows.
//

namespace detail {

inline void check_gamma(double gamma) {
    require(std::isfinite(gamma) && gamma > 0.0 && gamma < 1.0, "gamma must lie in (0, 1)");
}

inline long series_length(double gamma, cplx zeta, double tol) {
    const double lg = std::log(gamma);
    const double base = std::ceil(std::log(tol * (1.0 - gamma)) / lg) + 4.0;
    const double shift = std::ceil(std::abs(std::log(std::abs(zeta))) / (2.0 * std::abs(lg)));
    return static_cast<long>(base + shift);
}

}  // namespace detail

/// Raises NearPole when zeta is within eps_pole * gamma^{2l} of a pole gamma^{2l}.
inline void check_clear_of_poles(double gamma, cplx zeta, const Tolerances& tol = {}) {
    detail::check_gamma(gamma);
    const double a = std::abs(zeta);
    if (!std::isfinite(a) || a == 0.0)
        fail(ErrorKind::NearPole, "zeta = 0 or infinity is an accumulation point of poles");
    const double l0 = std::round(std::log(a) / (2.0 * std::log(gamma)));
    for (double l = l0 - 1.0; l <= l0 + 1.0; l += 1.0) {
        const double pole = std::pow(gamma, 2.0 * l);
        if (std::abs(zeta - pole) < tol.pole * pole)
            fail(ErrorKind::NearPole, "zeta = (" + std::to_string(zeta.real()) + ", " + std::to_string(zeta.imag()) +
                                          ") is within " + std::to_string(tol.pole) + " (relative) of the pole gamma^" +
                                          std::to_string(static_cast<long>(2 * l)));
    }
}

/// Fixed truncation |l| <= L, no pole guard.
inline cplx f_gamma_truncated(double gamma, cplx zeta, long L) {
    cplx acc{0.0};
    for (long m = L; m >= 1; --m) {
        const double gm = std::pow(gamma, static_cast<double>(m));
        acc += gm / (gm * gm - zeta);
    }
    for (long l = L; l >= 0; --l) {
        const double gl = std::pow(gamma, static_cast<double>(l));
        acc += gl / (1.0 - zeta * gl * gl);
    }
    return acc;
}

inline long f_gamma_terms(double gamma, cplx zeta, const Tolerances& tol = {}) {
    return detail::series_length(gamma, zeta, tol.series);
}

inline cplx f_gamma(double gamma, cplx zeta, const Tolerances& tol = {}) {
    check_clear_of_poles(gamma, zeta, tol);
    return f_gamma_truncated(gamma, zeta, f_gamma_terms(gamma, zeta, tol));
}

struct FunctionalResiduals {
    double inversion = 0.0;  // |F(1/zeta) + zeta F(zeta)|
    double scaling = 0.0;    // |F(zeta/gamma^2) - gamma F(zeta)|
};

inline FunctionalResiduals check_functional_equations(double gamma, cplx zeta, const Tolerances& tol = {}) {
    const cplx f = f_gamma(gamma, zeta, tol);
    return {std::abs(f_gamma(gamma, 1.0 / zeta, tol) + zeta * f),
            std::abs(f_gamma(gamma, zeta / (gamma * gamma), tol) - gamma * f)};
}

//
// Real closed forms for |F| on |zeta| = 1 and |zeta| = gamma, folded so that
// only l >= 0 (resp. l >= 1) appear.
//
namespace detail {

inline long closed_form_terms(double gamma) {
    return static_cast<long>(std::ceil(std::log(1e-18) / std::log(gamma))) + 5;
}

}  // namespace detail

/// |F_gamma(e^{i theta})|, theta not a multiple of 2 pi.
inline double abs_f_unit(double gamma, double theta) {
    const double s = std::abs(std::sin(0.5 * theta));
    const double c = std::cos(theta);
    const long L = detail::closed_form_terms(gamma);
    double acc = 0.0;
    for (long l = L; l >= 1; --l) {
        const double g = std::pow(gamma, static_cast<double>(l));
        const double g2 = g * g;
        acc += g * (1.0 + g2) / (1.0 + g2 * g2 - 2.0 * g2 * c);
    }
    return 0.5 / s + 2.0 * s * acc;
}

/// |F_gamma(gamma e^{i phi})|.
inline double abs_f_inner(double gamma, double phi) {
    const double s = std::abs(std::sin(0.5 * phi));
    const double c = std::cos(phi);
    const long L = detail::closed_form_terms(gamma);
    double acc = 0.0;
    for (long l = L; l >= 0; --l) {
        const double g = std::pow(gamma, static_cast<double>(l));
        const double q = g * g * gamma;
        acc += g * (1.0 + q) / (1.0 + q * q - 2.0 * q * c);
    }
    return 2.0 * s * acc;
}

/// (pi/|log gamma|) sum_{n >= 1} 1/cosh(pi^2 n / log gamma).
inline double poisson_bound(double gamma) {
    detail::check_gamma(gamma);
    const double lg = std::abs(std::log(gamma));
    double sum = 0.0;
    for (long n = 1;; ++n) {
        const double x = pi * pi * static_cast<double>(n) / lg;
        const double e = std::exp(-x);
        const double term = 2.0 * e / (1.0 + e * e);
        sum += term;
        if (term == 0.0 || term < 1e-18 * sum) break;
    }
    return pi / lg * sum;
}

namespace detail {

// Golden-section search for a minimum of f on [a, b].
inline std::pair<double, double> golden_min(const std::function<double(double)>& f, double a, double b) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a), d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 200 && b - a > 1e-15 * (1.0 + std::abs(a)); ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return fc < fd ? std::pair{c, fc} : std::pair{d, fd};
}

// Grid search on (0, 2 pi) followed by golden-section refinement.
inline std::pair<double, double> grid_min(const std::function<double(double)>& f, std::size_t K) {
    const double step = two_pi / static_cast<double>(K);
    std::size_t best = 1;
    double fbest = f(step);
    for (std::size_t k = 2; k < K; ++k) {
        const double v = f(step * static_cast<double>(k));
        if (v < fbest) {
            fbest = v;
            best = k;
        }
    }
    const auto refined = golden_min(f, step * (static_cast<double>(best) - 1.0), step * (static_cast<double>(best) + 1.0));
    return refined.second < fbest ? refined : std::pair{step * static_cast<double>(best), fbest};
}

}  // namespace detail

struct ZeroGapReport {
    double gamma = 0.0;
    double min_unit = 0.0;
    double max_inner_scaled = 0.0;
    double gap = 0.0;
    double poisson_bound = 0.0;
    double argmin_unit = 0.0;
    double argmax_inner = 0.0;
};

/// min_{|zeta|=1} |F| - gamma^{1/2} max_{|zeta|=gamma} |F|.
inline ZeroGapReport zero_gap(double gamma, std::size_t grid = 4096) {
    detail::check_gamma(gamma);
    require(grid >= 8, "zero_gap grid too small");
    ZeroGapReport rep;
    rep.gamma = gamma;
    const auto lo = detail::grid_min([&](double t) { return abs_f_unit(gamma, t); }, grid);
    const auto hi = detail::grid_min([&](double t) { return -abs_f_inner(gamma, t); }, grid);
    rep.argmin_unit = lo.first;
    rep.min_unit = lo.second;
    rep.argmax_inner = hi.first;
    rep.max_inner_scaled = std::sqrt(gamma) * -hi.second;
    rep.gap = rep.min_unit - rep.max_inner_scaled;
    rep.poisson_bound = poisson_bound(gamma);
    return rep;
}

/// Fourier transform of x -> |sin(theta/2)| gamma^x (1+gamma^{2x}) / (1+gamma^{4x}-2 gamma^{2x} cos theta).
inline double fhat_closed_form(double gamma, double theta, double xi) {
    detail::check_gamma(gamma);
    require(theta > 0.0 && theta < two_pi, "theta must lie in (0, 2 pi)");
    const double lg = std::log(gamma);
    const double a = std::abs((pi - theta) * xi / (2.0 * lg));
    const double b = std::abs(pi * xi / (2.0 * lg));
    // cosh(a)/cosh(b) without overflow
    const double ratio = std::exp(a - b) * (1.0 + std::exp(-2.0 * a)) / (1.0 + std::exp(-2.0 * b));
    return pi / (2.0 * std::abs(lg)) * ratio;
}

/// The integrand whose transform fhat_closed_form gives.
inline double fhat_integrand(double gamma, double theta, double x) {
    const double g = std::pow(gamma, x);
    const double g2 = g * g;
    return std::abs(std::sin(0.5 * theta)) * g * (1.0 + g2) / (1.0 + g2 * g2 - 2.0 * g2 * std::cos(theta));
}

//
// G(w) = e^{2 pi i w} F_gamma(e^{2 pi i w})^2 with gamma = e^{-pi tau}; doubly
// periodic with periods 1 and i tau.
//
inline cplx elliptic_g(double tau, cplx w, const Tolerances& tol = {}) {
    const cplx zeta = std::exp(two_pi * I * w);
    const cplx f = f_gamma(std::exp(-pi * tau), zeta, tol);
    return zeta * f * f;
}

struct EllipticReport {
    double tau = 0.0;
    double period_real = 0.0;  // max |G(w+1) - G(w)|
    double period_imag = 0.0;  // max |G(w+i tau) - G(w)|
    double pole = 0.0;         // max |w^2 G(w) + 1/(4 pi^2)| at |w| = pole_radius
    double zero = 0.0;         // |G(i tau / 2)|
    double pole_radius = 0.0;
};

inline EllipticReport elliptic_check(double tau, std::size_t grid = 9, double pole_radius = 1e-3,
                                     const Tolerances& tol = {}) {
    require(std::isfinite(tau) && tau > 0.0, "tau must be positive");
    require(grid >= 2, "elliptic grid needs at least 2 points per side");
    EllipticReport rep;
    rep.tau = tau;
    rep.pole_radius = pole_radius;
    for (std::size_t a = 0; a < grid; ++a)
        for (std::size_t b = 0; b < grid; ++b) {
            const double x = 0.1 + 0.8 * static_cast<double>(a) / static_cast<double>(grid - 1);
            const double y = tau * (0.1 + 0.8 * static_cast<double>(b) / static_cast<double>(grid - 1));
            const cplx w{x, y};
            const cplx g = elliptic_g(tau, w, tol);
            rep.period_real = std::max(rep.period_real, std::abs(elliptic_g(tau, w + 1.0, tol) - g));
            rep.period_imag = std::max(rep.period_imag, std::abs(elliptic_g(tau, w + I * tau, tol) - g));
        }
    for (int k = 0; k < 8; ++k) {
        const cplx w = std::polar(pole_radius, two_pi * (k + 0.5) / 8.0);
        rep.pole = std::max(rep.pole, std::abs(w * w * elliptic_g(tau, w, tol) + 1.0 / (4.0 * pi * pi)));
    }
    rep.zero = std::abs(elliptic_g(tau, I * (0.5 * tau), tol));
    return rep;
}

}  // namespace szego
