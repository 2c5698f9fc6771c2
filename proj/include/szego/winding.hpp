#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/SVD>

#include "szego/common.hpp"
#include "szego/fft.hpp"

namespace szego {

using SymbolFunction = std::function<cplx(cplx)>;
using LaurentCallback = std::function<cplx(long)>;

/// Values f(radius e^{2 pi i k/K}), k = 0..K-1.
struct SymbolGrid {
    double radius = 1.0;
    std::vector<cplx> values;

    std::size_t size() const noexcept { return values.size(); }
    double max_modulus() const {
        double m = 0.0;
        for (const auto& v : values) m = std::max(m, std::abs(v));
        return m;
    }
    double min_modulus() const {
        double m = INFINITY;
        for (const auto& v : values) m = std::min(m, std::abs(v));
        return m;
    }
};

inline SymbolGrid sample_symbol(const SymbolFunction& f, double radius, std::size_t K) {
    require(is_power_of_two(K) && K >= 256, "symbol grids need a power-of-two node count >= 256");
    require(std::isfinite(radius) && radius > 0.0, "radius must be positive");
    SymbolGrid g{radius, std::vector<cplx>(K)};
    for (std::size_t k = 0; k < K; ++k)
        g.values[k] = f(std::polar(radius, two_pi * static_cast<double>(k) / static_cast<double>(K)));
    return g;
}

namespace detail {

inline void check_no_zero(const SymbolGrid& g, const Tolerances& tol) {
    const double lo = g.min_modulus();
    if (!std::isfinite(g.max_modulus())) fail(ErrorKind::NearPole, "non-finite symbol value on the contour");
    if (lo <= tol.zero * g.max_modulus())
        fail(ErrorKind::ZeroOnContour, "symbol modulus " + std::to_string(lo) + " on |zeta| = " +
                                           std::to_string(g.radius) + " is below the zero guard");
}

// Principal-branch increments of arg between consecutive nodes (cyclic).
inline std::vector<double> arg_increments(const SymbolGrid& g) {
    const std::size_t K = g.size();
    std::vector<double> d(K);
    for (std::size_t k = 0; k < K; ++k) d[k] = std::arg(g.values[(k + 1) % K] / g.values[k]);
    return d;
}

struct GridIndex {
    long index = 0;
    bool resolved = false;
};

inline GridIndex grid_index(const SymbolGrid& g) {
    double sum = 0.0, worst = 0.0;
    for (double x : arg_increments(g)) {
        sum += x;
        worst = std::max(worst, std::abs(x));
    }
    return {std::lround(sum / two_pi), worst < 0.5 * pi};
}

}  // namespace detail

/// Winding number of a fixed grid. Every increment must be below pi/2.
inline long winding_index(const SymbolGrid& g, const Tolerances& tol = {}) {
    require(!g.values.empty(), "empty symbol grid");
    detail::check_no_zero(g, tol);
    const auto r = detail::grid_index(g);
    if (!r.resolved)
        fail(ErrorKind::UnresolvedContour, "argument increments reach pi/2 on a " + std::to_string(g.size()) +
                                               "-node grid at radius " + std::to_string(g.radius));
    return r.index;
}

struct AdaptiveIndex {
    long index = 0;
    SymbolGrid grid;
};

/// Doubles K until all increments are below pi/2 and two successive resolved
/// grids give the same index. Each refinement only evaluates the new nodes.
inline AdaptiveIndex winding_index_adaptive(const SymbolFunction& f, double radius, std::size_t K0 = 256,
                                            const Tolerances& tol = {}, std::size_t K_max = std::size_t{1} << 21) {
    SymbolGrid g = sample_symbol(f, radius, K0);
    bool have_prev = false;
    long prev = 0;
    while (true) {
        detail::check_no_zero(g, tol);
        const auto r = detail::grid_index(g);
        if (r.resolved && have_prev && r.index == prev) return {r.index, std::move(g)};
        have_prev = r.resolved;
        prev = r.index;
        const std::size_t K = g.size();
        if (2 * K > K_max)
            fail(ErrorKind::UnresolvedContour, "winding index not settled at K = " + std::to_string(K) +
                                                   " on radius " + std::to_string(radius));
        std::vector<cplx> next(2 * K);
        for (std::size_t k = 0; k < K; ++k) {
            next[2 * k] = g.values[k];
            next[2 * k + 1] = f(std::polar(radius, two_pi * static_cast<double>(2 * k + 1) / static_cast<double>(2 * K)));
        }
        g.values = std::move(next);
    }
}

inline long winding_index(const SymbolFunction& f, double radius, std::size_t K0 = 256, const Tolerances& tol = {}) {
    return winding_index_adaptive(f, radius, K0, tol).index;
}

/// A(j, k) = c_{j-k}, 0 <= j, k < N.
inline MatrixXcd toeplitz_truncated(const LaurentCallback& c, std::size_t N) {
    require(N >= 1, "Toeplitz truncation must be >= 1");
    MatrixXcd A(N, N);
    std::vector<cplx> diag(2 * N - 1);
    for (long d = -static_cast<long>(N) + 1; d < static_cast<long>(N); ++d) diag[d + N - 1] = c(d);
    for (std::size_t j = 0; j < N; ++j)
        for (std::size_t k = 0; k < N; ++k) A(j, k) = diag[j - k + N - 1];
    return A;
}

struct StabilityPoint {
    std::size_t N = 0;
    double inv_norm = 0.0;
};

/// ||A^{-1}||_2 = 1/sigma_min for one truncation.
inline double inverse_norm(const MatrixXcd& A) {
    Eigen::BDCSVD<MatrixXcd> svd(A);
    const auto& sv = svd.singularValues();
    const double smax = sv(0), smin = sv(sv.size() - 1);
    if (!(smin >= 1e-13 * smax))
        fail(ErrorKind::SingularTruncation, "smallest singular value " + std::to_string(smin) + " against norm " +
                                                std::to_string(smax) + " at N = " + std::to_string(A.rows()));
    return 1.0 / smin;
}

inline std::vector<StabilityPoint> stability_scan(const LaurentCallback& c, const std::vector<std::size_t>& N_list) {
    std::vector<StabilityPoint> out;
    for (auto N : N_list) out.push_back({N, inverse_norm(toeplitz_truncated(c, N))});
    return out;
}

//
// Laurent coefficients of a sampled symbol, in wrap-around order: entry n
// holds the coefficient of zeta^n (n < K/2) or zeta^{n-K} (n >= K/2), for the
// variable zeta on the unit circle (the grid radius is absorbed).
//
struct LaurentSeries {
    std::vector<cplx> coeffs;

    cplx operator[](long n) const {
        const long K = static_cast<long>(coeffs.size());
        if (n >= K / 2 || n < -K / 2) return cplx{0.0};
        return coeffs[fft::slot(n, coeffs.size())];
    }
    std::vector<cplx> values() const { return fft::samples(coeffs); }
    LaurentCallback callback() const {
        return [c = *this](long n) { return c[n]; };
    }
};

inline LaurentSeries laurent_from_grid(const SymbolGrid& g) { return {fft::coefficients(g.values)}; }

struct WienerHopf {
    LaurentSeries plus;       // e^{Pi phi}, modes n >= 0
    LaurentSeries minus;      // e^{(I-Pi) phi}, modes n < 0 (and the constant 1)
    LaurentSeries plus_inv;
    LaurentSeries minus_inv;
};

/// Phi = Phi_+ Phi_-bar from phi = log Phi on a grid of index 0.
inline WienerHopf wiener_hopf_factorize(const SymbolGrid& g, const Tolerances& tol = {}) {
    const long idx = winding_index(g, tol);
    if (idx != 0) fail(ErrorKind::NonzeroIndex, "symbol has winding index " + std::to_string(idx));
    const std::size_t K = g.size();
    const auto inc = detail::arg_increments(g);
    std::vector<cplx> logv(K);
    double arg = std::arg(g.values[0]);
    for (std::size_t k = 0; k < K; ++k) {
        logv[k] = cplx{std::log(std::abs(g.values[k])), arg};
        arg += inc[k];
    }
    const auto phi = fft::coefficients(logv);
    std::vector<cplx> pos(K, cplx{0.0}), neg(K, cplx{0.0});
    for (std::size_t n = 0; n < K; ++n) (n < K / 2 ? pos : neg)[n] = phi[n];
    const auto ppos = fft::samples(pos);
    const auto pneg = fft::samples(neg);
    std::vector<cplx> a(K), b(K), ai(K), bi(K);
    for (std::size_t k = 0; k < K; ++k) {
        a[k] = std::exp(ppos[k]);
        b[k] = std::exp(pneg[k]);
        ai[k] = 1.0 / a[k];
        bi[k] = 1.0 / b[k];
    }
    return {{fft::coefficients(a)}, {fft::coefficients(b)}, {fft::coefficients(ai)}, {fft::coefficients(bi)}};
}

/// max_k |Phi_+ Phi_-bar - Phi| / max |Phi| at the grid nodes, with both factors
/// resynthesized from their coefficients.
inline double factor_product_residual(const SymbolGrid& g, const WienerHopf& wh) {
    const auto a = wh.plus.values();
    const auto b = wh.minus.values();
    double worst = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) worst = std::max(worst, std::abs(a[k] * b[k] - g.values[k]));
    return worst / g.max_modulus();
}

/// max entry of T_N(Phi_+^{-1}) T_N(Phi_-bar^{-1}) T_N(Phi) - I on the leading N/2 block.
inline double wiener_hopf_inverse_residual(const SymbolGrid& g, const WienerHopf& wh, std::size_t N) {
    require(N >= 2, "need N >= 2");
    const auto sym = laurent_from_grid(g);
    const MatrixXcd T = toeplitz_truncated(sym.callback(), N);
    const MatrixXcd P = toeplitz_truncated(wh.plus_inv.callback(), N);
    const MatrixXcd Q = toeplitz_truncated(wh.minus_inv.callback(), N);
    const MatrixXcd R = P * (Q * T) - MatrixXcd::Identity(N, N);
    return R.topLeftCorner(N / 2, N / 2).cwiseAbs().maxCoeff();
}

}  // namespace szego
