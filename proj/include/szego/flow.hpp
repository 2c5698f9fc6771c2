#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "szego/common.hpp"
#include "szego/fft.hpp"
#include "szego/hankel.hpp"
#include "szego/hardy.hpp"
#include "szego/inverse.hpp"
#include "szego/spectral_data.hpp"

namespace szego {

/// psi_r -> psi_r + t s_r^2 (mod 2 pi); s untouched.
inline SpectralData spectral_evolve(const SpectralData& d, double t) {
    require(std::isfinite(t), "time must be finite");
    std::vector<SpectralPair> pairs = d.pairs();
    for (auto& p : pairs) {
        p.psi = std::fmod(p.psi + t * p.s * p.s, two_pi);
        if (p.psi < 0.0) p.psi += two_pi;
    }
    return SpectralData(std::move(pairs));
}

/// -i Pi(|u|^2 u), truncated to the modes of u. The cubic term is formed on
/// 4M circle nodes, which resolves all products of M-mode inputs.
inline std::vector<cplx> szego_rhs(std::span<const cplx> u) {
    const std::size_t M = u.size();
    const std::size_t K = 4 * M;
    std::vector<cplx> buf(K, cplx{0.0});
    std::copy(u.begin(), u.end(), buf.begin());
    auto f = fft::samples(buf);
    for (auto& v : f) v *= std::norm(v);
    auto c = fft::coefficients(f);
    c.resize(M);
    for (auto& v : c) v *= -I;
    return c;
}

inline HardyFunction szego_rhs(const HardyFunction& u) {
    return HardyFunction(szego_rhs(u.coeffs()), u.declared_radius());
}

struct FlowState {
    HardyFunction u;
    double t = 0.0;
    double dt = 0.0;
    std::size_t M = 0;
};

using Trajectory = std::vector<FlowState>;

inline double mass(const HardyFunction& u) {
    const double n = l2_norm(u);
    return n * n;
}

/// Classical RK4 on the truncated equation. The step is shrunk slightly so
/// that ceil(T/dt) steps land exactly on T; the state is recorded at t = 0 and
/// at `samples` equally spaced step counts.
inline Trajectory integrate(const HardyFunction& u0, double T, double dt, std::size_t M, std::size_t samples = 1) {
    require(std::isfinite(T) && T >= 0.0, "T must be finite and >= 0");
    require(std::isfinite(dt) && dt > 0.0, "dt must be positive");
    require(M >= 1, "M must be >= 1");
    require(samples >= 1, "need at least one sample");

    HardyFunction u = u0.resized(M);
    {
        double peak = 0.0;
        for (const auto& v : circle_samples(u, 4 * M)) peak = std::max(peak, std::norm(v));
        if (dt * peak > 0.1)
            fail(ErrorKind::InvalidArgument, "dt * max|u|^2 = " + std::to_string(dt * peak) + " exceeds 0.1");
    }

    const auto steps = static_cast<std::size_t>(std::ceil(T / dt - 1e-9));
    const double h = steps ? T / static_cast<double>(steps) : dt;
    const double m0 = mass(u);

    Trajectory traj;
    traj.push_back({u, 0.0, h, M});
    if (steps == 0) {
        for (std::size_t i = 1; i <= samples; ++i) traj.push_back({u, 0.0, h, M});
        return traj;
    }

    std::vector<cplx> y(u.coeffs().begin(), u.coeffs().end());
    std::vector<cplx> tmp(M);
    auto axpy = [&](const std::vector<cplx>& k, double a) {
        for (std::size_t n = 0; n < M; ++n) tmp[n] = y[n] + a * k[n];
        return szego_rhs(std::span<const cplx>(tmp));
    };

    std::size_t next = 1;
    for (std::size_t step = 1; step <= steps; ++step) {
        const auto k1 = szego_rhs(std::span<const cplx>(y));
        const auto k2 = axpy(k1, 0.5 * h);
        const auto k3 = axpy(k2, 0.5 * h);
        const auto k4 = axpy(k3, h);
        for (std::size_t n = 0; n < M; ++n) y[n] += h / 6.0 * (k1[n] + 2.0 * k2[n] + 2.0 * k3[n] + k4[n]);

        double m = 0.0;
        for (const auto& v : y) m += std::norm(v);
        if (!std::isfinite(m) || std::abs(m - m0) > 0.01 * m0)
            fail(ErrorKind::BlowupDetected, "mass drifted from " + std::to_string(m0) + " to " + std::to_string(m) +
                                                " at t = " + std::to_string(static_cast<double>(step) * h));

        while (next <= samples && step == (next * steps + samples - 1) / samples) {
            traj.push_back({HardyFunction(y), static_cast<double>(step) * h, h, M});
            ++next;
        }
    }
    return traj;
}

inline double l2_distance(const HardyFunction& a, const HardyFunction& b) {
    double acc = 0.0;
    const std::size_t n = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) acc += std::norm(a[static_cast<long>(i)] - b[static_cast<long>(i)]);
    return std::sqrt(acc);
}

/// || reconstruct(evolve(d, T)) - integrate(reconstruct(d), T) ||_{L^2}.
inline double compare_flows(const SpectralData& d, double T, double dt, std::size_t M, const Tolerances& tol = {}) {
    const HardyFunction u0 = reconstruct_function(d, M, tol);
    const HardyFunction direct = integrate(u0, T, dt, M).back().u;
    const HardyFunction spectral = reconstruct_function(spectral_evolve(d, T), M, tol);
    return l2_distance(direct, spectral);
}

struct ConservationRow {
    double t = 0.0;
    double mass = 0.0;
    double h_half_norm = 0.0;
    std::vector<double> rho;
    std::vector<double> sigma;
    double sv_drift_max = 0.0;
};

struct ConservationReport {
    std::vector<ConservationRow> rows;
    double mass_drift_max = 0.0;
    double h_half_drift_max = 0.0;
    double sv_drift_max = 0.0;
};

namespace detail {

inline double relative_drift(double now, double start) {
    if (start == 0.0) return std::abs(now);
    return std::abs(now - start) / std::abs(start);
}

inline double list_drift(const std::vector<double>& now, const std::vector<double>& start) {
    if (now.size() != start.size()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (std::size_t i = 0; i < now.size(); ++i) worst = std::max(worst, relative_drift(now[i], start[i]));
    return worst;
}

}  // namespace detail

/// Conserved quantities along a trajectory; drifts are relative to t = 0.
inline ConservationReport conservation_report(const Trajectory& traj, const Tolerances& tol = {}) {
    ConservationReport rep;
    for (const auto& state : traj) {
        ConservationRow row;
        row.t = state.t;
        row.mass = mass(state.u);
        row.h_half_norm = sobolev_norm(state.u, 0.5);
        const auto spec = pair_singular_values(state.u, std::max<std::size_t>(state.u.size(), 1), tol);
        row.rho = spec.rho;
        row.sigma = spec.sigma;
        if (!rep.rows.empty()) {
            const auto& first = rep.rows.front();
            row.sv_drift_max = std::max(detail::list_drift(row.rho, first.rho), detail::list_drift(row.sigma, first.sigma));
            rep.mass_drift_max = std::max(rep.mass_drift_max, detail::relative_drift(row.mass, first.mass));
            rep.h_half_drift_max = std::max(rep.h_half_drift_max, detail::relative_drift(row.h_half_norm, first.h_half_norm));
            rep.sv_drift_max = std::max(rep.sv_drift_max, row.sv_drift_max);
        }
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

}  // namespace szego
