#include "szego/flow.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "support.hpp"

namespace {

using szego::cplx;
using szego::HardyFunction;
using szego::SpectralData;

TEST(SpectralEvolve, Examples) {
    const SpectralData d({1.0, 0.5}, {0.0, 0.0});
    const auto e0 = szego::spectral_evolve(d, 0.0);
    EXPECT_EQ(e0[0].psi, 0.0);
    EXPECT_EQ(e0[1].psi, 0.0);
    const auto e1 = szego::spectral_evolve(d, 1.0);
    EXPECT_DOUBLE_EQ(e1[0].psi, 1.0);
    EXPECT_DOUBLE_EQ(e1[1].psi, 0.25);

    const SpectralData ints({2.0, std::sqrt(3.0), std::sqrt(2.0), 1.0}, {0.1, 0.2, 0.3, 0.4});
    const auto e = szego::spectral_evolve(ints, szego::two_pi);
    for (std::size_t r = 0; r < 4; ++r) EXPECT_NEAR(e[r].psi, ints[r].psi, 1e-12);
}

TEST(SpectralEvolve, ActionsUntouched) {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 10; ++t) {
        const auto d = szego::testing::random_spectral_data(rng, 1 + t % 4, 0.3, 0.8);
        const auto e = szego::spectral_evolve(d, 17.3 * t - 40.0);
        for (std::size_t r = 0; r < d.size(); ++r) {
            EXPECT_EQ(e[r].s, d[r].s);
            EXPECT_GE(e[r].psi, 0.0);
            EXPECT_LT(e[r].psi, szego::two_pi);
        }
    }
}

TEST(SzegoRhs, Examples) {
    const auto zero = szego::szego_rhs(HardyFunction::zero(8));
    for (long n = 0; n < 8; ++n) EXPECT_EQ(zero[n], cplx{0.0});

    const cplx c{0.3, -0.7};
    const auto k = szego::szego_rhs(HardyFunction({c, 0.0, 0.0, 0.0}));
    EXPECT_NEAR(std::abs(k[0] - (-szego::I * std::norm(c) * c)), 0.0, 1e-15);
    for (long n = 1; n < 4; ++n) EXPECT_NEAR(std::abs(k[n]), 0.0, 1e-15);

    const auto m = szego::szego_rhs(HardyFunction({0.0, c, 0.0, 0.0}));
    EXPECT_NEAR(std::abs(m[1] - (-szego::I * std::norm(c) * c)), 0.0, 1e-15);
    for (long n : {0L, 2L, 3L}) EXPECT_NEAR(std::abs(m[n]), 0.0, 1e-15);
}

TEST(SzegoRhs, MatchesDirectConvolution) {
    // Pi(|u|^2 u)_n = sum_{a+b-c=n} u_a u_b conj(u_c), kept for n < M
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g;
    const std::size_t M = 7;
    std::vector<cplx> u(M);
    for (auto& x : u) x = {g(rng), g(rng)};
    std::vector<cplx> expected(M, 0.0);
    for (std::size_t a = 0; a < M; ++a)
        for (std::size_t b = 0; b < M; ++b)
            for (std::size_t c = 0; c < M; ++c) {
                const long n = static_cast<long>(a + b) - static_cast<long>(c);
                if (n >= 0 && n < static_cast<long>(M)) expected[n] += u[a] * u[b] * std::conj(u[c]);
            }
    const auto k = szego::szego_rhs(HardyFunction(u));
    for (std::size_t n = 0; n < M; ++n) EXPECT_NEAR(std::abs(k[n] - (-szego::I * expected[n])), 0.0, 1e-12);
}

TEST(Integrate, ConstantSolution) {
    const cplx c{0.8, 0.4};
    const double T = 1.0;
    double prev = 0.0;
    for (double dt : {0.1, 0.05}) {
        const auto traj = szego::integrate(HardyFunction({c}), T, dt, 4);
        const cplx exact = std::exp(-szego::I * std::norm(c) * T) * c;
        const double err = std::abs(traj.back().u[0] - exact);
        if (prev > 0.0) EXPECT_GT(prev / err, 12.0);  // fourth order: ratio ~16
        prev = err;
    }
    const auto rep = szego::conservation_report(szego::integrate(HardyFunction({c}), 1.0, 1e-2, 4, 10));
    EXPECT_EQ(rep.rows.size(), 11u);
    EXPECT_LE(rep.mass_drift_max, 1e-10);
    EXPECT_LE(rep.h_half_drift_max, 1e-10);
    EXPECT_LE(rep.sv_drift_max, 1e-10);
}

TEST(Integrate, ZeroTrajectory) {
    const auto traj = szego::integrate(HardyFunction::zero(8), 1.0, 0.1, 8, 5);
    ASSERT_EQ(traj.size(), 6u);
    EXPECT_DOUBLE_EQ(traj.back().t, 1.0);
    for (const auto& s : traj) EXPECT_EQ(szego::l2_norm(s.u), 0.0);
    const auto rep = szego::conservation_report(traj);
    for (const auto& row : rep.rows) {
        EXPECT_EQ(row.mass, 0.0);
        EXPECT_TRUE(row.rho.empty());
    }
}

TEST(Integrate, MassConservation) {
    const auto u0 = szego::reconstruct_function(SpectralData({1.0, 0.5}, {0.0, 0.0}), 64);
    const auto traj = szego::integrate(u0, 1.0, 1e-3, 64);
    EXPECT_LE(std::abs(szego::mass(traj.back().u) - szego::mass(u0)), 1e-8);
    EXPECT_DOUBLE_EQ(traj.back().t, 1.0);
}

TEST(Integrate, Preconditions) {
    EXPECT_THROW(szego::integrate(HardyFunction({1.0}), 1.0, 0.0, 4), szego::Error);
    try {
        szego::integrate(HardyFunction({3.0}), 1.0, 0.1, 4);
        FAIL();
    } catch (const szego::Error& e) {
        EXPECT_EQ(e.kind(), szego::ErrorKind::InvalidArgument);
    }
}

TEST(CompareFlows, Examples) {
    const SpectralData d({1.0, 0.5}, {0.0, 0.0});
    EXPECT_LE(szego::compare_flows(d, 0.0, 1e-3, 64), 1e-14);
    EXPECT_LE(szego::compare_flows(d, 1.0, 1e-3, 64), 1e-6);
}

TEST(CompareFlows, FourthOrder) {
    const SpectralData d({1.0, 0.5}, {0.3, 1.2});
    const double a = szego::compare_flows(d, 1.0, 0.02, 64);
    const double b = szego::compare_flows(d, 1.0, 0.01, 64);
    EXPECT_GT(a / b, 12.0);
    EXPECT_LT(a / b, 20.0);
}

TEST(ConservationReport, GenericPairIsospectral) {
    std::mt19937_64 rng(4);
    const auto d = szego::testing::random_spectral_data(rng, 2, 0.4, 0.7);
    const auto u0 = szego::reconstruct_function(d, 128);
    const auto rep = szego::conservation_report(szego::integrate(u0, 1.0, 1e-3, 128, 4));
    ASSERT_EQ(rep.rows.size(), 5u);
    EXPECT_EQ(rep.rows.front().rho.size(), 2u);
    EXPECT_LE(rep.sv_drift_max, 1e-6);
    EXPECT_LE(rep.h_half_drift_max, 1e-7);
    EXPECT_LE(rep.mass_drift_max, 1e-7);
}

}  // namespace
