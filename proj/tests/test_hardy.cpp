#include "szego/hardy.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

namespace {

using szego::cplx;
using szego::HardyFunction;

HardyFunction geometric(std::size_t M, double b = 0.75, double p = 0.5) {
    std::vector<cplx> c(M);
    for (std::size_t n = 0; n < M; ++n) c[n] = b * std::pow(p, static_cast<double>(n));
    return HardyFunction(c);
}

TEST(HardyFunction, RejectsBadInput) {
    EXPECT_THROW(HardyFunction(std::vector<cplx>{}), szego::Error);
    EXPECT_THROW(HardyFunction({cplx{NAN, 0.0}}), szego::Error);
    EXPECT_THROW(HardyFunction({1.0}, 0.0), szego::Error);
    EXPECT_THROW(HardyFunction({1.0}, 1.5), szego::Error);
    EXPECT_EQ(HardyFunction({1.0, 2.0})[5], cplx{0.0});
    EXPECT_EQ(HardyFunction({1.0, 2.0})[-1], cplx{0.0});
}

TEST(SzegoProject, KeepsNonnegativeModes) {
    szego::FullCircleFunction v(1);
    v.at(-1) = 1.0;
    v.at(0) = 2.0;
    const auto u = szego::szego_project(v);
    EXPECT_EQ(u[0], cplx{2.0});
    EXPECT_EQ(u[1], cplx{0.0});

    szego::FullCircleFunction w(2);
    for (long n = -2; n <= 2; ++n) w.at(n) = 1.0;
    const auto u2 = szego::szego_project(w);
    for (long n = 0; n <= 2; ++n) EXPECT_EQ(u2[n], cplx{1.0});
}

TEST(SzegoProject, Idempotent) {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g;
    szego::FullCircleFunction v(6);
    for (long n = -6; n <= 6; ++n) v.at(n) = {g(rng), g(rng)};
    const auto once = szego::szego_project(v);
    const auto twice = szego::szego_project(szego::to_full_circle(once));
    ASSERT_EQ(once.size(), twice.size());
    for (long n = 0; n < static_cast<long>(once.size()); ++n) EXPECT_EQ(once[n], twice[n]);
}

TEST(EvalDisc, Examples) {
    const auto u = geometric(80);
    EXPECT_EQ(szego::eval_disc(u, 0.0), cplx{0.75});
    EXPECT_NEAR(std::abs(szego::eval_disc(u, 0.5) - 1.0), 0.0, 1e-15);
    EXPECT_EQ(szego::eval_disc(HardyFunction({1.0}), cplx{0.3, -0.4}), cplx{1.0});
}

TEST(EvalDisc, DomainError) {
    const HardyFunction u({1.0, 1.0}, 0.75);
    EXPECT_NO_THROW(szego::eval_disc(u, 0.75));
    try {
        szego::eval_disc(u, 0.8);
        FAIL();
    } catch (const szego::Error& e) {
        EXPECT_EQ(e.kind(), szego::ErrorKind::DomainError);
    }
}

TEST(SobolevNorm, Examples) {
    EXPECT_DOUBLE_EQ(szego::sobolev_norm(HardyFunction({1.0}), 3.0), 1.0);
    EXPECT_DOUBLE_EQ(szego::sobolev_norm(HardyFunction({0.0, 1.0}), 0.5), std::sqrt(2.0));
    EXPECT_NEAR(szego::sobolev_norm(geometric(80), 0.5), 1.0, 1e-15);
}

TEST(SobolevNorm, MonotoneInIndex) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    for (int t = 0; t < 20; ++t) {
        std::vector<cplx> c(12);
        for (auto& x : c) x = {g(rng), g(rng)};
        const HardyFunction u(c);
        double prev = 0.0;
        for (double s = 0.0; s <= 2.0; s += 0.25) {
            const double v = szego::sobolev_norm(u, s);
            EXPECT_GE(v, prev);
            prev = v;
        }
    }
}

TEST(SobolevNorm, ParsevalAgainstQuadrature) {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    for (std::size_t M : {1u, 7u, 64u, 256u}) {
        std::vector<cplx> c(M);
        for (auto& x : c) x = {g(rng), g(rng)};
        const HardyFunction u(c);
        const auto vals = szego::circle_samples(u, 2 * M + 2);
        double q = 0.0;
        for (const auto& v : vals) q += std::norm(v);
        q /= static_cast<double>(vals.size());
        const double n = szego::l2_norm(u);
        EXPECT_NEAR(q, n * n, 1e-10 * n * n);
    }
}

TEST(WeightedFirstMoment, Examples) {
    EXPECT_NEAR(szego::weighted_first_moment(geometric(80)), 1.5, 1e-14);
    EXPECT_EQ(szego::weighted_first_moment(HardyFunction({3.0})), 0.0);
    EXPECT_EQ(szego::weighted_first_moment(HardyFunction({0.0, 2.0})), 2.0);
}

TEST(WeightedFirstMoment, RejectsNegativeOrComplex) {
    for (const auto& u : {HardyFunction({1.0, -0.1}), HardyFunction({1.0, cplx{0.5, 0.01}})}) {
        try {
            szego::weighted_first_moment(u);
            FAIL();
        } catch (const szego::Error& e) {
            EXPECT_EQ(e.kind(), szego::ErrorKind::NegativeCoefficients);
        }
    }
    EXPECT_NO_THROW(szego::weighted_first_moment(HardyFunction({1.0, -1e-12})));
}

TEST(BesovSeminorm, Examples) {
    EXPECT_NEAR(szego::besov_seminorm(HardyFunction({1.0}), 1.7), 1.0, 1e-14);
    std::vector<cplx> c(5, 0.0);
    c[4] = 1.0;
    EXPECT_NEAR(szego::besov_seminorm(HardyFunction(c), 2.0), 4.0, 1e-14);
    EXPECT_THROW(szego::besov_seminorm(HardyFunction({1.0}), 0.0), szego::Error);
}

TEST(BesovSeminorm, GeometricMatchesBlockSums) {
    // For p = 2 each block integral is the block's l2 mass.
    const auto u = geometric(64);
    double expected = 0.0;
    for (std::size_t n = 0; n < 64; ++n) {
        const std::size_t j = n < 2 ? 0 : static_cast<std::size_t>(std::floor(std::log2(static_cast<double>(n))));
        expected += std::ldexp(std::norm(u[static_cast<long>(n)]), static_cast<int>(j));
    }
    EXPECT_NEAR(szego::besov_seminorm(u, 2.0), expected, 1e-13);
}

TEST(DiscSamples, Examples) {
    const auto one = szego::coeffs_from_disc_samples([](cplx) { return cplx{1.0}; }, 16);
    EXPECT_NEAR(std::abs(one[0] - 1.0), 0.0, 1e-14);
    for (long n = 1; n < 16; ++n) EXPECT_NEAR(std::abs(one[n]), 0.0, 1e-12);

    const auto geo = szego::coeffs_from_disc_samples([](cplx z) { return 0.75 / (1.0 - 0.5 * z); }, 32);
    for (long n = 0; n < 32; ++n) EXPECT_NEAR(std::abs(geo[n] - 0.75 * std::pow(0.5, n)), 0.0, 1e-12);
    EXPECT_EQ(geo.declared_radius(), 0.75);

    const auto cube = szego::coeffs_from_disc_samples([](cplx z) { return z * z * z; }, 8);
    for (long n = 0; n < 8; ++n) EXPECT_NEAR(std::abs(cube[n] - (n == 3 ? 1.0 : 0.0)), 0.0, 1e-12);
}

TEST(DiscSamples, TwoRadiusAgreement) {
    auto f = [](cplx z) { return std::exp(z) / (2.0 - z); };
    szego::DiscSampling a, b;
    a.check = b.check = false;
    b.radius = 0.75 * 0.9;
    const auto ca = szego::coeffs_from_disc_samples(f, 24, a);
    const auto cb = szego::coeffs_from_disc_samples(f, 24, b);
    for (long n = 0; n < 24; ++n) EXPECT_NEAR(std::abs(ca[n] - cb[n]), 0.0, 1e-9);
}

TEST(DiscSamples, DetectsSingularityInside) {
    // pole between the check circle (0.675) and the sampling circle (0.75)
    auto f = [](cplx z) { return 1.0 / (0.7 - z); };
    try {
        szego::coeffs_from_disc_samples(f, 16);
        FAIL();
    } catch (const szego::Error& e) {
        EXPECT_EQ(e.kind(), szego::ErrorKind::InconsistentSamples);
    }
}

}  // namespace
