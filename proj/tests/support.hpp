#pragma once

#include <random>
#include <vector>

#include "szego/inverse.hpp"
#include "szego/spectral_data.hpp"

namespace szego::testing {

// Decreasing s with s1 ~ U[0.5, 1] and ratios s_{r+1}/s_r ~ U[lo, hi]. Data whose
// reconstruction has a pole inside |z| < 1/pole_cap are redrawn.
inline SpectralData random_spectral_data(std::mt19937_64& rng, std::size_t N, double lo, double hi,
                                         bool zero_angles = false, double pole_cap = 0.92) {
    std::uniform_real_distribution<double> first(0.5, 1.0), ratio(lo, hi), angle(0.0, two_pi);
    while (true) {
        std::vector<double> s{first(rng)}, psi;
        for (std::size_t r = 1; r < 2 * N; ++r) s.push_back(s.back() * ratio(rng));
        for (std::size_t r = 0; r < 2 * N; ++r) psi.push_back(zero_angles ? 0.0 : angle(rng));
        SpectralData d(s, psi);
        if (operator_bounds(d).spectral_radius <= pole_cap) return d;
    }
}

inline double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace szego::testing
