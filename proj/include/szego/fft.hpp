#pragma once

#include <vector>

#include <unsupported/Eigen/FFT>

#include "szego/common.hpp"

namespace szego::fft {

//
// Normalized discrete Fourier transforms on K equispaced circle nodes
// x_k = 2*pi*k/K.
//
//   coefficients:  c_n = (1/K) sum_k f(x_k) exp(-i n x_k)
//   samples:       f(x_k) = sum_n c_n exp(i n x_k)
//
// Indices follow the usual wrap-around: entry n >= K/2 stands for n - K.
//

inline std::vector<cplx> coefficients(const std::vector<cplx>& samples) {
    Eigen::FFT<double> engine;
    std::vector<cplx> out;
    engine.fwd(out, samples);
    const double scale = 1.0 / static_cast<double>(samples.size());
    for (auto& c : out) c *= scale;
    return out;
}

inline std::vector<cplx> samples(const std::vector<cplx>& coeffs) {
    Eigen::FFT<double> engine;
    engine.SetFlag(Eigen::FFT<double>::Unscaled);
    std::vector<cplx> out;
    engine.inv(out, coeffs);
    return out;
}

/// Wrap-around slot of the signed frequency n in a length-K transform.
inline std::size_t slot(long n, std::size_t K) {
    const long k = static_cast<long>(K);
    return static_cast<std::size_t>(((n % k) + k) % k);
}

/// Smallest power of two >= n.
inline std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

}  // namespace szego::fft
