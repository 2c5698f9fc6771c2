#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "szego/common.hpp"

namespace szego {

struct SpectralPair {
    double s = 0.0;
    double psi = 0.0;
};

/// Action-angle data (s_r, psi_r), r = 1..2N, with s strictly decreasing.
///
/// Accessors are 0-based: rho(j) is s_{2j+1}, sigma(k) is s_{2k+2} in the
/// 1-based numbering of the merged list.
class SpectralData {
public:
    SpectralData() = default;

    explicit SpectralData(std::vector<SpectralPair> pairs) : pairs_(std::move(pairs)) {
        require(!pairs_.empty() && pairs_.size() % 2 == 0,
                "spectral data needs a nonempty even number of pairs, got " + std::to_string(pairs_.size()));
        for (std::size_t r = 0; r < pairs_.size(); ++r) {
            const auto& p = pairs_[r];
            require(std::isfinite(p.s) && std::isfinite(p.psi), "non-finite entry at r=" + std::to_string(r + 1));
            require(p.s > 0.0, "s must be positive, violated at r=" + std::to_string(r + 1));
            if (r > 0 && !(pairs_[r - 1].s > p.s)) fail(ErrorKind::InvalidArgument, "strict decrease violated at r=" + std::to_string(r + 1));
        }
    }

    SpectralData(const std::vector<double>& s, const std::vector<double>& psi) : SpectralData(zip(s, psi)) {}

    std::size_t N() const noexcept { return pairs_.size() / 2; }
    std::size_t size() const noexcept { return pairs_.size(); }
    const std::vector<SpectralPair>& pairs() const noexcept { return pairs_; }
    const SpectralPair& operator[](std::size_t r) const { return pairs_[r]; }

    double rho(std::size_t j) const { return pairs_[2 * j].s; }
    double sigma(std::size_t k) const { return pairs_[2 * k + 1].s; }
    cplx rho_phase(std::size_t j) const { return std::polar(pairs_[2 * j].s, pairs_[2 * j].psi); }
    cplx sigma_phase(std::size_t k) const { return std::polar(pairs_[2 * k + 1].s, pairs_[2 * k + 1].psi); }

    std::vector<double> s() const {
        std::vector<double> out;
        for (const auto& p : pairs_) out.push_back(p.s);
        return out;
    }
    std::vector<double> psi() const {
        std::vector<double> out;
        for (const auto& p : pairs_) out.push_back(p.psi);
        return out;
    }
    std::vector<double> rhos() const {
        std::vector<double> out;
        for (std::size_t j = 0; j < N(); ++j) out.push_back(rho(j));
        return out;
    }
    std::vector<double> sigmas() const {
        std::vector<double> out;
        for (std::size_t k = 0; k < N(); ++k) out.push_back(sigma(k));
        return out;
    }

    /// max_r s_{r+1}/s_r.
    double delta() const {
        double d = 0.0;
        for (std::size_t r = 0; r + 1 < pairs_.size(); ++r) d = std::max(d, pairs_[r + 1].s / pairs_[r].s);
        return d;
    }

    bool angles_zero(double tol = 0.0) const {
        for (const auto& p : pairs_)
            if (std::abs(p.psi) > tol) return false;
        return true;
    }

private:
    static std::vector<SpectralPair> zip(const std::vector<double>& s, const std::vector<double>& psi) {
        require(s.size() == psi.size(), "s and psi must have the same length");
        std::vector<SpectralPair> out;
        for (std::size_t r = 0; r < s.size(); ++r) out.push_back({s[r], psi[r]});
        return out;
    }

    std::vector<SpectralPair> pairs_;
};

}  // namespace szego
