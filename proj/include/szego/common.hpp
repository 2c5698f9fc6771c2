#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace szego {

using cplx = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

//
// error reporting
//
// Every failure carries a kind so that front ends can distinguish bad input
// from a numerical check that did not pass.
//
enum class ErrorKind {
    InvalidArgument,
    ParseError,
    DomainError,
    NegativeCoefficients,
    InconsistentSamples,
    InsufficientTruncation,
    DegenerateSpectrum,
    SingularMatrix,
    AnglesNotZero,
    BlowupDetected,
    NearPole,
    ZeroOnContour,
    UnresolvedContour,
    NonzeroIndex,
    SingularTruncation,
};

inline const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::DomainError: return "DomainError";
        case ErrorKind::NegativeCoefficients: return "NegativeCoefficients";
        case ErrorKind::InconsistentSamples: return "InconsistentSamples";
        case ErrorKind::InsufficientTruncation: return "InsufficientTruncation";
        case ErrorKind::DegenerateSpectrum: return "DegenerateSpectrum";
        case ErrorKind::SingularMatrix: return "SingularMatrix";
        case ErrorKind::AnglesNotZero: return "AnglesNotZero";
        case ErrorKind::BlowupDetected: return "BlowupDetected";
        case ErrorKind::NearPole: return "NearPole";
        case ErrorKind::ZeroOnContour: return "ZeroOnContour";
        case ErrorKind::UnresolvedContour: return "UnresolvedContour";
        case ErrorKind::NonzeroIndex: return "NonzeroIndex";
        case ErrorKind::SingularTruncation: return "SingularTruncation";
    }
    return "Unknown";
}

/// True for errors caused by malformed input rather than by a failed numerical check.
inline bool is_validation_error(ErrorKind kind) {
    return kind == ErrorKind::InvalidArgument || kind == ErrorKind::ParseError;
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool condition, const std::string& what) {
    if (!condition) fail(ErrorKind::InvalidArgument, what);
}

//
// numerical thresholds shared by all modules; every entry point takes a
// Tolerances so that callers (and the CLI) can override them
//
struct Tolerances {
    double positive = 1e-10;            // "nonnegative coefficient" slack
    double rank = 1e-12;                // eigenvalue floor, relative to the largest
    double eigen_gap = 1e-9;            // merge / interlacing slack, relative to rho_1
    double denominator = 1e-13;         // |a^2 - b^2| floor, relative to max(a^2, b^2)
    double condition = 1e12;            // ceiling on the equilibrated condition number
    double pole = 1e-6;                 // relative distance to a pole of F_gamma
    double zero = 1e-9;                 // contour zero guard, relative to max modulus
    double tail = 1e-10;                // discarded / total trace
    double sample_consistency = 1e-9;   // two-radius coefficient agreement
    double series = 1e-17;              // truncation target for F_gamma type series
};

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline bool all_finite(const std::vector<cplx>& v) {
    for (const auto& x : v)
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
    return true;
}

/// a^2 - b^2 evaluated as (a - b)(a + b).
inline double diff_of_squares(double a, double b) { return (a - b) * (a + b); }

}  // namespace szego
