#pragma once

// Shared conventions for the Hill-operator library.
//
// Everything works with the operator
//
//     L y = -y'' + q(x) y,     q(x) = sum_{n=1}^{N} q_n e^{i 2 pi n x},
//
// on the unit period cell [0,1].  Frequencies therefore carry a 2*pi per
// index step, and quasimomentum t enters through the multiplier e^{i t}.
// All public entry points reject NaN/Inf inputs instead of propagating them.

#include <Eigen/Core>

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

namespace hillbloch {

template <typename Real>
using Complex = std::complex<Real>;

// Dense coefficient storage: q_1..q_N, Bloch coefficients c_0..c_P, norming
// numbers s_1..s_M all live in one of these.
template <typename Real>
using ComplexVector = Eigen::Vector<std::complex<Real>, Eigen::Dynamic>;

template <typename Real>
using Matrix2c = Eigen::Matrix<std::complex<Real>, 2, 2>;

template <typename Real>
using Vector2c = Eigen::Vector<std::complex<Real>, 2>;

template <typename Real>
inline constexpr Real pi_v = std::numbers::pi_v<Real>;

template <typename Real>
inline constexpr Real two_pi_v = Real(2) * std::numbers::pi_v<Real>;

template <typename Real>
bool is_finite(const Complex<Real>& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Base error: carries a stable machine-readable kind alongside the message.
// The CLI maps kinds onto its error envelope; library users can switch on
// them without string-matching what().
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

// Malformed input text (JSON syntax, wrong shape, non-finite numbers).
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error("parse", what) {}
};

// Structurally valid input that violates a documented precondition
// (neg. term count, step count too small, out-of-range probe, ...).
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error("validation", what) {}
};

// Input that asks for an object excluded by the model itself, e.g. a
// one-sided potential coefficient at index <= 0.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error("domain", what) {}
};

// A Bloch denominator lambda_n(t) - lambda_{n+p}(t) vanished (mirrored
// index pair).  The offending pair is preserved for diagnostics.
class ResonantDenominator : public Error {
public:
    ResonantDenominator(int n, int p, const Complex<double>& t)
        : Error("resonant-denominator", describe(n, p, t)), n_(n), p_(p), t_(t) {}

    int n() const noexcept { return n_; }
    int p() const noexcept { return p_; }
    const Complex<double>& t() const noexcept { return t_; }

private:
    static std::string describe(int n, int p, const Complex<double>& t) {
        std::ostringstream os;
        os << "eigenvalue denominator vanishes at band offset p=" << p
           << " for n=" << n << ", t=(" << t.real() << "," << t.imag()
           << "): 2pi(2n+p)+2t is resonant";
        return os.str();
    }

    int n_;
    int p_;
    Complex<double> t_;
};

// Brute-force enumerators walk 2^(p-1) compositions; refuse anything past
// p = 22 rather than hang.
class ComplexityGuard : public Error {
public:
    ComplexityGuard(const std::string& what) : Error("complexity-guard", what) {}

    static constexpr int max_bruteforce_index = 22;
};

}  // namespace hillbloch
