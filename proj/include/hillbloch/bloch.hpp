#pragma once

// Bloch spectrum and eigenfunctions of L = -d^2/dx^2 + q with a one-sided q.
//
// For every quasimomentum t in C and band index n in Z the number
//
//     lambda_n(t) = (2 pi n + t)^2
//
// is an eigenvalue of L y = lambda y under y(x+1) = e^{it} y(x), with
// eigenfunction
//
//     Psi_{n,t}(x) = sum_{p >= 0} c_p e^{i (2 pi (n+p) + t) x},   c_0 = 1.
//
// Inserting the ansatz gives the triangular recurrence
//
//     (lambda_n(t) - lambda_{n+p}(t)) c_p = sum_{m=1}^{min(p,N)} q_m c_{p-m},
//
// whose denominator factors as -2 pi p (2 pi (2n+p) + 2t).  Three
// evaluations of the same coefficient are provided: the O(P N) recurrence
// (production), an explicit weighted-composition dynamic program, and a
// literal enumeration of all 2^(p-1) compositions (oracle, guarded).

#include "hillbloch/common.hpp"
#include "hillbloch/potential.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace hillbloch {

// Point (n, t) on the Bloch variety: band index and quasimomentum.
template <typename Real>
struct BlochIndex {
    int n = 0;
    Complex<Real> t{};
};

// lambda_n(t) = (2 pi n + t)^2.
template <typename Real>
Complex<Real> bloch_eigenvalue(const BlochIndex<Real>& index) {
    if (!is_finite(index.t)) throw ValidationError("quasimomentum t is not finite");
    const Complex<Real> base = Complex<Real>(two_pi_v<Real> * Real(index.n)) + index.t;
    return base * base;
}

namespace detail {

// The linear factor 2 pi (2n + p) + 2t of the eigenvalue gap
// lambda_n - lambda_{n+p} = -2 pi p * (2 pi (2n+p) + 2t).
template <typename Real>
Complex<Real> resonance_factor(const BlochIndex<Real>& index, int p) {
    return Complex<Real>(two_pi_v<Real> * Real(2 * index.n + p)) + Real(2) * index.t;
}

// Scale-aware vanishing test: treat the factor as resonant when it is
// below 1e-12 relative to the natural frequency scale of (n, t).
template <typename Real>
bool factor_vanishes(const BlochIndex<Real>& index, const Complex<Real>& factor) {
    const Real scale =
        Real(1) + two_pi_v<Real> * Real(std::abs(index.n)) + std::abs(index.t);
    return std::abs(factor) < Real(1e-12) * scale;
}

template <typename Real>
void require_finite(const BlochIndex<Real>& index) {
    if (!is_finite(index.t)) throw ValidationError("quasimomentum t is not finite");
}

}  // namespace detail

// d_{p,n}(t) = 1 / (lambda_n(t) - lambda_{n+p}(t)).  Throws
// ResonantDenominator when the gap vanishes (p = 0, or a mirrored pair
// 2n + p = -t/pi on the real axis).
template <typename Real>
Complex<Real> resonance_weight(const BlochIndex<Real>& index, int p) {
    detail::require_finite(index);
    const Complex<Real> factor = detail::resonance_factor(index, p);
    if (p == 0 || detail::factor_vanishes(index, factor)) {
        throw ResonantDenominator(index.n, p,
                                  Complex<double>(double(index.t.real()), double(index.t.imag())));
    }
    return Real(-1) / (two_pi_v<Real> * Real(p) * factor);
}

// Truncated Bloch eigenfunction: the index, its eigenvalue, and c_0..c_P.
// Invariants: c_0 == 1 exactly, all coefficients finite, eigenvalue is
// recomputed from the index (never caller-supplied).
template <typename Real>
class BlochSeries {
public:
    BlochSeries(BlochIndex<Real> index, ComplexVector<Real> coeffs)
        : index_(index), eigenvalue_(bloch_eigenvalue(index)), coeffs_(std::move(coeffs)) {
        if (coeffs_.size() < 1) throw ValidationError("Bloch series needs at least c_0");
        if (coeffs_[0] != Complex<Real>(1)) {
            throw ValidationError("Bloch series must be normalized with c_0 = 1");
        }
        for (Eigen::Index k = 0; k < coeffs_.size(); ++k) {
            if (!is_finite(coeffs_[k])) {
                std::ostringstream os;
                os << "Bloch coefficient c_" << k << " is not finite";
                throw ValidationError(os.str());
            }
        }
    }

    const BlochIndex<Real>& index() const { return index_; }
    Complex<Real> eigenvalue() const { return eigenvalue_; }

    // Truncation order P (the series stores c_0..c_P).
    int terms() const { return static_cast<int>(coeffs_.size()) - 1; }

    const ComplexVector<Real>& coeffs() const { return coeffs_; }

    Complex<Real> coeff(int p) const {
        if (p < 0 || p > terms()) {
            std::ostringstream os;
            os << "Bloch coefficient index " << p << " outside stored range 0.." << terms();
            throw ValidationError(os.str());
        }
        return coeffs_[p];
    }

private:
    BlochIndex<Real> index_;
    Complex<Real> eigenvalue_;
    ComplexVector<Real> coeffs_;
};

// Production path: the triangular recurrence, one division per coefficient.
template <typename Real>
BlochSeries<Real> bloch_series(const PotentialSpec<Real>& spec, const BlochIndex<Real>& index,
                               int terms) {
    detail::require_finite(index);
    if (terms < 1) throw ValidationError("Bloch series truncation order must be positive");

    ComplexVector<Real> c(terms + 1);
    c[0] = Complex<Real>(1);
    for (int p = 1; p <= terms; ++p) {
        const Complex<Real> factor = detail::resonance_factor(index, p);
        if (detail::factor_vanishes(index, factor)) {
            throw ResonantDenominator(
                index.n, p, Complex<double>(double(index.t.real()), double(index.t.imag())));
        }
        const Complex<Real> gap = -two_pi_v<Real> * Real(p) * factor;
        Complex<Real> conv(0);
        const int reach = std::min(p, spec.degree());
        for (int m = 1; m <= reach; ++m) conv += spec.coeff(m) * c[p - m];
        c[p] = conv / gap;
    }
    return BlochSeries<Real>(index, std::move(c));
}

// Explicit form of a single coefficient: c_p = d_{p,n}(t) (q_p + correction),
// where the correction is a sum over compositions of p, evaluated by a
// dynamic program over weighted prefix sums h(m).
template <typename Real>
Complex<Real> bloch_coefficient_explicit(const PotentialSpec<Real>& spec,
                                         const BlochIndex<Real>& index, int p) {
    if (p < 1) throw ValidationError("explicit Bloch coefficient needs p >= 1");
    const Complex<Real> d = resonance_weight(index, p);  // also screens resonance at p

    // h(m) accumulates all compositions with partial sum m, each carrying the
    // interior weight [ (2 pi (2n + p - m) + 2t) * 2 pi (m - p) ]^{-1}.
    ComplexVector<Real> h(p);  // h[0] unused; h[m] for m = 1..p-1
    Complex<Real> total = spec.coeff(p);
    for (int m = 1; m <= p - 1; ++m) {
        const Complex<Real> factor = detail::resonance_factor(index, p - m);
        if (detail::factor_vanishes(index, factor)) {
            throw ResonantDenominator(
                index.n, p - m,
                Complex<double>(double(index.t.real()), double(index.t.imag())));
        }
        const Complex<Real> w = Real(1) / (factor * (two_pi_v<Real> * Real(m - p)));
        Complex<Real> acc = spec.coeff(m);
        for (int m2 = 1; m2 < m; ++m2) acc += h[m2] * spec.coeff(m - m2);
        h[m] = w * acc;
        total += h[m] * spec.coeff(p - m);
    }
    return d * total;
}

// Oracle path: literally enumerate every composition (n_1,...,n_k) of a
// prefix with all partial sums <= p-1, multiply the corresponding weights
// and coefficients, and add the closing q-factor.  Exponential in p; the
// guard refuses p beyond ComplexityGuard::max_bruteforce_index.
template <typename Real>
Complex<Real> bloch_coefficient_bruteforce(const PotentialSpec<Real>& spec,
                                           const BlochIndex<Real>& index, int p) {
    if (p < 1) throw ValidationError("brute-force Bloch coefficient needs p >= 1");
    if (p > ComplexityGuard::max_bruteforce_index) {
        std::ostringstream os;
        os << "brute-force composition sum at p=" << p << " would visit 2^" << (p - 1)
           << " compositions; limit is p <= " << ComplexityGuard::max_bruteforce_index;
        throw ComplexityGuard(os.str());
    }
    const Complex<Real> d = resonance_weight(index, p);

    Complex<Real> total = spec.coeff(p);
    // Depth-first over composition prefixes; `prefix` carries the product of
    // the q-factors and interior weights accumulated so far.
    auto extend = [&](auto&& self, int partial, const Complex<Real>& prefix) -> void {
        for (int part = 1; partial + part <= p - 1; ++part) {
            const Complex<Real> q = spec.coeff(part);
            if (q == Complex<Real>(0)) continue;
            const int sum = partial + part;
            const Complex<Real> factor = detail::resonance_factor(index, p - sum);
            if (detail::factor_vanishes(index, factor)) {
                throw ResonantDenominator(
                    index.n, p - sum,
                    Complex<double>(double(index.t.real()), double(index.t.imag())));
            }
            const Complex<Real> term =
                prefix * q / (factor * (two_pi_v<Real> * Real(sum - p)));
            total += term * spec.coeff(p - sum);
            self(self, sum, term);
        }
    };
    extend(extend, 0, Complex<Real>(1));
    return d * total;
}

// Psi(x) = e^{i (2 pi n + t) x} * sum_{p=0}^{P} c_p e^{i 2 pi p x}.
template <typename Real>
Complex<Real> evaluate_bloch(const BlochSeries<Real>& series, Real x) {
    if (!std::isfinite(x)) throw ValidationError("Bloch evaluation point is not finite");
    const Complex<Real> i(0, 1);
    const Complex<Real> rotor = std::exp(i * (two_pi_v<Real> * x));
    Complex<Real> sum(0);
    Complex<Real> phase(1);
    for (int p = 0; p <= series.terms(); ++p) {
        sum += series.coeff(p) * phase;
        phase *= rotor;
    }
    const Complex<Real> carrier =
        std::exp(i * (Complex<Real>(two_pi_v<Real> * Real(series.index().n)) +
                      series.index().t) * x);
    return carrier * sum;
}

}  // namespace hillbloch
