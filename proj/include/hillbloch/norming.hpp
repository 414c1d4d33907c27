#pragma once

// Norming numbers of a one-sided potential.
//
// At the degenerate quasimomenta (t in pi Z) the two Bloch solutions
// collide; the coefficient of the secular direction survives as a sequence
// of constants s_n, one per colliding pair.  They admit the closed sum
//
//     s_n = q_n + sum over compositions (n_1,...,n_k) of prefixes of n,
//                 every partial sum m <= n-1, with weight
//                 prod_m [ (2 pi m)(2 pi (n - m)) ]^{-1},
//
// i.e. the Bloch composition sum with the gap factor frozen at its
// degenerate value.  The weights never vanish, so s_n is defined for every
// potential.  The same dynamic program, read triangularly, inverts the map
// (see inverse.hpp).

#include "hillbloch/common.hpp"
#include "hillbloch/potential.hpp"

#include <limits>
#include <sstream>
#include <utility>

namespace hillbloch {

enum class NormingSource {
    computed,       // produced by norming_numbers from a potential
    user_supplied,  // parsed or constructed directly
};

// s_1..s_M, 1-based through value(n).
template <typename Real>
class NormingSequence {
public:
    NormingSequence() = default;

    explicit NormingSequence(ComplexVector<Real> values,
                             NormingSource source = NormingSource::user_supplied)
        : values_(std::move(values)), source_(source) {
        for (Eigen::Index k = 0; k < values_.size(); ++k) {
            if (!is_finite(values_[k])) {
                std::ostringstream os;
                os << "norming number s_" << (k + 1) << " is not finite";
                throw ValidationError(os.str());
            }
        }
    }

    int length() const { return static_cast<int>(values_.size()); }
    const ComplexVector<Real>& values() const { return values_; }
    NormingSource source() const { return source_; }

    Complex<Real> value(int n) const {
        if (n < 1 || n > length()) {
            std::ostringstream os;
            os << "norming index " << n << " outside stored range 1.." << length();
            throw ValidationError(os.str());
        }
        return values_[n - 1];
    }

private:
    ComplexVector<Real> values_;
    NormingSource source_ = NormingSource::user_supplied;
};

// The composition sum s_n - q_n evaluated from raw coefficients q_1..q_K
// (entries beyond the vector are zero).  Reads only q_1..q_{n-1}: that
// triangularity is what the inverse recursion relies on, so keep it.
template <typename Real>
Complex<Real> norming_correction(const ComplexVector<Real>& coeffs, int n) {
    if (n < 1) throw ValidationError("norming index must be >= 1");
    auto q = [&](int j) -> Complex<Real> {
        return (j >= 1 && j <= static_cast<int>(coeffs.size())) ? coeffs[j - 1]
                                                                : Complex<Real>(0);
    };
    Complex<Real> total(0);
    ComplexVector<Real> h(n);  // h[m]: weighted sum over compositions of m
    for (int m = 1; m <= n - 1; ++m) {
        const Real w = Real(1) / ((two_pi_v<Real> * Real(m)) * (two_pi_v<Real> * Real(n - m)));
        Complex<Real> acc = q(m);
        for (int m2 = 1; m2 < m; ++m2) acc += h[m2] * q(m - m2);
        h[m] = w * acc;
        total += h[m] * q(n - m);
    }
    return total;
}

// Forward map: s_1..s_count from the potential.  O(count^2) overall.
template <typename Real>
NormingSequence<Real> norming_numbers(const PotentialSpec<Real>& spec, int count) {
    if (count < 1) throw ValidationError("norming sequence length must be positive");
    ComplexVector<Real> s(count);
    for (int n = 1; n <= count; ++n) {
        s[n - 1] = spec.coeff(n) + norming_correction(spec.coeffs(), n);
    }
    return NormingSequence<Real>(std::move(s), NormingSource::computed);
}

// Oracle: enumerate the compositions literally.  Exponential in n, guarded.
template <typename Real>
Complex<Real> norming_number_bruteforce(const PotentialSpec<Real>& spec, int n) {
    if (n < 1) throw ValidationError("norming index must be >= 1");
    if (n > ComplexityGuard::max_bruteforce_index) {
        std::ostringstream os;
        os << "brute-force norming sum at n=" << n << " would visit 2^" << (n - 1)
           << " compositions; limit is n <= " << ComplexityGuard::max_bruteforce_index;
        throw ComplexityGuard(os.str());
    }
    Complex<Real> total = spec.coeff(n);
    auto extend = [&](auto&& self, int partial, const Complex<Real>& prefix) -> void {
        for (int part = 1; partial + part <= n - 1; ++part) {
            const Complex<Real> q = spec.coeff(part);
            if (q == Complex<Real>(0)) continue;
            const int sum = partial + part;
            const Real weight =
                Real(1) / ((two_pi_v<Real> * Real(sum)) * (two_pi_v<Real> * Real(n - sum)));
            const Complex<Real> term = prefix * q * weight;
            total += term * spec.coeff(n - sum);
            self(self, sum, term);
        }
    };
    extend(extend, 0, Complex<Real>(1));
    return total;
}

// B(n) = sum_{k=1}^{n-1} 1/(k(n-k)); the combinatorial weight that controls
// the correction size.  B(1) = 0, B(2) = B(3) = 1 exactly, and
// B(n) = 2 H_{n-1} / n decays like 2 ln(n)/n.
template <typename Real>
Real harmonic_split_sum(int n) {
    if (n < 1) throw ValidationError("harmonic split sum needs n >= 1");
    Real sum(0);
    for (int k = 1; k <= n - 1; ++k) sum += Real(1) / (Real(k) * Real(n - k));
    return sum;
}

// Certified bound on |s_n - q_n|: with M = max |q_m| the compositions with
// k parts contribute at most M^{k+1} B(n)^k (2 pi)^{-2k} in total, so
//
//     |s_n - q_n| <= sum_{k=1}^{n-1} M (M B(n) / (2 pi)^2)^k.
//
// Returns +inf when the ratio M B(n)/(2 pi)^2 reaches 1 (bound not usable),
// never throws for that.
template <typename Real>
Real norming_tail_bound(const PotentialSpec<Real>& spec, int n) {
    if (n < 1) throw ValidationError("norming index must be >= 1");
    const Real M = spec.coeff_bound();
    const Real ratio = M * harmonic_split_sum<Real>(n) / (two_pi_v<Real> * two_pi_v<Real>);
    if (ratio >= Real(1)) return std::numeric_limits<Real>::infinity();
    Real bound(0);
    Real power(1);
    for (int k = 1; k <= n - 1; ++k) {
        power *= ratio;
        bound += M * power;
    }
    return bound;
}

}  // namespace hillbloch
