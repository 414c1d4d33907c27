#pragma once

// Inverse problem: recover the potential from its norming numbers.
//
// The forward map s_n = q_n + correction(q_1..q_{n-1}) is triangular with
// unit diagonal, so it inverts by straight back-substitution:
//
//     q_1 = s_1,    q_n = s_n - correction(q_1..q_{n-1}).
//
// The map is a bijection on coefficient sequences; no smallness condition
// is needed to run it.  Boundedness of the recovered q is a separate
// question: when every |s_n| stays within the admissible radius
// 2 pi - 2 pi/(2 pi - 1), the recovered coefficients satisfy |q_n| <= 2 pi.

#include "hillbloch/common.hpp"
#include "hillbloch/norming.hpp"
#include "hillbloch/potential.hpp"

#include <algorithm>

namespace hillbloch {

template <typename Real>
struct InverseResult {
    PotentialSpec<Real> spec;
    Real max_modulus = Real(0);  // max_n |q_n| over the recovered prefix
    bool bounded = true;         // max_modulus <= threshold
};

// Radius 2 pi - 2 pi/(2 pi - 1) =~ 5.0939: sup-norm ball of norming
// sequences guaranteed to come from potentials with |q_n| <= 2 pi.
template <typename Real>
Real admissibility_bound() {
    return two_pi_v<Real> - two_pi_v<Real> / (two_pi_v<Real> - Real(1));
}

template <typename Real>
bool check_admissibility(const NormingSequence<Real>& s) {
    const Real radius = admissibility_bound<Real>();
    for (int n = 1; n <= s.length(); ++n) {
        if (std::abs(s.value(n)) > radius) return false;
    }
    return true;
}

// Back-substitution through the same dynamic program the forward map uses;
// q_n depends on s_1..s_n only.  threshold (default 2 pi) only classifies
// the result as bounded or not; it never blocks recovery.
template <typename Real>
InverseResult<Real> recover_potential(const NormingSequence<Real>& s,
                                      Real threshold = two_pi_v<Real>) {
    if (!(threshold > Real(0))) throw ValidationError("boundedness threshold must be positive");
    if (s.length() < 1) throw ValidationError("norming sequence is empty");

    const int count = s.length();
    ComplexVector<Real> q = ComplexVector<Real>::Zero(count);
    Real max_modulus(0);
    for (int n = 1; n <= count; ++n) {
        // norming_correction reads q_1..q_{n-1} only; later entries are
        // still zero and never looked at.
        q[n - 1] = s.value(n) - norming_correction(q, n);
        max_modulus = std::max(max_modulus, std::abs(q[n - 1]));
    }

    InverseResult<Real> result;
    result.spec = PotentialSpec<Real>(std::move(q));
    result.max_modulus = max_modulus;
    result.bounded = max_modulus <= threshold;
    return result;
}

}  // namespace hillbloch
