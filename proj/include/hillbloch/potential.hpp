#pragma once

// One-sided trigonometric potentials
//
//     q(x) = sum_{n=1}^{N} q_n e^{i 2 pi n x},   q_n in C.
//
// Only positive frequencies appear; that asymmetry is what makes the Bloch
// coefficient recurrence triangular and the inverse problem solvable by
// back-substitution.  N = 0 (the free operator) is allowed.

#include "hillbloch/common.hpp"

#include <sstream>
#include <utility>

namespace hillbloch {

template <typename Real>
class PotentialSpec {
public:
    using Scalar = Complex<Real>;

    // Zero potential (free Hill operator).
    PotentialSpec() = default;

    // coeffs holds q_1..q_N in order; rejects non-finite entries.
    explicit PotentialSpec(ComplexVector<Real> coeffs) : coeffs_(std::move(coeffs)) {
        for (Eigen::Index k = 0; k < coeffs_.size(); ++k) {
            if (!is_finite(coeffs_[k])) {
                std::ostringstream os;
                os << "potential coefficient q_" << (k + 1) << " is not finite";
                throw ValidationError(os.str());
            }
        }
        coeff_bound_ = coeffs_.size() == 0 ? Real(0) : coeffs_.cwiseAbs().maxCoeff();
    }

    // Highest frequency N present (0 for the zero potential).
    int degree() const { return static_cast<int>(coeffs_.size()); }

    const ComplexVector<Real>& coeffs() const { return coeffs_; }

    // q_n with the one-sided convention: zero for n < 1 or n > N, so series
    // code can index freely without bounds bookkeeping.
    Scalar coeff(int n) const {
        if (n < 1 || n > degree()) return Scalar(0);
        return coeffs_[n - 1];
    }

    // max_n |q_n|; the M that enters every tail estimate.
    Real coeff_bound() const { return coeff_bound_; }

private:
    ComplexVector<Real> coeffs_;
    Real coeff_bound_ = Real(0);
};

// Pointwise value q(x).  x is a point on the period cell; any real works
// since the exponentials are 1-periodic.
template <typename Real>
Complex<Real> evaluate_potential(const PotentialSpec<Real>& spec, Real x) {
    if (!std::isfinite(x)) throw ValidationError("potential evaluation point is not finite");
    const Complex<Real> rotor = std::exp(Complex<Real>(0, two_pi_v<Real> * x));
    Complex<Real> value(0);
    Complex<Real> phase(1);
    for (int n = 1; n <= spec.degree(); ++n) {
        phase *= rotor;  // e^{i 2 pi n x}
        value += spec.coeff(n) * phase;
    }
    return value;
}

}  // namespace hillbloch
