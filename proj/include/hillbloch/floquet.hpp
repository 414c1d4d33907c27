#pragma once

// Independent Floquet oracle for everything the series side claims.
//
// The Hill equation -y'' + q(x) y = lambda y is integrated over one period
// as the first-order system (y, y')' = (y', (q - lambda) y) with a
// fixed-step classical RK4 (global error O(h^4), deterministic).  The
// monodromy matrix collects the canonical solutions theta (1,0) and phi
// (0,1) at x = 1; its determinant is the Wronskian and must equal 1, and
// its trace is the Hill discriminant.  For lambda = (2 pi n + t)^2 the
// discriminant must equal 2 cos t -- that identity, and the direct
// quasi-periodicity check of a truncated Bloch series, are the oracles the
// closed forms are tested against.

#include "hillbloch/bloch.hpp"
#include "hillbloch/common.hpp"
#include "hillbloch/potential.hpp"
#include "hillbloch/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hillbloch {

template <typename Real>
struct MonodromyMatrix {
    Matrix2c<Real> transfer;  // columns: theta, phi at x = 1 (values; derivatives below)
    Complex<Real> lambda;
    Real det_residual = Real(0);  // |det - 1|, the Wronskian drift

    Complex<Real> determinant() const {
        return transfer(0, 0) * transfer(1, 1) - transfer(0, 1) * transfer(1, 0);
    }
    Complex<Real> trace() const { return transfer(0, 0) + transfer(1, 1); }
};

// One period of -y'' + q y = lambda y from initial data (y0, dy0);
// returns (y(1), y'(1)).  steps is the RK4 step count (>= 64).
template <typename Real>
Vector2c<Real> integrate_hill(const PotentialSpec<Real>& spec, const Complex<Real>& lambda,
                              const Complex<Real>& y0, const Complex<Real>& dy0, int steps) {
    if (steps < 64) throw ValidationError("integrator needs at least 64 steps per period");
    if (!is_finite(lambda)) throw ValidationError("spectral parameter lambda is not finite");
    if (!is_finite(y0) || !is_finite(dy0)) {
        throw ValidationError("initial data for the Hill equation is not finite");
    }

    const Real h = Real(1) / Real(steps);
    auto rhs = [&](Real x, const Vector2c<Real>& u) -> Vector2c<Real> {
        return Vector2c<Real>(u[1], (evaluate_potential(spec, x) - lambda) * u[0]);
    };

    Vector2c<Real> u(y0, dy0);
    for (int k = 0; k < steps; ++k) {
        const Real x = Real(k) * h;
        const Vector2c<Real> k1 = rhs(x, u);
        const Vector2c<Real> k2 = rhs(x + h / 2, u + (h / 2) * k1);
        const Vector2c<Real> k3 = rhs(x + h / 2, u + (h / 2) * k2);
        const Vector2c<Real> k4 = rhs(x + h, u + h * k3);
        u += (h / 6) * (k1 + Real(2) * k2 + Real(2) * k3 + k4);
    }
    return u;
}

template <typename Real>
MonodromyMatrix<Real> monodromy(const PotentialSpec<Real>& spec, const Complex<Real>& lambda,
                                int steps) {
    const Vector2c<Real> theta =
        integrate_hill(spec, lambda, Complex<Real>(1), Complex<Real>(0), steps);
    const Vector2c<Real> phi =
        integrate_hill(spec, lambda, Complex<Real>(0), Complex<Real>(1), steps);

    MonodromyMatrix<Real> m;
    m.transfer << theta[0], phi[0], theta[1], phi[1];
    m.lambda = lambda;
    m.det_residual = std::abs(m.determinant() - Complex<Real>(1));
    return m;
}

// Hill discriminant Delta(lambda) = theta(1) + phi'(1).  Equals 2 cos t
// whenever lambda = (2 pi n + t)^2, for every one-sided q.
template <typename Real>
Complex<Real> hill_discriminant(const PotentialSpec<Real>& spec, const Complex<Real>& lambda,
                                int steps = 1024) {
    return monodromy(spec, lambda, steps).trace();
}

// Quasi-periodicity check of a truncated Bloch series: integrate from the
// series' own initial data (Psi(0), Psi'(0)) and measure the defect
//
//     max( |y(1) - e^{it} Psi(0)| / S,  |y'(1) - e^{it} Psi'(0)| / (S (1 + mu)) )
//
// with S = sum |c_p| and mu = |2 pi n + t| (so both components are read on
// the same relative scale).  With tolerance <= 0 the pass threshold is
// derived from the two error sources: the RK4 global error ~ omega^5 h^4/120
// and the truncation defect, driven by the forcing the dropped coefficients
// leave behind.
template <typename Real>
VerificationReport verify_bloch(const PotentialSpec<Real>& spec, const BlochSeries<Real>& series,
                                int steps, double tolerance = 0.0) {
    const BlochIndex<Real>& index = series.index();
    const Complex<Real> i(0, 1);
    const int P = series.terms();

    // Initial data straight from the truncated series (derivative analytic).
    Complex<Real> psi0(0), dpsi0(0);
    Real magnitude(0);
    for (int p = 0; p <= P; ++p) {
        const Complex<Real> freq =
            Complex<Real>(two_pi_v<Real> * Real(index.n + p)) + index.t;
        psi0 += series.coeff(p);
        dpsi0 += series.coeff(p) * i * freq;
        magnitude += std::abs(series.coeff(p));
    }

    const Vector2c<Real> end = integrate_hill(spec, series.eigenvalue(), psi0, dpsi0, steps);
    const Complex<Real> multiplier = std::exp(i * index.t);
    const Real mu = std::abs(Complex<Real>(two_pi_v<Real> * Real(index.n)) + index.t);

    const Real value_defect = std::abs(end[0] - multiplier * psi0) / magnitude;
    const Real deriv_defect =
        std::abs(end[1] - multiplier * dpsi0) / (magnitude * (Real(1) + mu));
    const Real residual = std::max(value_defect, deriv_defect);

    // Forcing left over by truncation: coefficients p = P+1..P+N still fed
    // by the stored tail through the convolution with q.
    Real forcing(0);
    for (int p = P + 1; p <= P + spec.degree(); ++p) {
        Complex<Real> f(0);
        for (int m = p - P; m <= spec.degree(); ++m) f += spec.coeff(m) * series.coeff(p - m);
        forcing += std::abs(f);
    }
    const Real growth = std::exp(std::abs(index.t.imag()));
    const Real omega = mu + std::sqrt(spec.coeffs().size() == 0
                                          ? Real(0)
                                          : spec.coeffs().cwiseAbs().sum());
    const Real h = Real(1) / Real(steps);
    const double integrator_estimate =
        double(std::pow(omega + Real(1), 5) * std::pow(h, 4) / Real(120) * growth);
    const double tail_estimate = double(forcing * growth / magnitude);

    double tol = tolerance;
    if (!(tol > 0)) {
        tol = 10.0 * (integrator_estimate + tail_estimate) +
              1e-12 * double((Real(1) + mu) * (Real(1) + mu));
    }

    std::ostringstream detail;
    detail << "n=" << index.n << " t=(" << index.t.real() << "," << index.t.imag()
           << ") P=" << P << " steps=" << steps;
    VerificationReport report =
        VerificationReport::make("bloch-eigenfunction", detail.str(), double(residual), tol);
    report.metrics["value_defect"] = double(value_defect);
    report.metrics["derivative_defect"] = double(deriv_defect);
    report.metrics["integrator_estimate"] = integrator_estimate;
    report.metrics["tail_estimate"] = tail_estimate;
    report.metrics["series_magnitude"] = double(magnitude);
    return report;
}

}  // namespace hillbloch
