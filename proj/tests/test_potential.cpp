#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hillbloch/potential.hpp"

#include "test_support.hpp"

#include <cmath>
#include <limits>
#include <random>

using hillbloch::ComplexVector;
using hillbloch::PotentialSpec;
using testsupport::C;

TEST_CASE("zero potential is the default") {
    PotentialSpec<double> q;
    CHECK(q.degree() == 0);
    CHECK(q.coeff_bound() == 0.0);
    CHECK(q.coeff(1) == C(0));
    CHECK(hillbloch::evaluate_potential(q, 0.37) == C(0));
}

TEST_CASE("coefficients are one-sided") {
    ComplexVector<double> c(2);
    c[0] = C(1.5, -0.5);
    c[1] = C(0.0, 2.0);
    PotentialSpec<double> q(c);

    CHECK(q.degree() == 2);
    CHECK(q.coeff(1) == c[0]);
    CHECK(q.coeff(2) == c[1]);
    // Everything outside 1..N reads as zero: indices below one never exist
    // for a one-sided potential, indices above N are simply absent.
    CHECK(q.coeff(0) == C(0));
    CHECK(q.coeff(-3) == C(0));
    CHECK(q.coeff(3) == C(0));
    CHECK(q.coeff_bound() == doctest::Approx(2.0));
}

TEST_CASE("pointwise values match an independent exponential sum") {
    std::mt19937 rng(2024);
    const PotentialSpec<double> q = testsupport::random_potential(rng, 5, 2.0);

    for (const double x : {0.0, 0.125, 1.0 / 3.0, 0.5, 0.9}) {
        C direct(0);
        for (int n = 1; n <= q.degree(); ++n) {
            direct += q.coeff(n) * std::exp(C(0, hillbloch::two_pi_v<double> * n * x));
        }
        CHECK(std::abs(hillbloch::evaluate_potential(q, x) - direct) < 1e-14);
    }
}

TEST_CASE("single-mode values at rational points") {
    ComplexVector<double> c(1);
    c[0] = C(1, 0);
    PotentialSpec<double> q(c);  // q(x) = e^{i 2 pi x}

    CHECK(std::abs(hillbloch::evaluate_potential(q, 0.25) - C(0, 1)) < 1e-15);
    CHECK(std::abs(hillbloch::evaluate_potential(q, 0.5) - C(-1, 0)) < 1e-15);
    CHECK(std::abs(hillbloch::evaluate_potential(q, 1.0) - C(1, 0)) < 1e-14);
}

TEST_CASE("values are 1-periodic") {
    std::mt19937 rng(99);
    const PotentialSpec<double> q = testsupport::random_potential(rng, 4, 1.5);
    for (const double x : {0.1, 0.42, 0.77}) {
        const C a = hillbloch::evaluate_potential(q, x);
        const C b = hillbloch::evaluate_potential(q, x + 1.0);
        CHECK(std::abs(a - b) < 1e-13);
    }
}

TEST_CASE("non-finite inputs are rejected") {
    ComplexVector<double> bad(2);
    bad[0] = C(1, 0);
    bad[1] = C(std::numeric_limits<double>::quiet_NaN(), 0);
    CHECK_THROWS_AS((void)PotentialSpec<double>(bad), hillbloch::ValidationError);

    ComplexVector<double> inf(1);
    inf[0] = C(std::numeric_limits<double>::infinity(), 0);
    CHECK_THROWS_AS((void)PotentialSpec<double>(inf), hillbloch::ValidationError);

    ComplexVector<double> good(1);
    good[0] = C(1, 0);
    PotentialSpec<double> q(good);
    CHECK_THROWS_AS(hillbloch::evaluate_potential(q, std::numeric_limits<double>::infinity()),
                    hillbloch::ValidationError);
}

TEST_CASE("error kinds are stable strings") {
    try {
        hillbloch::evaluate_potential(PotentialSpec<double>(),
                                      std::numeric_limits<double>::quiet_NaN());
        FAIL("expected a throw");
    } catch (const hillbloch::Error& e) {
        CHECK(e.kind() == "validation");
    }
}
