#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hillbloch/bloch.hpp"

#include "test_support.hpp"

#include <cmath>
#include <random>

using hillbloch::BlochIndex;
using hillbloch::BlochSeries;
using hillbloch::ComplexVector;
using hillbloch::PotentialSpec;
using testsupport::C;

namespace {
const double pi = hillbloch::pi_v<double>;

PotentialSpec<double> single_mode() {
    ComplexVector<double> c(1);
    c[0] = C(1, 0);
    return PotentialSpec<double>(c);  // q(x) = e^{i 2 pi x}
}
}  // namespace

TEST_CASE("eigenvalues are (2 pi n + t)^2 for any t") {
    for (const int n : {-3, -1, 0, 2}) {
        for (const C t : {C(0.0, 0.0), C(1.3, 0.0), C(0.4, -0.8), C(pi, 0.0)}) {
            const C base = 2.0 * pi * n + t;
            CHECK(std::abs(hillbloch::bloch_eigenvalue(BlochIndex<double>{n, t}) - base * base) <
                  1e-12 * (1.0 + std::norm(base)));
        }
    }
}

TEST_CASE("eigenvalues collide in mirrored pairs") {
    // lambda_{-n}(-t) = lambda_n(t): the pairs that merge at t in pi Z.
    for (const int n : {1, 2, 5}) {
        for (const C t : {C(0.3, 0.1), C(2.2, 0.0)}) {
            const C a = hillbloch::bloch_eigenvalue(BlochIndex<double>{n, t});
            const C b = hillbloch::bloch_eigenvalue(BlochIndex<double>{-n, -t});
            CHECK(std::abs(a - b) < 1e-12 * (1.0 + std::abs(a)));
        }
    }
}

TEST_CASE("resonance weight matches the eigenvalue gap") {
    SUBCASE("pinned values") {
        const C w1 = hillbloch::resonance_weight(BlochIndex<double>{0, C(pi / 2, 0)}, 1);
        CHECK(std::abs(w1 - C(-1.0 / (6 * pi * pi), 0)) < 1e-16);
        const C w2 = hillbloch::resonance_weight(BlochIndex<double>{-1, C(0, 0)}, 3);
        CHECK(std::abs(w2 - C(-1.0 / (12 * pi * pi), 0)) < 1e-16);
    }
    SUBCASE("defining identity, random points") {
        std::mt19937 rng(41);
        std::uniform_int_distribution<int> ns(-4, 4);
        for (int trial = 0; trial < 50; ++trial) {
            const int n = ns(rng);
            const C t = testsupport::random_quasimomentum(rng);
            for (const int p : {1, 2, 5, -1}) {
                if (2 * n + p == 0) continue;  // mirrored pair, weight undefined
                const BlochIndex<double> idx{n, t};
                const C gap = hillbloch::bloch_eigenvalue(idx) -
                              hillbloch::bloch_eigenvalue(BlochIndex<double>{n + p, t});
                const C w = hillbloch::resonance_weight(idx, p);
                CHECK(std::abs(w * gap - C(1)) < 1e-12);
            }
        }
    }
}

TEST_CASE("resonant denominators are refused") {
    // p = 0: the gap is identically zero.
    CHECK_THROWS_AS(hillbloch::resonance_weight(BlochIndex<double>{1, C(0.5, 0)}, 0),
                    hillbloch::ResonantDenominator);
    // Mirrored pair 2n + p = 0 at t = 0.
    CHECK_THROWS_AS(hillbloch::resonance_weight(BlochIndex<double>{1, C(0, 0)}, -2),
                    hillbloch::ResonantDenominator);
    // Just inside the scale-aware tolerance: still refused.
    CHECK_THROWS_AS(hillbloch::resonance_weight(BlochIndex<double>{1, C(1e-13, 0)}, -2),
                    hillbloch::ResonantDenominator);
    // Clearly outside: fine.
    CHECK_NOTHROW(hillbloch::resonance_weight(BlochIndex<double>{1, C(1e-9, 0)}, -2));
    // The exception carries the offending pair.
    try {
        hillbloch::resonance_weight(BlochIndex<double>{1, C(0, 0)}, -2);
        FAIL("expected a throw");
    } catch (const hillbloch::ResonantDenominator& e) {
        CHECK(e.n() == 1);
        CHECK(e.p() == -2);
        CHECK(e.kind() == "resonant-denominator");
    }
}

TEST_CASE("single-mode series has the known leading coefficients") {
    const PotentialSpec<double> q = single_mode();
    const BlochIndex<double> idx{0, C(pi / 2, 0)};
    const BlochSeries<double> series = hillbloch::bloch_series(q, idx, 4);

    CHECK(series.coeff(0) == C(1));
    CHECK(std::abs(series.coeff(1) - C(-1.0 / (6 * pi * pi), 0)) < 1e-16);
    CHECK(std::abs(series.coeff(2) - C(1.0 / (120 * std::pow(pi, 4)), 0)) < 1e-18);
    // Eigenvalue travels with the index.
    CHECK(series.eigenvalue() == hillbloch::bloch_eigenvalue(idx));
    CHECK(series.terms() == 4);
}

TEST_CASE("the recurrence satisfies its defining relation") {
    std::mt19937 rng(7);
    const PotentialSpec<double> q = testsupport::random_potential(rng, 4, 2.0);
    const BlochIndex<double> idx{1, C(0.8, 0.3)};
    const BlochSeries<double> series = hillbloch::bloch_series(q, idx, 30);

    const C lambda = series.eigenvalue();
    for (int p = 1; p <= 30; ++p) {
        const C gap =
            lambda - hillbloch::bloch_eigenvalue(BlochIndex<double>{idx.n + p, idx.t});
        C conv(0);
        for (int m = 1; m <= std::min(p, q.degree()); ++m) conv += q.coeff(m) * series.coeff(p - m);
        CHECK(std::abs(gap * series.coeff(p) - conv) <= 1e-14 * (1.0 + std::abs(conv)));
    }
}

TEST_CASE("three coefficient algorithms agree") {
    std::mt19937 rng(1234);
    std::uniform_int_distribution<int> ns(-4, 4);
    std::uniform_int_distribution<int> degree(1, 4);

    for (int trial = 0; trial < 12; ++trial) {
        const PotentialSpec<double> q = testsupport::random_potential(rng, degree(rng), 2.0);
        const int n = ns(rng);
        const C t = testsupport::random_quasimomentum(rng);
        const BlochIndex<double> idx{n, t};
        const BlochSeries<double> series = hillbloch::bloch_series(q, idx, 10);
        for (int p = 1; p <= 10; ++p) {
            const C rec = series.coeff(p);
            const C expl = hillbloch::bloch_coefficient_explicit(q, idx, p);
            const C brute = hillbloch::bloch_coefficient_bruteforce(q, idx, p);
            const double scale = 1.0 + std::abs(rec);
            CHECK(std::abs(rec - expl) <= 1e-11 * scale);
            CHECK(std::abs(rec - brute) <= 1e-11 * scale);
        }
    }
}

TEST_CASE("coefficients decay for a single-mode potential") {
    // With q = e^{i 2 pi x} the composition sum collapses to one term, so
    // the decay is factorial-squared; check five orders of magnitude.
    const PotentialSpec<double> q = single_mode();
    const BlochSeries<double> series =
        hillbloch::bloch_series(q, BlochIndex<double>{0, C(pi / 2, 0)}, 8);
    for (int p = 1; p <= 7; ++p) {
        CHECK(std::abs(series.coeff(p + 1)) < 1e-2 * std::abs(series.coeff(p)));
    }
}

TEST_CASE("series construction rejects bad input") {
    const PotentialSpec<double> q = single_mode();
    CHECK_THROWS_AS(hillbloch::bloch_series(q, BlochIndex<double>{0, C(0.5, 0)}, 0),
                    hillbloch::ValidationError);
    CHECK_THROWS_AS(hillbloch::bloch_series(q, BlochIndex<double>{0, C(0.5, 0)}, -3),
                    hillbloch::ValidationError);
    // (n = -1, t = 0): the p = 2 denominator is the mirrored pair.
    CHECK_THROWS_AS(hillbloch::bloch_series(q, BlochIndex<double>{-1, C(0, 0)}, 5),
                    hillbloch::ResonantDenominator);
    // Same resonance via the explicit and brute-force routes.
    CHECK_THROWS_AS(hillbloch::bloch_coefficient_explicit(q, BlochIndex<double>{-1, C(0, 0)}, 3),
                    hillbloch::ResonantDenominator);
    CHECK_THROWS_AS(hillbloch::bloch_coefficient_bruteforce(q, BlochIndex<double>{-1, C(0, 0)}, 3),
                    hillbloch::ResonantDenominator);
    // t = 0 itself is fine when no mirrored index is crossed (n >= 0).
    CHECK_NOTHROW(hillbloch::bloch_series(q, BlochIndex<double>{0, C(0, 0)}, 5));
    CHECK_NOTHROW(hillbloch::bloch_series(q, BlochIndex<double>{2, C(0, 0)}, 5));

    CHECK_THROWS_AS(hillbloch::bloch_coefficient_bruteforce(q, BlochIndex<double>{0, C(0.5, 0)}, 23),
                    hillbloch::ComplexityGuard);
    CHECK_THROWS_AS(hillbloch::bloch_coefficient_explicit(q, BlochIndex<double>{0, C(0.5, 0)}, 0),
                    hillbloch::ValidationError);

    ComplexVector<double> not_normalized(2);
    not_normalized[0] = C(2, 0);
    not_normalized[1] = C(0, 0);
    CHECK_THROWS_AS(BlochSeries<double>(BlochIndex<double>{0, C(0.5, 0)}, not_normalized),
                    hillbloch::ValidationError);

    const BlochSeries<double> series =
        hillbloch::bloch_series(q, BlochIndex<double>{0, C(0.5, 0)}, 3);
    CHECK_THROWS_AS(series.coeff(4), hillbloch::ValidationError);
    CHECK_THROWS_AS(series.coeff(-1), hillbloch::ValidationError);
}

TEST_CASE("evaluated series is exactly quasi-periodic") {
    std::mt19937 rng(555);
    const PotentialSpec<double> q = testsupport::random_potential(rng, 3, 2.0);
    const BlochIndex<double> idx{1, C(0.61, 0.25)};
    const BlochSeries<double> series = hillbloch::bloch_series(q, idx, 40);

    double magnitude = 0.0;
    for (int p = 0; p <= series.terms(); ++p) magnitude += std::abs(series.coeff(p));
    const C multiplier = std::exp(C(0, 1) * idx.t);
    for (const double x : {0.0, 0.3, 0.85}) {
        const C lhs = hillbloch::evaluate_bloch(series, x + 1.0);
        const C rhs = multiplier * hillbloch::evaluate_bloch(series, x);
        CHECK(std::abs(lhs - rhs) <= 1e-13 * magnitude);
    }
}

TEST_CASE("free-operator series evaluates to a plane wave") {
    const PotentialSpec<double> free;
    const BlochIndex<double> idx{-2, C(0.9, -0.1)};
    const BlochSeries<double> series = hillbloch::bloch_series(free, idx, 5);
    for (int p = 1; p <= 5; ++p) CHECK(series.coeff(p) == C(0));
    for (const double x : {0.2, 0.6}) {
        const C wave = std::exp(C(0, 1) * (2.0 * pi * idx.n + idx.t) * x);
        CHECK(std::abs(hillbloch::evaluate_bloch(series, x) - wave) < 1e-14);
    }
}
