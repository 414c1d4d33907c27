#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hillbloch/inverse.hpp"

#include "test_support.hpp"

#include <cmath>
#include <random>

using hillbloch::ComplexVector;
using hillbloch::InverseResult;
using hillbloch::NormingSequence;
using hillbloch::PotentialSpec;
using testsupport::C;

namespace {
const double w2pi = hillbloch::two_pi_v<double>;
}

TEST_CASE("leading coefficients invert in closed form") {
    std::mt19937 rng(65);
    const ComplexVector<double> sv = testsupport::random_sequence(rng, 3, 3.0);
    const NormingSequence<double> s{sv};
    const InverseResult<double> rec = hillbloch::recover_potential(s);

    // q_1 = s_1 exactly (unit diagonal, empty correction).
    CHECK(rec.spec.coeff(1) == s.value(1));

    const C s1 = s.value(1);
    const C q2 = s.value(2) - s1 * s1 / (w2pi * w2pi);
    CHECK(std::abs(rec.spec.coeff(2) - q2) < 1e-14 * (1.0 + std::abs(q2)));

    const C q3 = s.value(3) - s1 * s.value(2) / (w2pi * w2pi) +
                 3.0 * s1 * s1 * s1 / (4.0 * std::pow(w2pi, 4));
    CHECK(std::abs(rec.spec.coeff(3) - q3) < 1e-14 * (1.0 + std::abs(q3)));
}

TEST_CASE("potential -> norming -> potential is the identity") {
    std::mt19937 rng(9001);
    for (int trial = 0; trial < 40; ++trial) {
        const PotentialSpec<double> q = testsupport::random_potential(rng, 10, 2.0);
        const NormingSequence<double> s = hillbloch::norming_numbers(q, 10);
        const InverseResult<double> rec = hillbloch::recover_potential(s);
        for (int n = 1; n <= 10; ++n) {
            CHECK(std::abs(rec.spec.coeff(n) - q.coeff(n)) <=
                  1e-12 * (1.0 + std::abs(q.coeff(n))));
        }
    }
}

TEST_CASE("norming -> potential -> norming is the identity") {
    std::mt19937 rng(424242);
    for (int trial = 0; trial < 40; ++trial) {
        const NormingSequence<double> s{testsupport::random_sequence(rng, 10, 5.0)};
        const InverseResult<double> rec = hillbloch::recover_potential(s);
        const NormingSequence<double> back = hillbloch::norming_numbers(rec.spec, 10);
        for (int n = 1; n <= 10; ++n) {
            CHECK(std::abs(back.value(n) - s.value(n)) <=
                  1e-12 * (1.0 + std::abs(s.value(n))));
        }
    }
}

TEST_CASE("recovered prefix depends only on the sequence prefix") {
    std::mt19937 rng(33);
    const ComplexVector<double> sv = testsupport::random_sequence(rng, 9, 4.0);
    const InverseResult<double> full = hillbloch::recover_potential(NormingSequence<double>{sv});
    const InverseResult<double> part =
        hillbloch::recover_potential(NormingSequence<double>{sv.head(5).eval()});
    for (int n = 1; n <= 5; ++n) {
        // Bit-identical: the recursion never looks ahead.
        CHECK(full.spec.coeff(n) == part.spec.coeff(n));
    }
}

TEST_CASE("admissibility radius and check") {
    const double radius = hillbloch::admissibility_bound<double>();
    CHECK(radius == doctest::Approx(w2pi - w2pi / (w2pi - 1.0)));
    CHECK(radius == doctest::Approx(5.0939).epsilon(1e-4));

    ComplexVector<double> inside(3);
    inside[0] = C(radius - 1e-9, 0);
    inside[1] = C(0, -1.0);
    inside[2] = C(0.3, 0.2);
    CHECK(hillbloch::check_admissibility(NormingSequence<double>{inside}));

    ComplexVector<double> outside = inside;
    outside[1] = C(0, radius + 1e-6);
    CHECK_FALSE(hillbloch::check_admissibility(NormingSequence<double>{outside}));
}

TEST_CASE("admissible sequences recover bounded potentials") {
    std::mt19937 rng(777);
    const double radius = hillbloch::admissibility_bound<double>();
    for (int trial = 0; trial < 40; ++trial) {
        const NormingSequence<double> s{testsupport::random_sequence(rng, 30, radius)};
        REQUIRE(hillbloch::check_admissibility(s));
        const InverseResult<double> rec = hillbloch::recover_potential(s);
        CHECK(rec.max_modulus <= w2pi + 1e-12);
        CHECK(rec.bounded);
    }
}

TEST_CASE("threshold classifies without blocking recovery") {
    ComplexVector<double> sv(2);
    sv[0] = C(3.0, 0);
    sv[1] = C(0, 0);
    const NormingSequence<double> s{sv};

    const InverseResult<double> strict = hillbloch::recover_potential(s, 1.0);
    CHECK_FALSE(strict.bounded);
    CHECK(strict.max_modulus == doctest::Approx(3.0));
    // Recovery itself is unaffected by the threshold.
    const InverseResult<double> loose = hillbloch::recover_potential(s, 10.0);
    CHECK(loose.bounded);
    CHECK(loose.spec.coeff(1) == strict.spec.coeff(1));

    CHECK_THROWS_AS(hillbloch::recover_potential(s, 0.0), hillbloch::ValidationError);
    CHECK_THROWS_AS(hillbloch::recover_potential(s, -2.0), hillbloch::ValidationError);
    CHECK_THROWS_AS(hillbloch::recover_potential(NormingSequence<double>{}),
                    hillbloch::ValidationError);
}
