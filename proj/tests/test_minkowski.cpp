#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "lightcone/minkowski.hpp"
#include "oracles.hpp"

using namespace lightcone;

TEST_CASE("minkowski dot: signature (+,-,-,-)") {
    CHECK(minkowski_dot({1, 0, 0, 1}, {1, 0, 0, 1}) == 0.0);
    CHECK(minkowski_dot({1, 0, 0, 0}, {1, 0, 0, 0}) == 1.0);
    CHECK(minkowski_dot({0, 1, 0, 0}, {0, 1, 0, 0}) == -1.0);
}

TEST_CASE("phase = k.x") {
    CHECK(phase({1, 0, 0, 1}, {2, 0, 0, 1}) == 1.0);
    CHECK(phase({1, 0, 0, 1}, {0, 0, 0, 0}) == 0.0);
    CHECK(phase({2, 0, 0, 2}, {3, 5, 7, 1}) == 4.0);
}

TEST_CASE("make_propagation_vector") {
    const FourVector k1 = make_propagation_vector(1.0, {0, 0, 1}, 1.0);
    CHECK(k1.t == 1.0);
    CHECK(k1.z == 1.0);
    CHECK(k1.x == 0.0);

    const FourVector k2 = make_propagation_vector(2.0, {1, 0, 0}, 1.0);
    CHECK(k2.t == 2.0);
    CHECK(k2.x == 2.0);

    const FourVector k3 = make_propagation_vector(3.0, {0, 0, 1}, 2.0);
    CHECK(k3.t == doctest::Approx(1.5));
    CHECK(k3.z == doctest::Approx(1.5));

    CHECK_THROWS_AS(make_propagation_vector(1.0, {0, 0, 2}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_propagation_vector(-1.0, {0, 0, 1}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_propagation_vector(1.0, {0, 0, 1}, 0.0), std::invalid_argument);
}

TEST_CASE("classify") {
    CHECK(classify({1, 0, 0, 1}, 1e-9) == CausalClass::Lightlike);
    CHECK(classify({0, 1, 0, 0}, 1e-9) == CausalClass::Spacelike);
    CHECK(classify({1, 0, 0, 0}, 1e-9) == CausalClass::Timelike);
    CHECK_THROWS_AS(classify({1, 0, 0, 0}, 0.0), std::invalid_argument);
}

TEST_CASE("dot is bilinear and symmetric") {
    oracles::TestRng rng(71);
    for (int i = 0; i < 200; ++i) {
        const FourVector a = rng.event(10.0);
        const FourVector b = rng.event(10.0);
        const FourVector c = rng.event(10.0);
        const double alpha = rng.uniform(-3.0, 3.0);
        const double beta = rng.uniform(-3.0, 3.0);
        const double lhs = minkowski_dot(alpha * a + beta * b, c);
        const double rhs = alpha * minkowski_dot(a, c) + beta * minkowski_dot(b, c);
        const double scale = std::max(1.0, std::abs(lhs));
        CHECK(std::abs(lhs - rhs) <= 1e-12 * scale);
        CHECK(minkowski_dot(a, b) == minkowski_dot(b, a));
    }
}

TEST_CASE("propagation vectors are always lightlike") {
    oracles::TestRng rng(72);
    for (int i = 0; i < 100; ++i) {
        Vec3 d{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const double n = norm(d);
        if (n < 1e-3) continue;
        d = (1.0 / n) * d;
        const double omega = rng.uniform(0.1, 20.0);
        const double c = rng.uniform(0.5, 5.0);
        const FourVector k = make_propagation_vector(omega, d, c);
        CHECK(classify(k, 1e-12) == CausalClass::Lightlike);
    }
}
