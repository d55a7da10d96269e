#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "lightcone/gauge.hpp"
#include "lightcone/gauge_function.hpp"
#include "lightcone/minkowski.hpp"
#include "lightcone/potential.hpp"
#include "oracles.hpp"

using namespace lightcone;

namespace {

const FourVector kZ{1, 0, 0, 1};

double max_abs(const FourVector& v) {
    return std::max(std::max(std::abs(v.t), std::abs(v.x)), std::max(std::abs(v.y), std::abs(v.z)));
}

double max_abs3(const Vec3& v) {
    return std::max(std::abs(v.x), std::max(std::abs(v.y), std::abs(v.z)));
}

// Random smooth generating function with an exact gradient:
// Lambda = a sin(v.x) + b (u.x) + c (x.x) / 100.
GaugeFunction random_smooth_gauge(oracles::TestRng& rng) {
    const double a = rng.uniform(-1, 1);
    const double b = rng.uniform(-1, 1);
    const double c = rng.uniform(-1, 1);
    const FourVector u = rng.event(1.0);
    const FourVector v = rng.event(1.0);
    auto eval = [=](const FourVector& x) {
        return a * std::sin(minkowski_dot(v, x)) + b * minkowski_dot(u, x) +
               0.01 * c * minkowski_dot(x, x);
    };
    auto grad = [=](const FourVector& x) {
        return a * std::cos(minkowski_dot(v, x)) * v + b * u + 0.02 * c * x;
    };
    return GaugeFunction::custom(eval, grad, "random_smooth");
}

}  // namespace

TEST_CASE("constant gauge leaves the potential unchanged") {
    const PotentialField a = plane_wave({0, 1, 0, 0}, kZ, Waveform::Cos);
    const PotentialField shifted = apply_gauge(a, GaugeFunction::constant(5.0));
    CHECK(shifted.kind() == PotentialField::Kind::GaugeTransformed);
    oracles::TestRng rng(21);
    for (int i = 0; i < 20; ++i) {
        const FourVector x = rng.event(10.0);
        CHECK(max_abs(shifted(x) - a(x)) == 0.0);
    }
}

TEST_CASE("gauge generated by -(A.x) reproduces the nonphysical potential") {
    const PotentialField a = plane_wave({0, 1, 0, 0}, kZ, Waveform::Cos);
    const PotentialField via_gauge = apply_gauge(a, lambda_from_potential(a));
    const PotentialField direct = nonphysical_gauge(a);
    oracles::TestRng rng(22);
    for (int i = 0; i < 20; ++i) {
        const FourVector x = rng.event(10.0);
        CHECK(max_abs(via_gauge(x) - direct(x)) <= 1e-8);
    }
}

TEST_CASE("light-cone gauge shifts by k * lambda_prime(phi)") {
    const PotentialField a = plane_wave({0, 1, 0, 0}, kZ, Waveform::Cos);
    const GaugeFunction shift = light_cone_gauge([](double p) { return 0.1 * std::cos(p); }, kZ,
                                                 [](double p) { return 0.1 * std::sin(p); });
    const PotentialField shifted = apply_gauge(a, shift);
    oracles::TestRng rng(23);
    for (int i = 0; i < 20; ++i) {
        const FourVector x = rng.event(10.0);
        const double phi = phase(kZ, x);
        const FourVector expect = a(x) + (0.1 * std::cos(phi)) * kZ;
        CHECK(max_abs(shifted(x) - expect) <= 1e-12);
    }
}

TEST_CASE("light-cone gauge gradient values") {
    const GaugeFunction zero = light_cone_gauge([](double) { return 0.0; }, kZ);
    const GaugeFunction one = light_cone_gauge([](double) { return 1.0; }, kZ);
    const GaugeFunction sine = light_cone_gauge([](double p) { return std::sin(p); }, kZ);
    oracles::TestRng rng(24);
    for (int i = 0; i < 10; ++i) {
        const FourVector x = rng.event(10.0);
        CHECK(max_abs(zero.gradient(x)) == 0.0);
        CHECK(max_abs(one.gradient(x) - kZ) == 0.0);
    }
    const FourVector at90{M_PI / 2, 0, 0, 0};
    CHECK(max_abs(sine.gradient(at90) - kZ) <= 1e-12);

    CHECK_THROWS_AS(light_cone_gauge([](double) { return 1.0; }, {1, 0, 0, 0}),
                    std::invalid_argument);
}

TEST_CASE("light-cone gauge evaluator integrates lambda_prime") {
    const GaugeFunction quad = light_cone_gauge([](double p) { return 0.1 * std::cos(p); }, kZ);
    oracles::TestRng rng(25);
    for (int i = 0; i < 10; ++i) {
        const FourVector x = rng.event(10.0);
        CHECK(quad(x) == doctest::Approx(0.1 * std::sin(phase(kZ, x))).epsilon(1e-9));
    }
}

TEST_CASE("lambda_from_potential values and gradient") {
    const PotentialField a = plane_wave({0, 1, 0, 0}, kZ, Waveform::Cos);
    const GaugeFunction lam = lambda_from_potential(a);
    CHECK(lam.kind() == GaugeFunction::Kind::PotentialContraction);
    CHECK(lam({0, 1, 0, 0}) == doctest::Approx(1.0));
    CHECK(lam({0, 0, 0, 0}) == 0.0);

    oracles::TestRng rng(26);
    for (int i = 0; i < 20; ++i) {
        const FourVector x = rng.event(8.0);
        const FourVector g = lam.gradient(x);
        auto eval = [&](const FourVector& y) { return lam(y); };
        const double h = 1e-3;
        const FourVector fd{oracles::fd_partial(eval, x, 0, h), -oracles::fd_partial(eval, x, 1, h),
                            -oracles::fd_partial(eval, x, 2, h),
                            -oracles::fd_partial(eval, x, 3, h)};
        const double scale = std::max(1.0, max_abs(g));
        CHECK(max_abs(g - fd) <= 1e-6 * scale);
    }

    CHECK_THROWS_AS(lambda_from_potential(coulomb(1.0)), std::invalid_argument);
}

TEST_CASE("the 4-vector gauge rule reproduces the 3+1 transformation pair") {
    // A -> A + grad Lambda must act as phi -> phi + dLambda/d(ct) on the time
    // component and A -> A - nabla Lambda on the spatial ones.
    const PotentialField a = plane_wave({0, 1, 0, 0}, kZ, Waveform::Cos);
    oracles::TestRng rng(32);
    const GaugeFunction lam = random_smooth_gauge(rng);
    const PotentialField shifted = apply_gauge(a, lam);
    auto eval = [&](const FourVector& y) { return lam(y); };
    const double h = 1e-3;
    for (int i = 0; i < 20; ++i) {
        const FourVector x = rng.event(8.0);
        const FourVector before = a(x);
        const FourVector after = shifted(x);
        CHECK(std::abs((after.t - before.t) - oracles::fd_partial(eval, x, 0, h)) <= 1e-7);
        CHECK(std::abs((after.x - before.x) + oracles::fd_partial(eval, x, 1, h)) <= 1e-7);
        CHECK(std::abs((after.y - before.y) + oracles::fd_partial(eval, x, 2, h)) <= 1e-7);
        CHECK(std::abs((after.z - before.z) + oracles::fd_partial(eval, x, 3, h)) <= 1e-7);
    }
}

TEST_CASE("gradients of every gauge kind agree with finite differences") {
    const PotentialField a = plane_wave({0.5, 1, 0, 0.5}, kZ, Waveform::Sin);
    oracles::TestRng rng(27);
    GaugeFunction gauges[] = {
        GaugeFunction::constant(2.5),
        light_cone_gauge([](double p) { return 0.3 * std::sin(p); }, kZ),
        lambda_from_potential(a),
        random_smooth_gauge(rng),
    };
    for (const auto& lam : gauges) {
        for (int i = 0; i < 10; ++i) {
            const FourVector x = rng.event(6.0);
            const FourVector g = lam.gradient(x);
            auto eval = [&](const FourVector& y) { return lam(y); };
            const double h = 1e-3;
            const FourVector fd{
                oracles::fd_partial(eval, x, 0, h), -oracles::fd_partial(eval, x, 1, h),
                -oracles::fd_partial(eval, x, 2, h), -oracles::fd_partial(eval, x, 3, h)};
            const double scale = std::max(1.0, max_abs(g));
            CHECK(max_abs(g - fd) <= 1e-6 * scale);
        }
    }
}

TEST_CASE("wave-equation residual") {
    const PotentialField a = plane_wave({0, 1, 0, 0}, kZ, Waveform::Cos);
    const GaugeFunction lam = lambda_from_potential(a);
    oracles::TestRng rng(28);
    for (int i = 0; i < 20; ++i) {
        CHECK(std::abs(wave_equation_residual(lam, rng.event(10.0))) < 1e-4);
    }

    const GaugeFunction quadratic = GaugeFunction::custom(
        [](const FourVector& x) { return minkowski_dot(x, x); },
        [](const FourVector& x) { return 2.0 * x; }, "interval");
    for (int i = 0; i < 10; ++i) {
        CHECK(wave_equation_residual(quadratic, rng.event(10.0)) == doctest::Approx(8.0).epsilon(1e-5));
    }

    CHECK(wave_equation_residual(GaugeFunction::constant(3.0), rng.event(10.0)) == 0.0);
}

TEST_CASE("any smooth gauge leaves E and B unchanged") {
    const PotentialField a = plane_wave({0, 1, 0.2, 0}, kZ, Waveform::Cos);
    oracles::TestRng rng(29);
    for (int g = 0; g < 6; ++g) {
        const GaugeFunction lam = random_smooth_gauge(rng);
        const PotentialField shifted = apply_gauge(a, lam);
        for (int i = 0; i < 10; ++i) {
            const FourVector x = rng.event(10.0);
            const FieldSample sa = evaluate_fields(a, x);
            const FieldSample st = evaluate_fields(shifted, x);
            CHECK(max_abs3(sa.E - st.E) <= 1e-5);
            CHECK(max_abs3(sa.B - st.B) <= 1e-5);
        }
    }
}

TEST_CASE("light-cone shifts preserve the squared potential") {
    const PotentialField a = plane_wave({0, 1, 0, 0}, kZ, Waveform::Cos);
    oracles::TestRng rng(30);
    for (int g = 0; g < 5; ++g) {
        const double amp = rng.uniform(-0.5, 0.5);
        const double ph = rng.uniform(0, 2 * M_PI);
        const GaugeFunction lam = light_cone_gauge(
            [amp, ph](double p) { return amp * std::cos(p + ph); }, kZ);
        const PotentialField shifted = apply_gauge(a, lam);
        for (int i = 0; i < 20; ++i) {
            const FourVector x = rng.event(10.0);
            const FourVector va = a(x);
            const FourVector vs = shifted(x);
            CHECK(std::abs(minkowski_dot(vs, vs) - minkowski_dot(va, va)) <= 1e-9);
        }
    }
}

TEST_CASE("composing gauges equals applying their sum") {
    const PotentialField a = plane_wave({0, 1, 0, 0}, kZ, Waveform::Cos);
    oracles::TestRng rng(31);
    const GaugeFunction l1 = random_smooth_gauge(rng);
    const GaugeFunction l2 = light_cone_gauge([](double p) { return 0.2 * std::sin(p); }, kZ);
    const PotentialField chained = apply_gauge(apply_gauge(a, l1), l2);
    const PotentialField summed = apply_gauge(a, l1 + l2);
    for (int i = 0; i < 20; ++i) {
        const FourVector x = rng.event(10.0);
        CHECK(max_abs(chained(x) - summed(x)) <= 1e-9);
    }
}
