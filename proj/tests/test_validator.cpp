#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "lightcone/gauge.hpp"
#include "lightcone/potential.hpp"
#include "lightcone/validator.hpp"
#include "oracles.hpp"

using namespace lightcone;

namespace {

const FourVector kZ{1, 0, 0, 1};

PotentialField unit_wave() { return plane_wave({0, 1, 0, 0}, kZ, Waveform::Cos); }

GaugeFunction small_shift() {
    return light_cone_gauge([](double p) { return 0.1 * std::cos(p); }, kZ,
                            [](double p) { return 0.1 * std::sin(p); });
}

}  // namespace

TEST_CASE("transversality check") {
    SampleSpec spec;
    const CheckResult good = check_transversality(unit_wave(), kZ, spec);
    CHECK(good.status == CheckStatus::Pass);
    CHECK(good.residual < 1e-10);

    // Deliberately broken amplitude via the unchecked factory.
    const PotentialField bad = plane_wave_unchecked({1, 0, 0, 0}, kZ, Waveform::Cos);
    const CheckResult r = check_transversality(bad, kZ, spec);
    CHECK(r.status == CheckStatus::Fail);
    CHECK(r.residual > 0.9);
    CHECK(r.residual <= 1.0 + 1e-12);

    const PotentialField zero = plane_wave({0, 0, 0, 0}, kZ, Waveform::Cos);
    const CheckResult z = check_transversality(zero, kZ, spec);
    CHECK(z.status == CheckStatus::Pass);
    CHECK(z.residual == 0.0);
}

TEST_CASE("phase-only dependence check") {
    SampleSpec spec;
    CHECK(check_phase_only_dependence(unit_wave(), kZ, spec).residual < 1e-10);
    CHECK(check_phase_only_dependence(unit_wave(), kZ, spec).status == CheckStatus::Pass);

    const CheckResult bad = check_phase_only_dependence(nonphysical_gauge(unit_wave()), kZ, spec);
    CHECK(bad.status == CheckStatus::Fail);
    CHECK(bad.residual > 0.1);

    CHECK(check_phase_only_dependence(coulomb(1.0), kZ, spec).status == CheckStatus::Fail);
}

TEST_CASE("quadratic invariant check") {
    SampleSpec spec;
    const PotentialField a = unit_wave();

    const CheckResult pass = check_quadratic_invariant(a, apply_gauge(a, small_shift()), spec);
    CHECK(pass.status == CheckStatus::Pass);

    const CheckResult fail = check_quadratic_invariant(a, nonphysical_gauge(a), spec);
    CHECK(fail.status == CheckStatus::Fail);
    // |A.A - 0| = cos^2(phi) peaks at 1 across the sample.
    CHECK(fail.residual > 0.9);
    CHECK(fail.residual <= 1.0 + 1e-12);

    const CheckResult self = check_quadratic_invariant(a, a, spec);
    CHECK(self.status == CheckStatus::Pass);
    CHECK(self.residual == 0.0);
}

TEST_CASE("field equivalence check") {
    SampleSpec spec;
    spec.count = 100;
    const PotentialField a = unit_wave();

    CHECK(check_field_equivalence(a, nonphysical_gauge(a), spec).status == CheckStatus::Pass);
    CHECK(check_field_equivalence(a, nonphysical_gauge(a), spec).residual <= 1e-5);

    const PotentialField doubled = plane_wave({0, 2, 0, 0}, kZ, Waveform::Cos);
    CHECK(check_field_equivalence(a, doubled, spec).status == CheckStatus::Fail);

    const GaugeFunction lam = GaugeFunction::custom(
        [](const FourVector& x) { return 0.5 * std::sin(x.t - 0.3 * x.y); },
        [](const FourVector& x) {
            const double c = 0.5 * std::cos(x.t - 0.3 * x.y);
            return FourVector{c, 0.0, 0.3 * c, 0.0};
        },
        "smooth");
    CHECK(check_field_equivalence(a, apply_gauge(a, lam), spec).status == CheckStatus::Pass);
}

TEST_CASE("causal character of potential values") {
    SampleSpec spec;
    ValidatorConfig cfg;
    const CheckResult good = classify_gauge_character(unit_wave(), spec, cfg);
    CHECK(good.status == CheckStatus::Pass);
    CHECK(good.detail.find("lightlike=0") != std::string::npos);
    CHECK(good.detail.find("timelike=0") != std::string::npos);
    CHECK(good.detail.find("max|A0|=0") != std::string::npos);
    CHECK(good.detail.find("lorenz_fd=") != std::string::npos);

    const CheckResult bad = classify_gauge_character(nonphysical_gauge(unit_wave()), spec, cfg);
    CHECK(bad.status == CheckStatus::Fail);
    CHECK(bad.detail.find("spacelike=0") != std::string::npos);

    CHECK(classify_gauge_character(coulomb(1.0), spec, cfg).status == CheckStatus::Skip);
}

TEST_CASE("cross-term diagnostic: radiation gauge is silent") {
    SampleSpec spec;
    const std::vector<double> radii{1.0, 0.1, 0.01, 0.001};
    const CheckResult r = cross_term_diagnostic(unit_wave(), coulomb(1.0), radii, spec);
    CHECK(r.status == CheckStatus::Pass);
    CHECK(r.residual == 0.0);
}

TEST_CASE("cross-term diagnostic: singular coupling scales as 1/r") {
    SampleSpec spec;
    const std::vector<double> radii{1.0, 0.1, 0.01};
    // Base with a nonzero time component (still transverse: k.A_c = 0).
    const PotentialField base = plane_wave({1, 1, 0, 1}, kZ, Waveform::Cos);
    const PotentialField tilde = nonphysical_gauge(base);

    const std::vector<double> values = cross_term_values(tilde, coulomb(1.0), radii, spec);
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        lx.push_back(std::log(radii[i]));
        ly.push_back(std::log(values[i]));
    }
    const double slope = oracles::ls_slope(lx, ly);
    CHECK(slope == doctest::Approx(-1.0).epsilon(0.1));

    const CheckResult r = cross_term_diagnostic(tilde, coulomb(1.0), radii, spec);
    CHECK(r.status == CheckStatus::Fail);
    CHECK(r.detail.find("singular 1/r coupling") != std::string::npos);

    // Doubling the wave amplitude doubles the coupling at every radius.
    const PotentialField tilde2 = nonphysical_gauge(plane_wave({2, 2, 0, 2}, kZ, Waveform::Cos));
    const std::vector<double> v2 = cross_term_values(tilde2, coulomb(1.0), radii, spec);
    for (std::size_t i = 0; i < values.size(); ++i) {
        CHECK(v2[i] == doctest::Approx(2.0 * values[i]).epsilon(1e-12));
    }
}

TEST_CASE("cross-term diagnostic: bounded nonzero coupling still fails") {
    SampleSpec spec;
    const std::vector<double> radii{1.0, 0.1, 0.01};
    // Radiation-gauge base: A0 of the companion potential scales with r, so
    // the 1/r of the Coulomb part cancels and the coupling stays bounded.
    const PotentialField tilde = nonphysical_gauge(unit_wave());
    const CheckResult r = cross_term_diagnostic(tilde, coulomb(1.0), radii, spec);
    CHECK(r.status == CheckStatus::Fail);
    CHECK(r.detail.find("bounded nonzero coupling") != std::string::npos);
}

TEST_CASE("cross-term diagnostic input validation") {
    SampleSpec spec;
    CHECK_THROWS_AS(cross_term_diagnostic(unit_wave(), unit_wave(), {1.0, 0.1, 0.01}, spec),
                    std::invalid_argument);
    CHECK_THROWS_AS(cross_term_values(unit_wave(), coulomb(1.0), {0.1, 1.0}, spec),
                    std::invalid_argument);
    CHECK_THROWS_AS(cross_term_values(unit_wave(), coulomb(1.0), {}, spec), std::invalid_argument);
}

TEST_CASE("validate: plane wave standalone is physical") {
    const ValidationReport report = validate(unit_wave(), ValidationContext::standalone());
    CHECK(report.verdict == Verdict::Physical);
    for (const char* name : {"transversality", "phase_only_dependence", "causal_character"}) {
        REQUIRE(report.find(name) != nullptr);
        CHECK(report.find(name)->status == CheckStatus::Pass);
    }
    CHECK(report.find("quadratic_invariant")->status == CheckStatus::Skip);
    CHECK(report.find("lorenz_condition")->status == CheckStatus::Pass);
}

TEST_CASE("validate: nonphysical companion is unphysical with the expected failures") {
    const ValidationReport report =
        validate(nonphysical_gauge(unit_wave()), ValidationContext::standalone());
    CHECK(report.verdict == Verdict::Unphysical);

    CHECK(report.find("transversality")->status == CheckStatus::Pass);
    CHECK(report.find("phase_only_dependence")->status == CheckStatus::Fail);
    CHECK(report.find("causal_character")->status == CheckStatus::Fail);
    CHECK(report.find("quadratic_invariant")->status == CheckStatus::Fail);
    // Fields agree and the generating function satisfies the wave equation:
    // nothing in the "normal rules" flags this gauge.
    CHECK(report.find("field_equivalence")->status == CheckStatus::Pass);
    CHECK(report.find("gauge_wave_equation")->status == CheckStatus::Pass);
    CHECK(report.find("lorenz_condition")->status == CheckStatus::Pass);
}

TEST_CASE("validate: binding context demands the radiation gauge") {
    const PotentialField shifted = apply_gauge(unit_wave(), small_shift());

    const ValidationReport alone = validate(shifted, ValidationContext::standalone());
    CHECK(alone.verdict == Verdict::Physical);

    const ValidationReport bound =
        validate(shifted, ValidationContext::transverse_with_binding(coulomb(1.0)));
    CHECK(bound.verdict == Verdict::Unphysical);
    CHECK(bound.find("radiation_gauge")->status == CheckStatus::Fail);
    CHECK(bound.find("cross_term")->status == CheckStatus::Fail);

    // The pure radiation-gauge wave stays physical with the same binding.
    const ValidationReport wave_bound =
        validate(unit_wave(), ValidationContext::transverse_with_binding(coulomb(1.0)));
    CHECK(wave_bound.verdict == Verdict::Physical);
}

TEST_CASE("validate: longitudinal standalone field is indeterminate") {
    const ValidationReport report = validate(coulomb(1.0), ValidationContext::standalone());
    CHECK(report.verdict == Verdict::Indeterminate);
}

TEST_CASE("check status matches the residual-tolerance invariant") {
    const ValidationReport report =
        validate(nonphysical_gauge(unit_wave()), ValidationContext::standalone());
    for (const auto& c : report.checks) {
        if (c.status == CheckStatus::Skip) continue;
        if (c.status == CheckStatus::Pass) CHECK(c.residual <= c.tolerance);
        if (c.status == CheckStatus::Fail || c.status == CheckStatus::Warn) {
            CHECK(c.residual > c.tolerance);
        }
    }
}

TEST_CASE("validate is deterministic for a fixed seed") {
    ValidatorConfig cfg;
    cfg.sample.seed = 777;
    const ValidationReport a =
        validate(nonphysical_gauge(unit_wave()), ValidationContext::standalone(), cfg);
    const ValidationReport b =
        validate(nonphysical_gauge(unit_wave()), ValidationContext::standalone(), cfg);
    CHECK(a.to_json().dump(2) == b.to_json().dump(2));
    CHECK(a.to_text() == b.to_text());
}
