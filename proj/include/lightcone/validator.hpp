#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "lightcone/minkowski.hpp"
#include "lightcone/potential.hpp"

namespace lightcone {

/// Event sampling recipe. Sampling is fully deterministic for a given seed;
/// the uniform-double mapping is pinned (not the standard library
/// distribution) so reports are bit-identical across platforms.
struct SampleSpec {
    std::uint64_t seed = 12345;
    int count = 200;
    double half_width = 10.0;       // events uniform in [-hw, hw]^4
    double exclusion_radius = 0.1;  // spatial ball excluded near singular fields
};

class EventSampler {
public:
    explicit EventSampler(const SampleSpec& spec) : spec_(spec), rng_(spec.seed) {}

    double uniform01() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    FourVector event() {
        const double hw = spec_.half_width;
        return {uniform(-hw, hw), uniform(-hw, hw), uniform(-hw, hw), uniform(-hw, hw)};
    }

    /// Event whose spatial radius avoids the exclusion ball.
    FourVector nonsingular_event() {
        for (int tries = 0; tries < 1000; ++tries) {
            FourVector x = event();
            if (norm(x.spatial()) >= spec_.exclusion_radius) return x;
        }
        throw std::runtime_error("EventSampler: exclusion region rejects every draw");
    }

    Vec3 unit_direction() {
        const double z = uniform(-1.0, 1.0);
        const double th = uniform(0.0, 2.0 * M_PI);
        const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
        return {s * std::cos(th), s * std::sin(th), z};
    }

    const SampleSpec& spec() const { return spec_; }

private:
    SampleSpec spec_;
    std::mt19937_64 rng_;
};

enum class CheckStatus { Pass, Fail, Warn, Skip };
enum class Verdict { Physical, Unphysical, Indeterminate };

const char* to_string(CheckStatus s);
const char* to_string(Verdict v);

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::Skip;
    double residual = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct ValidatorConfig {
    SampleSpec sample;
    double tol_algebraic = 1e-9;         // exact identities (transversality, quadratic)
    double tol_phase_dependence = 1e-6;  // clear separation from FD noise
    double tol_fd = 1e-4;                // FD-based residuals (Lorenz, wave equation)
    double tol_field_equivalence = 1e-5;
    double tol_radiation_gauge = 1e-9;
    double tol_cross_term = 1e-10;
    double cross_term_slope_threshold = -0.9;
    std::vector<double> cross_term_radii{1.0, 0.1, 0.01, 0.001};
    FieldEvalOptions field_eval;  // finite differences by default
};

/// max |k . A(x)| / max(1, |A(x)|) over sampled events.
CheckResult check_transversality(const PotentialField& f, const FourVector& k,
                                 const SampleSpec& spec, double tol = 1e-9);

/// Samples pairs of distinct events with identical phase (displacements drawn
/// from the Minkowski-orthogonal complement of k) and reports the worst
/// potential difference. A propagating potential must not see the difference.
CheckResult check_phase_only_dependence(const PotentialField& f, const FourVector& k,
                                        const SampleSpec& spec, double tol = 1e-6);

/// max |A.A - B.B| over sampled events.
CheckResult check_quadratic_invariant(const PotentialField& a, const PotentialField& b,
                                      const SampleSpec& spec, double tol = 1e-9);

/// Worst componentwise E/B disagreement between two potentials.
CheckResult check_field_equivalence(const PotentialField& a, const PotentialField& b,
                                    const SampleSpec& spec, double tol = 1e-5,
                                    const FieldEvalOptions& field_eval = {});

/// Causal character of the potential values across events. A potential that
/// is lightlike at every sampled event (with nonzero values) marks the
/// degenerate A ~ k form; a healthy transverse potential is spacelike away
/// from its nodes. Note that transversality alone cannot distinguish these:
/// the lightlike companion potential is itself transverse.
CheckResult classify_gauge_character(const PotentialField& f, const SampleSpec& spec,
                                     const ValidatorConfig& cfg = {});

/// max_{t,angle} |V(r) * A^0(x)| for each radius, shared (t, direction) draws.
std::vector<double> cross_term_values(const PotentialField& pw, const PotentialField& bind,
                                      const std::vector<double>& radii, const SampleSpec& spec);

/// PASS when the scalar-potential cross coupling with the binding potential
/// is identically below tolerance; FAIL otherwise, with the fitted log-log
/// slope in the detail (slope <= threshold marks 1/r-singular coupling).
CheckResult cross_term_diagnostic(const PotentialField& pw, const PotentialField& bind,
                                  const std::vector<double>& radii, const SampleSpec& spec,
                                  const ValidatorConfig& cfg = {});

struct ValidationContext {
    std::optional<PotentialField> binding;

    static ValidationContext standalone() { return {}; }
    static ValidationContext transverse_with_binding(PotentialField bind) {
        return {std::move(bind)};
    }
};

struct ValidationReport {
    std::string subject;
    std::string context;
    int sampled_events = 0;
    std::uint64_t seed = 0;
    std::vector<CheckResult> checks;
    Verdict verdict = Verdict::Indeterminate;

    const CheckResult* find(const std::string& name) const;
    std::string to_text() const;
    nlohmann::ordered_json to_json() const;
};

/// Runs the full constraint suite in a fixed order and issues the verdict.
/// Mandatory checks: transversality, phase-only dependence, causal character,
/// quadratic invariant, and (with a binding potential) radiation gauge and
/// cross term. Lorenz condition, field equivalence against the base, and the
/// generating function's wave equation are advisory (WARN, never FAIL).
ValidationReport validate(const PotentialField& f, const ValidationContext& ctx,
                          const ValidatorConfig& cfg = {});

}  // namespace lightcone
