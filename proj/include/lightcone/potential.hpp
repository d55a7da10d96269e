#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lightcone/gauge_function.hpp"
#include "lightcone/minkowski.hpp"

namespace lightcone {

/// Evaluation inside the excluded neighborhood of a field singularity.
class SingularityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Waveform { Cos, Sin };

/// Scalar phase profile w(phi) with derivatives; the plane-wave evaluator is
/// amplitude * w(phi). Second derivative is optional; without it some derived
/// closed-form results fall back to finite differences.
struct PhaseProfile {
    std::function<double(double)> value;
    std::function<double(double)> derivative;
    std::function<double(double)> second_derivative;
    std::string label = "custom";
};

PhaseProfile phase_profile(Waveform w);

/// Electric and magnetic field sampled at an event.
struct FieldSample {
    Vec3 E;
    Vec3 B;
    FourVector at;
};

/// Immutable evaluable four-potential A^mu(event). Events are (ct, r).
class PotentialField {
public:
    enum class Kind {
        PlaneWave,         // A_c * w(phi), transversality enforced
        NonphysicalPW,     // -k * (x . A'(phi)) built from a plane wave
        Coulomb,           // (q_s / r, 0)
        Superposition,     // componentwise sum
        GaugeTransformed,  // base + grad Lambda
        DipoleFrozen       // base with spatial dependence frozen at an anchor
    };

    /// Evaluate A^mu at an event. Throws SingularityError inside the
    /// excluded radius of a Coulomb part.
    FourVector operator()(const FourVector& event) const;

    Kind kind() const;
    std::string describe() const;

    /// Propagation vector of the plane-wave family this field belongs to
    /// (plane wave, same-k superposition, or transforms of those); empty for
    /// longitudinal or mixed fields.
    std::optional<FourVector> propagation_vector() const;

    /// dA/dphi where the potential is a function of the phase alone
    /// (plane waves and same-k superpositions of them).
    std::optional<FourVector> phase_derivative(const FourVector& event) const;

    /// d^2 A / dphi^2 under the same conditions, when the profile carries a
    /// second derivative.
    std::optional<FourVector> second_phase_derivative(const FourVector& event) const;

    /// Closed-form E and B when the field structure allows it; empty
    /// otherwise. evaluate_fields dispatches here for the Analytic method.
    std::optional<FieldSample> analytic_sample(const FourVector& event) const;

    bool has_analytic_fields() const;

    /// Underlying field for derived kinds (NonphysicalPW, GaugeTransformed,
    /// DipoleFrozen); nullptr otherwise.
    const PotentialField* base() const;

    /// Generating function for GaugeTransformed fields; nullptr otherwise.
    const GaugeFunction* gauge() const;

    struct Impl;
    explicit PotentialField(std::shared_ptr<const Impl> impl);

private:
    std::shared_ptr<const Impl> impl_;
};

/// Monochromatic plane wave A^mu = A_c^mu * w(phi), phi = k.x.
/// k must be lightlike; A_c must satisfy the transversality condition
/// k.A_c = 0 within 1e-10, and is rejected otherwise.
PotentialField plane_wave(const FourVector& amplitude, const FourVector& k, Waveform waveform);

/// Plane wave with an arbitrary phase profile (used e.g. for smoothly ramped
/// simulation runs); same construction checks as plane_wave.
PotentialField plane_wave_with_profile(const FourVector& amplitude, const FourVector& k,
                                       PhaseProfile profile);

/// Skips the transversality check. Exists so the validator can be pointed at
/// deliberately broken fields; not for normal construction.
PotentialField plane_wave_unchecked(const FourVector& amplitude, const FourVector& k,
                                    Waveform waveform);

/// The gauge-equivalent but physically unacceptable companion of a plane
/// wave: A~^mu(x) = -k^mu * (x . dA/dphi). Requires a plane-wave-family base
/// with an analytic phase derivative.
PotentialField nonphysical_gauge(const PotentialField& base);

/// Coulomb scalar potential (q_s / r, 0). Evaluation below r_min throws
/// SingularityError; the 1/r divergence is genuine and deliberately not
/// softened.
PotentialField coulomb(double source_charge, double r_min = 1e-12);

/// Componentwise sum of the parts; list must be non-empty.
PotentialField superpose(std::vector<PotentialField> parts);

/// base + grad Lambda. Prefer gauge.hpp's apply_gauge, which documents the
/// operation; this is the underlying factory.
PotentialField make_gauge_transformed(const PotentialField& base, const GaugeFunction& lambda);

/// Field with spatial dependence frozen at `anchor`: value at (ct, r) is the
/// base value at (ct, anchor). Its magnetic field vanishes identically and
/// its electric field depends on time alone (the dipole approximation).
PotentialField dipole_freeze(const PotentialField& field, const Vec3& anchor);

enum class FieldMethod {
    FiniteDifference,  // 4th-order central differences of the evaluator
    Analytic,          // closed-form derivatives; error if unavailable
    Auto               // analytic when available, else finite differences
};

struct FieldEvalOptions {
    FieldMethod method = FieldMethod::FiniteDifference;
    /// h = step_scale * (1 + max-norm(event)) unless an explicit step is set.
    double step_scale = 1e-4;
    std::optional<double> step;
};

/// E = -grad A^0 - dA/d(ct), B = curl A, per the chosen method.
FieldSample evaluate_fields(const PotentialField& f, const FourVector& event,
                            const FieldEvalOptions& opts = {});

/// Finite-difference estimate of the four-divergence d_mu A^mu
/// = dA^0/d(ct) + div A (zero in a Lorenz gauge).
double four_divergence_fd(const PotentialField& f, const FourVector& event, double h);

double fd_step(const FourVector& event, double scale = 1e-4);

const char* to_string(PotentialField::Kind k);

}  // namespace lightcone
