#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lightcone/minkowski.hpp"
#include "lightcone/potential.hpp"

namespace lightcone {

/// Charged-particle kinematic state: lab time, position, relativistic
/// momentum gamma*m*v.
struct ParticleState {
    double t = 0.0;
    Vec3 r{};
    Vec3 p{};
    double q = -1.0;
    double m = 1.0;
};

double lorentz_gamma(const Vec3& p, double m, double c);
double kinetic_energy(const ParticleState& s, double c);

struct Trajectory {
    std::vector<ParticleState> samples;
    double dt = 0.0;
    int stride = 1;
    double c = 1.0;
    std::string field_descriptor;
    bool truncated = false;
    std::string termination;

    double duration() const {
        return samples.empty() ? 0.0 : samples.back().t - samples.front().t;
    }

    /// Delimited export: header row t,x,y,z,px,py,pz,gamma then one row per
    /// sample, 17 significant digits.
    void write_csv(std::ostream& os) const;
};

/// E and B at an event (ct, r); the simulate overload for PotentialField
/// wraps evaluate_fields into this shape.
using FieldFunction = std::function<FieldSample(const FourVector&)>;

struct SimOptions {
    int stride = 1;
    double c = 1.0;
    FieldEvalOptions field_eval{FieldMethod::Auto, 1e-4, {}};
};

/// Relativistic Boris integrator, drift/kick/drift splitting: half position
/// drift, momentum update split as electric impulse / magnetic rotation /
/// electric impulse at the midpoint, half drift. Volume-preserving and
/// second-order; the magnetic rotation conserves |p| exactly.
/// A SingularityError from the field truncates the trajectory with a
/// diagnostic; a non-finite state aborts.
Trajectory simulate(const ParticleState& init, const FieldFunction& fields, double t_end,
                    double dt, const SimOptions& opts = {});

Trajectory simulate(const ParticleState& init, const PotentialField& f, double t_end, double dt,
                    const SimOptions& opts = {});

/// Whether ponderomotive machinery accepts the field: a plane wave, a same-k
/// superposition of plane waves, or a constant/light-cone gauge shift of one.
bool is_transverse_family(const PotentialField& f);

/// U_p = -q^2 <A.A>_cycle / (2 m c^2), cycle-averaged over one phase period.
/// Rejects fields outside the transverse family.
double ponderomotive_energy(const PotentialField& f, double q, double m, double c);

/// n = U_p / (hbar * omega).
double photon_number(double u_p, double omega, double hbar);

/// Phase profile for a plane wave whose amplitude ramps smoothly from zero
/// to full strength over the first ramp_cycles phase cycles (cosine ramp).
/// Keeps the field an exact function of phi, so canonical invariants of the
/// motion hold through the turn-on.
PhaseProfile ramped_profile(Waveform base, double ramp_cycles);

struct PonderomotiveSummary {
    double U_p = 0.0;
    double drift_p_parallel = 0.0;
    double n_photons = 0.0;
    bool has_field_info = false;
};

struct DriftConfig {
    int average_periods = 10;
    double hbar = 1.0;
    std::optional<double> omega;
    std::optional<double> u_p;
};

/// Cycle-averaged momentum along the propagation direction over the trailing
/// average_periods * period of lab time. The trajectory must cover at least
/// five periods. U_p and the photon count are bundled when the caller
/// supplies field parameters.
PonderomotiveSummary drift_momentum(const Trajectory& traj, const Vec3& k_dir, double period,
                                    const DriftConfig& cfg = {});

}  // namespace lightcone
