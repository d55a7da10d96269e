#include "lightcone/dynamics.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace lightcone {

double lorentz_gamma(const Vec3& p, double m, double c) {
    const double pm = dot(p, p) / (m * m * c * c);
    return std::sqrt(1.0 + pm);
}

double kinetic_energy(const ParticleState& s, double c) {
    return (lorentz_gamma(s.p, s.m, c) - 1.0) * s.m * c * c;
}

void Trajectory::write_csv(std::ostream& os) const {
    os << "t,x,y,z,px,py,pz,gamma\n";
    char line[256];
    for (const auto& s : samples) {
        const double gamma = lorentz_gamma(s.p, s.m, c);
        std::snprintf(line, sizeof(line),
                      "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", s.t, s.r.x, s.r.y,
                      s.r.z, s.p.x, s.p.y, s.p.z, gamma);
        os << line;
    }
}

namespace {

Vec3 velocity(const Vec3& p, double m, double c) {
    return (1.0 / (lorentz_gamma(p, m, c) * m)) * p;
}

// Electric impulse / magnetic rotation / electric impulse over one full dt.
Vec3 boris_kick(const Vec3& p, const Vec3& E, const Vec3& B, double q, double m, double c,
                double dt) {
    const Vec3 pm = p + (0.5 * q * dt) * E;
    const double gamma = lorentz_gamma(pm, m, c);
    const Vec3 tv = (0.5 * q * dt / (gamma * m * c)) * B;
    const Vec3 s = (2.0 / (1.0 + dot(tv, tv))) * tv;
    const Vec3 pp = pm + cross(pm + cross(pm, tv), s);
    return pp + (0.5 * q * dt) * E;
}

bool finite3(const Vec3& v) {
    return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

}  // namespace

Trajectory simulate(const ParticleState& init, const FieldFunction& fields, double t_end,
                    double dt, const SimOptions& opts) {
    if (!(dt > 0.0)) throw std::invalid_argument("simulate: dt must be > 0");
    if (!(t_end > init.t)) throw std::invalid_argument("simulate: t_end must exceed the start time");
    if (!(init.m > 0.0)) throw std::invalid_argument("simulate: mass must be > 0");
    if (!(opts.c > 0.0)) throw std::invalid_argument("simulate: c must be > 0");
    if (opts.stride < 1) throw std::invalid_argument("simulate: stride must be >= 1");
    if (!finite3(init.r) || !finite3(init.p) || !std::isfinite(init.t)) {
        throw std::invalid_argument("simulate: initial state must be finite");
    }

    const long long n_steps = std::llround((t_end - init.t) / dt);
    if (n_steps < 1) throw std::invalid_argument("simulate: fewer than one step requested");

    Trajectory traj;
    traj.dt = dt;
    traj.stride = opts.stride;
    traj.c = opts.c;
    traj.samples.reserve(static_cast<std::size_t>(n_steps / opts.stride) + 2);
    traj.samples.push_back(init);

    Vec3 r = init.r;
    Vec3 p = init.p;
    for (long long i = 1; i <= n_steps; ++i) {
        const double t_mid = init.t + (static_cast<double>(i) - 0.5) * dt;
        r = r + (0.5 * dt) * velocity(p, init.m, opts.c);
        FieldSample fs;
        try {
            fs = fields(FourVector::from_spatial(opts.c * t_mid, r));
        } catch (const SingularityError& e) {
            traj.truncated = true;
            std::ostringstream msg;
            msg << "trajectory truncated at t = " << t_mid << ": " << e.what();
            traj.termination = msg.str();
            return traj;
        }
        p = boris_kick(p, fs.E, fs.B, init.q, init.m, opts.c, dt);
        r = r + (0.5 * dt) * velocity(p, init.m, opts.c);

        if (!finite3(r) || !finite3(p)) {
            std::ostringstream msg;
            msg << "simulate: non-finite state at t = " << init.t + static_cast<double>(i) * dt;
            throw std::runtime_error(msg.str());
        }
        if (i % opts.stride == 0) {
            ParticleState s = init;
            s.t = init.t + static_cast<double>(i) * dt;
            s.r = r;
            s.p = p;
            traj.samples.push_back(s);
        }
    }
    return traj;
}

Trajectory simulate(const ParticleState& init, const PotentialField& f, double t_end, double dt,
                    const SimOptions& opts) {
    FieldEvalOptions fe = opts.field_eval;
    if (fe.method == FieldMethod::Auto) {
        fe.method = f.has_analytic_fields() ? FieldMethod::Analytic : FieldMethod::FiniteDifference;
    }
    Trajectory traj = simulate(
        init, [&f, fe](const FourVector& ev) { return evaluate_fields(f, ev, fe); }, t_end, dt,
        opts);
    traj.field_descriptor = f.describe();
    return traj;
}

bool is_transverse_family(const PotentialField& f) {
    switch (f.kind()) {
        case PotentialField::Kind::PlaneWave:
            return true;
        case PotentialField::Kind::Superposition:
            return f.phase_derivative(FourVector{}).has_value();
        case PotentialField::Kind::GaugeTransformed: {
            const GaugeFunction* g = f.gauge();
            if (!g) return false;
            if (g->kind() != GaugeFunction::Kind::Constant &&
                g->kind() != GaugeFunction::Kind::LightCone) {
                return false;
            }
            return is_transverse_family(*f.base());
        }
        default:
            return false;
    }
}

double ponderomotive_energy(const PotentialField& f, double q, double m, double c) {
    if (!(m > 0.0) || !(c > 0.0)) {
        throw std::invalid_argument("ponderomotive_energy: m and c must be > 0");
    }
    if (!is_transverse_family(f)) {
        throw std::invalid_argument(
            "ponderomotive_energy: field is not a transverse plane-wave-family potential in a "
            "physical gauge");
    }
    const FourVector k = *f.propagation_vector();
    // Cycle average over one phase period along a purely temporal path;
    // the trapezoid rule is spectrally accurate for the periodic integrand.
    constexpr int kPanels = 1024;
    double acc = 0.0;
    for (int i = 0; i < kPanels; ++i) {
        const double phi = 2.0 * M_PI * static_cast<double>(i) / kPanels;
        const FourVector x{phi / k.t, 0.0, 0.0, 0.0};
        const FourVector a = f(x);
        acc += minkowski_dot(a, a);
    }
    const double cycle_avg = acc / kPanels;
    const double u_p = -q * q * cycle_avg / (2.0 * m * c * c);
    return std::max(0.0, u_p);
}

double photon_number(double u_p, double omega, double hbar) {
    if (!(omega > 0.0)) throw std::invalid_argument("photon_number: omega must be > 0");
    if (!(hbar > 0.0)) throw std::invalid_argument("photon_number: hbar must be > 0");
    return u_p / (hbar * omega);
}

PhaseProfile ramped_profile(Waveform base, double ramp_cycles) {
    if (ramp_cycles < 0.0) throw std::invalid_argument("ramped_profile: ramp_cycles must be >= 0");
    if (ramp_cycles == 0.0) return phase_profile(base);
    const PhaseProfile w = phase_profile(base);
    const double phi_r = ramp_cycles * 2.0 * M_PI;
    auto g = [phi_r](double phi) {
        if (phi <= 0.0) return 0.0;
        if (phi >= phi_r) return 1.0;
        return 0.5 * (1.0 - std::cos(M_PI * phi / phi_r));
    };
    auto dg = [phi_r](double phi) {
        if (phi <= 0.0 || phi >= phi_r) return 0.0;
        return 0.5 * (M_PI / phi_r) * std::sin(M_PI * phi / phi_r);
    };
    auto d2g = [phi_r](double phi) {
        if (phi <= 0.0 || phi >= phi_r) return 0.0;
        return 0.5 * (M_PI / phi_r) * (M_PI / phi_r) * std::cos(M_PI * phi / phi_r);
    };
    PhaseProfile out;
    out.value = [g, w](double p) { return g(p) * w.value(p); };
    out.derivative = [g, dg, w](double p) { return dg(p) * w.value(p) + g(p) * w.derivative(p); };
    out.second_derivative = [g, dg, d2g, w](double p) {
        return d2g(p) * w.value(p) + 2.0 * dg(p) * w.derivative(p) + g(p) * w.second_derivative(p);
    };
    out.label = "ramped_" + w.label;
    return out;
}

PonderomotiveSummary drift_momentum(const Trajectory& traj, const Vec3& k_dir, double period,
                                    const DriftConfig& cfg) {
    if (std::abs(norm(k_dir) - 1.0) > 1e-9) {
        throw std::invalid_argument("drift_momentum: k_dir must be a unit vector");
    }
    if (!(period > 0.0)) throw std::invalid_argument("drift_momentum: period must be > 0");
    if (cfg.average_periods < 1) {
        throw std::invalid_argument("drift_momentum: average_periods must be >= 1");
    }
    if (traj.samples.size() < 2 || traj.duration() < 5.0 * period) {
        throw std::invalid_argument(
            "drift_momentum: trajectory too short; at least five periods of motion required");
    }
    const double window = std::min(cfg.average_periods * period, traj.duration());
    const double t_start = traj.samples.back().t - window;
    double acc = 0.0;
    long long n = 0;
    for (const auto& s : traj.samples) {
        if (s.t < t_start) continue;
        acc += dot(s.p, k_dir);
        ++n;
    }
    PonderomotiveSummary out;
    out.drift_p_parallel = acc / static_cast<double>(n);
    if (cfg.u_p) {
        out.U_p = *cfg.u_p;
        out.has_field_info = true;
        if (cfg.omega) out.n_photons = photon_number(out.U_p, *cfg.omega, cfg.hbar);
    }
    return out;
}

}  // namespace lightcone
