#include "lightcone/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include "lightcone/gauge.hpp"

#ifndef LIGHTCONE_BUNDLED_SCENARIO_DIR
#define LIGHTCONE_BUNDLED_SCENARIO_DIR "scenarios"
#endif

namespace lightcone {

namespace {

using nlohmann::json;

[[noreturn]] void cfg_error(const std::string& ctx, const std::string& msg) {
    throw std::runtime_error("config error at " + ctx + ": " + msg);
}

void check_keys(const json& j, const std::string& ctx,
                std::initializer_list<const char*> allowed) {
    if (!j.is_object()) cfg_error(ctx, "expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed) {
            if (it.key() == k) {
                ok = true;
                break;
            }
        }
        if (!ok) cfg_error(ctx, "unknown key '" + it.key() + "'");
    }
}

double finite_number(const json& j, const std::string& ctx) {
    if (!j.is_number()) cfg_error(ctx, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) cfg_error(ctx, "value must be finite");
    return v;
}

double field_number(const json& j, const std::string& ctx, const char* key, double fallback,
                    bool* present = nullptr) {
    if (!j.contains(key)) {
        if (present) *present = false;
        return fallback;
    }
    if (present) *present = true;
    return finite_number(j.at(key), ctx + "." + key);
}

Vec3 parse_vec3(const json& j, const std::string& ctx) {
    if (!j.is_array() || j.size() != 3) cfg_error(ctx, "expected a 3-element array");
    return {finite_number(j[0], ctx), finite_number(j[1], ctx), finite_number(j[2], ctx)};
}

FourVector parse_vec4(const json& j, const std::string& ctx) {
    if (!j.is_array() || j.size() != 4) cfg_error(ctx, "expected a 4-element array");
    return {finite_number(j[0], ctx), finite_number(j[1], ctx), finite_number(j[2], ctx),
            finite_number(j[3], ctx)};
}

Vec3 parse_direction(const json& j, const std::string& ctx) {
    Vec3 d = parse_vec3(j, ctx);
    const double n = norm(d);
    if (!(n > 0.0)) cfg_error(ctx, "direction must be nonzero");
    return (1.0 / n) * d;
}

Waveform parse_waveform(const json& j, const std::string& ctx) {
    const std::string s = j.get<std::string>();
    if (s == "cos") return Waveform::Cos;
    if (s == "sin") return Waveform::Sin;
    cfg_error(ctx, "waveform must be 'cos' or 'sin'");
}

PotentialSpec parse_potential(const json& j, const std::string& ctx) {
    if (!j.is_object() || !j.contains("kind")) cfg_error(ctx, "potential needs a 'kind'");
    PotentialSpec spec;
    spec.kind = j.at("kind").get<std::string>();
    if (spec.kind == "plane_wave") {
        check_keys(j, ctx, {"kind", "amplitude", "omega", "direction", "waveform"});
        PlaneWaveSpec pw;
        pw.amplitude = parse_vec4(j.at("amplitude"), ctx + ".amplitude");
        pw.omega = field_number(j, ctx, "omega", 1.0);
        if (!(pw.omega > 0.0)) cfg_error(ctx + ".omega", "must be > 0");
        pw.direction =
            j.contains("direction") ? parse_direction(j.at("direction"), ctx + ".direction")
                                    : Vec3{0, 0, 1};
        pw.waveform = j.contains("waveform") ? parse_waveform(j.at("waveform"), ctx + ".waveform")
                                             : Waveform::Cos;
        spec.plane = pw;
    } else if (spec.kind == "circular_wave") {
        check_keys(j, ctx, {"kind", "a0", "omega", "direction"});
        CircularWaveSpec cw;
        cw.a0 = field_number(j, ctx, "a0", 1.0);
        cw.omega = field_number(j, ctx, "omega", 1.0);
        if (!(cw.omega > 0.0)) cfg_error(ctx + ".omega", "must be > 0");
        cw.direction =
            j.contains("direction") ? parse_direction(j.at("direction"), ctx + ".direction")
                                    : Vec3{0, 0, 1};
        spec.circular = cw;
    } else if (spec.kind == "coulomb") {
        check_keys(j, ctx, {"kind", "charge", "r_min"});
        CoulombSpec cs;
        cs.charge = field_number(j, ctx, "charge", 1.0);
        bool has_rmin = false;
        const double rm = field_number(j, ctx, "r_min", 1e-12, &has_rmin);
        if (has_rmin) cs.r_min = rm;
        spec.coulomb_part = cs;
    } else if (spec.kind == "superposition") {
        check_keys(j, ctx, {"kind", "parts"});
        if (!j.contains("parts") || !j.at("parts").is_array() || j.at("parts").empty()) {
            cfg_error(ctx, "superposition needs a non-empty 'parts' array");
        }
        int i = 0;
        for (const auto& part : j.at("parts")) {
            spec.parts.push_back(parse_potential(part, ctx + ".parts[" + std::to_string(i) + "]"));
            ++i;
        }
    } else {
        cfg_error(ctx, "unknown potential kind '" + spec.kind + "'");
    }
    return spec;
}

nlohmann::ordered_json potential_to_json(const PotentialSpec& spec) {
    nlohmann::ordered_json j;
    j["kind"] = spec.kind;
    if (spec.plane) {
        j["amplitude"] = {spec.plane->amplitude.t, spec.plane->amplitude.x,
                          spec.plane->amplitude.y, spec.plane->amplitude.z};
        j["omega"] = spec.plane->omega;
        j["direction"] = {spec.plane->direction.x, spec.plane->direction.y,
                          spec.plane->direction.z};
        j["waveform"] = spec.plane->waveform == Waveform::Cos ? "cos" : "sin";
    }
    if (spec.circular) {
        j["a0"] = spec.circular->a0;
        j["omega"] = spec.circular->omega;
        j["direction"] = {spec.circular->direction.x, spec.circular->direction.y,
                          spec.circular->direction.z};
    }
    if (spec.coulomb_part) {
        j["charge"] = spec.coulomb_part->charge;
        if (spec.coulomb_part->r_min) j["r_min"] = *spec.coulomb_part->r_min;
    }
    if (!spec.parts.empty()) {
        j["parts"] = nlohmann::ordered_json::array();
        for (const auto& p : spec.parts) j["parts"].push_back(potential_to_json(p));
    }
    return j;
}

CoulombSpec parse_coulomb_block(const json& j, const std::string& ctx) {
    check_keys(j, ctx, {"charge", "r_min"});
    CoulombSpec cs;
    cs.charge = field_number(j, ctx, "charge", 1.0);
    bool has_rmin = false;
    const double rm = field_number(j, ctx, "r_min", 1e-12, &has_rmin);
    if (has_rmin) cs.r_min = rm;
    return cs;
}

// Deterministic orthonormal pair perpendicular to the propagation direction.
void polarization_axes(const Vec3& dir, Vec3& e1, Vec3& e2) {
    const Vec3 seed = std::abs(dir.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    e1 = cross(dir, seed);
    e1 = (1.0 / norm(e1)) * e1;
    e2 = cross(dir, e1);
}

PotentialField build_potential_spec(const PotentialSpec& spec, double c, double ramp_cycles) {
    if (spec.plane) {
        const PlaneWaveSpec& pw = *spec.plane;
        const FourVector k = make_propagation_vector(pw.omega, pw.direction, c);
        if (ramp_cycles > 0.0) {
            return plane_wave_with_profile(pw.amplitude, k,
                                           ramped_profile(pw.waveform, ramp_cycles));
        }
        return plane_wave(pw.amplitude, k, pw.waveform);
    }
    if (spec.circular) {
        const CircularWaveSpec& cw = *spec.circular;
        const FourVector k = make_propagation_vector(cw.omega, cw.direction, c);
        Vec3 e1, e2;
        polarization_axes(cw.direction, e1, e2);
        const FourVector a1 = FourVector::from_spatial(0.0, cw.a0 * e1);
        const FourVector a2 = FourVector::from_spatial(0.0, cw.a0 * e2);
        if (ramp_cycles > 0.0) {
            return superpose(
                {plane_wave_with_profile(a1, k, ramped_profile(Waveform::Cos, ramp_cycles)),
                 plane_wave_with_profile(a2, k, ramped_profile(Waveform::Sin, ramp_cycles))});
        }
        return superpose({plane_wave(a1, k, Waveform::Cos), plane_wave(a2, k, Waveform::Sin)});
    }
    if (spec.coulomb_part) {
        return coulomb(spec.coulomb_part->charge, spec.coulomb_part->r_min.value_or(1e-12));
    }
    std::vector<PotentialField> parts;
    for (const auto& p : spec.parts) parts.push_back(build_potential_spec(p, c, ramp_cycles));
    return superpose(std::move(parts));
}

std::optional<double> spec_omega(const PotentialSpec& spec) {
    if (spec.plane) return spec.plane->omega;
    if (spec.circular) return spec.circular->omega;
    for (const auto& p : spec.parts) {
        if (auto w = spec_omega(p)) return w;
    }
    return std::nullopt;
}

std::optional<Vec3> spec_direction(const PotentialSpec& spec) {
    if (spec.plane) return spec.plane->direction;
    if (spec.circular) return spec.circular->direction;
    for (const auto& p : spec.parts) {
        if (auto d = spec_direction(p)) return d;
    }
    return std::nullopt;
}

}  // namespace

ScenarioConfig parse_scenario(const json& j) {
    check_keys(j, "scenario",
               {"name", "description", "c", "hbar", "seed", "events", "potential", "gauge",
                "binding", "particle", "run", "dipole_freeze", "tolerances"});
    ScenarioConfig cfg;
    if (j.contains("name")) cfg.name = j.at("name").get<std::string>();
    if (j.contains("description")) cfg.description = j.at("description").get<std::string>();
    cfg.c = field_number(j, "scenario", "c", 1.0);
    if (!(cfg.c > 0.0)) cfg_error("scenario.c", "must be > 0");
    cfg.hbar = field_number(j, "scenario", "hbar", 1.0);
    if (!(cfg.hbar > 0.0)) cfg_error("scenario.hbar", "must be > 0");
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_unsigned() && !j.at("seed").is_number_integer()) {
            cfg_error("scenario.seed", "expected an integer");
        }
        cfg.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("events")) {
        cfg.events = j.at("events").get<int>();
        if (cfg.events < 1) cfg_error("scenario.events", "must be >= 1");
    }
    if (!j.contains("potential")) cfg_error("scenario", "missing 'potential'");
    cfg.potential = parse_potential(j.at("potential"), "scenario.potential");

    if (j.contains("gauge")) {
        const json& g = j.at("gauge");
        check_keys(g, "scenario.gauge", {"kind", "value", "amplitude", "profile"});
        GaugeSpec gs;
        if (!g.contains("kind")) cfg_error("scenario.gauge", "missing 'kind'");
        gs.kind = g.at("kind").get<std::string>();
        if (gs.kind == "constant") {
            gs.value = field_number(g, "scenario.gauge", "value", 0.0);
        } else if (gs.kind == "lightcone") {
            gs.amplitude = field_number(g, "scenario.gauge", "amplitude", 0.0);
            if (g.contains("profile")) {
                gs.profile = g.at("profile").get<std::string>();
                if (gs.profile != "cos" && gs.profile != "sin") {
                    cfg_error("scenario.gauge.profile", "must be 'cos' or 'sin'");
                }
            }
        } else if (gs.kind == "nonphysical") {
            check_keys(g, "scenario.gauge", {"kind"});
        } else {
            cfg_error("scenario.gauge", "unknown gauge kind '" + gs.kind + "'");
        }
        cfg.gauge = gs;
    }

    if (j.contains("binding")) cfg.binding = parse_coulomb_block(j.at("binding"), "scenario.binding");

    if (j.contains("particle")) {
        const json& p = j.at("particle");
        check_keys(p, "scenario.particle", {"q", "m", "position", "momentum"});
        ParticleSpec ps;
        ps.q = field_number(p, "scenario.particle", "q", -1.0);
        ps.m = field_number(p, "scenario.particle", "m", 1.0);
        if (!(ps.m > 0.0)) cfg_error("scenario.particle.m", "must be > 0");
        if (p.contains("position")) ps.position = parse_vec3(p.at("position"), "scenario.particle.position");
        if (p.contains("momentum")) ps.momentum = parse_vec3(p.at("momentum"), "scenario.particle.momentum");
        cfg.particle = ps;
    }

    if (j.contains("run")) {
        const json& r = j.at("run");
        check_keys(r, "scenario.run",
                   {"cycles", "steps_per_cycle", "stride", "ramp_cycles", "average_cycles"});
        RunSpec rs;
        rs.cycles = field_number(r, "scenario.run", "cycles", 30.0);
        if (!(rs.cycles > 0.0)) cfg_error("scenario.run.cycles", "must be > 0");
        if (r.contains("steps_per_cycle")) rs.steps_per_cycle = r.at("steps_per_cycle").get<int>();
        if (rs.steps_per_cycle < 1) cfg_error("scenario.run.steps_per_cycle", "must be >= 1");
        if (r.contains("stride")) rs.stride = r.at("stride").get<int>();
        if (rs.stride < 1) cfg_error("scenario.run.stride", "must be >= 1");
        rs.ramp_cycles = field_number(r, "scenario.run", "ramp_cycles", 2.0);
        if (rs.ramp_cycles < 0.0) cfg_error("scenario.run.ramp_cycles", "must be >= 0");
        if (r.contains("average_cycles")) rs.average_cycles = r.at("average_cycles").get<int>();
        if (rs.average_cycles < 1) cfg_error("scenario.run.average_cycles", "must be >= 1");
        cfg.run = rs;
    }

    if (j.contains("dipole_freeze")) {
        const json& d = j.at("dipole_freeze");
        check_keys(d, "scenario.dipole_freeze", {"anchor"});
        cfg.dipole_anchor = d.contains("anchor")
                                ? parse_vec3(d.at("anchor"), "scenario.dipole_freeze.anchor")
                                : Vec3{};
    }

    if (j.contains("tolerances")) {
        const json& t = j.at("tolerances");
        if (!t.is_object()) cfg_error("scenario.tolerances", "expected an object");
        static const char* names[] = {"algebraic",         "phase_dependence", "fd",
                                      "field_equivalence", "radiation_gauge",  "cross_term"};
        for (auto it = t.begin(); it != t.end(); ++it) {
            const bool known =
                std::any_of(std::begin(names), std::end(names),
                            [&](const char* n) { return it.key() == n; });
            if (!known) cfg_error("scenario.tolerances", "unknown tolerance '" + it.key() + "'");
            cfg.tolerances[it.key()] = finite_number(it.value(), "scenario.tolerances." + it.key());
        }
    }
    return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::runtime_error("cannot parse " + path.string() + ": " + e.what());
    }
    return parse_scenario(j);
}

nlohmann::ordered_json scenario_to_json(const ScenarioConfig& cfg) {
    nlohmann::ordered_json j;
    if (!cfg.name.empty()) j["name"] = cfg.name;
    if (!cfg.description.empty()) j["description"] = cfg.description;
    j["c"] = cfg.c;
    j["hbar"] = cfg.hbar;
    j["seed"] = cfg.seed;
    j["events"] = cfg.events;
    j["potential"] = potential_to_json(cfg.potential);
    if (cfg.gauge) {
        nlohmann::ordered_json g;
        g["kind"] = cfg.gauge->kind;
        if (cfg.gauge->kind == "constant") g["value"] = cfg.gauge->value;
        if (cfg.gauge->kind == "lightcone") {
            g["amplitude"] = cfg.gauge->amplitude;
            g["profile"] = cfg.gauge->profile;
        }
        j["gauge"] = g;
    }
    if (cfg.binding) {
        nlohmann::ordered_json b;
        b["charge"] = cfg.binding->charge;
        if (cfg.binding->r_min) b["r_min"] = *cfg.binding->r_min;
        j["binding"] = b;
    }
    if (cfg.particle) {
        nlohmann::ordered_json p;
        p["q"] = cfg.particle->q;
        p["m"] = cfg.particle->m;
        p["position"] = {cfg.particle->position.x, cfg.particle->position.y,
                         cfg.particle->position.z};
        p["momentum"] = {cfg.particle->momentum.x, cfg.particle->momentum.y,
                         cfg.particle->momentum.z};
        j["particle"] = p;
    }
    if (cfg.run) {
        nlohmann::ordered_json r;
        r["cycles"] = cfg.run->cycles;
        r["steps_per_cycle"] = cfg.run->steps_per_cycle;
        r["stride"] = cfg.run->stride;
        r["ramp_cycles"] = cfg.run->ramp_cycles;
        r["average_cycles"] = cfg.run->average_cycles;
        j["run"] = r;
    }
    if (cfg.dipole_anchor) {
        j["dipole_freeze"] = {
            {"anchor", {cfg.dipole_anchor->x, cfg.dipole_anchor->y, cfg.dipole_anchor->z}}};
    }
    if (!cfg.tolerances.empty()) {
        nlohmann::ordered_json t;
        for (const auto& [k, v] : cfg.tolerances) t[k] = v;
        j["tolerances"] = t;
    }
    return j;
}

PotentialField build_transverse(const ScenarioConfig& cfg, bool for_simulation) {
    const double ramp =
        (for_simulation && cfg.run) ? cfg.run->ramp_cycles : 0.0;
    PotentialField field = build_potential_spec(cfg.potential, cfg.c, ramp);
    if (cfg.gauge) {
        if (cfg.gauge->kind == "constant") {
            field = apply_gauge(field, GaugeFunction::constant(cfg.gauge->value));
        } else if (cfg.gauge->kind == "lightcone") {
            const auto k = field.propagation_vector();
            if (!k) {
                throw std::runtime_error(
                    "light-cone gauge requires a plane-wave-family potential");
            }
            const double amp = cfg.gauge->amplitude;
            GaugeFunction shift =
                cfg.gauge->profile == "cos"
                    ? light_cone_gauge([amp](double p) { return amp * std::cos(p); }, *k,
                                       [amp](double p) { return amp * std::sin(p); })
                    : light_cone_gauge([amp](double p) { return amp * std::sin(p); }, *k,
                                       [amp](double p) { return amp * (1.0 - std::cos(p)); });
            field = apply_gauge(field, shift);
        } else if (cfg.gauge->kind == "nonphysical") {
            field = nonphysical_gauge(field);
        }
    }
    if (for_simulation && cfg.dipole_anchor) {
        field = dipole_freeze(field, *cfg.dipole_anchor);
    }
    return field;
}

std::optional<PotentialField> build_binding(const ScenarioConfig& cfg) {
    if (!cfg.binding) return std::nullopt;
    return coulomb(cfg.binding->charge, cfg.binding->r_min.value_or(1e-12));
}

std::optional<double> transverse_omega(const ScenarioConfig& cfg) {
    return spec_omega(cfg.potential);
}

ValidatorConfig build_validator_config(const ScenarioConfig& cfg) {
    ValidatorConfig v;
    v.sample.seed = cfg.seed;
    v.sample.count = cfg.events;
    auto maybe = [&](const char* name, double& slot) {
        auto it = cfg.tolerances.find(name);
        if (it != cfg.tolerances.end()) slot = it->second;
    };
    maybe("algebraic", v.tol_algebraic);
    maybe("phase_dependence", v.tol_phase_dependence);
    maybe("fd", v.tol_fd);
    maybe("field_equivalence", v.tol_field_equivalence);
    maybe("radiation_gauge", v.tol_radiation_gauge);
    maybe("cross_term", v.tol_cross_term);
    return v;
}

ValidationReport run_validation_scenario(const ScenarioConfig& cfg) {
    const PotentialField field = build_transverse(cfg, false);
    const auto binding = build_binding(cfg);
    const ValidationContext ctx = binding
                                      ? ValidationContext::transverse_with_binding(*binding)
                                      : ValidationContext::standalone();
    ValidationReport report = validate(field, ctx, build_validator_config(cfg));
    if (!cfg.name.empty()) report.subject = cfg.name + ": " + report.subject;
    return report;
}

SimulationOutcome run_simulation_scenario(const ScenarioConfig& cfg) {
    if (!cfg.particle) throw std::runtime_error("simulation scenario requires a 'particle' block");
    const RunSpec run = cfg.run.value_or(RunSpec{});
    const auto omega = transverse_omega(cfg);
    if (!omega) throw std::runtime_error("simulation scenario requires a transverse potential");
    const auto direction = spec_direction(cfg.potential);

    const double period = 2.0 * M_PI / *omega;
    const double dt = period / run.steps_per_cycle;
    const double t_end = run.cycles * period;

    // U_p comes from the steady (unramped, unfrozen) transverse potential.
    std::optional<double> u_p;
    {
        ScenarioConfig steady = cfg;
        steady.dipole_anchor.reset();
        const PotentialField f = build_transverse(steady, false);
        if (is_transverse_family(f)) {
            u_p = ponderomotive_energy(f, cfg.particle->q, cfg.particle->m, cfg.c);
        }
    }

    PotentialField driving = build_transverse(cfg, true);
    if (auto binding = build_binding(cfg)) {
        driving = superpose({driving, *binding});
    }

    ParticleState init;
    init.q = cfg.particle->q;
    init.m = cfg.particle->m;
    init.r = cfg.particle->position;
    init.p = cfg.particle->momentum;

    SimOptions opts;
    opts.stride = run.stride;
    opts.c = cfg.c;

    SimulationOutcome out;
    out.omega = *omega;
    out.period = period;
    out.trajectory = simulate(init, driving, t_end, dt, opts);

    DriftConfig drift_cfg;
    drift_cfg.average_periods = run.average_cycles;
    drift_cfg.hbar = cfg.hbar;
    drift_cfg.omega = omega;
    drift_cfg.u_p = u_p;
    out.summary =
        drift_momentum(out.trajectory, direction.value_or(Vec3{0, 0, 1}), period, drift_cfg);
    out.ratio = (u_p && *u_p > 0.0) ? out.summary.drift_p_parallel * cfg.c / *u_p : 0.0;
    return out;
}

std::filesystem::path scenario_directory() {
    if (const char* env = std::getenv("LIGHTCONE_SCENARIO_DIR")) {
        return std::filesystem::path(env);
    }
    return std::filesystem::path(LIGHTCONE_BUNDLED_SCENARIO_DIR);
}

std::filesystem::path resolve_scenario(const std::string& name_or_path) {
    namespace fs = std::filesystem;
    const fs::path direct(name_or_path);
    if (fs::exists(direct) && fs::is_regular_file(direct)) return direct;
    fs::path bundled = scenario_directory() / name_or_path;
    if (fs::exists(bundled)) return bundled;
    bundled += ".json";
    if (fs::exists(bundled)) return bundled;
    throw std::runtime_error("scenario not found: " + name_or_path);
}

std::vector<std::string> list_scenarios() {
    namespace fs = std::filesystem;
    std::vector<std::string> names;
    const fs::path dir = scenario_directory();
    if (!fs::exists(dir)) return names;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") {
            names.push_back(entry.path().stem().string());
        }
    }
    std::sort(names.begin(), names.end());
    return names;
}

}  // namespace lightcone
