#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lightcone/dynamics.hpp"
#include "lightcone/potential.hpp"
#include "lightcone/validator.hpp"

namespace lightcone {

struct PlaneWaveSpec {
    FourVector amplitude;
    double omega = 1.0;
    Vec3 direction{0, 0, 1};
    Waveform waveform = Waveform::Cos;
};

struct CircularWaveSpec {
    double a0 = 1.0;
    double omega = 1.0;
    Vec3 direction{0, 0, 1};
};

struct CoulombSpec {
    double charge = 1.0;
    std::optional<double> r_min;
};

struct PotentialSpec {
    std::string kind;  // plane_wave | circular_wave | coulomb | superposition
    std::optional<PlaneWaveSpec> plane;
    std::optional<CircularWaveSpec> circular;
    std::optional<CoulombSpec> coulomb_part;
    std::vector<PotentialSpec> parts;
};

struct GaugeSpec {
    std::string kind;  // constant | lightcone | nonphysical
    double value = 0.0;      // constant
    double amplitude = 0.0;  // lightcone
    std::string profile = "cos";
};

struct ParticleSpec {
    double q = -1.0;
    double m = 1.0;
    Vec3 position{};
    Vec3 momentum{};
};

struct RunSpec {
    double cycles = 30.0;
    int steps_per_cycle = 2000;
    int stride = 10;
    double ramp_cycles = 2.0;
    int average_cycles = 10;
};

/// Declarative scenario: which potential, which gauge, what to run. Unknown
/// keys are rejected on load; directions are normalized on load.
struct ScenarioConfig {
    std::string name;
    std::string description;
    double c = 1.0;
    double hbar = 1.0;
    std::uint64_t seed = 12345;
    int events = 200;
    PotentialSpec potential;
    std::optional<GaugeSpec> gauge;
    std::optional<CoulombSpec> binding;
    std::optional<ParticleSpec> particle;
    std::optional<RunSpec> run;
    std::optional<Vec3> dipole_anchor;
    std::map<std::string, double> tolerances;
};

ScenarioConfig parse_scenario(const nlohmann::json& j);
ScenarioConfig load_scenario(const std::filesystem::path& path);
nlohmann::ordered_json scenario_to_json(const ScenarioConfig& cfg);

/// Transverse potential with the configured gauge applied; with
/// for_simulation the run's amplitude ramp and any dipole freeze are applied
/// as well.
PotentialField build_transverse(const ScenarioConfig& cfg, bool for_simulation);

std::optional<PotentialField> build_binding(const ScenarioConfig& cfg);

/// Angular frequency of the transverse part, when there is one.
std::optional<double> transverse_omega(const ScenarioConfig& cfg);

ValidatorConfig build_validator_config(const ScenarioConfig& cfg);

ValidationReport run_validation_scenario(const ScenarioConfig& cfg);

struct SimulationOutcome {
    Trajectory trajectory;
    PonderomotiveSummary summary;
    double ratio = 0.0;  // drift * c / U_p; zero when U_p is zero or unknown
    double omega = 0.0;
    double period = 0.0;
};

SimulationOutcome run_simulation_scenario(const ScenarioConfig& cfg);

/// Bundled-scenario location: LIGHTCONE_SCENARIO_DIR when set, otherwise the
/// directory compiled in at build time.
std::filesystem::path scenario_directory();

/// Accepts a path to a config file or the bare name of a bundled scenario.
std::filesystem::path resolve_scenario(const std::string& name_or_path);

std::vector<std::string> list_scenarios();

}  // namespace lightcone
