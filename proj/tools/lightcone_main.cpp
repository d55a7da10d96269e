#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "lightcone/dynamics.hpp"
#include "lightcone/potential.hpp"
#include "lightcone/scenario.hpp"
#include "lightcone/validator.hpp"

namespace {

using namespace lightcone;

// Temp-file-plus-rename so partially written outputs never appear.
void atomic_write(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

std::string format_row(const std::vector<double>& values) {
    std::string row;
    char buf[32];
    for (std::size_t i = 0; i < values.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g", values[i]);
        if (i) row += ',';
        row += buf;
    }
    row += '\n';
    return row;
}

void apply_tolerance_overrides(ScenarioConfig& cfg, const std::vector<std::string>& overrides) {
    static const char* names[] = {"algebraic",         "phase_dependence", "fd",
                                  "field_equivalence", "radiation_gauge",  "cross_term"};
    for (const auto& entry : overrides) {
        const auto eq = entry.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("--tolerance expects name=value, got '" + entry + "'");
        }
        const std::string name = entry.substr(0, eq);
        const bool known = std::any_of(std::begin(names), std::end(names),
                                       [&](const char* n) { return name == n; });
        if (!known) throw std::runtime_error("unknown tolerance '" + name + "'");
        cfg.tolerances[name] = std::stod(entry.substr(eq + 1));
    }
}

struct GridSpec {
    std::string axis = "z";
    double min = 0.0;
    double max = 1.0;
    int count = 11;
    double t0 = 0.0, x0 = 0.0, y0 = 0.0, z0 = 0.0;
};

void add_grid_options(CLI::App* cmd, GridSpec& grid) {
    cmd->add_option("--axis", grid.axis, "Sweep axis: t, x, y or z")
        ->check(CLI::IsMember({"t", "x", "y", "z"}));
    cmd->add_option("--min", grid.min, "Sweep start");
    cmd->add_option("--max", grid.max, "Sweep end");
    cmd->add_option("--count", grid.count, "Number of grid points")->check(CLI::NonNegativeNumber);
    cmd->add_option("--t0", grid.t0, "Fixed time coordinate");
    cmd->add_option("--x0", grid.x0, "Fixed x coordinate");
    cmd->add_option("--y0", grid.y0, "Fixed y coordinate");
    cmd->add_option("--z0", grid.z0, "Fixed z coordinate");
}

// Lab coordinates (t, r) of the grid points; events are built as (c t, r).
std::vector<std::array<double, 4>> grid_points(const GridSpec& grid) {
    std::vector<std::array<double, 4>> pts;
    pts.reserve(grid.count);
    for (int i = 0; i < grid.count; ++i) {
        const double v = grid.count == 1
                             ? grid.min
                             : grid.min + (grid.max - grid.min) * i / (grid.count - 1.0);
        std::array<double, 4> p{grid.t0, grid.x0, grid.y0, grid.z0};
        if (grid.axis == "t") p[0] = v;
        if (grid.axis == "x") p[1] = v;
        if (grid.axis == "y") p[2] = v;
        if (grid.axis == "z") p[3] = v;
        pts.push_back(p);
    }
    return pts;
}

void emit(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << content;
    } else {
        atomic_write(out_path, content);
    }
}

int run_validate(const std::string& config, const std::string& out_path, const std::string& format,
                 std::optional<std::uint64_t> seed, const std::vector<std::string>& tolerances) {
    ScenarioConfig cfg = load_scenario(resolve_scenario(config));
    if (seed) cfg.seed = *seed;
    apply_tolerance_overrides(cfg, tolerances);
    const ValidationReport report = run_validation_scenario(cfg);
    if (format == "machine") {
        std::cout << report.to_json().dump(2) << "\n";
    } else {
        std::cout << report.to_text();
    }
    if (!out_path.empty()) atomic_write(out_path, report.to_json().dump(2) + "\n");
    switch (report.verdict) {
        case Verdict::Physical: return 0;
        case Verdict::Unphysical: return 2;
        case Verdict::Indeterminate: return 3;
    }
    return 1;
}

int run_fields(const std::string& config, const GridSpec& grid, const std::string& out_path,
               int jobs, const std::string& method) {
    ScenarioConfig cfg = load_scenario(resolve_scenario(config));
    PotentialField field = build_transverse(cfg, false);
    if (auto binding = build_binding(cfg)) field = superpose({field, *binding});

    FieldEvalOptions opts;
    if (method == "analytic") opts.method = FieldMethod::Analytic;
    if (method == "auto") opts.method = FieldMethod::Auto;

    const auto pts = grid_points(grid);
    struct Row {
        bool ok = false;
        FieldSample sample;
        std::string error;
    };
    std::vector<Row> rows(pts.size());
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const FourVector event{cfg.c * pts[i][0], pts[i][1], pts[i][2], pts[i][3]};
            try {
                rows[i].sample = evaluate_fields(field, event, opts);
                rows[i].ok = true;
            } catch (const SingularityError& e) {
                rows[i].error = e.what();
            }
        }
    };
    jobs = std::max(1, jobs);
    if (jobs == 1 || pts.size() < 2) {
        work(0, pts.size());
    } else {
        std::vector<std::thread> threads;
        const std::size_t chunk = (pts.size() + jobs - 1) / jobs;
        for (std::size_t begin = 0; begin < pts.size(); begin += chunk) {
            threads.emplace_back(work, begin, std::min(begin + chunk, pts.size()));
        }
        for (auto& th : threads) th.join();
    }

    std::ostringstream os;
    os << "t,x,y,z,Ex,Ey,Ez,Bx,By,Bz\n";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (!rows[i].ok) {
            os << "# skipped (singularity): " << rows[i].error << "\n";
            std::cerr << "warning: grid point " << i << " skipped: " << rows[i].error << "\n";
            continue;
        }
        const FieldSample& s = rows[i].sample;
        os << format_row({pts[i][0], pts[i][1], pts[i][2], pts[i][3], s.E.x, s.E.y, s.E.z, s.B.x,
                          s.B.y, s.B.z});
    }
    emit(os.str(), out_path);
    return 0;
}

int run_transform(const std::string& config, const GridSpec& grid, const std::string& out_path) {
    ScenarioConfig cfg = load_scenario(resolve_scenario(config));
    if (!cfg.gauge) throw std::runtime_error("transform requires a 'gauge' block in the scenario");
    const PotentialField field = build_transverse(cfg, false);

    std::ostringstream os;
    os << "t,x,y,z,A0,Ax,Ay,Az\n";
    for (const auto& p : grid_points(grid)) {
        const FourVector event{cfg.c * p[0], p[1], p[2], p[3]};
        const FourVector a = field(event);
        os << format_row({p[0], p[1], p[2], p[3], a.t, a.x, a.y, a.z});
    }
    emit(os.str(), out_path);
    return 0;
}

int run_simulate(const std::string& config, const std::string& out_path,
                 const std::string& summary_path) {
    const ScenarioConfig cfg = load_scenario(resolve_scenario(config));
    const SimulationOutcome outcome = run_simulation_scenario(cfg);

    std::ostringstream traj;
    {
        std::ostringstream tmp;
        outcome.trajectory.write_csv(tmp);
        traj << tmp.str();
    }
    emit(traj.str(), out_path);

    char buf[64];
    std::ostringstream os;
    os << "scenario: " << (cfg.name.empty() ? config : cfg.name) << "\n";
    os << "field: " << outcome.trajectory.field_descriptor << "\n";
    std::snprintf(buf, sizeof(buf), "%.17g", outcome.trajectory.dt);
    os << "samples: " << outcome.trajectory.samples.size() << "  dt: " << buf << "\n";
    if (outcome.trajectory.truncated) os << "truncated: " << outcome.trajectory.termination << "\n";
    const PonderomotiveSummary& s = outcome.summary;
    if (s.has_field_info) {
        std::snprintf(buf, sizeof(buf), "%.17g", s.U_p);
        os << "U_p: " << buf << "\n";
    }
    std::snprintf(buf, sizeof(buf), "%.17g", s.drift_p_parallel);
    os << "drift_p_parallel: " << buf << "\n";
    if (s.has_field_info) {
        std::snprintf(buf, sizeof(buf), "%.17g", s.n_photons);
        os << "n_photons: " << buf << "\n";
        std::snprintf(buf, sizeof(buf), "%.17g", outcome.ratio);
        os << "ratio_drift_c_over_Up: " << buf << "\n";
    }
    std::cout << os.str();

    if (!summary_path.empty()) {
        nlohmann::ordered_json j;
        j["scenario"] = cfg.name.empty() ? config : cfg.name;
        j["samples"] = outcome.trajectory.samples.size();
        j["dt"] = outcome.trajectory.dt;
        j["truncated"] = outcome.trajectory.truncated;
        if (s.has_field_info) {
            j["U_p"] = s.U_p;
            j["n_photons"] = s.n_photons;
            j["ratio_drift_c_over_Up"] = outcome.ratio;
        }
        j["drift_p_parallel"] = s.drift_p_parallel;
        atomic_write(summary_path, j.dump(2) + "\n");
    }
    return 0;
}

int run_scenarios() {
    const auto names = list_scenarios();
    if (names.empty()) {
        std::cout << "no bundled scenarios found in " << scenario_directory().string() << "\n";
        return 0;
    }
    for (const auto& name : names) {
        std::string description;
        try {
            description = load_scenario(scenario_directory() / (name + ".json")).description;
        } catch (const std::exception&) {
            description = "(unreadable)";
        }
        std::cout << name << "\n    " << description << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lightcone: four-potential construction, gauge transformation, physicality "
                 "validation and charged-particle dynamics"};
    app.require_subcommand(1);

    std::string config, out_path, summary_path;
    std::string format = "text";
    std::string method = "fd";
    std::vector<std::string> tolerances;
    std::uint64_t seed_value = 0;
    GridSpec grid;
    int jobs = 1;

    CLI::App* validate_cmd =
        app.add_subcommand("validate", "Run the physicality constraint suite on a scenario");
    validate_cmd->add_option("--config", config, "Scenario file or bundled scenario name")
        ->required();
    validate_cmd->add_option("--out", out_path, "Write the machine-readable report here");
    validate_cmd->add_option("--format", format, "Stdout format")
        ->check(CLI::IsMember({"text", "machine"}));
    CLI::Option* seed_opt =
        validate_cmd->add_option("--seed", seed_value, "Override the sampling seed");
    validate_cmd->add_option("--tolerance", tolerances,
                             "Override a check tolerance, name=value (repeatable)");

    CLI::App* fields_cmd =
        app.add_subcommand("fields", "Sample E and B along a coordinate axis");
    fields_cmd->add_option("--config", config, "Scenario file or bundled scenario name")
        ->required();
    add_grid_options(fields_cmd, grid);
    fields_cmd->add_option("--out", out_path, "Output file (stdout when omitted)");
    fields_cmd->add_option("--jobs", jobs, "Parallel evaluation threads")
        ->check(CLI::PositiveNumber);
    fields_cmd->add_option("--method", method, "Derivative method")
        ->check(CLI::IsMember({"fd", "analytic", "auto"}));

    CLI::App* transform_cmd = app.add_subcommand(
        "transform", "Apply the configured gauge and sample the transformed potential");
    transform_cmd->add_option("--config", config, "Scenario file or bundled scenario name")
        ->required();
    add_grid_options(transform_cmd, grid);
    transform_cmd->add_option("--out", out_path, "Output file (stdout when omitted)");

    CLI::App* simulate_cmd =
        app.add_subcommand("simulate", "Integrate a charged particle and report drift observables");
    simulate_cmd->add_option("--config", config, "Scenario file or bundled scenario name")
        ->required();
    simulate_cmd->add_option("--out", out_path, "Trajectory file (stdout when omitted)");
    simulate_cmd->add_option("--summary-out", summary_path, "Machine-readable summary file");

    app.add_subcommand("scenarios", "List bundled scenarios");

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate_cmd->parsed()) {
            std::optional<std::uint64_t> seed;
            if (seed_opt->count() > 0) seed = seed_value;
            return run_validate(config, out_path, format, seed, tolerances);
        }
        if (fields_cmd->parsed()) return run_fields(config, grid, out_path, jobs, method);
        if (transform_cmd->parsed()) return run_transform(config, grid, out_path);
        if (simulate_cmd->parsed()) return run_simulate(config, out_path, summary_path);
        return run_scenarios();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
