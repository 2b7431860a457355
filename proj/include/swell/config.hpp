#pragma once

#include <stdexcept>
#include <string>

#include "swell/solver.hpp"

namespace swell {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ScenarioKind {
    lake_at_rest,
    dam_break,
    draining_slope,
    particle_current,
    comparison_sweep,
    convergence_study,
};

enum class SchemeChoice { paper, kurganov_levy, chertock, bollermann };

enum class BedProfile { flat, bump, slope, basin_slope, step, csv };

/// Fully resolved run description. parse_config() fills scenario-dependent
/// defaults and validates ranges; unknown keys are rejected.
struct ScenarioConfig {
    ScenarioKind scenario = ScenarioKind::lake_at_rest;
    SystemKind system = SystemKind::plain;
    SchemeChoice scheme = SchemeChoice::paper;

    int cell_count = 100; // J
    double domain_lo = 0.0;
    double domain_hi = 10.0;
    double end_time = 1.0;
    double nu = 0.45;
    BoundaryMode boundary = BoundaryMode::reflective_wall;

    BedProfile bed = BedProfile::flat;
    std::string bed_csv;
    double bed_amplitude = 0.5;

    double gravity = 9.81;
    double gp = 1.0;  // particle reduced gravity
    double ga = 0.5;  // ambient reduced gravity
    double vs = 0.1;  // settling velocity

    double width_left = 1.0;
    double width_right = 2.0;

    double eta0 = 2.0;      // still-water surface level
    double h_left = 1.0;    // dam break
    double h_right = 0.125;
    double dam_position = 0.0;
    double phi0 = 1.0;

    double sweep_step = 1.0 / 64.0;
    double sweep_max = 7.0 / 3.0;
    double kl_threshold = 0.75;

    double alpha_plus = 0.75;
    double alpha_minus = 0.75;
    double alpha_center = 0.25;
    double gain = -1.0;
    double suppression_k = 100.0;
    double froude = -1.0;

    int output_every = 0; // 0: pick so the series stays around 200 rows
    bool energy_column = false;
};

/// Parse "key = value" text ('#' starts a comment). Throws ConfigError on
/// unknown keys, malformed lines, or out-of-range values.
ScenarioConfig parse_config(const std::string& text);

/// Apply one "key=value" override on top of a parsed config.
void apply_override(ScenarioConfig& config, const std::string& key_equals_value);

std::string scenario_name(ScenarioKind kind);
std::string scheme_name(SchemeChoice scheme);

} // namespace swell
