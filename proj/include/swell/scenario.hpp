#pragma once

#include <optional>
#include <string>
#include <vector>

#include "swell/config.hpp"
#include "swell/solver.hpp"

namespace swell {

/// One record of the comparison sweep: a scheme's reconstructed edge depths
/// in one cell for one value of the swept depth.
struct SweepRow {
    double h0 = 0.0;
    SchemeChoice scheme = SchemeChoice::paper;
    int cell = 0; // cell index in the benchmark numbering (-3..3)
    double h_left = 0.0;
    double h_right = 0.0;
    double gamma = 0.0; // blended scheme only
    double xi = 0.0;    // blended scheme only
};

struct SweepTable {
    std::vector<double> h0_values;
    std::vector<SweepRow> rows;
};

/// The shore-transition benchmark: a linear bed through a constant-surface
/// pool meeting a constant-depth stretch, with the junction cell's depth
/// swept from 0 to sweep_max. All four schemes are evaluated per value.
SweepTable comparison_sweep(const ScenarioConfig& config);

struct ConvergenceRow {
    int cell_count = 0;
    double sup_surface_error = 0.0;
    double ratio = 0.0; // previous error / this error
};

/// Still-water surface error of the width-channel reconstruction under grid
/// refinement.
std::vector<ConvergenceRow> convergence_study(const ScenarioConfig& config);

struct RunArtifacts {
    State final_state;
    Grid grid;
    BedGeometry bed;
    std::optional<WidthGeometry> widths;
    double end_time = 0.0;
    long steps = 0;
    long clamp_count = 0;
    double min_mass_seen = 0.0;     // pre-clamp, over the whole run
    double min_particle_seen = 0.0; // pre-clamp
    double velocity_margin = 0.0;   // worst edge-velocity bound slack seen
    double max_surface_deviation = 0.0; // vs eta0, final state
    double max_abs_q = 0.0;             // final state
    std::vector<std::string> files_written;
};

/// Run a scenario and, when out_dir is non-empty, write the time-series CSV,
/// final-state CSV, and metadata JSON (plus SVG on request). Outputs are
/// deterministic for a fixed config.
RunArtifacts run(const ScenarioConfig& config, const std::string& out_dir = "",
                 bool write_svg = false);

} // namespace swell
