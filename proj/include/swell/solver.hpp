#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "swell/mesh.hpp"
#include "swell/wbrecon.hpp"

namespace swell {

enum class SystemKind { plain, width, particle };

/// Constants for the particle-driven system; unused fields stay zero for the
/// other systems. The width cutoff flag enables the thin-film cutoff for the
/// width system (off by default: its flux proxy is heuristic).
struct SystemConstants {
    double g_prime_particle = 0.0; // > 0 for particle runs
    double g_prime_ambient = 0.0;  // >= 0
    double settling_velocity = 0.0;
    bool width_cutoff = false;
};

/// Conserved cell averages. For the width system `h` holds the wetted area
/// A = w*h and `q` the area flux; `phi_h` is used by the particle system only.
struct State {
    SystemKind kind = SystemKind::plain;
    std::vector<double> h;
    std::vector<double> q;
    std::vector<double> phi_h;

    std::size_t cells() const { return h.size(); }
};

enum class BoundaryMode { reflective_wall, outflow };

struct SolverError : std::runtime_error {
    SolverError(const std::string& what, std::ptrdiff_t cell_index)
        : std::runtime_error(what), cell(cell_index) {}
    std::ptrdiff_t cell = -1;
};

struct FluxVec {
    double mass = 0.0;
    double momentum = 0.0;
    double particle = 0.0;
};

/// One-sided interface state fed to the numerical flux.
struct EdgeState {
    double h = 0.0;   // depth (width system: area)
    double q = 0.0;   // volume flux (width system: area flux)
    double phi = 0.0; // concentration (particle system)
    double g_eff = 0.0;
    double depth = 0.0; // actual depth; equals h except for the width system
};

/// Pointwise analytic flux. Dry states give the zero vector.
FluxVec physical_flux(SystemKind kind, const EdgeState& s);

struct NumericalFlux {
    FluxVec flux;
    double a_minus = 0.0;  // <= 0
    double a_plus = 0.0;   // >= 0
    FluxVec advective;     // inertial part (with dissipation)
    double pressure = 0.0; // hydrostatic momentum part; flux = advective + pressure
};

/// Central-upwind flux with one-sided speed bounds. Equal states reproduce
/// the analytic flux exactly; a dry pair gives zero flux and zero speeds.
NumericalFlux numerical_flux(SystemKind kind, const EdgeState& left, const EdgeState& right);

/// Momentum source from the bed (and width variation for channels), assembled
/// from the reconstructed edge depths of the cell.
double bed_source(SystemKind kind, const Grid& grid, const BedGeometry& bed,
                  const WidthGeometry* widths, std::size_t j, const EdgeState& left_edge,
                  const EdgeState& right_edge);

/// Particle sink -v_s * phi; zero in dry cells.
double settling_sink(double phi_cell, double h_cell, double settling_velocity);

struct StepReport {
    std::vector<FluxVec> interface_flux; // J+1 entries
    std::vector<FluxVec> cell_source;    // J entries (momentum and particle parts)
    std::vector<double> speed_minus;     // J+1, <= 0
    std::vector<double> speed_plus;      // J+1, >= 0
    // Filled by the stepper:
    std::vector<double> drain_mass;          // per interface, in [0,1]
    std::vector<double> drain_particle;      // per interface, min-coupled with mass
    std::vector<double> drain_mom_advect;    // per interface
    std::vector<double> drain_source_mass;   // per cell
    std::vector<double> drain_source_particle; // per cell
    double dt = 0.0;
    double min_mass_before_clamp = 0.0;
    double min_particle_before_clamp = 0.0;
    long clamp_count = 0;
};

struct RhsResult {
    std::vector<double> dh;
    std::vector<double> dq;
    std::vector<double> dphi_h;
    StepReport report;
    // Pieces reused by the positivity-preserving stepper.
    std::vector<FluxVec> advective_flux;   // per interface
    std::vector<double> pressure_balance;  // per cell: hydrostatic flux difference
                                           // minus bed source, over dx (never drained)
    std::vector<EdgeState> edge_left;      // per interface, state on the left side
    std::vector<EdgeState> edge_right;     // per interface
};

/// Semi-discrete right-hand side: reconstruction, interface fluxes, sources.
/// Pure; the state is untouched.
RhsResult rhs(const SystemConstants& constants, const Grid& grid, const BedGeometry& bed,
              const WidthGeometry* widths, const State& state, BoundaryMode bc);

/// Worst slack in the edge-velocity bound over wet cells; nonnegative means
/// the bound held. Used as a runtime diagnostic by the scenarios.
double velocity_bound_margin(const SystemConstants& constants, const Grid& grid,
                             const BedGeometry& bed, const WidthGeometry* widths,
                             const State& state, BoundaryMode bc);

} // namespace swell
