#pragma once

#include <span>

#include "swell/solver.hpp"

namespace swell {

/// dt = nu * min_j(dx_j / s_j) where s_j is the largest wave speed seen at
/// the cell's interfaces, floored away from zero so quiescent states give a
/// finite step. Requires 0 < nu <= 1/2.
double cfl_dt(const Grid& grid, std::span<const double> speed_minus,
              std::span<const double> speed_plus, double nu, double speed_floor = 1e-12);

/// Fraction of the step each flux and source is allowed to act before its
/// donor cell runs out of material. 1 everywhere the donor cannot empty.
struct DrainingFactors {
    std::vector<double> flux_mass;       // per interface
    std::vector<double> flux_particle;   // per interface, before coupling
    std::vector<double> coupled_particle; // min(mass factor, particle factor)
    std::vector<double> source_mass;     // per cell
    std::vector<double> source_particle; // per cell
};

DrainingFactors draining_times(const State& state, const Grid& grid,
                               std::span<const FluxVec> fluxes, std::span<const FluxVec> sources,
                               double dt);

/// Forward Euler step with drained fluxes/sources: mass-like fields stay
/// nonnegative up to roundoff. The hydrostatic part of the momentum flux and
/// the bed source are never drained. Tiny magnitudes (|value| below
/// 1e-14 * field scale) are clamped to exact zero after the update; the
/// pre-clamp minima are recorded in the report.
State euler_step_positive(const SystemConstants& constants, const Grid& grid,
                          const BedGeometry& bed, const WidthGeometry* widths,
                          const State& state, double dt, BoundaryMode bc,
                          StepReport* report = nullptr);

/// Heun step: the average of two positivity-preserving Euler stages, so it
/// inherits their admissibility.
State ssp_rk2(const SystemConstants& constants, const Grid& grid, const BedGeometry& bed,
              const WidthGeometry* widths, const State& state, double dt, BoundaryMode bc,
              StepReport* report = nullptr);

} // namespace swell
