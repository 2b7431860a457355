#include "swell/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace swell {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

inline double pos(double x) { return x > 0.0 ? x : 0.0; }

// Component accessors so the mass and particle fields share the draining code.
inline double get_mass(const FluxVec& f) { return f.mass; }
inline double get_particle(const FluxVec& f) { return f.particle; }

struct FieldDraining {
    std::vector<double> time_to_empty; // per cell
    std::vector<double> flux_factor;   // per interface
};

template <typename Get>
FieldDraining drain_field(std::span<const double> amounts, const Grid& grid,
                          std::span<const FluxVec> fluxes, std::span<const FluxVec> sources,
                          double dt, Get get) {
    const std::size_t n = amounts.size();
    FieldDraining d;
    d.time_to_empty.resize(n);
    d.flux_factor.assign(n + 1, 1.0);

    for (std::size_t j = 0; j < n; ++j) {
        const double drain_rate = pos(get(fluxes[j + 1])) + pos(-get(fluxes[j])) +
                                  pos(-get(sources[j]) * grid.cell_widths[j]);
        d.time_to_empty[j] =
            drain_rate > 0.0 ? amounts[j] * grid.cell_widths[j] / drain_rate : kInf;
    }

    for (std::size_t i = 0; i <= n; ++i) {
        const double f = get(fluxes[i]);
        if (f == 0.0) continue; // nothing moves, nothing to limit
        const std::ptrdiff_t donor = f > 0.0 ? static_cast<std::ptrdiff_t>(i) - 1
                                             : static_cast<std::ptrdiff_t>(i);
        if (donor < 0 || donor >= static_cast<std::ptrdiff_t>(n)) continue; // ghost reservoir
        d.flux_factor[i] = std::min(d.time_to_empty[static_cast<std::size_t>(donor)] / dt, 1.0);
    }
    return d;
}

// Source factors use the drained fluxes actually applied to the field, so the
// sink draws only on material that really arrives.
template <typename Get>
std::vector<double> drain_source(std::span<const double> time_to_empty, const Grid& grid,
                                 std::span<const FluxVec> fluxes,
                                 std::span<const double> applied_flux_factor,
                                 std::span<const FluxVec> sources, double dt, Get get) {
    const std::size_t n = time_to_empty.size();
    std::vector<double> factor(n, 1.0);
    for (std::size_t j = 0; j < n; ++j) {
        const double psi = get(sources[j]);
        if (psi >= 0.0) continue;
        const double inflow = pos(-applied_flux_factor[j + 1] * get(fluxes[j + 1])) +
                              pos(applied_flux_factor[j] * get(fluxes[j]));
        const double t_source =
            time_to_empty[j] + inflow * dt / (-psi * grid.cell_widths[j]);
        factor[j] = std::min(t_source / dt, 1.0);
    }
    return factor;
}

} // namespace

double cfl_dt(const Grid& grid, std::span<const double> speed_minus,
              std::span<const double> speed_plus, double nu, double speed_floor) {
    if (!(nu > 0.0 && nu <= 0.5))
        throw std::invalid_argument("cfl_dt: Courant number must be in (0, 1/2]");
    if (!(speed_floor > 0.0)) throw std::invalid_argument("cfl_dt: floor must be positive");
    const std::size_t n = grid.cells();
    if (speed_minus.size() != n + 1 || speed_plus.size() != n + 1)
        throw std::invalid_argument("cfl_dt: speed array length mismatch");

    double dt = kInf;
    for (std::size_t j = 0; j < n; ++j) {
        double s = speed_floor;
        s = std::max(s, std::max(-speed_minus[j], speed_plus[j]));
        s = std::max(s, std::max(-speed_minus[j + 1], speed_plus[j + 1]));
        dt = std::min(dt, grid.cell_widths[j] / s);
    }
    return nu * dt;
}

DrainingFactors draining_times(const State& state, const Grid& grid,
                               std::span<const FluxVec> fluxes, std::span<const FluxVec> sources,
                               double dt) {
    const std::size_t n = state.cells();
    if (fluxes.size() != n + 1 || sources.size() != n)
        throw std::invalid_argument("draining_times: length mismatch");
    if (!(dt > 0.0)) throw std::invalid_argument("draining_times: dt must be positive");
    for (std::size_t j = 0; j < n; ++j)
        if (!(state.h[j] >= 0.0))
            throw SolverError("draining_times: negative mass average",
                              static_cast<std::ptrdiff_t>(j));

    DrainingFactors out;
    const FieldDraining mass = drain_field(state.h, grid, fluxes, sources, dt, get_mass);
    out.flux_mass = mass.flux_factor;
    out.source_mass = drain_source(mass.time_to_empty, grid, fluxes, mass.flux_factor,
                                   sources, dt, get_mass);

    if (state.kind == SystemKind::particle) {
        for (std::size_t j = 0; j < n; ++j)
            if (!(state.phi_h[j] >= 0.0))
                throw SolverError("draining_times: negative particle average",
                                  static_cast<std::ptrdiff_t>(j));
        const FieldDraining part =
            drain_field(state.phi_h, grid, fluxes, sources, dt, get_particle);
        out.flux_particle = part.flux_factor;
        out.coupled_particle.resize(n + 1);
        for (std::size_t i = 0; i <= n; ++i)
            out.coupled_particle[i] = std::min(out.flux_mass[i], out.flux_particle[i]);
        const std::vector<double> part_source =
            drain_source(part.time_to_empty, grid, fluxes, out.coupled_particle, sources, dt,
                         get_particle);
        out.source_particle.resize(n);
        for (std::size_t j = 0; j < n; ++j)
            out.source_particle[j] = std::min(out.source_mass[j], part_source[j]);
    } else {
        out.flux_particle.assign(n + 1, 1.0);
        out.coupled_particle.assign(n + 1, 1.0);
        out.source_particle.assign(n, 1.0);
    }
    return out;
}

namespace {

double field_scale(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s = std::max(s, std::abs(x));
    return s > 0.0 ? s : 1.0;
}

} // namespace

State euler_step_positive(const SystemConstants& constants, const Grid& grid,
                          const BedGeometry& bed, const WidthGeometry* widths,
                          const State& state, double dt, BoundaryMode bc,
                          StepReport* report) {
    const std::size_t n = state.cells();
    if (!(dt > 0.0)) throw std::invalid_argument("euler_step_positive: dt must be positive");

    RhsResult r = rhs(constants, grid, bed, widths, state, bc);

    // Sources seen by the draining logic: only the particle sink can remove
    // mass-like material in these systems.
    std::vector<FluxVec> sources(n);
    for (std::size_t j = 0; j < n; ++j) sources[j] = r.report.cell_source[j];

    const DrainingFactors d =
        draining_times(state, grid, r.report.interface_flux, sources, dt);

    State next = state;
    double min_mass = kInf, min_particle = kInf;
    long clamps = 0;

    for (std::size_t j = 0; j < n; ++j) {
        const double dx = grid.cell_widths[j];
        const double f_mass_r = d.flux_mass[j + 1] * r.report.interface_flux[j + 1].mass;
        const double f_mass_l = d.flux_mass[j] * r.report.interface_flux[j].mass;
        next.h[j] = state.h[j] - dt / dx * (f_mass_r - f_mass_l);

        const double f_adv_r = d.flux_mass[j + 1] * r.advective_flux[j + 1].momentum;
        const double f_adv_l = d.flux_mass[j] * r.advective_flux[j].momentum;
        next.q[j] = state.q[j] - dt / dx * (f_adv_r - f_adv_l) - dt * r.pressure_balance[j];

        if (state.kind == SystemKind::particle) {
            const double f_phi_r =
                d.coupled_particle[j + 1] * r.report.interface_flux[j + 1].particle;
            const double f_phi_l = d.coupled_particle[j] * r.report.interface_flux[j].particle;
            next.phi_h[j] = state.phi_h[j] - dt / dx * (f_phi_r - f_phi_l) +
                            dt * d.source_particle[j] * sources[j].particle;
            min_particle = std::min(min_particle, next.phi_h[j]);
        }
        min_mass = std::min(min_mass, next.h[j]);
    }

    const double mass_clamp = 1e-14 * field_scale(state.h);
    const double part_clamp =
        state.kind == SystemKind::particle ? 1e-14 * field_scale(state.phi_h) : 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (next.h[j] != 0.0 && std::abs(next.h[j]) < mass_clamp) {
            next.h[j] = 0.0;
            ++clamps;
        }
        if (state.kind == SystemKind::particle && next.phi_h[j] != 0.0 &&
            std::abs(next.phi_h[j]) < part_clamp) {
            next.phi_h[j] = 0.0;
            ++clamps;
        }
        if (next.h[j] == 0.0 && next.q[j] != 0.0) {
            // A dry cell carries no momentum; leftover flux dust here would
            // feed a neighbour's stencil as a phantom velocity.
            next.q[j] = 0.0;
            ++clamps;
        }
    }

    if (report != nullptr) {
        *report = std::move(r.report);
        report->drain_mass = d.flux_mass;
        report->drain_particle = d.coupled_particle;
        report->drain_mom_advect = d.flux_mass;
        report->drain_source_mass = d.source_mass;
        report->drain_source_particle = d.source_particle;
        report->dt = dt;
        report->min_mass_before_clamp = min_mass;
        report->min_particle_before_clamp =
            state.kind == SystemKind::particle ? min_particle : 0.0;
        report->clamp_count = clamps;
    }
    return next;
}

State ssp_rk2(const SystemConstants& constants, const Grid& grid, const BedGeometry& bed,
              const WidthGeometry* widths, const State& state, double dt, BoundaryMode bc,
              StepReport* report) {
    StepReport rep1, rep2;
    const State stage1 =
        euler_step_positive(constants, grid, bed, widths, state, dt, bc, &rep1);
    const State stage2 =
        euler_step_positive(constants, grid, bed, widths, stage1, dt, bc, &rep2);

    State next = state;
    const std::size_t n = state.cells();
    for (std::size_t j = 0; j < n; ++j) {
        next.h[j] = 0.5 * (state.h[j] + stage2.h[j]);
        next.q[j] = 0.5 * (state.q[j] + stage2.q[j]);
        if (state.kind == SystemKind::particle)
            next.phi_h[j] = 0.5 * (state.phi_h[j] + stage2.phi_h[j]);
    }
    if (report != nullptr) {
        *report = std::move(rep1);
        report->dt = dt;
        report->min_mass_before_clamp =
            std::min(report->min_mass_before_clamp, rep2.min_mass_before_clamp);
        report->min_particle_before_clamp =
            std::min(report->min_particle_before_clamp, rep2.min_particle_before_clamp);
        report->clamp_count += rep2.clamp_count;
    }
    return next;
}

} // namespace swell
