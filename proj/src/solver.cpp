#include "swell/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace swell {

namespace {

inline double edge_velocity(double q, double mass) { return mass > 0.0 ? q / mass : 0.0; }

inline double hydrostatic(SystemKind kind, const EdgeState& s) {
    if (kind == SystemKind::width) return 0.5 * s.g_eff * s.h * s.depth; // g*A*h/2
    return 0.5 * s.g_eff * s.h * s.h;
}

inline bool same_state(const EdgeState& a, const EdgeState& b) {
    return a.h == b.h && a.q == b.q && a.phi == b.phi && a.g_eff == b.g_eff &&
           a.depth == b.depth;
}

} // namespace

FluxVec physical_flux(SystemKind kind, const EdgeState& s) {
    FluxVec f;
    if (s.h <= 0.0) return f;
    const double u = s.q / s.h;
    f.mass = s.q;
    f.momentum = s.q * u + hydrostatic(kind, s);
    if (kind == SystemKind::particle) f.particle = s.q * s.phi;
    return f;
}

NumericalFlux numerical_flux(SystemKind kind, const EdgeState& left, const EdgeState& right) {
    NumericalFlux out;
    if (left.h <= 0.0 && right.h <= 0.0) return out; // dry pair

    const double u_l = edge_velocity(left.q, left.h);
    const double u_r = edge_velocity(right.q, right.h);
    const double c_l = std::sqrt(std::max(left.g_eff * left.depth, 0.0));
    const double c_r = std::sqrt(std::max(right.g_eff * right.depth, 0.0));
    out.a_plus = std::max(std::max(u_l + c_l, u_r + c_r), 0.0);
    out.a_minus = std::min(std::min(u_l - c_l, u_r - c_r), 0.0);

    if (same_state(left, right)) {
        // Exact consistency; needed so steady states balance to roundoff.
        const FluxVec f = physical_flux(kind, left);
        out.pressure = hydrostatic(kind, left);
        out.advective.mass = f.mass;
        out.advective.particle = f.particle;
        out.advective.momentum = f.momentum - out.pressure;
        out.flux = f;
        return out;
    }

    const double spread = out.a_plus - out.a_minus;
    if (spread <= 0.0) return out;

    const FluxVec f_l = physical_flux(kind, left);
    const FluxVec f_r = physical_flux(kind, right);
    const double p_l = hydrostatic(kind, left);
    const double p_r = hydrostatic(kind, right);
    const double ap = out.a_plus, am = out.a_minus;
    const double diss = ap * am / spread;

    out.advective.mass = (ap * f_l.mass - am * f_r.mass) / spread + diss * (right.h - left.h);
    const double adv_l = f_l.momentum - p_l;
    const double adv_r = f_r.momentum - p_r;
    out.advective.momentum =
        (ap * adv_l - am * adv_r) / spread + diss * (right.q - left.q);
    out.pressure = (ap * p_l - am * p_r) / spread;
    if (kind == SystemKind::particle) {
        const double phi_l = f_l.particle, phi_r = f_r.particle;
        out.advective.particle = (ap * phi_l - am * phi_r) / spread +
                                 diss * (right.phi * right.h - left.phi * left.h);
    }
    out.flux.mass = out.advective.mass;
    out.flux.momentum = out.advective.momentum + out.pressure;
    out.flux.particle = out.advective.particle;
    return out;
}

double bed_source(SystemKind kind, const Grid& grid, const BedGeometry& bed,
                  const WidthGeometry* widths, std::size_t j, const EdgeState& left_edge,
                  const EdgeState& right_edge) {
    const double dx = grid.cell_widths[j];
    const double db = bed.db_cell[j];
    if (kind == SystemKind::width) {
        const double area_mean = 0.5 * (left_edge.h + right_edge.h);
        const double hh = 0.5 * (left_edge.depth * left_edge.depth +
                                 right_edge.depth * right_edge.depth);
        const double dw = widths->w_right[j] - widths->w_left[j];
        return -grid.gravity * area_mean * db / dx + 0.5 * grid.gravity * hh * dw / dx;
    }
    const double g_mean = 0.5 * (left_edge.g_eff + right_edge.g_eff);
    return -0.5 * g_mean * (left_edge.h + right_edge.h) * db / dx;
}

double settling_sink(double phi_cell, double h_cell, double settling_velocity) {
    if (h_cell <= 0.0) return 0.0;
    return -settling_velocity * phi_cell;
}

namespace {

struct ReconBundle {
    DepthRecon depth;
    FluxRecon flux;
    ConcenRecon concen; // particle only
    std::vector<double> area_left, area_right; // width only
    std::vector<std::uint8_t> pinched;         // width only
    std::vector<double> phi_cell;              // particle only
    std::vector<double> g_eff_left, g_eff_right;
};

GhostPair mirror_or_copy(std::span<const double> v, BoundaryMode bc, double sign) {
    GhostPair g;
    if (v.empty()) return g;
    g.left = bc == BoundaryMode::reflective_wall ? sign * v.front() : v.front();
    g.right = bc == BoundaryMode::reflective_wall ? sign * v.back() : v.back();
    return g;
}

ReconBundle reconstruct_all(const SystemConstants& constants, const Grid& grid,
                            const BedGeometry& bed, const WidthGeometry* widths,
                            const State& state, BoundaryMode bc) {
    const std::size_t n = grid.cells();
    if (state.h.size() != n || state.q.size() != n)
        throw SolverError("state length does not match grid", -1);
    if (state.kind == SystemKind::particle && state.phi_h.size() != n)
        throw SolverError("particle state missing concentration field", -1);
    if (state.kind == SystemKind::width && widths == nullptr)
        throw SolverError("width system needs a width geometry", -1);
    for (std::size_t j = 0; j < n; ++j)
        if (!(state.h[j] >= 0.0))
            throw SolverError("negative mass average in cell " + std::to_string(j),
                              static_cast<std::ptrdiff_t>(j));

    ReconBundle r;
    const GhostPair ghost_h = mirror_or_copy(state.h, bc, 1.0);
    const GhostPair ghost_q = mirror_or_copy(state.q, bc, -1.0);

    std::vector<double> cutoff(n, 0.0);
    if (state.kind == SystemKind::particle) {
        r.phi_cell.resize(n);
        for (std::size_t j = 0; j < n; ++j) {
            if (!(state.phi_h[j] >= 0.0))
                throw SolverError("negative particle load in cell " + std::to_string(j),
                                  static_cast<std::ptrdiff_t>(j));
            r.phi_cell[j] = state.h[j] > 0.0 ? state.phi_h[j] / state.h[j] : 0.0;
            const double g_eff =
                constants.g_prime_particle * r.phi_cell[j] + constants.g_prime_ambient;
            if (g_eff > 0.0)
                cutoff[j] = froude_cutoff(state.q[j], g_eff, grid.froude_ref);
            else
                // No buoyancy at all: moving fluid here is pure thin film.
                cutoff[j] = state.q[j] == 0.0
                                ? 0.0
                                : std::numeric_limits<double>::infinity();
        }
    } else if (state.kind == SystemKind::plain) {
        for (std::size_t j = 0; j < n; ++j)
            cutoff[j] = froude_cutoff(state.q[j], grid.gravity, grid.froude_ref);
    } else if (constants.width_cutoff) {
        for (std::size_t j = 0; j < n; ++j)
            cutoff[j] = froude_cutoff(state.q[j] / widths->w_center[j], grid.gravity,
                                      grid.froude_ref);
    }

    if (state.kind == SystemKind::width) {
        WidthRecon wr = reconstruct_area_width(grid, *widths, bed, state.h, cutoff, ghost_h);
        r.depth = std::move(wr.depth);
        r.area_left = std::move(wr.area_left);
        r.area_right = std::move(wr.area_right);
        r.pinched = std::move(wr.pinched);
        r.flux = reconstruct_width_flux(grid, *widths, state.h, state.q, ghost_q, ghost_h);
    } else {
        r.depth = reconstruct_depth(grid, bed, state.h, cutoff, ghost_h);
        if (state.kind == SystemKind::particle) {
            const GhostPair ghost_phi = mirror_or_copy(state.phi_h, bc, 1.0);
            r.concen = reconstruct_concentration(grid, state.phi_h, r.depth, state.h,
                                                 ghost_phi, ghost_h);
        }
        r.flux = reconstruct_flux(grid, state.q, state.h, ghost_q, ghost_h);
    }

    r.g_eff_left.assign(n, grid.gravity);
    r.g_eff_right.assign(n, grid.gravity);
    if (state.kind == SystemKind::particle) {
        for (std::size_t j = 0; j < n; ++j) {
            r.g_eff_left[j] = constants.g_prime_particle * r.concen.phi_left[j] +
                              constants.g_prime_ambient;
            r.g_eff_right[j] = constants.g_prime_particle * r.concen.phi_right[j] +
                               constants.g_prime_ambient;
        }
    }
    return r;
}

EdgeState cell_edge(const State& state, const ReconBundle& r, std::size_t j,
                    bool right_side) {
    EdgeState e;
    if (state.kind == SystemKind::width) {
        e.h = right_side ? r.area_right[j] : r.area_left[j];
        e.depth = right_side ? r.depth.h_right[j] : r.depth.h_left[j];
    } else {
        e.h = right_side ? r.depth.h_right[j] : r.depth.h_left[j];
        e.depth = e.h;
    }
    e.q = right_side ? r.flux.q_right[j] : r.flux.q_left[j];
    if (state.kind == SystemKind::particle)
        e.phi = right_side ? r.concen.phi_right[j] : r.concen.phi_left[j];
    e.g_eff = right_side ? r.g_eff_right[j] : r.g_eff_left[j];
    return e;
}

EdgeState boundary_partner(const EdgeState& inner, BoundaryMode bc) {
    EdgeState e = inner;
    if (bc == BoundaryMode::reflective_wall) e.q = -inner.q;
    return e;
}

// Hydrostatic flux difference minus bed source over the cell, arranged so the
// still-water terms cancel at roundoff level.
double pressure_balance(SystemKind kind, const Grid& grid, const BedGeometry& bed,
                        const WidthGeometry* widths, std::size_t j, const EdgeState& le,
                        const EdgeState& re, double half_jump) {
    const double dx = grid.cell_widths[j];
    const double db = bed.db_cell[j];
    if (kind == SystemKind::width) {
        const double dw = widths->w_right[j] - widths->w_left[j];
        const double flux_term = re.h * re.depth - le.h * le.depth;
        const double bed_term = (le.h + re.h) * db;
        const double width_term = 0.5 * (le.depth * le.depth + re.depth * re.depth) * dw;
        return 0.5 * grid.gravity * (flux_term + bed_term - width_term) / dx;
    }
    if (le.g_eff == re.g_eff) {
        // (h_r^2 - h_l^2) + (h_l + h_r) db factored through h_r - h_l = 2*half_jump.
        return 0.5 * le.g_eff * (le.h + re.h) * (2.0 * half_jump + db) / dx;
    }
    const double g_mean = 0.5 * (le.g_eff + re.g_eff);
    const double flux_term = 0.5 * (re.g_eff * re.h * re.h - le.g_eff * le.h * le.h);
    const double bed_term = 0.5 * g_mean * (le.h + re.h) * db;
    return (flux_term + bed_term) / dx;
}

} // namespace

RhsResult rhs(const SystemConstants& constants, const Grid& grid, const BedGeometry& bed,
              const WidthGeometry* widths, const State& state, BoundaryMode bc) {
    const std::size_t n = grid.cells();
    const ReconBundle r = reconstruct_all(constants, grid, bed, widths, state, bc);

    RhsResult out;
    out.dh.assign(n, 0.0);
    out.dq.assign(n, 0.0);
    if (state.kind == SystemKind::particle) out.dphi_h.assign(n, 0.0);
    out.report.interface_flux.resize(n + 1);
    out.report.cell_source.resize(n);
    out.report.speed_minus.assign(n + 1, 0.0);
    out.report.speed_plus.assign(n + 1, 0.0);
    out.advective_flux.resize(n + 1);
    out.pressure_balance.resize(n);
    out.edge_left.resize(n + 1);
    out.edge_right.resize(n + 1);

    std::vector<double> pressure(n + 1, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
        EdgeState left, right;
        if (i == 0) {
            right = cell_edge(state, r, 0, false);
            left = boundary_partner(right, bc);
        } else if (i == n) {
            left = cell_edge(state, r, n - 1, true);
            right = boundary_partner(left, bc);
        } else {
            left = cell_edge(state, r, i - 1, true);
            right = cell_edge(state, r, i, false);
        }
        const NumericalFlux nf = numerical_flux(state.kind, left, right);
        out.report.interface_flux[i] = nf.flux;
        out.report.speed_minus[i] = nf.a_minus;
        out.report.speed_plus[i] = nf.a_plus;
        out.advective_flux[i] = nf.advective;
        pressure[i] = nf.pressure;
        out.edge_left[i] = left;
        out.edge_right[i] = right;
    }

    for (std::size_t j = 0; j < n; ++j) {
        const double dx = grid.cell_widths[j];
        const EdgeState le = out.edge_right[j];      // this cell's left edge
        const EdgeState re = out.edge_left[j + 1];   // this cell's right edge

        const double half_jump = 0.5 * dx * r.depth.grad_h[j];
        double balance = pressure_balance(state.kind, grid, bed, widths, j, le, re, half_jump);
        // Interface mixing relative to the cell's own hydrostatic edge values;
        // identically zero wherever the interface states agree.
        balance += ((pressure[j + 1] - hydrostatic(state.kind, re)) -
                    (pressure[j] - hydrostatic(state.kind, le))) /
                   dx;
        out.pressure_balance[j] = balance;

        out.dh[j] = -(out.report.interface_flux[j + 1].mass -
                      out.report.interface_flux[j].mass) /
                    dx;
        out.dq[j] = -(out.advective_flux[j + 1].momentum - out.advective_flux[j].momentum) / dx -
                    balance;

        FluxVec src;
        src.momentum = bed_source(state.kind, grid, bed, widths, j, le, re);
        if (state.kind == SystemKind::particle) {
            src.particle = settling_sink(r.phi_cell[j], state.h[j], constants.settling_velocity);
            out.dphi_h[j] = -(out.report.interface_flux[j + 1].particle -
                              out.report.interface_flux[j].particle) /
                                dx +
                            src.particle;
        }
        out.report.cell_source[j] = src;
    }
    return out;
}

double velocity_bound_margin(const SystemConstants& constants, const Grid& grid,
                             const BedGeometry& bed, const WidthGeometry* widths,
                             const State& state, BoundaryMode bc) {
    const std::size_t n = grid.cells();
    const ReconBundle r = reconstruct_all(constants, grid, bed, widths, state, bc);

    const auto cell_velocity = [&](std::size_t j) {
        return state.h[j] > 0.0 ? state.q[j] / state.h[j] : 0.0;
    };
    const GhostPair ghost_h = mirror_or_copy(state.h, bc, 1.0);
    const GhostPair ghost_q = mirror_or_copy(state.q, bc, -1.0);
    const auto neighbour_velocity = [&](std::ptrdiff_t j) {
        if (j < 0) {
            const double hg = *ghost_h.left, qg = *ghost_q.left;
            return hg > 0.0 ? qg / hg : 0.0;
        }
        if (j >= static_cast<std::ptrdiff_t>(n)) {
            const double hg = *ghost_h.right, qg = *ghost_q.right;
            return hg > 0.0 ? qg / hg : 0.0;
        }
        return cell_velocity(static_cast<std::size_t>(j));
    };

    double margin = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (!(state.h[j] > 0.0)) continue;
        double factor = (grid.gain[j] + 1.0) / (1.0 - grid.alpha_up(j));
        if (state.kind == SystemKind::width) {
            if (widths->w_down[j] == 0.0) continue; // degenerate branch: u constant
            factor *= widths->w_center[j] / widths->w_down[j];
        }
        const double u_self = std::abs(cell_velocity(j));
        const double u_prev = std::abs(neighbour_velocity(static_cast<std::ptrdiff_t>(j) - 1));
        const double u_next = std::abs(neighbour_velocity(static_cast<std::ptrdiff_t>(j) + 1));

        const double mass_l = state.kind == SystemKind::width ? r.area_left[j] : r.depth.h_left[j];
        const double mass_r =
            state.kind == SystemKind::width ? r.area_right[j] : r.depth.h_right[j];
        const double u_left = std::abs(edge_velocity(r.flux.q_left[j], mass_l));
        const double u_right = std::abs(edge_velocity(r.flux.q_right[j], mass_r));

        const double bound_l =
            factor * (u_self + grid.k_plus[j] * grid.alpha_plus[j] * u_prev);
        const double bound_r =
            factor * (u_self + grid.k_minus[j + 1] * grid.alpha_minus[j + 1] * u_next);
        margin = std::min(margin, (bound_l - u_left) / (1.0 + bound_l));
        margin = std::min(margin, (bound_r - u_right) / (1.0 + bound_r));
    }
    return margin;
}

} // namespace swell
