#include "swell/wbrecon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "swell/limiter.hpp"

namespace swell {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

inline SlopeParams cell_params(const Grid& grid, std::size_t j) {
    return {grid.alpha_plus[j], grid.alpha_center[j], grid.alpha_minus[j + 1],
            grid.cell_widths[j]};
}

// Neighbour averages with the zero-gradient default at the domain ends.
struct Stencil {
    double prev, next;
};

inline Stencil neighbours(std::span<const double> v, std::size_t j, const GhostPair& ghost) {
    const std::size_t n = v.size();
    const double prev = j > 0 ? v[j - 1] : ghost.left.value_or(v[0]);
    const double next = j + 1 < n ? v[j + 1] : ghost.right.value_or(v[n - 1]);
    return {prev, next};
}

inline double min3(double a, double b, double c) { return std::min(a, std::min(b, c)); }
inline double max3(double a, double b, double c) { return std::max(a, std::max(b, c)); }

} // namespace

double gamma_of_xi(double xi, double gain) {
    if (!(gain > 0.0) || gain > 1.0)
        throw std::invalid_argument("gamma_of_xi: gain outside (0,1]");
    if (std::isnan(xi) || xi < 0.0) throw std::invalid_argument("gamma_of_xi: bad xi");
    if (xi <= 1.0) return 0.0;
    const double g = gain * (xi - 1.0);
    return g >= 1.0 ? 1.0 : g;
}

double froude_cutoff(double q, double g_eff, double froude_ref) {
    if (!(froude_ref > 0.0)) throw std::invalid_argument("froude_cutoff: Fr must be positive");
    if (q == 0.0) return 0.0;
    if (!(g_eff > 0.0))
        throw std::invalid_argument("froude_cutoff: nonpositive effective gravity");
    return std::cbrt(q * q / (froude_ref * froude_ref * g_eff));
}

DepthRecon reconstruct_depth(const Grid& grid, const BedGeometry& bed,
                             std::span<const double> h, std::span<const double> cutoff,
                             const GhostPair& ghost_h) {
    const std::size_t n = grid.cells();
    if (h.size() != n || cutoff.size() != n)
        throw std::invalid_argument("reconstruct_depth: length mismatch");

    DepthRecon r;
    r.grad_h.resize(n);
    r.h_left.resize(n);
    r.h_right.resize(n);
    r.gamma.resize(n);
    r.xi.resize(n);
    r.db_up.resize(n);
    r.h_down.resize(n);
    r.h_up.resize(n);
    r.sigma_h.resize(n);
    r.sigma_eta.resize(n);

    for (std::size_t j = 0; j < n; ++j) {
        if (!(h[j] >= 0.0))
            throw std::invalid_argument("reconstruct_depth: negative depth in cell " +
                                        std::to_string(j));
        const SlopeParams p = cell_params(grid, j);
        const auto [h_prev, h_next] = neighbours(h, j, ghost_h);

        const double b_prev = j > 0 ? bed.b_center[j - 1] : bed.b_center[0];
        const double b_next = j + 1 < n ? bed.b_center[j + 1] : bed.b_center[n - 1];
        const double eta_prev = h_prev + b_prev;
        const double eta_mid = h[j] + bed.b_center[j];
        const double eta_next = h_next + b_next;

        const double sig_h = slope(h_prev, h[j], h_next, p);
        const double sig_eta = slope(eta_prev, eta_mid, eta_next, p);
        r.sigma_h[j] = sig_h;
        r.sigma_eta[j] = sig_eta;

        const double b_grad = bed.db_cell[j] / p.dx;
        const double grad_from_surface = sig_eta - b_grad;

        const double down_l = h[j] - p.alpha_plus_prev * (h[j] - h_prev);
        const double down_r = h[j] + p.alpha_minus_next * (h_next - h[j]);
        r.h_down[j] = min3(down_l, h[j], down_r);
        r.h_up[j] = max3(down_l, h[j], down_r);

        r.db_up[j] = std::max(bed.db_up_geo[j], cutoff[j]);
        r.xi[j] = r.db_up[j] > 0.0 ? r.h_down[j] / r.db_up[j] : kInf;
        const double gamma = gamma_of_xi(r.xi[j], grid.gain[j]);
        r.gamma[j] = gamma;

        const double grad = (1.0 - gamma) * sig_h + gamma * grad_from_surface;
        const double half_jump = 0.5 * p.dx * grad;
        r.grad_h[j] = grad;
        r.h_left[j] = h[j] - half_jump;
        r.h_right[j] = h[j] + half_jump;
    }
    return r;
}

double suppression_factor(double h_prev, double h_mid, double h_next, double k_prev,
                          double k_next) {
    const auto ratio = [](double num, double den) {
        if (den == 0.0) return num == 0.0 ? 0.0 : kInf;
        return num / den;
    };
    const double left = k_prev * ratio(h_mid, h_prev);
    const double right = k_next * ratio(h_mid, h_next);
    return min3(1.0, left, right);
}

namespace {

FluxRecon suppressed_flux(const Grid& grid, std::span<const double> q,
                          std::span<const double> mass, const GhostPair& ghost_q,
                          const GhostPair& ghost_mass, const WidthGeometry* widths) {
    const std::size_t n = grid.cells();
    if (q.size() != n || mass.size() != n)
        throw std::invalid_argument("reconstruct_flux: length mismatch");

    FluxRecon r;
    r.grad_q.resize(n);
    r.q_left.resize(n);
    r.q_right.resize(n);
    r.kappa.resize(n);

    for (std::size_t j = 0; j < n; ++j) {
        const SlopeParams p = cell_params(grid, j);
        const auto [q_prev, q_next] = neighbours(q, j, ghost_q);
        const auto [m_prev, m_next] = neighbours(mass, j, ghost_mass);

        const double kappa =
            suppression_factor(m_prev, mass[j], m_next, grid.k_plus[j], grid.k_minus[j + 1]);
        r.kappa[j] = kappa;

        if (widths != nullptr && widths->w_down[j] == 0.0) {
            // A zero-width edge pins the flux to zero there; the linear
            // profile through it keeps the velocity constant in the cell.
            if (widths->w_center[j] <= 0.0)
                throw std::invalid_argument("reconstruct_width_flux: cell width is zero");
            const bool left_pinched = widths->w_left[j] == 0.0;
            r.grad_q[j] = (left_pinched ? 2.0 : -2.0) * q[j] / p.dx;
            r.q_left[j] = left_pinched ? 0.0 : 2.0 * q[j];
            r.q_right[j] = left_pinched ? 2.0 * q[j] : 0.0;
            continue;
        }
        const double sigma = slope(q_prev, q[j], q_next, p);
        const double grad = sigma == 0.0 ? 0.0 : kappa * sigma;
        r.grad_q[j] = grad;
        const double half_jump = 0.5 * p.dx * grad;
        r.q_left[j] = q[j] - half_jump;
        r.q_right[j] = q[j] + half_jump;
    }
    return r;
}

} // namespace

FluxRecon reconstruct_flux(const Grid& grid, std::span<const double> q,
                           std::span<const double> h, const GhostPair& ghost_q,
                           const GhostPair& ghost_h) {
    return suppressed_flux(grid, q, h, ghost_q, ghost_h, nullptr);
}

FluxRecon reconstruct_width_flux(const Grid& grid, const WidthGeometry& widths,
                                 std::span<const double> area, std::span<const double> qt,
                                 const GhostPair& ghost_qt, const GhostPair& ghost_area) {
    return suppressed_flux(grid, qt, area, ghost_qt, ghost_area, &widths);
}

VelocityEdges interface_velocities(const DepthRecon& depth, const FluxRecon& flux) {
    const std::size_t n = depth.h_left.size();
    if (flux.q_left.size() != n)
        throw std::invalid_argument("interface_velocities: length mismatch");
    VelocityEdges v;
    v.u_left.resize(n);
    v.u_right.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        v.u_left[j] = depth.h_left[j] > 0.0 ? flux.q_left[j] / depth.h_left[j] : 0.0;
        v.u_right[j] = depth.h_right[j] > 0.0 ? flux.q_right[j] / depth.h_right[j] : 0.0;
    }
    return v;
}

WidthRecon reconstruct_area_width(const Grid& grid, const WidthGeometry& widths,
                                  const BedGeometry& bed, std::span<const double> area,
                                  std::span<const double> cutoff, const GhostPair& ghost_h) {
    const std::size_t n = grid.cells();
    if (area.size() != n || cutoff.size() != n)
        throw std::invalid_argument("reconstruct_area_width: length mismatch");

    std::vector<double> h(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (!(widths.w_center[j] > 0.0))
            throw std::invalid_argument("reconstruct_area_width: cell width must be positive");
        if (!(area[j] >= 0.0))
            throw std::invalid_argument("reconstruct_area_width: negative area");
        h[j] = area[j] / widths.w_center[j];
    }

    WidthRecon r;
    r.depth = reconstruct_depth(grid, bed, h, cutoff, ghost_h);
    r.grad_area.resize(n);
    r.area_left.resize(n);
    r.area_right.resize(n);
    r.pinched.resize(n);

    for (std::size_t j = 0; j < n; ++j) {
        const double dx = grid.cell_widths[j];
        const double grad_a =
            r.depth.grad_h[j] * widths.w_down[j] + h[j] * widths.w_gradient[j];
        r.grad_area[j] = grad_a;
        const double half_jump = 0.5 * dx * grad_a;
        // The wetted area vanishes identically at a zero-width edge.
        r.area_left[j] = widths.w_left[j] == 0.0 ? 0.0 : area[j] - half_jump;
        r.area_right[j] = widths.w_right[j] == 0.0 ? 0.0 : area[j] + half_jump;
        r.pinched[j] = widths.w_down[j] == 0.0 ? 1 : 0;

        // Recover edge depths from the area; a dry-width edge keeps the cell value.
        r.depth.h_left[j] =
            widths.w_left[j] > 0.0 ? r.area_left[j] / widths.w_left[j] : h[j];
        r.depth.h_right[j] =
            widths.w_right[j] > 0.0 ? r.area_right[j] / widths.w_right[j] : h[j];
    }
    return r;
}

ConcenRecon reconstruct_concentration(const Grid& grid, std::span<const double> Phi,
                                      const DepthRecon& depth, std::span<const double> h,
                                      const GhostPair& ghost_Phi, const GhostPair& ghost_h) {
    const std::size_t n = grid.cells();
    if (Phi.size() != n || h.size() != n || depth.grad_h.size() != n)
        throw std::invalid_argument("reconstruct_concentration: length mismatch");

    std::vector<double> phi(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (!(Phi[j] >= 0.0))
            throw std::invalid_argument("reconstruct_concentration: negative particle load");
        phi[j] = h[j] > 0.0 ? Phi[j] / h[j] : 0.0;
    }

    const auto ghost_phi = [&](const std::optional<double>& gP, const std::optional<double>& gh,
                               double fallback) {
        if (!gP || !gh) return fallback;
        return *gh > 0.0 ? *gP / *gh : 0.0;
    };
    const GhostPair gphi{ghost_phi(ghost_Phi.left, ghost_h.left, phi.empty() ? 0.0 : phi.front()),
                         ghost_phi(ghost_Phi.right, ghost_h.right,
                                   phi.empty() ? 0.0 : phi.back())};

    ConcenRecon r;
    r.grad_Phi.resize(n);
    r.Phi_left.resize(n);
    r.Phi_right.resize(n);
    r.phi_left.resize(n);
    r.phi_right.resize(n);

    for (std::size_t j = 0; j < n; ++j) {
        const SlopeParams p = cell_params(grid, j);
        const auto [phi_prev, phi_next] = neighbours(phi, j, gphi);
        const double grad_phi = slope(phi_prev, phi[j], phi_next, p);

        const double grad_h = depth.grad_h[j];
        const double shallow_side = h[j] - 0.5 * p.dx * std::abs(grad_h);
        const double grad_Phi = grad_phi * shallow_side + phi[j] * grad_h;
        r.grad_Phi[j] = grad_Phi;

        const double half_jump = 0.5 * p.dx * grad_Phi;
        r.Phi_left[j] = Phi[j] - half_jump;
        r.Phi_right[j] = Phi[j] + half_jump;
        r.phi_left[j] = depth.h_left[j] > 0.0 ? r.Phi_left[j] / depth.h_left[j] : 0.0;
        r.phi_right[j] = depth.h_right[j] > 0.0 ? r.Phi_right[j] / depth.h_right[j] : 0.0;
    }
    return r;
}

ProofDiagnostics proof_diagnostics(const Grid& grid, const BedGeometry& bed,
                                   std::span<const double> h, std::span<const double> cutoff,
                                   std::size_t j, double eps) {
    const std::size_t n = grid.cells();
    if (j >= n) throw std::invalid_argument("proof_diagnostics: cell index out of range");
    const SlopeParams p = cell_params(grid, j);

    const DepthRecon base = reconstruct_depth(grid, bed, h, cutoff);
    ProofDiagnostics out;

    const double numer = 0.5 * bed.db_cell[j] + 0.5 * p.dx * (base.sigma_h[j] - base.sigma_eta[j]);
    out.R = base.db_up[j] > 0.0 ? numer / base.db_up[j] : 0.0;

    // Responses of the two component right edges and of the lower envelope,
    // holding the blend weight at its base value.
    const double gamma0 = base.gamma[j];
    const auto pieces = [&](double hj) {
        std::vector<double> hv(h.begin(), h.end());
        hv[j] = hj;
        const DepthRecon r = reconstruct_depth(grid, bed, hv, cutoff);
        const double edge_h = hj + 0.5 * p.dx * r.sigma_h[j];
        const double edge_eta =
            hj + 0.5 * p.dx * (r.sigma_eta[j] - bed.db_cell[j] / p.dx);
        return std::array<double, 3>{edge_h, edge_eta, r.h_down[j]};
    };
    const auto pieces_nb = [&](double hnext) {
        std::vector<double> hv(h.begin(), h.end());
        hv[j + 1] = hnext;
        const DepthRecon r = reconstruct_depth(grid, bed, hv, cutoff);
        const double edge_h = hv[j] + 0.5 * p.dx * r.sigma_h[j];
        const double edge_eta =
            hv[j] + 0.5 * p.dx * (r.sigma_eta[j] - bed.db_cell[j] / p.dx);
        return std::array<double, 3>{edge_h, edge_eta, r.h_down[j]};
    };

    const auto derive = [&](auto&& f, double base_value) {
        const auto above = f(base_value + eps);
        const auto below = f(base_value - eps);
        const auto mid = f(base_value);
        std::array<double, 3> d{};
        bool kink = false;
        for (int k = 0; k < 3; ++k) {
            const double fwd = (above[k] - mid[k]) / eps;
            const double bwd = (mid[k] - below[k]) / eps;
            d[k] = (above[k] - below[k]) / (2.0 * eps);
            if (std::abs(fwd - bwd) > 10.0 * eps) kink = true;
        }
        return std::pair<std::array<double, 3>, bool>(d, kink);
    };

    {
        const auto [d, kink] = derive(pieces, h[j]);
        out.kink = out.kink || kink;
        const double d_down = d[2];
        if (d_down != 0.0)
            out.S = ((1.0 - gamma0) * d[0] + gamma0 * d[1]) / d_down;
        else
            out.S = kInf;
    }
    if (j + 1 < n) {
        const auto [d, kink] = derive(pieces_nb, h[j + 1]);
        out.kink = out.kink || kink;
        const double d_down = d[2];
        if (std::abs(d_down) > 1e-12)
            out.N = ((1.0 - gamma0) * d[0] + gamma0 * d[1]) / d_down;
        else
            out.N = kInf;
    } else {
        out.N = kInf;
    }
    return out;
}

} // namespace swell
