#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "swell/mesh.hpp"

namespace swell {

/// Cell-average values used for the stencils of the two boundary cells.
/// Defaults to copying the end cell (zero-gradient closure).
struct GhostPair {
    std::optional<double> left;
    std::optional<double> right;
};

/// Result of the blended depth reconstruction. h_left[j] and h_right[j] are
/// the depths just inside the cell's left and right interfaces.
struct DepthRecon {
    std::vector<double> grad_h;  // blended in-cell gradient
    std::vector<double> h_left;  // >= 0
    std::vector<double> h_right; // >= 0
    std::vector<double> gamma;   // blend weight in [0,1]; 1 = pure surface-based
    std::vector<double> xi;      // depth-to-bed-variation ratio (+inf on flat data)
    std::vector<double> db_up;   // effective bed variation, geometric max merged with cutoff
    std::vector<double> h_down;  // stencil lower depth envelope
    std::vector<double> h_up;    // stencil upper depth envelope
    std::vector<double> sigma_h;   // limited gradient of the depth field
    std::vector<double> sigma_eta; // limited gradient of the surface field
};

/// Blend weight: 0 below xi = 1, linear with slope G up to xi_c = 1 + 1/G,
/// then 1. Continuous and piecewise linear; xi may be +inf.
double gamma_of_xi(double xi, double gain);

/// Depth scale below which the reconstruction switches to the depth field,
/// (q^2 / (Fr^2 g_eff))^(1/3). Zero flux gives zero. Throws if g_eff <= 0
/// with nonzero flux.
double froude_cutoff(double q, double g_eff, double froude_ref);

/// Self-monotone positivity-preserving depth reconstruction: a convex
/// combination of limited reconstructions in depth and in surface elevation,
/// weighted per cell by gamma(xi). The cutoff array must not depend on the
/// depth averages.
DepthRecon reconstruct_depth(const Grid& grid, const BedGeometry& bed,
                             std::span<const double> h, std::span<const double> cutoff,
                             const GhostPair& ghost_h = {});

/// min(1, K_prev h_mid / h_prev, K_next h_mid / h_next) with the conventions
/// ratio = +inf when only the neighbour is dry and 0/0 = 0 (dry cell keeps a
/// flat flux profile).
double suppression_factor(double h_prev, double h_mid, double h_next, double k_prev,
                          double k_next);

struct FluxRecon {
    std::vector<double> grad_q;
    std::vector<double> q_left;
    std::vector<double> q_right;
    std::vector<double> kappa; // suppression factor in [0,1]
};

/// Volume-flux reconstruction with the gradient suppressed in cells much
/// shallower than a neighbour.
FluxRecon reconstruct_flux(const Grid& grid, std::span<const double> q,
                           std::span<const double> h, const GhostPair& ghost_q = {},
                           const GhostPair& ghost_h = {});

struct VelocityEdges {
    std::vector<double> u_left;
    std::vector<double> u_right;
};

/// u = q/h at each edge; 0 where the edge depth is 0.
VelocityEdges interface_velocities(const DepthRecon& depth, const FluxRecon& flux);

/// Width-channel reconstruction: the depth pipeline runs on h = A/w, and the
/// area gradient couples it to the width so that the recovered edge depths
/// keep the depth-reconstruction bounds.
struct WidthRecon {
    DepthRecon depth; // h_left/h_right already divided back out of the area
    std::vector<double> grad_area;
    std::vector<double> area_left;
    std::vector<double> area_right;
    std::vector<std::uint8_t> pinched; // w_down == 0: degenerate flux branch
};

WidthRecon reconstruct_area_width(const Grid& grid, const WidthGeometry& widths,
                                  const BedGeometry& bed, std::span<const double> area,
                                  std::span<const double> cutoff,
                                  const GhostPair& ghost_h = {});

/// Flux reconstruction for the width system. Suppression ratios use the area
/// averages; a cell with a zero-width edge gets the linear profile that
/// vanishes at that edge, which keeps the velocity constant across the cell.
FluxRecon reconstruct_width_flux(const Grid& grid, const WidthGeometry& widths,
                                 std::span<const double> area, std::span<const double> qt,
                                 const GhostPair& ghost_qt = {},
                                 const GhostPair& ghost_area = {});

struct ConcenRecon {
    std::vector<double> grad_Phi;
    std::vector<double> Phi_left;  // >= 0
    std::vector<double> Phi_right; // >= 0
    std::vector<double> phi_left;  // concentration at edges, within stencil envelope
    std::vector<double> phi_right;
};

/// Particle-load reconstruction. The gradient of Phi = phi*h is assembled
/// from the limited concentration gradient and the already-blended depth
/// gradient so that edge concentrations stay inside the stencil envelope.
ConcenRecon reconstruct_concentration(const Grid& grid, std::span<const double> Phi,
                                      const DepthRecon& depth, std::span<const double> h,
                                      const GhostPair& ghost_Phi = {},
                                      const GhostPair& ghost_h = {});

/// Probes of the blend internals used by the property suites.
/// R compares the two component reconstructions against the bed variation
/// scale; S and N are the normalised responses of the blended right edge to
/// the cell's own average and its right neighbour.
struct ProofDiagnostics {
    double R = 0.0;
    double S = 0.0;
    double N = 0.0;     // +inf when the lower envelope ignores the neighbour
    bool kink = false;  // finite-difference stencil straddled a tie
};

ProofDiagnostics proof_diagnostics(const Grid& grid, const BedGeometry& bed,
                                   std::span<const double> h, std::span<const double> cutoff,
                                   std::size_t j, double eps = 1e-3);

} // namespace swell
