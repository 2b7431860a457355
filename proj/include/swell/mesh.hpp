#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace swell {

/// Per-run reconstruction parameters. Scalars are broadcast over the grid;
/// the vector overrides (when non-empty) must match the interface/cell counts.
struct GridParams {
    double alpha_plus = 0.75;   // weight on the left-sided difference
    double alpha_minus = 0.75;  // weight on the right-sided difference
    double alpha_center = 0.25; // weight on the centred difference
    double gain = -1.0;         // blend gain G_j; <=0 means "use 1 - alpha_up"
    double suppression_k = 100.0;
    double froude_ref = -1.0;   // <=0 means "use xi_critical^(3/2)"
    double gravity = 9.81;

    std::vector<double> alpha_plus_per_interface;
    std::vector<double> alpha_minus_per_interface;
    std::vector<double> alpha_center_per_cell;
    std::vector<double> gain_per_cell;
    std::vector<double> k_plus_per_interface;
    std::vector<double> k_minus_per_interface;
};

/// Spatial discretisation plus every per-cell/per-interface parameter that
/// depends only on geometry. Immutable after construction; safe to share
/// across threads.
///
/// Indexing: interfaces i = 0..J; cell j lies between interfaces j and j+1.
/// Cell j reads alpha_plus[j] (its left interface), alpha_minus[j+1] (its
/// right interface), and likewise for k_plus/k_minus.
struct Grid {
    std::vector<double> interfaces;   // J+1, strictly increasing
    std::vector<double> cell_widths;  // J, positive
    std::vector<double> alpha_plus;   // per interface
    std::vector<double> alpha_minus;  // per interface
    std::vector<double> alpha_center; // per cell
    std::vector<double> gain;         // per cell, in (0, 1 - alpha_up]
    std::vector<double> k_plus;       // per interface, > 0
    std::vector<double> k_minus;      // per interface, > 0
    double froude_ref = 0.0;
    double gravity = 9.81;

    std::size_t cells() const { return cell_widths.size(); }

    double alpha_up(std::size_t j) const {
        const double a = alpha_plus[j];
        const double b = alpha_minus[j + 1];
        return a > b ? a : b;
    }
    double xi_critical(std::size_t j) const { return 1.0 + 1.0 / gain[j]; }
    double cell_center(std::size_t j) const {
        return 0.5 * (interfaces[j] + interfaces[j + 1]);
    }
};

Grid build_grid(std::span<const double> interfaces, const GridParams& params = {});

/// Two-sided bed description with precomputed differences. Values are stored
/// per cell: b_left[j] and b_right[j] are the bed elevations just inside the
/// cell's left and right interfaces, so a discontinuity at interface i is the
/// pair (b_right[i-1], b_left[i]).
///
/// Boundary closure: the ghost cells copy the end cell's centre value, so the
/// bed difference across the two domain-end interfaces is zero.
struct BedGeometry {
    std::vector<double> b_left;       // per cell
    std::vector<double> b_right;      // per cell
    std::vector<double> b_center;     // (b_left + b_right) / 2
    std::vector<double> db_cell;      // b_right - b_left
    std::vector<double> db_interface; // per interface: b_center[i] - b_center[i-1]
    std::vector<double> db_up_geo;    // per cell, four-term max; >= |db_cell|/2
};

BedGeometry bed_stats(std::span<const double> b_left, std::span<const double> b_right,
                      const Grid& grid);

/// Continuous bed sampled at the interfaces (equal left/right values).
BedGeometry bed_from_function(const std::function<double(double)>& bed, const Grid& grid);

/// Channel width, same storage convention as the bed. Widths must be
/// nonnegative at edges; cells with both edges zero are rejected downstream.
struct WidthGeometry {
    std::vector<double> w_left;
    std::vector<double> w_right;
    std::vector<double> w_center;   // (w_left + w_right) / 2
    std::vector<double> w_gradient; // (w_right - w_left) / dx
    std::vector<double> w_down;     // min(w_left, w_right)
};

WidthGeometry width_stats(std::span<const double> w_left, std::span<const double> w_right,
                          const Grid& grid);
WidthGeometry width_from_function(const std::function<double(double)>& width, const Grid& grid);

} // namespace swell
