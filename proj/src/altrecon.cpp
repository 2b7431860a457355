#include "swell/altrecon.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "swell/limiter.hpp"

namespace swell {

namespace {

struct Stencil {
    double prev, next;
};

Stencil neighbours(std::span<const double> v, std::size_t j, const GhostPair& ghost) {
    const std::size_t n = v.size();
    const double prev = j > 0 ? v[j - 1] : ghost.left.value_or(v[0]);
    const double next = j + 1 < n ? v[j + 1] : ghost.right.value_or(v[n - 1]);
    return {prev, next};
}

SlopeParams cell_params(const Grid& grid, std::size_t j) {
    return {grid.alpha_plus[j], grid.alpha_center[j], grid.alpha_minus[j + 1],
            grid.cell_widths[j]};
}

// Limited surface-elevation reconstruction; the work-horse of all three
// schemes away from dry transitions.
void surface_edges(const Grid& grid, const BedGeometry& bed, std::span<const double> h,
                   const GhostPair& ghost_h, std::size_t j, double& left, double& right) {
    const SlopeParams p = cell_params(grid, j);
    const auto [h_prev, h_next] = neighbours(h, j, ghost_h);
    const std::size_t n = grid.cells();
    const double b_prev = j > 0 ? bed.b_center[j - 1] : bed.b_center[0];
    const double b_next = j + 1 < n ? bed.b_center[j + 1] : bed.b_center[n - 1];
    const double sigma =
        slope(h_prev + b_prev, h[j] + bed.b_center[j], h_next + b_next, p);
    const double grad = sigma - bed.db_cell[j] / p.dx;
    left = h[j] - 0.5 * p.dx * grad;
    right = h[j] + 0.5 * p.dx * grad;
}

void depth_edges(const Grid& grid, std::span<const double> h, const GhostPair& ghost_h,
                 std::size_t j, double& left, double& right) {
    const SlopeParams p = cell_params(grid, j);
    const auto [h_prev, h_next] = neighbours(h, j, ghost_h);
    const double grad = slope(h_prev, h[j], h_next, p);
    left = h[j] - 0.5 * p.dx * grad;
    right = h[j] + 0.5 * p.dx * grad;
}

void check_depths(std::span<const double> h) {
    for (double v : h)
        if (!(v >= 0.0)) throw std::invalid_argument("alt reconstruction: negative depth");
}

} // namespace

AltEdges kurganov_levy(const Grid& grid, const BedGeometry& bed, std::span<const double> h,
                       double depth_threshold, const GhostPair& ghost_h) {
    if (!(depth_threshold > 0.0))
        throw std::invalid_argument("kurganov_levy: threshold must be positive");
    check_depths(h);
    const std::size_t n = grid.cells();
    AltEdges out;
    out.h_left.resize(n);
    out.h_right.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const auto [h_prev, h_next] = neighbours(h, j, ghost_h);
        const bool deep = std::min({h_prev, h[j], h_next}) > depth_threshold;
        if (deep)
            surface_edges(grid, bed, h, ghost_h, j, out.h_left[j], out.h_right[j]);
        else
            depth_edges(grid, h, ghost_h, j, out.h_left[j], out.h_right[j]);
        out.h_left[j] = std::max(out.h_left[j], 0.0);
        out.h_right[j] = std::max(out.h_right[j], 0.0);
    }
    return out;
}

AltEdges chertock(const Grid& grid, const BedGeometry& bed, std::span<const double> h,
                  const GhostPair& ghost_h) {
    check_depths(h);
    const std::size_t n = grid.cells();
    AltEdges out;
    out.h_left.resize(n);
    out.h_right.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        surface_edges(grid, bed, h, ghost_h, j, out.h_left[j], out.h_right[j]);
        if (out.h_left[j] < 0.0 || out.h_right[j] < 0.0) {
            out.h_left[j] = h[j];
            out.h_right[j] = h[j];
        }
    }
    return out;
}

BollermannRecon bollermann(const Grid& grid, const BedGeometry& bed, std::span<const double> h,
                           const GhostPair& ghost_h) {
    check_depths(h);
    const std::size_t n = grid.cells();
    BollermannRecon out;
    out.edges.h_left.resize(n);
    out.edges.h_right.resize(n);
    out.cells.resize(n);

    for (std::size_t j = 0; j < n; ++j) {
        const double db = bed.db_cell[j];
        const double dx = grid.cell_widths[j];

        if (h[j] <= 0.0) {
            out.edges.h_left[j] = 0.0;
            out.edges.h_right[j] = 0.0;
            continue;
        }
        if (h[j] >= 0.5 * std::abs(db)) {
            // Enough water to level out: surface reconstruction, with the
            // gradient steepened to zero out a (rare) negative edge while
            // keeping the cell average.
            double l, r;
            surface_edges(grid, bed, h, ghost_h, j, l, r);
            if (l < 0.0) {
                l = 0.0;
                r = 2.0 * h[j];
            } else if (r < 0.0) {
                r = 0.0;
                l = 2.0 * h[j];
            }
            out.edges.h_left[j] = l;
            out.edges.h_right[j] = r;
            continue;
        }

        // Partially wet: water pools against the downhill interface as a
        // wedge, dry beyond the front. The pond merges with the downhill
        // neighbour's surface in proportion to how close the cell is to the
        // levelling volume |db|/2; an isolated puddle keeps the self-contained
        // level. Either way the front position conserves the cell average.
        const bool wet_on_left = db > 0.0;
        const double b_edge = wet_on_left ? bed.b_left[j] : bed.b_right[j];
        const auto [h_prev, h_next] = neighbours(h, j, ghost_h);
        const double nb_h = wet_on_left ? h_prev : h_next;
        const double nb_b = wet_on_left ? (j > 0 ? bed.b_center[j - 1] : bed.b_center[0])
                                        : (j + 1 < n ? bed.b_center[j + 1]
                                                     : bed.b_center[n - 1]);
        const double depth_self = std::sqrt(2.0 * h[j] * std::abs(db));
        const double fill = 2.0 * h[j] / std::abs(db); // in (0,1) here
        const double depth_nb = nb_h > 0.0 ? (nb_h + nb_b - b_edge) * fill : 0.0;
        const double wet_depth = std::max(depth_self, depth_nb);
        const double extent = 2.0 * h[j] * dx / wet_depth;

        WedgeCell& cell = out.cells[j];
        cell.wedge = true;
        cell.wet_depth = wet_depth;
        cell.wet_on_left = wet_on_left;
        cell.front = wet_on_left ? grid.interfaces[j] + extent
                                 : grid.interfaces[j + 1] - extent;
        out.edges.h_left[j] = wet_on_left ? wet_depth : 0.0;
        out.edges.h_right[j] = wet_on_left ? 0.0 : wet_depth;
    }
    return out;
}

} // namespace swell
