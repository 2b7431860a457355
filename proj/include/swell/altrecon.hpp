#pragma once

#include <span>
#include <vector>

#include "swell/mesh.hpp"
#include "swell/wbrecon.hpp"

namespace swell {

/// Depth reconstructions from the comparison literature, reimplemented at
/// desk scale for side-by-side study with the blended scheme. Faithful only
/// to the documented behaviours, not to the original codebases.
enum class AltScheme { kurganov_levy, chertock, bollermann };

struct AltEdges {
    std::vector<double> h_left;
    std::vector<double> h_right;
};

/// Surface-based reconstruction when the cell and both neighbours exceed the
/// depth threshold, depth-based otherwise; negative edges clipped to zero.
AltEdges kurganov_levy(const Grid& grid, const BedGeometry& bed, std::span<const double> h,
                       double depth_threshold, const GhostPair& ghost_h = {});

/// Surface-based reconstruction; any cell with a negative edge depth falls
/// back to a constant profile at the cell average.
AltEdges chertock(const Grid& grid, const BedGeometry& bed, std::span<const double> h,
                  const GhostPair& ghost_h = {});

/// Two-piece wet/dry description of a partially wet cell: a linear wet wedge
/// against the downhill interface and a dry remainder. The wedge conserves
/// the cell average exactly.
struct WedgeCell {
    bool wedge = false;
    double front = 0.0;      // wet/dry front position inside the cell
    double wet_depth = 0.0;  // depth at the wet interface
    bool wet_on_left = true; // which interface the water pools against
};

struct BollermannRecon {
    AltEdges edges;
    std::vector<WedgeCell> cells;
};

/// Surface-based reconstruction for cells holding enough water to level out;
/// shallower cells become a mass-conserving wet wedge with a dry remainder.
/// The pond surface of a wedge connects to the adjacent cell's surface when
/// that neighbour stands higher, otherwise it is the self-contained level.
BollermannRecon bollermann(const Grid& grid, const BedGeometry& bed, std::span<const double> h,
                           const GhostPair& ghost_h = {});

} // namespace swell
