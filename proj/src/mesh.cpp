#include "swell/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace swell {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

std::vector<double> broadcast(const std::vector<double>& per_entry, double scalar,
                              std::size_t n, const char* name) {
    if (per_entry.empty()) return std::vector<double>(n, scalar);
    require(per_entry.size() == n, std::string(name) + ": length mismatch");
    return per_entry;
}

} // namespace

Grid build_grid(std::span<const double> interfaces, const GridParams& params) {
    require(interfaces.size() >= 2, "build_grid: need at least 2 interfaces");
    const std::size_t n_if = interfaces.size();
    const std::size_t n_cells = n_if - 1;

    Grid g;
    g.interfaces.assign(interfaces.begin(), interfaces.end());
    g.cell_widths.resize(n_cells);
    for (std::size_t j = 0; j < n_cells; ++j) {
        const double dx = g.interfaces[j + 1] - g.interfaces[j];
        require(dx > 0.0, "build_grid: non-increasing interfaces");
        require(std::isfinite(dx), "build_grid: non-finite interface");
        g.cell_widths[j] = dx;
    }

    g.alpha_plus = broadcast(params.alpha_plus_per_interface, params.alpha_plus, n_if,
                             "alpha_plus");
    g.alpha_minus = broadcast(params.alpha_minus_per_interface, params.alpha_minus, n_if,
                              "alpha_minus");
    g.alpha_center = broadcast(params.alpha_center_per_cell, params.alpha_center, n_cells,
                               "alpha_center");
    g.k_plus = broadcast(params.k_plus_per_interface, params.suppression_k, n_if, "k_plus");
    g.k_minus = broadcast(params.k_minus_per_interface, params.suppression_k, n_if, "k_minus");

    for (double a : g.alpha_plus) require(a > 0.0 && a < 1.0, "build_grid: alpha_plus outside (0,1)");
    for (double a : g.alpha_minus)
        require(a > 0.0 && a < 1.0, "build_grid: alpha_minus outside (0,1)");
    for (double a : g.alpha_center)
        require(a > 0.0 && a < 1.0, "build_grid: alpha_center outside (0,1)");
    for (double k : g.k_plus) require(k > 0.0, "build_grid: nonpositive suppression threshold");
    for (double k : g.k_minus) require(k > 0.0, "build_grid: nonpositive suppression threshold");

    g.gain.resize(n_cells);
    if (!params.gain_per_cell.empty()) {
        require(params.gain_per_cell.size() == n_cells, "gain: length mismatch");
        g.gain = params.gain_per_cell;
    } else {
        for (std::size_t j = 0; j < n_cells; ++j)
            g.gain[j] = params.gain > 0.0 ? params.gain : 1.0 - g.alpha_up(j);
    }
    for (std::size_t j = 0; j < n_cells; ++j) {
        require(g.gain[j] > 0.0, "build_grid: gain must be positive");
        require(g.gain[j] <= 1.0 - g.alpha_up(j) + 1e-15,
                "build_grid: gain above 1 - alpha_up");
    }

    if (params.froude_ref > 0.0) {
        g.froude_ref = params.froude_ref;
    } else {
        double gain_min = g.gain[0];
        for (double v : g.gain) gain_min = std::min(gain_min, v);
        g.froude_ref = std::pow(1.0 + 1.0 / gain_min, 1.5);
    }
    require(g.froude_ref > 0.0, "build_grid: nonpositive reference Froude number");

    require(params.gravity > 0.0, "build_grid: nonpositive gravity");
    g.gravity = params.gravity;
    return g;
}

BedGeometry bed_stats(std::span<const double> b_left, std::span<const double> b_right,
                      const Grid& grid) {
    const std::size_t n = grid.cells();
    require(b_left.size() == n && b_right.size() == n, "bed_stats: length mismatch");
    for (std::size_t j = 0; j < n; ++j)
        require(std::isfinite(b_left[j]) && std::isfinite(b_right[j]),
                "bed_stats: non-finite bed value");

    BedGeometry bed;
    bed.b_left.assign(b_left.begin(), b_left.end());
    bed.b_right.assign(b_right.begin(), b_right.end());
    bed.b_center.resize(n);
    bed.db_cell.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        bed.b_center[j] = 0.5 * (bed.b_left[j] + bed.b_right[j]);
        bed.db_cell[j] = bed.b_right[j] - bed.b_left[j];
    }

    bed.db_interface.assign(n + 1, 0.0); // zero across the domain ends
    for (std::size_t i = 1; i < n; ++i)
        bed.db_interface[i] = bed.b_center[i] - bed.b_center[i - 1];

    bed.db_up_geo.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double half = 0.5 * bed.db_cell[j];
        const double b_prev = j > 0 ? bed.b_center[j - 1] : bed.b_center[0];
        const double b_next = j + 1 < n ? bed.b_center[j + 1] : bed.b_center[n - 1];
        const double t1 = std::abs(half - grid.alpha_plus[j] * bed.db_interface[j]);
        const double t2 = std::abs(half);
        const double t3 = std::abs(half - grid.alpha_center[j] * (b_next - b_prev));
        const double t4 = std::abs(half - grid.alpha_minus[j + 1] * bed.db_interface[j + 1]);
        bed.db_up_geo[j] = std::max(std::max(t1, t2), std::max(t3, t4));
    }
    return bed;
}

BedGeometry bed_from_function(const std::function<double(double)>& bed, const Grid& grid) {
    const std::size_t n = grid.cells();
    std::vector<double> at_interface(n + 1);
    for (std::size_t i = 0; i <= n; ++i) at_interface[i] = bed(grid.interfaces[i]);
    std::vector<double> lo(n), hi(n);
    for (std::size_t j = 0; j < n; ++j) {
        lo[j] = at_interface[j];
        hi[j] = at_interface[j + 1];
    }
    return bed_stats(lo, hi, grid);
}

WidthGeometry width_stats(std::span<const double> w_left, std::span<const double> w_right,
                          const Grid& grid) {
    const std::size_t n = grid.cells();
    require(w_left.size() == n && w_right.size() == n, "width_stats: length mismatch");
    WidthGeometry w;
    w.w_left.assign(w_left.begin(), w_left.end());
    w.w_right.assign(w_right.begin(), w_right.end());
    w.w_center.resize(n);
    w.w_gradient.resize(n);
    w.w_down.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        require(w.w_left[j] >= 0.0 && w.w_right[j] >= 0.0, "width_stats: negative width");
        w.w_center[j] = 0.5 * (w.w_left[j] + w.w_right[j]);
        w.w_gradient[j] = (w.w_right[j] - w.w_left[j]) / grid.cell_widths[j];
        w.w_down[j] = std::min(w.w_left[j], w.w_right[j]);
    }
    return w;
}

WidthGeometry width_from_function(const std::function<double(double)>& width, const Grid& grid) {
    const std::size_t n = grid.cells();
    std::vector<double> at_interface(n + 1);
    for (std::size_t i = 0; i <= n; ++i) at_interface[i] = width(grid.interfaces[i]);
    std::vector<double> lo(n), hi(n);
    for (std::size_t j = 0; j < n; ++j) {
        lo[j] = at_interface[j];
        hi[j] = at_interface[j + 1];
    }
    return width_stats(lo, hi, grid);
}

} // namespace swell
