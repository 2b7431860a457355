#pragma once

#include <array>
#include <functional>
#include <span>

namespace swell {

/// min of all entries if all positive, max if all negative, else 0.
/// Throws std::invalid_argument on empty input.
double minmod(std::span<const double> values);

struct SlopeParams {
    double alpha_plus_prev;  // weight on (v_mid - v_prev)
    double alpha_center;     // weight on (v_next - v_prev)
    double alpha_minus_next; // weight on (v_next - v_mid)
    double dx;
};

/// Limited gradient of the piecewise-linear reconstruction in one cell.
/// Returns exactly 0 at any local extremum of the triple.
double slope(double v_prev, double v_mid, double v_next, const SlopeParams& p);

struct SlopeEnvelope {
    double lo, hi; // always lo <= 0 <= hi
};

/// Two-sided admissible gradient range; any gradient inside it keeps the
/// reconstruction within the neighbouring cell averages.
SlopeEnvelope tvd_envelope(double v_prev, double v_mid, double v_next, const SlopeParams& p);

bool tvd_envelope_holds(double sigma, double v_prev, double v_mid, double v_next,
                        const SlopeParams& p);

/// Finite-difference probe of how a reconstruction's edge values respond to
/// one cell average. The callable maps a trial cell-average value to
/// { left edge of the cell, right edge of the cell,
///   facing edge of the left neighbour, facing edge of the right neighbour }.
struct EdgeDerivatives {
    double self_left = 0.0;       // d(cell's left edge)/d(average)
    double self_right = 0.0;      // d(cell's right edge)/d(average)
    double neighbour_left = 0.0;  // d(left neighbour's right edge)/d(average)
    double neighbour_right = 0.0; // d(right neighbour's left edge)/d(average)
    bool kink = false;            // one-sided estimates disagree; do not assert on these
};

EdgeDerivatives probe_monotonicity(const std::function<std::array<double, 4>(double)>& recon,
                                   double base, double eps);

} // namespace swell
