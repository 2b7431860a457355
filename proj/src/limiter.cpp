#include "swell/limiter.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace swell {

double minmod(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("minmod: empty input");
    double lo = values[0], hi = values[0];
    for (double v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (lo > 0.0) return lo;
    if (hi < 0.0) return hi;
    return 0.0;
}

namespace {

// The three limited differences. slope() and tvd_envelope() must scale these
// identically so that emitted gradients compare exactly against the envelope.
struct Diffs {
    double left, center, right;
};

inline Diffs limited_diffs(double v_prev, double v_mid, double v_next, const SlopeParams& p) {
    return {p.alpha_plus_prev * (v_mid - v_prev), p.alpha_center * (v_next - v_prev),
            p.alpha_minus_next * (v_next - v_mid)};
}

} // namespace

double slope(double v_prev, double v_mid, double v_next, const SlopeParams& p) {
    const Diffs d = limited_diffs(v_prev, v_mid, v_next, p);
    const double ys[3] = {d.left, d.center, d.right};
    const double mm = minmod(ys);
    if (mm == 0.0) return 0.0; // keep the exact zero at extrema
    return (2.0 / p.dx) * mm;
}

SlopeEnvelope tvd_envelope(double v_prev, double v_mid, double v_next, const SlopeParams& p) {
    const Diffs d = limited_diffs(v_prev, v_mid, v_next, p);
    const double lo = std::max(std::min(d.left, 0.0), std::min(d.right, 0.0));
    const double hi = std::min(std::max(d.left, 0.0), std::max(d.right, 0.0));
    const double scale = 2.0 / p.dx;
    return {lo == 0.0 ? 0.0 : scale * lo, hi == 0.0 ? 0.0 : scale * hi};
}

bool tvd_envelope_holds(double sigma, double v_prev, double v_mid, double v_next,
                        const SlopeParams& p) {
    const SlopeEnvelope env = tvd_envelope(v_prev, v_mid, v_next, p);
    return env.lo <= sigma && sigma <= env.hi;
}

EdgeDerivatives probe_monotonicity(const std::function<std::array<double, 4>(double)>& recon,
                                   double base, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("probe_monotonicity: eps must be positive");
    const std::array<double, 4> above = recon(base + eps);
    const std::array<double, 4> below = recon(base - eps);
    const std::array<double, 4> at = recon(base);

    EdgeDerivatives out;
    double* slot[4] = {&out.self_left, &out.self_right, &out.neighbour_left,
                       &out.neighbour_right};
    for (int k = 0; k < 4; ++k) {
        const double fwd = (above[k] - at[k]) / eps;
        const double bwd = (at[k] - below[k]) / eps;
        *slot[k] = (above[k] - below[k]) / (2.0 * eps);
        if (std::abs(fwd - bwd) > 10.0 * eps) out.kink = true;
    }
    return out;
}

} // namespace swell
