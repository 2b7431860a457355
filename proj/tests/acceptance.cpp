// Acceptance suite: every headline guarantee of the library, each checked at
// its stated tolerance and reported as one PASS/FAIL line. Run with no
// arguments for all criteria or with a number (1-10) for a single one.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "support/random_cases.hpp"
#include "support/stoker.hpp"
#include "swell/altrecon.hpp"
#include "swell/limiter.hpp"
#include "swell/scenario.hpp"
#include "swell/stepper.hpp"

using namespace swell;
using swell::testsupport::CaseOptions;
using swell::testsupport::DamBreakExact;
using swell::testsupport::make_case;

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
    void note(const std::string& what) {
        if (detail.empty()) detail = what;
        else detail += "; " + what;
    }
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

Grid uniform_grid(int cells, double lo, double hi, double gravity = 9.81) {
    std::vector<double> x(static_cast<std::size_t>(cells) + 1);
    for (int i = 0; i <= cells; ++i)
        x[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / static_cast<double>(cells);
    GridParams p;
    p.gravity = gravity;
    return build_grid(x, p);
}

BedGeometry bump_bed(const Grid& g, double amplitude = 0.5) {
    return bed_from_function(
        [amplitude](double x) {
            const double t = x - 5.0;
            if (std::abs(t) >= 2.0) return 0.0;
            const double c = std::cos(M_PI * t / 4.0);
            return amplitude * c * c;
        },
        g);
}

double snapped_depth(double eta, double b) {
    double h = eta - b;
    for (int k = 0; k < 4 && h + b > eta; ++k) h = std::nextafter(h, -1e300);
    for (int k = 0; k < 4 && h + b < eta; ++k) h = std::nextafter(h, 1e300);
    return h > 0.0 ? h : 0.0;
}

// --------------------------------------------------------------------------
// 1. Still water over a bump stays still to 1e-12 for 1000 two-stage steps.
Check criterion_1() {
    Check c;
    const int cells = 100;
    const Grid g = uniform_grid(cells, 0.0, 10.0);
    const BedGeometry bed = bump_bed(g);
    const double eta = 2.0;
    State s;
    s.kind = SystemKind::plain;
    s.h.resize(cells);
    s.q.assign(cells, 0.0);
    for (int j = 0; j < cells; ++j)
        s.h[static_cast<std::size_t>(j)] = snapped_depth(eta, bed.b_center[static_cast<std::size_t>(j)]);

    const double floor = 1e-12 * std::sqrt(9.81 * 2.0);
    for (int step = 0; step < 1000; ++step) {
        const RhsResult probe = rhs({}, g, bed, nullptr, s, BoundaryMode::reflective_wall);
        const double dt =
            cfl_dt(g, probe.report.speed_minus, probe.report.speed_plus, 0.45, floor);
        s = ssp_rk2({}, g, bed, nullptr, s, dt, BoundaryMode::reflective_wall);
    }
    double dev = 0.0, q = 0.0;
    for (int j = 0; j < cells; ++j) {
        dev = std::max(dev, std::abs(s.h[static_cast<std::size_t>(j)] +
                                     bed.b_center[static_cast<std::size_t>(j)] - eta));
        q = std::max(q, std::abs(s.q[static_cast<std::size_t>(j)]));
    }
    c.require(dev <= 1e-12, "surface deviation " + fmt(dev));
    c.require(q <= 1e-12, "residual flux " + fmt(q));
    c.note("max|eta-2| = " + fmt(dev) + ", max|q| = " + fmt(q));
    return c;
}

// --------------------------------------------------------------------------
// 2. The shore-transition sweep reproduces the four schemes' behaviours.
Check criterion_2() {
    Check c;
    ScenarioConfig cfg = parse_config("scenario = comparison_sweep\n");
    const SweepTable table = comparison_sweep(cfg);
    const double step = cfg.sweep_step;

    const auto column = [&](SchemeChoice scheme, int cell, bool right) {
        std::vector<std::pair<double, double>> out;
        for (const SweepRow& r : table.rows)
            if (r.scheme == scheme && r.cell == cell)
                out.push_back({r.h0, right ? r.h_right : r.h_left});
        return out;
    };
    const auto gamma_column = [&](int cell) {
        std::vector<std::pair<double, double>> out;
        for (const SweepRow& r : table.rows)
            if (r.scheme == SchemeChoice::paper && r.cell == cell)
                out.push_back({r.h0, r.gamma});
        return out;
    };

    // (a) The deep cell's downhill edge responds to the shore at -3/16 while
    // the surface stencil is pinned, and its blend saturates exactly at 7/3.
    {
        const auto edge = column(SchemeChoice::paper, -1, true);
        double slope_max = -1e300, slope_min = 1e300;
        for (std::size_t i = 1; i < edge.size(); ++i) {
            const double d = (edge[i].second - edge[i - 1].second) /
                             (edge[i].first - edge[i - 1].first);
            if (edge[i].first <= 2.0 + 1e-12) {
                slope_max = std::max(slope_max, d);
                slope_min = std::min(slope_min, d);
            }
        }
        c.require(std::abs(slope_max + 3.0 / 16.0) <= 1e-10,
                  "pinned-range slope " + fmt(slope_max));
        c.require(std::abs(slope_min + 3.0 / 16.0) <= 1e-10,
                  "pinned-range slope " + fmt(slope_min));

        double fd_min = 1e300;
        for (std::size_t i = 1; i < edge.size(); ++i)
            fd_min = std::min(fd_min, (edge[i].second - edge[i - 1].second) /
                                          (edge[i].first - edge[i - 1].first));
        c.require(fd_min >= -3.0 / 16.0 - 1e-10, "edge drops below -3/16: " + fmt(fd_min));
        c.require(std::abs(fd_min + 3.0 / 16.0) <= 1e-10,
                  "-3/16 floor not attained: " + fmt(fd_min));

        const auto gam = gamma_column(-1);
        for (const auto& [h0, gv] : gam)
            if (h0 < 7.0 / 3.0 - 1e-12)
                c.require(gv < 1.0, "blend saturated early at h0 = " + fmt(h0));
        c.require(std::abs(gam.back().first - 7.0 / 3.0) <= 1e-12 &&
                      std::abs(gam.back().second - 1.0) <= 1e-10,
                  "blend not saturated at 7/3: gamma = " + fmt(gam.back().second));
    }

    // (b) The blended edges are continuous in the shore depth everywhere.
    double worst_jump = 0.0;
    for (int cell = -3; cell <= 3; ++cell) {
        for (bool right : {false, true}) {
            const auto edge = column(SchemeChoice::paper, cell, right);
            for (std::size_t i = 1; i < edge.size(); ++i)
                worst_jump = std::max(worst_jump, std::abs(edge[i].second - edge[i - 1].second) /
                                                      (edge[i].first - edge[i - 1].first));
        }
    }
    c.require(worst_jump <= 10.0, "blended edge moves at rate " + fmt(worst_jump));

    const auto biggest_jump = [&](SchemeChoice scheme, int cell, bool right) {
        const auto edge = column(scheme, cell, right);
        double best = 0.0, where = 0.0;
        for (std::size_t i = 1; i < edge.size(); ++i) {
            const double d = std::abs(edge[i].second - edge[i - 1].second);
            if (d > best) {
                best = d;
                where = 0.5 * (edge[i].first + edge[i - 1].first);
            }
        }
        return std::pair<double, double>(best, where);
    };

    // (c) The depth-threshold scheme jumps as the shore crosses 3/4.
    {
        const auto [size, where] = biggest_jump(SchemeChoice::kurganov_levy, 0, true);
        c.require(size > 0.2, "threshold jump too small: " + fmt(size));
        c.require(std::abs(where - 0.75) <= step + 1e-12,
                  "threshold jump at " + fmt(where));
        const auto [nb_size, nb_where] = biggest_jump(SchemeChoice::kurganov_levy, -1, true);
        c.require(nb_size > 0.2 && std::abs(nb_where - 0.75) <= step + 1e-12,
                  "neighbour jump at " + fmt(nb_where));
    }

    // (d) The constant-fallback scheme dries its downhill edge at 1/2.
    {
        const auto edge = column(SchemeChoice::chertock, 0, true);
        bool found = false;
        for (const auto& [h0, v] : edge)
            if (h0 == 0.5) {
                found = true;
                c.require(std::abs(v) <= 1e-10, "edge at h0 = 1/2 is " + fmt(v));
            }
        c.require(found, "sweep missed h0 = 1/2");
    }

    // (e) The wedge scheme dries the downhill edge on [0, 1/2] and its uphill
    // edge jumps as the cell fills past 1/2.
    {
        const auto edge = column(SchemeChoice::bollermann, 0, true);
        for (const auto& [h0, v] : edge)
            if (h0 <= 0.5 + 1e-12)
                c.require(std::abs(v) <= 1e-10,
                          "wet downhill edge at h0 = " + fmt(h0) + ": " + fmt(v));
        const auto [size, where] = biggest_jump(SchemeChoice::bollermann, 0, false);
        c.require(size > 0.2, "wedge jump too small: " + fmt(size));
        c.require(std::abs(where - 0.5) <= step + 1e-12, "wedge jump at " + fmt(where));
    }
    return c;
}

// --------------------------------------------------------------------------
// 3. Depth-reconstruction property suite on 1e5 random cases.
Check criterion_3() {
    Check c;
    std::mt19937_64 rng(101);
    CaseOptions opt;
    opt.random_cutoff = true;
    long bound_checks = 0, fd_checks = 0, kinks = 0;
    const double eps = 1e-4;

    for (int it = 0; it < 100000; ++it) {
        const auto rc = make_case(rng, opt);
        const std::size_t n = rc.grid.cells();
        const DepthRecon r = reconstruct_depth(rc.grid, rc.bed, rc.h, rc.cutoff);
        for (std::size_t j = 0; j < n; ++j) {
            const double xc = rc.grid.xi_critical(j);
            const double lower = (1.0 - 1.0 / xc) * r.h_down[j];
            const double upper = r.h_up[j] + r.h_down[j] / xc;
            c.require(r.h_left[j] >= lower - 1e-12 && r.h_left[j] <= upper + 1e-12 &&
                          r.h_right[j] >= lower - 1e-12 && r.h_right[j] <= upper + 1e-12,
                      "depth bound broken in cell " + std::to_string(j));
            c.require(r.h_left[j] >= 0.0 && r.h_right[j] >= 0.0, "negative edge depth");
            ++bound_checks;
        }

        // One interior probe per case keeps the whole suite under budget.
        std::uniform_int_distribution<std::size_t> pick(1, n - 2);
        const std::size_t j = pick(rng);
        if (rc.h[j] <= 2.0 * eps) continue;
        const auto recon = [&](double hj) {
            std::vector<double> hv = rc.h;
            hv[j] = hj;
            const DepthRecon rr = reconstruct_depth(rc.grid, rc.bed, hv, rc.cutoff);
            return std::array<double, 4>{rr.h_left[j], rr.h_right[j], rr.h_right[j - 1],
                                         rr.h_left[j + 1]};
        };
        const EdgeDerivatives d = probe_monotonicity(recon, rc.h[j], eps);
        if (d.kink) {
            ++kinks;
            continue;
        }
        c.require(d.self_left >= -1e-8 && d.self_right >= -1e-8,
                  "self response " + fmt(std::min(d.self_left, d.self_right)));
        const double floor_l = -rc.grid.gain[j - 1] * rc.grid.alpha_minus[j] - 1e-8;
        const double floor_r = -rc.grid.gain[j + 1] * rc.grid.alpha_plus[j + 1] - 1e-8;
        c.require(d.neighbour_left >= floor_l && d.neighbour_left >= -0.25 - 1e-8,
                  "left neighbour response " + fmt(d.neighbour_left));
        c.require(d.neighbour_right >= floor_r && d.neighbour_right >= -0.25 - 1e-8,
                  "right neighbour response " + fmt(d.neighbour_right));
        ++fd_checks;
    }
    c.require(fd_checks > 50000, "too few smooth probes: " + std::to_string(fd_checks));
    c.note(std::to_string(bound_checks) + " bound checks, " + std::to_string(fd_checks) +
           " probes, " + std::to_string(kinks) + " skipped at ties");
    return c;
}

// --------------------------------------------------------------------------
// 4. Edge-velocity bounds, plain and width systems; pinched cells keep a
// constant velocity.
Check criterion_4() {
    Check c;
    std::mt19937_64 rng(102);
    CaseOptions opt;
    opt.depth_min = 1e-3;
    opt.random_cutoff = true;
    std::uniform_real_distribution<double> vel(-3.0, 3.0);
    std::uniform_real_distribution<double> width_val(0.05, 3.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    for (int it = 0; it < 100000; ++it) {
        const auto rc = make_case(rng, opt);
        const std::size_t n = rc.grid.cells();
        std::vector<double> q(n);
        for (std::size_t j = 0; j < n; ++j) q[j] = vel(rng) * rc.h[j];

        if (it % 2 == 0) {
            const DepthRecon d = reconstruct_depth(rc.grid, rc.bed, rc.h, rc.cutoff);
            const FluxRecon f = reconstruct_flux(rc.grid, q, rc.h);
            const VelocityEdges v = interface_velocities(d, f);
            for (std::size_t j = 1; j + 1 < n; ++j) {
                const double factor =
                    (rc.grid.gain[j] + 1.0) / (1.0 - rc.grid.alpha_up(j));
                const double bl =
                    factor * (std::abs(q[j] / rc.h[j]) +
                              rc.grid.k_plus[j] * rc.grid.alpha_plus[j] *
                                  std::abs(q[j - 1] / rc.h[j - 1]));
                const double br =
                    factor * (std::abs(q[j] / rc.h[j]) +
                              rc.grid.k_minus[j + 1] * rc.grid.alpha_minus[j + 1] *
                                  std::abs(q[j + 1] / rc.h[j + 1]));
                c.require(std::abs(v.u_left[j]) <= bl + 1e-10 * (1.0 + bl),
                          "plain left edge velocity");
                c.require(std::abs(v.u_right[j]) <= br + 1e-10 * (1.0 + br),
                          "plain right edge velocity");
            }
        } else {
            std::vector<double> wl(n), wr(n), area(n), qt(n);
            for (std::size_t j = 0; j < n; ++j) {
                wl[j] = width_val(rng);
                wr[j] = width_val(rng);
            }
            const WidthGeometry w = width_stats(wl, wr, rc.grid);
            for (std::size_t j = 0; j < n; ++j) {
                area[j] = w.w_center[j] * rc.h[j];
                qt[j] = vel(rng) * area[j];
            }
            const WidthRecon d = reconstruct_area_width(rc.grid, w, rc.bed, area, rc.cutoff);
            const FluxRecon f = reconstruct_width_flux(rc.grid, w, area, qt);
            for (std::size_t j = 1; j + 1 < n; ++j) {
                if (w.w_down[j] == 0.0) continue;
                const double ul = f.q_left[j] / d.area_left[j];
                const double ur = f.q_right[j] / d.area_right[j];
                const double factor = w.w_center[j] / w.w_down[j] *
                                      (rc.grid.gain[j] + 1.0) /
                                      (1.0 - rc.grid.alpha_up(j));
                const double bl =
                    factor * (std::abs(qt[j] / area[j]) +
                              rc.grid.k_plus[j] * rc.grid.alpha_plus[j] *
                                  std::abs(qt[j - 1] / area[j - 1]));
                const double br =
                    factor * (std::abs(qt[j] / area[j]) +
                              rc.grid.k_minus[j + 1] * rc.grid.alpha_minus[j + 1] *
                                  std::abs(qt[j + 1] / area[j + 1]));
                c.require(std::abs(ul) <= bl + 1e-10 * (1.0 + bl),
                          "width left edge velocity");
                c.require(std::abs(ur) <= br + 1e-10 * (1.0 + br),
                          "width right edge velocity");
            }
        }
    }

    // Degenerate branch: a zero-width edge pins the flux line through it and
    // the in-cell velocity is constant.
    std::mt19937_64 rng2(103);
    std::uniform_real_distribution<double> pos(0.2, 2.0);
    for (int it = 0; it < 2000; ++it) {
        const Grid g = uniform_grid(3, 0.0, 3.0);
        const BedGeometry bed = bed_from_function([](double) { return 0.0; }, g);
        const bool left_pinch = it % 2 == 0;
        std::vector<double> wl{pos(rng2), left_pinch ? 0.0 : pos(rng2), pos(rng2)};
        std::vector<double> wr{pos(rng2), left_pinch ? pos(rng2) : 0.0, pos(rng2)};
        const WidthGeometry w = width_stats(wl, wr, g);
        std::vector<double> h{pos(rng2), pos(rng2), pos(rng2)}, area(3), qt(3), zero(3, 0.0);
        for (std::size_t j = 0; j < 3; ++j) {
            area[j] = w.w_center[j] * h[j];
            qt[j] = pos(rng2) * area[j] * (unit(rng2) < 0.5 ? -1.0 : 1.0);
        }
        const WidthRecon d = reconstruct_area_width(g, w, bed, area, zero);
        const FluxRecon f = reconstruct_width_flux(g, w, area, qt);
        c.require(d.pinched[1] == 1, "pinched cell not flagged");
        // Sample u = qt/A inside the cell away from the pinched edge.
        double u_ref = 0.0;
        bool first = true;
        for (double frac : {0.2, 0.35, 0.5, 0.65, 0.8}) {
            const double x = g.interfaces[1] + frac * g.cell_widths[1];
            const double xc = g.cell_center(1);
            const double qt_x = qt[1] + (x - xc) * f.grad_q[1];
            const double a_x = area[1] + (x - xc) * d.grad_area[1];
            const double u = qt_x / a_x;
            if (first) {
                u_ref = u;
                first = false;
            } else {
                c.require(std::abs(u - u_ref) <= 1e-12 * std::max(1.0, std::abs(u_ref)),
                          "pinched-cell velocity varies: " + fmt(u - u_ref));
            }
        }
    }
    return c;
}

// --------------------------------------------------------------------------
// 5. Concentration reconstruction: envelope bounds and monotone responses
// with the flux cutoff active.
Check criterion_5() {
    Check c;
    std::mt19937_64 rng(104);
    CaseOptions opt;
    opt.depth_min = 0.05;
    // The self-monotone guarantee needs the gain below 3(1-a)/(2a_up) too.
    opt.gain_cap = 0.9;
    std::uniform_real_distribution<double> conc(0.1, 2.0);
    std::uniform_real_distribution<double> vel(-3.0, 3.0);
    std::uniform_real_distribution<double> gp_dist(0.5, 2.0);
    std::uniform_real_distribution<double> fr_dist(1.0, 20.0);
    long fd_checks = 0, kinks = 0;

    for (int it = 0; it < 100000; ++it) {
        auto rc = make_case(rng, opt);
        const std::size_t n = rc.grid.cells();
        for (std::size_t j = 0; j < n; ++j) {
            const double up = rc.grid.alpha_up(j);
            const double cap =
                0.9 * std::min({1.0 - up,
                                3.0 * (1.0 - rc.grid.alpha_minus[j + 1]) / (2.0 * up),
                                3.0 * (1.0 - rc.grid.alpha_plus[j]) / (2.0 * up)});
            rc.grid.gain[j] = std::min(rc.grid.gain[j], cap);
        }
        const double gp = gp_dist(rng);
        const double ga = gp * (0.1 + 0.9 * conc(rng) / 2.0);
        const double fr = fr_dist(rng);

        std::vector<double> phi(n), Phi(n), q(n), cutoff(n);
        for (std::size_t j = 0; j < n; ++j) {
            phi[j] = conc(rng);
            Phi[j] = phi[j] * rc.h[j];
            q[j] = vel(rng) * rc.h[j];
            cutoff[j] = froude_cutoff(q[j], gp * phi[j] + ga, fr);
        }
        const DepthRecon d = reconstruct_depth(rc.grid, rc.bed, rc.h, cutoff);
        const ConcenRecon r = reconstruct_concentration(rc.grid, Phi, d, rc.h);
        for (std::size_t j = 0; j < n; ++j) {
            const double prev = j > 0 ? phi[j - 1] : phi[0];
            const double next = j + 1 < n ? phi[j + 1] : phi[n - 1];
            const double lo =
                std::min({phi[j] - rc.grid.alpha_plus[j] * (phi[j] - prev), phi[j],
                          phi[j] + rc.grid.alpha_minus[j + 1] * (next - phi[j])});
            const double hi =
                std::max({phi[j] - rc.grid.alpha_plus[j] * (phi[j] - prev), phi[j],
                          phi[j] + rc.grid.alpha_minus[j + 1] * (next - phi[j])});
            c.require(r.phi_left[j] >= lo - 1e-12 && r.phi_left[j] <= hi + 1e-12 &&
                          r.phi_right[j] >= lo - 1e-12 && r.phi_right[j] <= hi + 1e-12,
                      "concentration envelope broken");
        }

        std::uniform_int_distribution<std::size_t> pick(1, n - 2);
        const std::size_t j = pick(rng);
        const double eps = 3e-6 * std::max(1.0, phi[j]);
        const auto recon = [&](double pj) {
            std::vector<double> phiv = phi, Phiv = Phi, cutv = cutoff;
            phiv[j] = pj;
            Phiv[j] = pj * rc.h[j];
            cutv[j] = froude_cutoff(q[j], gp * pj + ga, fr);
            const DepthRecon dd = reconstruct_depth(rc.grid, rc.bed, rc.h, cutv);
            const ConcenRecon rr = reconstruct_concentration(rc.grid, Phiv, dd, rc.h);
            return std::array<double, 4>{rr.phi_left[j], rr.phi_right[j], rr.phi_right[j - 1],
                                         rr.phi_left[j + 1]};
        };
        const EdgeDerivatives fd = probe_monotonicity(recon, phi[j], eps);
        if (fd.kink) {
            ++kinks;
            continue;
        }
        c.require(fd.self_left >= -1e-8 && fd.self_right >= -1e-8,
                  "concentration self response " +
                      fmt(std::min(fd.self_left, fd.self_right)));
        c.require(fd.neighbour_left >= -1e-8 && fd.neighbour_right >= -1e-8,
                  "concentration neighbour response " +
                      fmt(std::min(fd.neighbour_left, fd.neighbour_right)));
        ++fd_checks;
    }
    c.require(fd_checks > 50000, "too few smooth probes");
    c.note(std::to_string(fd_checks) + " probes, " + std::to_string(kinks) +
           " skipped at ties");
    return c;
}

// --------------------------------------------------------------------------
// 6. Blend-probe suite: R in [-1,1], S above 1 - alpha, flat bed exact.
Check criterion_6() {
    Check c;
    std::mt19937_64 rng(105);
    CaseOptions opt;
    opt.depth_min = 0.05;
    opt.random_cutoff = true;
    long s_checks = 0, kinks = 0;
    for (int it = 0; it < 100000; ++it) {
        const auto rc = make_case(rng, opt);
        std::uniform_int_distribution<std::size_t> pick(1, rc.grid.cells() - 2);
        const std::size_t j = pick(rng);
        const ProofDiagnostics pd = proof_diagnostics(rc.grid, rc.bed, rc.h, rc.cutoff, j);
        c.require(pd.R >= -1.0 - 1e-10 && pd.R <= 1.0 + 1e-10, "R out of range: " + fmt(pd.R));
        if (pd.kink) {
            ++kinks;
            continue;
        }
        c.require(pd.S >= 1.0 - rc.grid.alpha_minus[j + 1] - 1e-10,
                  "S below floor: " + fmt(pd.S));
        ++s_checks;
    }
    c.require(s_checks > 50000, "too few smooth probes");

    const Grid g = uniform_grid(7, 0.0, 7.0);
    const BedGeometry bed = bed_from_function([](double) { return 0.4; }, g);
    std::vector<double> h{1.0, 2.0, 0.3, 1.4, 0.9, 2.2, 1.1};
    std::vector<double> cutoff(7, 0.0);
    cutoff[3] = 0.9;
    for (std::size_t j = 1; j < 6; ++j) {
        const ProofDiagnostics pd = proof_diagnostics(g, bed, h, cutoff, j);
        c.require(pd.R == 0.0, "flat-bed R is " + fmt(pd.R));
    }
    c.note(std::to_string(s_checks) + " S checks, " + std::to_string(kinks) +
           " skipped at ties");
    return c;
}

// --------------------------------------------------------------------------
// 7. Positivity under evolution for randomized particle runs; closed-basin
// conservation without settling.
Check criterion_7() {
    Check c;
    std::mt19937_64 rng(106);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const auto run_once = [&](double vs, double& min_h, double& min_phi, double& mass_drift,
                              double& load_drift) {
        const int cells = 40;
        const Grid g = uniform_grid(cells, 0.0, 10.0);
        // Smooth random bed from a short sine series.
        const double a1 = 0.3 * unit(rng), a2 = 0.2 * unit(rng), p1 = 6.28 * unit(rng),
                     p2 = 6.28 * unit(rng);
        const BedGeometry bed = bed_from_function(
            [&](double x) {
                return a1 * std::sin(0.6 * x + p1) + a2 * std::sin(1.7 * x + p2) + 0.5;
            },
            g);
        SystemConstants k;
        k.g_prime_particle = 0.5 + 1.5 * unit(rng);
        k.g_prime_ambient = 0.1 + 0.9 * unit(rng);
        k.settling_velocity = vs;

        const double eta_l = 1.3 + 0.5 * unit(rng), eta_r = 0.55 + 0.2 * unit(rng);
        const double dam = 3.0 + 4.0 * unit(rng);
        const double phi0 = 0.2 + 0.8 * unit(rng);
        State s;
        s.kind = SystemKind::particle;
        s.h.resize(cells);
        s.q.assign(cells, 0.0);
        s.phi_h.resize(cells);
        for (int j = 0; j < cells; ++j) {
            const std::size_t u = static_cast<std::size_t>(j);
            const double eta = g.cell_center(u) < dam ? eta_l : eta_r;
            s.h[u] = std::max(eta - bed.b_center[u], 0.0);
            s.phi_h[u] = g.cell_center(u) < dam ? phi0 * s.h[u] : 0.0;
        }
        long double mass0 = 0.0L, load0 = 0.0L;
        for (int j = 0; j < cells; ++j) {
            mass0 += static_cast<long double>(s.h[static_cast<std::size_t>(j)]) *
                     g.cell_widths[static_cast<std::size_t>(j)];
            load0 += static_cast<long double>(s.phi_h[static_cast<std::size_t>(j)]) *
                     g.cell_widths[static_cast<std::size_t>(j)];
        }

        const double floor = 1e-12 * std::sqrt(9.81 * 2.0);
        min_h = 0.0;
        min_phi = 0.0;
        for (int step = 0; step < 500; ++step) {
            const RhsResult probe = rhs(k, g, bed, nullptr, s, BoundaryMode::reflective_wall);
            const double dt =
                cfl_dt(g, probe.report.speed_minus, probe.report.speed_plus, 0.45, floor);
            StepReport rep;
            s = ssp_rk2(k, g, bed, nullptr, s, dt, BoundaryMode::reflective_wall, &rep);
            min_h = std::min(min_h, rep.min_mass_before_clamp);
            min_phi = std::min(min_phi, rep.min_particle_before_clamp);
        }
        long double mass1 = 0.0L, load1 = 0.0L;
        for (int j = 0; j < cells; ++j) {
            mass1 += static_cast<long double>(s.h[static_cast<std::size_t>(j)]) *
                     g.cell_widths[static_cast<std::size_t>(j)];
            load1 += static_cast<long double>(s.phi_h[static_cast<std::size_t>(j)]) *
                     g.cell_widths[static_cast<std::size_t>(j)];
        }
        mass_drift = std::abs(static_cast<double>((mass1 - mass0) / mass0));
        load_drift = load0 > 0.0L
                         ? std::abs(static_cast<double>((load1 - load0) / load0))
                         : 0.0;
    };

    double worst_h = 0.0, worst_phi = 0.0, worst_mass = 0.0, worst_load = 0.0;
    for (int it = 0; it < 100; ++it) {
        double vs = 0.05 + 0.95 * unit(rng);
        double mh, mp, md, ld;
        run_once(vs, mh, mp, md, ld);
        worst_h = std::min(worst_h, mh);
        worst_phi = std::min(worst_phi, mp);
        (void)md;
        (void)ld;
    }
    c.require(worst_h >= -1e-13, "depth went negative: " + fmt(worst_h));
    c.require(worst_phi >= -1e-13, "load went negative: " + fmt(worst_phi));

    for (int it = 0; it < 10; ++it) {
        double mh, mp, md, ld;
        run_once(0.0, mh, mp, md, ld);
        worst_mass = std::max(worst_mass, md);
        worst_load = std::max(worst_load, ld);
    }
    c.require(worst_mass <= 1e-12, "mass drift " + fmt(worst_mass));
    c.require(worst_load <= 1e-12, "load drift " + fmt(worst_load));
    c.note("min h = " + fmt(worst_h) + ", min load = " + fmt(worst_phi) + ", drift " +
           fmt(worst_mass) + "/" + fmt(worst_load));
    return c;
}

// --------------------------------------------------------------------------
// 8. Width-channel still-water surface error is second order in the mesh.
Check criterion_8() {
    Check c;
    ScenarioConfig cfg = parse_config("scenario = convergence_study\n");
    const auto rows = convergence_study(cfg);
    c.require(rows.size() == 4, "expected 4 refinements");
    std::string seen;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        c.require(rows[i].ratio >= 3.2 && rows[i].ratio <= 4.8,
                  "ratio " + fmt(rows[i].ratio) + " at J = " +
                      std::to_string(rows[i].cell_count));
        seen += (i > 1 ? ", " : "") + fmt(rows[i].ratio);
    }
    c.note("error ratios: " + seen);
    return c;
}

// --------------------------------------------------------------------------
// 9. Dam break against the exact solution.
Check criterion_9() {
    Check c;
    const DamBreakExact exact(1.0, 0.125, 9.81);
    const auto l1_error = [&](int cells) {
        ScenarioConfig cfg = parse_config(
            "scenario = dam_break\nJ = " + std::to_string(cells) +
            "\nend_time = 0.1\nh_left = 1.0\nh_right = 0.125\n");
        const RunArtifacts art = run(cfg);
        double err = 0.0, norm = 0.0;
        for (std::size_t j = 0; j < art.grid.cells(); ++j) {
            const double x = art.grid.cell_center(j);
            const double he = exact.depth(x, art.end_time);
            err += std::abs(art.final_state.h[j] - he) * art.grid.cell_widths[j];
            norm += he * art.grid.cell_widths[j];
        }
        return err / norm;
    };
    const double e400 = l1_error(400);
    const double e800 = l1_error(800);
    c.require(e400 <= 0.02, "L1 error at J=400: " + fmt(e400));
    c.require(e800 < e400, "no improvement under refinement: " + fmt(e800));
    c.note("L1 rel errors " + fmt(e400) + " -> " + fmt(e800));
    return c;
}

// --------------------------------------------------------------------------
// 10. Every emitted gradient (plain and suppressed) respects the envelope.
Check criterion_10() {
    Check c;
    std::mt19937_64 rng(107);
    std::uniform_real_distribution<double> val(-5.0, 5.0);
    std::uniform_real_distribution<double> alpha(0.05, 0.95);
    std::uniform_real_distribution<double> width(0.2, 3.0);
    std::uniform_real_distribution<double> depth(0.0, 3.0);
    for (int it = 0; it < 100000; ++it) {
        const SlopeParams p{alpha(rng), alpha(rng), alpha(rng), width(rng)};
        const double a = val(rng), b = val(rng), cc = val(rng);
        c.require(tvd_envelope_holds(slope(a, b, cc, p), a, b, cc, p),
                  "raw slope escaped the envelope");
    }
    for (int it = 0; it < 100000; ++it) {
        GridParams gp;
        gp.alpha_plus_per_interface = {alpha(rng), alpha(rng), alpha(rng), alpha(rng)};
        gp.alpha_minus_per_interface = {alpha(rng), alpha(rng), alpha(rng), alpha(rng)};
        gp.alpha_center_per_cell = {alpha(rng), alpha(rng), alpha(rng)};
        const double x1 = width(rng), x2 = x1 + width(rng), x3 = x2 + width(rng);
        const Grid g = build_grid(std::array{0.0, x1, x2, x3}, gp);
        std::vector<double> h{depth(rng), depth(rng), depth(rng)};
        std::vector<double> q{val(rng), val(rng), val(rng)};
        const FluxRecon f = reconstruct_flux(g, q, h);
        const SlopeParams p{g.alpha_plus[1], g.alpha_center[1], g.alpha_minus[2],
                            g.cell_widths[1]};
        c.require(tvd_envelope_holds(f.grad_q[1], q[0], q[1], q[2], p),
                  "suppressed gradient escaped the envelope");
    }
    return c;
}

using Criterion = Check (*)();

struct Entry {
    int id;
    const char* title;
    Criterion fn;
};

const Entry kCriteria[] = {
    {1, "still water over a bump stays still to 1e-12 for 1000 steps", criterion_1},
    {2, "shore-transition sweep matches the reference behaviours", criterion_2},
    {3, "depth reconstruction bounds and monotone responses (1e5 cases)", criterion_3},
    {4, "edge-velocity bounds, plain and width systems (1e5 cases)", criterion_4},
    {5, "concentration envelope and monotone responses (1e5 cases)", criterion_5},
    {6, "blend probes R and S within their ranges (1e5 cases)", criterion_6},
    {7, "positivity and conservation under randomized evolution", criterion_7},
    {8, "width-channel still-water error is second order", criterion_8},
    {9, "dam break within 2% of the exact solution at J=400", criterion_9},
    {10, "every emitted gradient respects the variation envelope", criterion_10},
};

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);
    bool all_ok = true;
    for (const Entry& e : kCriteria) {
        if (only != 0 && e.id != only) continue;
        const auto t0 = std::chrono::steady_clock::now();
        const Check c = e.fn();
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %2d: %s  [%s, %.1fs]%s%s\n", e.id, c.ok ? "PASS" : "FAIL",
                    e.title, secs, c.detail.empty() ? "" : " -- ", c.detail.c_str());
        all_ok = all_ok && c.ok;
    }
    return all_ok ? 0 : 1;
}
