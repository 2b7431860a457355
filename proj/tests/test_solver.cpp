#include <doctest.h>

#include <array>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "swell/solver.hpp"

using namespace swell;

namespace {

Grid make_grid(int cells, double lo = 0.0, double hi = 10.0, double gravity = 9.81) {
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
    for (int k = 0; k < 4 && h + b > eta; ++k)
        h = std::nextafter(h, -1e300);
    for (int k = 0; k < 4 && h + b < eta; ++k)
        h = std::nextafter(h, 1e300);
    return h > 0.0 ? h : 0.0;
}

EdgeState plain_edge(double h, double q, double g = 9.81) {
    EdgeState e;
    e.h = h;
    e.q = q;
    e.g_eff = g;
    e.depth = h;
    return e;
}

} // namespace

TEST_CASE("pointwise flux") {
    CHECK(physical_flux(SystemKind::plain, plain_edge(1.0, 0.0, 1.0)).momentum == 0.5);
    CHECK(physical_flux(SystemKind::plain, plain_edge(1.0, 0.0, 1.0)).mass == 0.0);
    const FluxVec f = physical_flux(SystemKind::plain, plain_edge(1.0, 1.0, 1.0));
    CHECK(f.mass == 1.0);
    CHECK(f.momentum == doctest::Approx(1.5).epsilon(1e-15));
    const FluxVec dry = physical_flux(SystemKind::plain, plain_edge(0.0, 0.0));
    CHECK(dry.mass == 0.0);
    CHECK(dry.momentum == 0.0);
}

TEST_CASE("numerical flux: consistency, dry pair, still pair") {
    SUBCASE("equal states reproduce the pointwise flux exactly") {
        std::mt19937_64 rng(41);
        std::uniform_real_distribution<double> depth(0.01, 3.0);
        std::uniform_real_distribution<double> flux(-3.0, 3.0);
        for (int it = 0; it < 2000; ++it) {
            const EdgeState s = plain_edge(depth(rng), flux(rng));
            const NumericalFlux nf = numerical_flux(SystemKind::plain, s, s);
            const FluxVec f = physical_flux(SystemKind::plain, s);
            CHECK(nf.flux.mass == f.mass);
            CHECK(nf.flux.momentum == f.momentum);
        }
    }
    SUBCASE("dry pair gives zero flux and zero speeds") {
        const NumericalFlux nf =
            numerical_flux(SystemKind::plain, plain_edge(0.0, 0.0), plain_edge(0.0, 0.0));
        CHECK(nf.flux.mass == 0.0);
        CHECK(nf.flux.momentum == 0.0);
        CHECK(nf.a_minus == 0.0);
        CHECK(nf.a_plus == 0.0);
    }
    SUBCASE("still unit-depth pair") {
        const NumericalFlux nf =
            numerical_flux(SystemKind::plain, plain_edge(1.0, 0.0, 1.0),
                           plain_edge(1.0, 0.0, 1.0));
        CHECK(nf.flux.mass == 0.0);
        CHECK(nf.flux.momentum == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(nf.a_plus == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(nf.a_minus == doctest::Approx(-1.0).epsilon(1e-15));
    }
    SUBCASE("speed ordering on random pairs") {
        std::mt19937_64 rng(42);
        std::uniform_real_distribution<double> depth(0.0, 3.0);
        std::uniform_real_distribution<double> flux(-3.0, 3.0);
        for (int it = 0; it < 2000; ++it) {
            const double hl = depth(rng), hr = depth(rng);
            const NumericalFlux nf =
                numerical_flux(SystemKind::plain, plain_edge(hl, hl > 0 ? flux(rng) : 0.0),
                               plain_edge(hr, hr > 0 ? flux(rng) : 0.0));
            CHECK(nf.a_minus <= 0.0);
            CHECK(nf.a_plus >= 0.0);
            CHECK(nf.flux.momentum == doctest::Approx(nf.advective.momentum + nf.pressure)
                                          .epsilon(1e-12));
        }
    }
}

TEST_CASE("settling sink") {
    CHECK(settling_sink(2.0, 1.0, 0.0) == 0.0);
    CHECK(settling_sink(2.0, 1.0, 0.5) == -1.0);
    CHECK(settling_sink(2.0, 0.0, 0.5) == 0.0);
}

TEST_CASE("flat bed constant width source vanishes") {
    const Grid g = make_grid(10);
    const BedGeometry bed = bed_from_function([](double) { return 0.0; }, g);
    const EdgeState e = plain_edge(1.2, 0.3);
    CHECK(bed_source(SystemKind::plain, g, bed, nullptr, 4, e, e) == 0.0);
}

TEST_CASE("still water over a bump is an exact steady state") {
    const Grid g = make_grid(100);
    const BedGeometry bed = bump_bed(g);
    State s;
    s.kind = SystemKind::plain;
    s.h.resize(100);
    s.q.assign(100, 0.0);
    for (std::size_t j = 0; j < 100; ++j) s.h[j] = snapped_depth(2.0, bed.b_center[j]);

    const RhsResult r = rhs({}, g, bed, nullptr, s, BoundaryMode::reflective_wall);
    for (std::size_t j = 0; j < 100; ++j) {
        CHECK(std::abs(r.dh[j]) <= 1e-13);
        CHECK(std::abs(r.dq[j]) <= 1e-13);
    }
}

TEST_CASE("still water balance for the particle system with uniform concentration") {
    const Grid g = make_grid(80);
    const BedGeometry bed = bump_bed(g);
    SystemConstants k;
    k.g_prime_particle = 1.3;
    k.g_prime_ambient = 0.4;
    State s;
    s.kind = SystemKind::particle;
    s.h.resize(80);
    s.q.assign(80, 0.0);
    s.phi_h.resize(80);
    for (std::size_t j = 0; j < 80; ++j) {
        s.h[j] = snapped_depth(2.0, bed.b_center[j]);
        s.phi_h[j] = 0.7 * s.h[j];
    }
    const RhsResult r = rhs(k, g, bed, nullptr, s, BoundaryMode::reflective_wall);
    for (std::size_t j = 0; j < 80; ++j) {
        CHECK(std::abs(r.dh[j]) <= 1e-13);
        CHECK(std::abs(r.dq[j]) <= 1e-13);
        CHECK(std::abs(r.dphi_h[j]) <= 1e-13);
    }
}

TEST_CASE("uniform state on a flat bed is exactly stationary") {
    const Grid g = make_grid(20);
    const BedGeometry bed = bed_from_function([](double) { return 0.0; }, g);
    State s;
    s.kind = SystemKind::plain;
    s.h.assign(20, 1.7);
    s.q.assign(20, 0.6);
    const RhsResult r = rhs({}, g, bed, nullptr, s, BoundaryMode::outflow);
    for (std::size_t j = 0; j < 20; ++j) {
        CHECK(r.dh[j] == 0.0);
        CHECK(r.dq[j] == 0.0);
    }
}

TEST_CASE("mass is conserved by the flux form") {
    const Grid g = make_grid(60);
    const BedGeometry bed = bed_from_function([](double) { return 0.0; }, g);
    State s;
    s.kind = SystemKind::plain;
    s.h.resize(60);
    s.q.assign(60, 0.0);
    for (std::size_t j = 0; j < 60; ++j) {
        const double x = g.cell_center(j);
        s.h[j] = 1.0 + 0.5 * std::exp(-(x - 5.0) * (x - 5.0));
    }
    const RhsResult r = rhs({}, g, bed, nullptr, s, BoundaryMode::reflective_wall);
    double total = 0.0;
    for (std::size_t j = 0; j < 60; ++j) total += r.dh[j] * g.cell_widths[j];
    // Walls pass no mass, so the telescoped sum collapses to zero.
    CHECK(std::abs(total) <= 1e-13);
}

TEST_CASE("discrete balance matches fluxes plus sources") {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> depth(0.0, 2.0);
    std::uniform_real_distribution<double> flux(-1.0, 1.0);
    const Grid g = make_grid(30);
    const BedGeometry bed = bump_bed(g, 0.3);
    for (int it = 0; it < 50; ++it) {
        State s;
        s.kind = SystemKind::plain;
        s.h.resize(30);
        s.q.resize(30);
        for (std::size_t j = 0; j < 30; ++j) {
            s.h[j] = depth(rng);
            s.q[j] = s.h[j] > 0.0 ? flux(rng) * s.h[j] : 0.0;
        }
        const RhsResult r = rhs({}, g, bed, nullptr, s, BoundaryMode::outflow);

        double mass_rate = 0.0, mom_rate = 0.0, mom_src = 0.0, scale = 1.0;
        for (std::size_t j = 0; j < 30; ++j) {
            mass_rate += r.dh[j] * g.cell_widths[j];
            mom_rate += r.dq[j] * g.cell_widths[j];
            mom_src += r.report.cell_source[j].momentum * g.cell_widths[j];
            scale += std::abs(r.dq[j] * g.cell_widths[j]);
        }
        const double mass_flux =
            r.report.interface_flux.front().mass - r.report.interface_flux.back().mass;
        const double mom_flux = r.report.interface_flux.front().momentum -
                                r.report.interface_flux.back().momentum;
        CHECK(mass_rate == doctest::Approx(mass_flux).epsilon(1e-12));
        CHECK(std::abs(mom_rate - (mom_flux + mom_src)) / scale <= 1e-12);
    }
}

TEST_CASE("width system: still water in a widening channel stays nearly still") {
    const int cells = 200;
    const Grid g = make_grid(cells);
    const BedGeometry bed = bump_bed(g);
    const WidthGeometry w =
        width_from_function([](double x) { return 1.0 + 0.1 * x; }, g);
    State s;
    s.kind = SystemKind::width;
    s.h.resize(cells);
    s.q.assign(cells, 0.0);
    for (std::size_t j = 0; j < s.h.size(); ++j)
        s.h[j] = w.w_center[j] * (2.0 - bed.b_center[j]);
    const RhsResult r = rhs({}, g, bed, &w, s, BoundaryMode::reflective_wall);
    const double dx = g.cell_widths[0];
    for (std::size_t j = 0; j < s.h.size(); ++j) {
        CHECK(std::abs(r.dh[j]) <= 1.0 * dx * dx);
        CHECK(std::abs(r.dq[j]) <= 20.0 * dx * dx);
    }
}

TEST_CASE("solver rejects a negative depth with its cell index") {
    const Grid g = make_grid(10);
    const BedGeometry bed = bed_from_function([](double) { return 0.0; }, g);
    State s;
    s.kind = SystemKind::plain;
    s.h.assign(10, 1.0);
    s.q.assign(10, 0.0);
    s.h[7] = -1e-3;
    try {
        rhs({}, g, bed, nullptr, s, BoundaryMode::outflow);
        FAIL("expected SolverError");
    } catch (const SolverError& e) {
        CHECK(e.cell == 7);
    }
}

TEST_CASE("velocity bound margin is nonnegative on ordinary states") {
    const Grid g = make_grid(40);
    const BedGeometry bed = bump_bed(g, 0.4);
    State s;
    s.kind = SystemKind::plain;
    s.h.resize(40);
    s.q.resize(40);
    for (std::size_t j = 0; j < 40; ++j) {
        const double x = g.cell_center(j);
        s.h[j] = std::max(1.3 - bed.b_center[j] + 0.2 * std::sin(x), 0.0);
        s.q[j] = 0.3 * s.h[j];
    }
    CHECK(velocity_bound_margin({}, g, bed, nullptr, s, BoundaryMode::reflective_wall) >=
          -1e-10);
}
