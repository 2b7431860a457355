#include "swell/scenario.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "swell/altrecon.hpp"
#include "swell/stepper.hpp"
#include "swell/svg.hpp"

namespace swell {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::string& header) : out_(path, std::ios::binary) {
        if (!out_) throw std::runtime_error("cannot write '" + path + "'");
        out_ << header << "\n";
    }
    void row(const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out_ << ",";
            out_ << fields[i];
        }
        out_ << "\n";
    }
    void close() {
        out_.flush();
        if (!out_.good()) throw std::runtime_error("CSV write failed");
    }

private:
    std::ofstream out_;
};

GridParams recon_params(const ScenarioConfig& c) {
    GridParams p;
    p.alpha_plus = c.alpha_plus;
    p.alpha_minus = c.alpha_minus;
    p.alpha_center = c.alpha_center;
    p.gain = c.gain;
    p.suppression_k = c.suppression_k;
    p.froude_ref = c.froude;
    p.gravity = c.gravity;
    return p;
}

std::vector<double> uniform_interfaces(double lo, double hi, int cells) {
    std::vector<double> x(static_cast<std::size_t>(cells) + 1);
    for (int i = 0; i <= cells; ++i)
        x[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / cells;
    return x;
}

std::function<double(double)> bed_function(const ScenarioConfig& c) {
    const double a = c.bed_amplitude;
    const double lo = c.domain_lo, hi = c.domain_hi;
    const double mid = 0.5 * (lo + hi);
    const double span = hi - lo;
    switch (c.bed) {
    case BedProfile::flat:
        return [](double) { return 0.0; };
    case BedProfile::bump: {
        // Compactly supported, so the bed is exactly flat at the walls.
        const double w = 0.4 * span;
        return [a, mid, w](double x) {
            const double t = x - mid;
            if (std::abs(t) >= 0.5 * w) return 0.0;
            const double cth = std::cos(M_PI * t / w);
            return a * cth * cth;
        };
    }
    case BedProfile::slope:
        return [a, lo, span](double x) { return a * (x - lo) / span * 6.0; };
    case BedProfile::basin_slope: {
        const double knee = lo + 0.4 * span;
        const double rise = 6.0 * a / (hi - knee);
        return [knee, rise](double x) { return x <= knee ? 0.0 : rise * (x - knee); };
    }
    case BedProfile::step:
        return [a, mid](double x) { return x < mid ? 0.0 : a; };
    case BedProfile::csv:
        throw ConfigError("bed csv must be loaded through build_domain");
    }
    return [](double) { return 0.0; };
}

struct Domain {
    Grid grid;
    BedGeometry bed;
    std::optional<WidthGeometry> widths;
};

Domain domain_from_bed_csv(const ScenarioConfig& c) {
    std::ifstream in(c.bed_csv);
    if (!in) throw ConfigError("cannot open bed_csv '" + c.bed_csv + "'");
    std::vector<double> x, b_lo, b_hi;
    std::string line;
    bool header_skipped = false;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string f1, f2, f3;
        if (!std::getline(row, f1, ',') || !std::getline(row, f2, ',') ||
            !std::getline(row, f3))
            throw ConfigError("bed_csv line " + std::to_string(line_no) +
                              ": expected x,b_left_side,b_right_side");
        if (!header_skipped) {
            header_skipped = true;
            try {
                std::stod(f1);
            } catch (...) {
                continue; // header row
            }
        }
        try {
            x.push_back(std::stod(f1));
            b_lo.push_back(std::stod(f2));
            b_hi.push_back(std::stod(f3));
        } catch (...) {
            throw ConfigError("bed_csv line " + std::to_string(line_no) + ": bad number");
        }
    }
    if (x.size() < 2) throw ConfigError("bed_csv needs at least 2 interface rows");

    Domain d;
    d.grid = build_grid(x, recon_params(c));
    const std::size_t n = d.grid.cells();
    std::vector<double> left(n), right(n);
    for (std::size_t j = 0; j < n; ++j) {
        left[j] = b_hi[j];      // value on the cell side of interface j
        right[j] = b_lo[j + 1]; // value on the cell side of interface j+1
    }
    d.bed = bed_stats(left, right, d.grid);
    return d;
}

Domain build_domain(const ScenarioConfig& c, int cells) {
    if (c.bed == BedProfile::csv) {
        Domain d = domain_from_bed_csv(c);
        if (c.system == SystemKind::width) {
            const double lo = d.grid.interfaces.front(), hi = d.grid.interfaces.back();
            d.widths = width_from_function(
                [&](double x) {
                    return c.width_left + (c.width_right - c.width_left) * (x - lo) / (hi - lo);
                },
                d.grid);
        }
        return d;
    }
    Domain d;
    d.grid = build_grid(uniform_interfaces(c.domain_lo, c.domain_hi, cells), recon_params(c));
    d.bed = bed_from_function(bed_function(c), d.grid);
    if (c.system == SystemKind::width) {
        d.widths = width_from_function(
            [&](double x) {
                return c.width_left +
                       (c.width_right - c.width_left) * (x - c.domain_lo) /
                           (c.domain_hi - c.domain_lo);
            },
            d.grid);
    }
    return d;
}

// Depth whose discrete surface sits exactly at the target level, so the
// still-water initial state is the discrete steady state.
double snapped_depth(double eta, double b) {
    double h = eta - b;
    if (!(h > 0.0)) return 0.0;
    for (int k = 0; k < 4 && h + b > eta; ++k)
        h = std::nextafter(h, -std::numeric_limits<double>::infinity());
    for (int k = 0; k < 4 && h + b < eta; ++k)
        h = std::nextafter(h, std::numeric_limits<double>::infinity());
    return h > 0.0 ? h : 0.0;
}

State initial_state(const ScenarioConfig& c, const Domain& d) {
    const std::size_t n = d.grid.cells();
    State s;
    s.kind = c.system;
    s.h.assign(n, 0.0);
    s.q.assign(n, 0.0);
    if (c.system == SystemKind::particle) s.phi_h.assign(n, 0.0);

    switch (c.scenario) {
    case ScenarioKind::lake_at_rest:
    case ScenarioKind::convergence_study:
        for (std::size_t j = 0; j < n; ++j) {
            const double h = snapped_depth(c.eta0, d.bed.b_center[j]);
            s.h[j] = c.system == SystemKind::width ? h * d.widths->w_center[j] : h;
        }
        break;
    case ScenarioKind::draining_slope:
        for (std::size_t j = 0; j < n; ++j)
            s.h[j] = snapped_depth(c.eta0, d.bed.b_center[j]);
        break;
    case ScenarioKind::dam_break:
        for (std::size_t j = 0; j < n; ++j)
            s.h[j] = d.grid.cell_center(j) < c.dam_position ? c.h_left : c.h_right;
        break;
    case ScenarioKind::particle_current: {
        const double lock = c.domain_lo + 0.2 * (c.domain_hi - c.domain_lo);
        for (std::size_t j = 0; j < n; ++j) {
            const bool inside = d.grid.cell_center(j) < lock;
            s.h[j] = inside ? c.h_left : c.h_right;
            s.phi_h[j] = inside ? c.phi0 * s.h[j] : 0.0;
        }
        break;
    }
    case ScenarioKind::comparison_sweep:
        break;
    }
    return s;
}

SystemConstants constants_of(const ScenarioConfig& c) {
    SystemConstants k;
    if (c.system == SystemKind::particle) {
        k.g_prime_particle = c.gp;
        k.g_prime_ambient = c.ga;
        k.settling_velocity = c.vs;
    }
    return k;
}

// ---------------------------------------------------------------------------
// Shore-transition benchmark shared by the sweep CSV and the figure.

struct SweepSetup {
    Grid grid;
    BedGeometry bed;
    std::vector<double> h;
    std::vector<double> cutoff;
};

SweepSetup sweep_setup(const ScenarioConfig& c, double h0) {
    SweepSetup s;
    std::vector<double> interfaces(8);
    for (int i = 0; i < 8; ++i) interfaces[static_cast<std::size_t>(i)] = i - 3.5;
    GridParams p = recon_params(c);
    p.gravity = c.gravity;
    s.grid = build_grid(interfaces, p);
    s.bed = bed_from_function([](double x) { return x; }, s.grid);
    // Constant surface pool on the left, constant depth on the right, a deep
    // cell at the junction, and the swept shore cell between them.
    s.h = {4.0, 3.0, 3.0, h0, 1.0, 1.0, 1.0};
    s.cutoff.assign(7, 0.0);
    return s;
}

std::vector<double> sweep_points(const ScenarioConfig& c) {
    std::vector<double> pts;
    for (double v = 0.0; v < c.sweep_max - 1e-12; v += c.sweep_step) pts.push_back(v);
    pts.push_back(c.sweep_max);
    return pts;
}

} // namespace

SweepTable comparison_sweep(const ScenarioConfig& config) {
    SweepTable table;
    table.h0_values = sweep_points(config);
    const int cell_lo = -3;

    for (double h0 : table.h0_values) {
        const SweepSetup s = sweep_setup(config, h0);
        const DepthRecon paper = reconstruct_depth(s.grid, s.bed, s.h, s.cutoff);
        const AltEdges kl = kurganov_levy(s.grid, s.bed, s.h, config.kl_threshold);
        const AltEdges ch = chertock(s.grid, s.bed, s.h);
        const BollermannRecon bo = bollermann(s.grid, s.bed, s.h);

        for (std::size_t j = 0; j < s.grid.cells(); ++j) {
            const int cell = cell_lo + static_cast<int>(j);
            table.rows.push_back({h0, SchemeChoice::paper, cell, paper.h_left[j],
                                  paper.h_right[j], paper.gamma[j], paper.xi[j]});
            table.rows.push_back({h0, SchemeChoice::kurganov_levy, cell, kl.h_left[j],
                                  kl.h_right[j], 0.0, 0.0});
            table.rows.push_back(
                {h0, SchemeChoice::chertock, cell, ch.h_left[j], ch.h_right[j], 0.0, 0.0});
            table.rows.push_back({h0, SchemeChoice::bollermann, cell, bo.edges.h_left[j],
                                  bo.edges.h_right[j], 0.0, 0.0});
        }
    }
    return table;
}

std::vector<ConvergenceRow> convergence_study(const ScenarioConfig& config) {
    std::vector<ConvergenceRow> rows;
    double previous = 0.0;
    for (int cells : {50, 100, 200, 400}) {
        ScenarioConfig c = config;
        c.system = SystemKind::width;
        const Domain d = build_domain(c, cells);
        const std::size_t n = d.grid.cells();

        std::vector<double> area(n), cutoff(n, 0.0);
        for (std::size_t j = 0; j < n; ++j)
            area[j] = d.widths->w_center[j] * (c.eta0 - d.bed.b_center[j]);

        const WidthRecon r =
            reconstruct_area_width(d.grid, *d.widths, d.bed, area, cutoff);
        double sup = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            sup = std::max(sup,
                           std::abs(r.depth.h_left[j] + d.bed.b_left[j] - c.eta0));
            sup = std::max(sup,
                           std::abs(r.depth.h_right[j] + d.bed.b_right[j] - c.eta0));
        }
        ConvergenceRow row;
        row.cell_count = cells;
        row.sup_surface_error = sup;
        row.ratio = previous > 0.0 && sup > 0.0 ? previous / sup : 0.0;
        previous = sup;
        rows.push_back(row);
    }
    return rows;
}

namespace {

void write_sweep_csv(const SweepTable& table, const std::string& path) {
    CsvWriter csv(path, "h0,scheme,cell,h_left,h_right,gamma,xi");
    for (const auto& r : table.rows) {
        const bool paper = r.scheme == SchemeChoice::paper;
        csv.row({num(r.h0), scheme_name(r.scheme), std::to_string(r.cell), num(r.h_left),
                 num(r.h_right), paper ? num(r.gamma) : "", paper ? num(r.xi) : ""});
    }
    csv.close();
}

void write_sweep_svg(const ScenarioConfig& config, const std::string& path) {
    // Reconstructed depth profiles for a handful of shore depths, one panel
    // per scheme.
    std::vector<Panel> panels(4);
    panels[0].title = "blended (this library)";
    panels[1].title = "kurganov_levy";
    panels[2].title = "chertock";
    panels[3].title = "bollermann";

    std::vector<double> picks;
    for (int k = 0; k <= 8; ++k) picks.push_back(0.25 * k);
    for (std::size_t pick = 0; pick < picks.size(); ++pick) {
        const double h0 = picks[pick];
        const SweepSetup s = sweep_setup(config, h0);
        const DepthRecon paper = reconstruct_depth(s.grid, s.bed, s.h, s.cutoff);
        const AltEdges kl = kurganov_levy(s.grid, s.bed, s.h, config.kl_threshold);
        const AltEdges ch = chertock(s.grid, s.bed, s.h);
        const BollermannRecon bo = bollermann(s.grid, s.bed, s.h);
        static const std::array<const char*, 9> palette{
            "#4053d3", "#ddb310", "#b51d14", "#00beff", "#fb49b0",
            "#00b25d", "#cacaca", "#5d5d5d", "#7a3a00"};
        const char* color = palette[pick % palette.size()];

        for (std::size_t j = 0; j < s.grid.cells(); ++j) {
            const double xl = s.grid.interfaces[j], xr = s.grid.interfaces[j + 1];
            const auto seg = [&](double l, double r) {
                Series ser;
                ser.color = color;
                ser.label = "h0=" + num(h0);
                ser.points = {{xl, l}, {xr, r}};
                return ser;
            };
            panels[0].series.push_back(seg(paper.h_left[j], paper.h_right[j]));
            panels[1].series.push_back(seg(kl.h_left[j], kl.h_right[j]));
            panels[2].series.push_back(seg(ch.h_left[j], ch.h_right[j]));
            const WedgeCell& w = bo.cells[j];
            if (w.wedge) {
                Series ser;
                ser.color = color;
                if (w.wet_on_left)
                    ser.points = {{xl, w.wet_depth}, {w.front, 0.0}, {xr, 0.0}};
                else
                    ser.points = {{xl, 0.0}, {w.front, 0.0}, {xr, w.wet_depth}};
                panels[3].series.push_back(ser);
            } else {
                panels[3].series.push_back(seg(bo.edges.h_left[j], bo.edges.h_right[j]));
            }
        }
    }
    emit_svg(panels, path);
}

struct SeriesColumns {
    bool phi = false;
    bool energy = false;
};

std::string series_header(const SeriesColumns& cols, bool with_time) {
    std::string h = with_time ? "time,x_center,h,q,u,eta" : "x_center,h,q,u,eta";
    if (cols.phi) h += ",phi";
    if (cols.energy) h += ",energy";
    return h;
}

void state_rows(CsvWriter& csv, const ScenarioConfig& c, const Domain& d, const State& s,
                const SeriesColumns& cols, const double* time) {
    const std::size_t n = d.grid.cells();
    for (std::size_t j = 0; j < n; ++j) {
        const double w = c.system == SystemKind::width ? d.widths->w_center[j] : 1.0;
        const double depth = s.h[j] / w;
        const double u = s.h[j] > 0.0 ? s.q[j] / s.h[j] : 0.0;
        const double eta = depth + d.bed.b_center[j];
        std::vector<std::string> row;
        if (time != nullptr) row.push_back(num(*time));
        row.push_back(num(d.grid.cell_center(j)));
        row.push_back(num(depth));
        row.push_back(num(s.q[j]));
        row.push_back(num(u));
        row.push_back(num(eta));
        if (cols.phi) {
            const double phi = s.h[j] > 0.0 ? s.phi_h[j] / s.h[j] : 0.0;
            row.push_back(num(phi));
        }
        if (cols.energy) {
            double g_eff = c.gravity;
            if (c.system == SystemKind::particle) {
                const double phi = s.h[j] > 0.0 ? s.phi_h[j] / s.h[j] : 0.0;
                g_eff = c.gp * phi + c.ga;
            }
            row.push_back(num(0.5 * u * u + g_eff * eta));
        }
        csv.row(row);
    }
}

nlohmann::json config_json(const ScenarioConfig& c) {
    nlohmann::json j;
    j["scenario"] = scenario_name(c.scenario);
    j["system"] = c.system == SystemKind::plain    ? "plain"
                  : c.system == SystemKind::width ? "width"
                                                  : "particle";
    j["scheme"] = scheme_name(c.scheme);
    j["J"] = c.cell_count;
    j["domain_lo"] = c.domain_lo;
    j["domain_hi"] = c.domain_hi;
    j["end_time"] = c.end_time;
    j["nu"] = c.nu;
    j["boundary"] = c.boundary == BoundaryMode::reflective_wall ? "wall" : "outflow";
    switch (c.bed) {
    case BedProfile::flat: j["bed"] = "flat"; break;
    case BedProfile::bump: j["bed"] = "bump"; break;
    case BedProfile::slope: j["bed"] = "slope"; break;
    case BedProfile::basin_slope: j["bed"] = "basin_slope"; break;
    case BedProfile::step: j["bed"] = "step"; break;
    case BedProfile::csv: j["bed"] = "csv"; break;
    }
    j["bed_csv"] = c.bed_csv;
    j["bed_amplitude"] = c.bed_amplitude;
    j["gravity"] = c.gravity;
    j["gp"] = c.gp;
    j["ga"] = c.ga;
    j["vs"] = c.vs;
    j["width_left"] = c.width_left;
    j["width_right"] = c.width_right;
    j["eta0"] = c.eta0;
    j["h_left"] = c.h_left;
    j["h_right"] = c.h_right;
    j["dam_position"] = c.dam_position;
    j["phi0"] = c.phi0;
    j["sweep_step"] = c.sweep_step;
    j["sweep_max"] = c.sweep_max;
    j["kl_threshold"] = c.kl_threshold;
    j["alpha_plus"] = c.alpha_plus;
    j["alpha_minus"] = c.alpha_minus;
    j["alpha_center"] = c.alpha_center;
    j["gain"] = c.gain;
    j["suppression_k"] = c.suppression_k;
    j["froude"] = c.froude;
    j["output_every"] = c.output_every;
    j["energy"] = c.energy_column;
    return j;
}

} // namespace

RunArtifacts run(const ScenarioConfig& config, const std::string& out_dir, bool write_svg_file) {
    namespace fs = std::filesystem;
    RunArtifacts art;
    const bool writing = !out_dir.empty();
    if (writing) fs::create_directories(out_dir);
    const auto out_path = [&](const char* name) { return (fs::path(out_dir) / name).string(); };

    if (config.scenario == ScenarioKind::comparison_sweep) {
        const SweepTable table = comparison_sweep(config);
        if (writing) {
            write_sweep_csv(table, out_path("sweep.csv"));
            art.files_written.push_back(out_path("sweep.csv"));
            if (write_svg_file) {
                write_sweep_svg(config, out_path("sweep.svg"));
                art.files_written.push_back(out_path("sweep.svg"));
            }
            nlohmann::json meta;
            meta["library"] = "swell 0.1.0";
            meta["config"] = config_json(config);
            meta["rows"] = table.rows.size();
            std::ofstream m(out_path("metadata.json"), std::ios::binary);
            m << meta.dump(2) << "\n";
            art.files_written.push_back(out_path("metadata.json"));
        }
        return art;
    }

    if (config.scenario == ScenarioKind::convergence_study) {
        const auto rows = convergence_study(config);
        if (writing) {
            CsvWriter csv(out_path("convergence.csv"), "J,sup_surface_error,ratio");
            for (const auto& r : rows)
                csv.row({std::to_string(r.cell_count), num(r.sup_surface_error),
                         num(r.ratio)});
            csv.close();
            art.files_written.push_back(out_path("convergence.csv"));
            nlohmann::json meta;
            meta["library"] = "swell 0.1.0";
            meta["config"] = config_json(config);
            std::ofstream m(out_path("metadata.json"), std::ios::binary);
            m << meta.dump(2) << "\n";
            art.files_written.push_back(out_path("metadata.json"));
        }
        return art;
    }

    // Time-evolving scenarios.
    const Domain d = build_domain(config, config.cell_count);
    const SystemConstants k = constants_of(config);
    State state = initial_state(config, d);
    const WidthGeometry* widths = d.widths ? &*d.widths : nullptr;

    double h_ref = 0.0;
    for (std::size_t j = 0; j < state.cells(); ++j) {
        const double w = config.system == SystemKind::width ? d.widths->w_center[j] : 1.0;
        h_ref = std::max(h_ref, state.h[j] / w);
    }
    const double floor = 1e-12 * std::sqrt(config.gravity * std::max(h_ref, 1e-30));

    SeriesColumns cols;
    cols.phi = config.system == SystemKind::particle;
    cols.energy = config.energy_column;
    std::optional<CsvWriter> series;
    if (writing) series.emplace(out_path("timeseries.csv"), series_header(cols, true));

    const int every = config.output_every > 0 ? config.output_every : 50;
    double t = 0.0;
    long steps = 0;
    long clamps = 0;
    double min_mass = std::numeric_limits<double>::infinity();
    double min_particle = std::numeric_limits<double>::infinity();
    double vel_margin = 1.0;

    if (series) state_rows(*series, config, d, state, cols, &t);
    const long max_steps = 10'000'000;
    try {
        while (t < config.end_time && steps < max_steps) {
            const RhsResult probe = rhs(k, d.grid, d.bed, widths, state, config.boundary);
            double dt = cfl_dt(d.grid, probe.report.speed_minus, probe.report.speed_plus,
                               config.nu, floor);
            dt = std::min(dt, config.end_time - t);
            StepReport rep;
            state = ssp_rk2(k, d.grid, d.bed, widths, state, dt, config.boundary, &rep);
            t += dt;
            ++steps;
            clamps += rep.clamp_count;
            min_mass = std::min(min_mass, rep.min_mass_before_clamp);
            if (config.system == SystemKind::particle)
                min_particle = std::min(min_particle, rep.min_particle_before_clamp);
            vel_margin = std::min(
                vel_margin,
                velocity_bound_margin(k, d.grid, d.bed, widths, state, config.boundary));
            if (series && (steps % every == 0 || t >= config.end_time))
                state_rows(*series, config, d, state, cols, &t);
        }
    } catch (const SolverError& e) {
        throw SolverError(std::string(e.what()) + " at t = " + num(t), e.cell);
    }
    if (series) {
        series->close();
        art.files_written.push_back(out_path("timeseries.csv"));
    }

    art.final_state = state;
    art.grid = d.grid;
    art.bed = d.bed;
    art.widths = d.widths;
    art.end_time = t;
    art.steps = steps;
    art.clamp_count = clamps;
    art.min_mass_seen = std::isfinite(min_mass) ? min_mass : 0.0;
    art.min_particle_seen = std::isfinite(min_particle) ? min_particle : 0.0;
    art.velocity_margin = vel_margin;

    double max_dev = 0.0, max_q = 0.0;
    for (std::size_t j = 0; j < state.cells(); ++j) {
        const double w = config.system == SystemKind::width ? d.widths->w_center[j] : 1.0;
        const double eta = state.h[j] / w + d.bed.b_center[j];
        max_dev = std::max(max_dev, std::abs(eta - config.eta0));
        max_q = std::max(max_q, std::abs(state.q[j]));
    }
    art.max_surface_deviation = max_dev;
    art.max_abs_q = max_q;

    if (writing) {
        CsvWriter fin(out_path("final.csv"), series_header(cols, false));
        state_rows(fin, config, d, state, cols, nullptr);
        fin.close();
        art.files_written.push_back(out_path("final.csv"));

        if (write_svg_file) {
            Panel panel;
            panel.title = scenario_name(config.scenario) + " at t = " + num(t);
            Series surface, bedline;
            surface.label = "surface";
            surface.color = "#4053d3";
            bedline.label = "bed";
            bedline.color = "#5d5d5d";
            for (std::size_t j = 0; j < state.cells(); ++j) {
                const double w =
                    config.system == SystemKind::width ? d.widths->w_center[j] : 1.0;
                const double x = d.grid.cell_center(j);
                surface.points.push_back({x, state.h[j] / w + d.bed.b_center[j]});
                bedline.points.push_back({x, d.bed.b_center[j]});
            }
            panel.series = {surface, bedline};
            emit_svg({panel}, out_path("final.svg"));
            art.files_written.push_back(out_path("final.svg"));
        }

        nlohmann::json meta;
        meta["library"] = "swell 0.1.0";
        meta["config"] = config_json(config);
        meta["results"] = {{"steps", steps},
                           {"clamp_count", clamps},
                           {"min_mass_before_clamp", art.min_mass_seen},
                           {"min_particle_before_clamp", art.min_particle_seen},
                           {"velocity_bound_margin", art.velocity_margin},
                           {"max_surface_deviation", art.max_surface_deviation},
                           {"max_abs_q", art.max_abs_q},
                           {"end_time", t}};
        std::ofstream m(out_path("metadata.json"), std::ios::binary);
        m << meta.dump(2) << "\n";
        if (!m.good()) throw std::runtime_error("metadata write failed");
        art.files_written.push_back(out_path("metadata.json"));
    }
    return art;
}

} // namespace swell
