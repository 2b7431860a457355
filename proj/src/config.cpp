#include "swell/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <sstream>

namespace swell {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_number(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size() || !std::isfinite(v))
            throw ConfigError(key + ": not a number: '" + value + "'");
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (...) {
        throw ConfigError(key + ": not a number: '" + value + "'");
    }
}

int parse_int(const std::string& key, const std::string& value) {
    const double v = parse_number(key, value);
    if (v != std::floor(v)) throw ConfigError(key + ": expected an integer");
    return static_cast<int>(v);
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ConfigError(key + ": expected true/false");
}

ScenarioKind parse_scenario(const std::string& value) {
    if (value == "lake_at_rest") return ScenarioKind::lake_at_rest;
    if (value == "dam_break") return ScenarioKind::dam_break;
    if (value == "draining_slope") return ScenarioKind::draining_slope;
    if (value == "particle_current") return ScenarioKind::particle_current;
    if (value == "comparison_sweep") return ScenarioKind::comparison_sweep;
    if (value == "convergence_study") return ScenarioKind::convergence_study;
    throw ConfigError("unknown scenario '" + value + "'");
}

SystemKind parse_system(const std::string& value) {
    if (value == "plain") return SystemKind::plain;
    if (value == "width") return SystemKind::width;
    if (value == "particle") return SystemKind::particle;
    throw ConfigError("unknown system '" + value + "'");
}

SchemeChoice parse_scheme(const std::string& value) {
    if (value == "paper") return SchemeChoice::paper;
    if (value == "kurganov_levy") return SchemeChoice::kurganov_levy;
    if (value == "chertock") return SchemeChoice::chertock;
    if (value == "bollermann") return SchemeChoice::bollermann;
    throw ConfigError("unknown scheme '" + value + "'");
}

BedProfile parse_bed(const std::string& value) {
    if (value == "flat") return BedProfile::flat;
    if (value == "bump") return BedProfile::bump;
    if (value == "slope") return BedProfile::slope;
    if (value == "basin_slope") return BedProfile::basin_slope;
    if (value == "step") return BedProfile::step;
    if (value == "csv") return BedProfile::csv;
    throw ConfigError("unknown bed profile '" + value + "'");
}

BoundaryMode parse_boundary(const std::string& value) {
    if (value == "wall") return BoundaryMode::reflective_wall;
    if (value == "outflow") return BoundaryMode::outflow;
    throw ConfigError("unknown boundary mode '" + value + "'");
}

struct Pending {
    std::map<std::string, std::string> kv;
    bool has(const std::string& k) const { return kv.count(k) != 0; }
};

void apply_key(ScenarioConfig& c, const std::string& key, const std::string& value) {
    if (key == "scenario") c.scenario = parse_scenario(value);
    else if (key == "system") c.system = parse_system(value);
    else if (key == "scheme") c.scheme = parse_scheme(value);
    else if (key == "J") c.cell_count = parse_int(key, value);
    else if (key == "domain_lo") c.domain_lo = parse_number(key, value);
    else if (key == "domain_hi") c.domain_hi = parse_number(key, value);
    else if (key == "end_time") c.end_time = parse_number(key, value);
    else if (key == "nu") c.nu = parse_number(key, value);
    else if (key == "boundary") c.boundary = parse_boundary(value);
    else if (key == "bed") c.bed = parse_bed(value);
    else if (key == "bed_csv") c.bed_csv = value;
    else if (key == "bed_amplitude") c.bed_amplitude = parse_number(key, value);
    else if (key == "gravity") c.gravity = parse_number(key, value);
    else if (key == "gp") c.gp = parse_number(key, value);
    else if (key == "ga") c.ga = parse_number(key, value);
    else if (key == "vs") c.vs = parse_number(key, value);
    else if (key == "width_left") c.width_left = parse_number(key, value);
    else if (key == "width_right") c.width_right = parse_number(key, value);
    else if (key == "eta0") c.eta0 = parse_number(key, value);
    else if (key == "h_left") c.h_left = parse_number(key, value);
    else if (key == "h_right") c.h_right = parse_number(key, value);
    else if (key == "dam_position") c.dam_position = parse_number(key, value);
    else if (key == "phi0") c.phi0 = parse_number(key, value);
    else if (key == "sweep_step") c.sweep_step = parse_number(key, value);
    else if (key == "sweep_max") c.sweep_max = parse_number(key, value);
    else if (key == "kl_threshold") c.kl_threshold = parse_number(key, value);
    else if (key == "alpha_plus") c.alpha_plus = parse_number(key, value);
    else if (key == "alpha_minus") c.alpha_minus = parse_number(key, value);
    else if (key == "alpha_center") c.alpha_center = parse_number(key, value);
    else if (key == "gain") c.gain = parse_number(key, value);
    else if (key == "suppression_k") c.suppression_k = parse_number(key, value);
    else if (key == "froude") c.froude = parse_number(key, value);
    else if (key == "output_every") c.output_every = parse_int(key, value);
    else if (key == "energy") c.energy_column = parse_bool(key, value);
    else throw ConfigError("unknown key '" + key + "'");
}

void apply_scenario_defaults(ScenarioConfig& c, const Pending& seen) {
    const auto set_if_absent = [&](const char* key, auto&& setter) {
        if (!seen.has(key)) setter();
    };
    switch (c.scenario) {
    case ScenarioKind::lake_at_rest:
        set_if_absent("bed", [&] { c.bed = BedProfile::bump; });
        set_if_absent("end_time", [&] { c.end_time = 3.0; });
        set_if_absent("boundary", [&] { c.boundary = BoundaryMode::reflective_wall; });
        break;
    case ScenarioKind::dam_break:
        set_if_absent("bed", [&] { c.bed = BedProfile::flat; });
        set_if_absent("domain_lo", [&] { c.domain_lo = -1.0; });
        set_if_absent("domain_hi", [&] { c.domain_hi = 1.0; });
        set_if_absent("end_time", [&] { c.end_time = 0.1; });
        set_if_absent("boundary", [&] { c.boundary = BoundaryMode::outflow; });
        break;
    case ScenarioKind::draining_slope:
        set_if_absent("bed", [&] { c.bed = BedProfile::basin_slope; });
        set_if_absent("end_time", [&] { c.end_time = 5.0; });
        set_if_absent("eta0", [&] { c.eta0 = 1.2; });
        set_if_absent("boundary", [&] { c.boundary = BoundaryMode::reflective_wall; });
        break;
    case ScenarioKind::particle_current:
        set_if_absent("bed", [&] { c.bed = BedProfile::flat; });
        set_if_absent("system", [&] { c.system = SystemKind::particle; });
        set_if_absent("end_time", [&] { c.end_time = 2.0; });
        set_if_absent("h_right", [&] { c.h_right = 0.05; });
        set_if_absent("boundary", [&] { c.boundary = BoundaryMode::reflective_wall; });
        break;
    case ScenarioKind::comparison_sweep:
        set_if_absent("end_time", [&] { c.end_time = 0.0; });
        break;
    case ScenarioKind::convergence_study:
        set_if_absent("bed", [&] { c.bed = BedProfile::bump; });
        set_if_absent("system", [&] { c.system = SystemKind::width; });
        set_if_absent("end_time", [&] { c.end_time = 0.0; });
        break;
    }
}

void validate(const ScenarioConfig& c) {
    if (c.cell_count < 4) throw ConfigError("J must be at least 4");
    if (!(c.domain_hi > c.domain_lo)) throw ConfigError("domain_hi must exceed domain_lo");
    if (c.end_time < 0.0) throw ConfigError("end_time must be nonnegative");
    if (!(c.nu > 0.0 && c.nu <= 0.5))
        throw ConfigError("Courant number must be <= 0.5 and positive");
    if (c.gravity <= 0.0) throw ConfigError("gravity must be positive");
    if (c.system == SystemKind::particle) {
        if (c.gp <= 0.0) throw ConfigError("gp must be positive for the particle system");
        if (c.ga < 0.0) throw ConfigError("ga must be nonnegative");
        if (c.vs < 0.0) throw ConfigError("vs must be nonnegative");
    }
    if (c.system == SystemKind::width && !(c.width_left > 0.0 && c.width_right > 0.0))
        throw ConfigError("widths must be positive");
    if (c.bed == BedProfile::csv && c.bed_csv.empty())
        throw ConfigError("bed = csv requires bed_csv = <path>");
    if (c.scheme != SchemeChoice::paper && c.scenario != ScenarioKind::comparison_sweep)
        throw ConfigError("scheme '" + scheme_name(c.scheme) +
                          "' is only valid for comparison_sweep");
    if (c.sweep_step <= 0.0 || c.sweep_step > 1.0 / 64.0 + 1e-12)
        throw ConfigError("sweep_step must be in (0, 1/64]");
    if (c.sweep_max <= 0.0) throw ConfigError("sweep_max must be positive");
    if (c.kl_threshold <= 0.0) throw ConfigError("kl_threshold must be positive");
    if (c.phi0 < 0.0) throw ConfigError("phi0 must be nonnegative");
    if (c.output_every < 0) throw ConfigError("output_every must be nonnegative");
    if (!(c.alpha_plus > 0.0 && c.alpha_plus < 1.0) ||
        !(c.alpha_minus > 0.0 && c.alpha_minus < 1.0) ||
        !(c.alpha_center > 0.0 && c.alpha_center < 1.0))
        throw ConfigError("alpha parameters must lie in (0,1)");
}

} // namespace

ScenarioConfig parse_config(const std::string& text) {
    Pending seen;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        const std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        if (seen.kv.count(key))
            throw ConfigError("duplicate key '" + key + "'");
        seen.kv[key] = value;
    }
    if (!seen.has("scenario")) throw ConfigError("missing scenario");

    ScenarioConfig c;
    c.scenario = parse_scenario(seen.kv.at("scenario"));
    apply_scenario_defaults(c, seen);
    for (const auto& [k, v] : seen.kv) apply_key(c, k, v);
    validate(c);
    return c;
}

void apply_override(ScenarioConfig& config, const std::string& key_equals_value) {
    const std::size_t eq = key_equals_value.find('=');
    if (eq == std::string::npos)
        throw ConfigError("override must look like key=value: '" + key_equals_value + "'");
    const std::string key = trim(key_equals_value.substr(0, eq));
    const std::string value = trim(key_equals_value.substr(eq + 1));
    if (key.empty() || value.empty())
        throw ConfigError("override must look like key=value: '" + key_equals_value + "'");
    apply_key(config, key, value);
    validate(config);
}

std::string scenario_name(ScenarioKind kind) {
    switch (kind) {
    case ScenarioKind::lake_at_rest: return "lake_at_rest";
    case ScenarioKind::dam_break: return "dam_break";
    case ScenarioKind::draining_slope: return "draining_slope";
    case ScenarioKind::particle_current: return "particle_current";
    case ScenarioKind::comparison_sweep: return "comparison_sweep";
    case ScenarioKind::convergence_study: return "convergence_study";
    }
    return "?";
}

std::string scheme_name(SchemeChoice scheme) {
    switch (scheme) {
    case SchemeChoice::paper: return "paper";
    case SchemeChoice::kurganov_levy: return "kurganov_levy";
    case SchemeChoice::chertock: return "chertock";
    case SchemeChoice::bollermann: return "bollermann";
    }
    return "?";
}

} // namespace swell
