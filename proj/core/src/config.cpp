#include "nsrad/config.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>

#include "nsrad/regime.hpp"

namespace nsrad {

namespace {

std::string fmt(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_list(const std::vector<double>& values) {
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) s += ", ";
        s += fmt(values[i]);
    }
    return s;
}

struct Line {
    int number;
    std::string section;
    std::string key;
    std::string value;
    int value_col;
};

[[noreturn]] void fail(int line, int col, const std::string& msg) {
    throw ConfigError("config:" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
}

double parse_double(const Line& l) {
    if (l.value == "inf") return std::numeric_limits<double>::infinity();
    try {
        std::size_t pos = 0;
        const double v = std::stod(l.value, &pos);
        if (pos != l.value.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        fail(l.number, l.value_col, "expected a number for '" + l.key + "', got '" + l.value + "'");
    }
}

int parse_int(const Line& l) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(l.value, &pos);
        if (pos != l.value.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        fail(l.number, l.value_col, "expected an integer for '" + l.key + "'");
    }
}

bool parse_bool(const Line& l) {
    if (l.value == "true") return true;
    if (l.value == "false") return false;
    fail(l.number, l.value_col, "expected true/false for '" + l.key + "'");
}

std::vector<double> parse_double_list(const Line& l) {
    std::vector<double> out;
    std::stringstream ss(l.value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b == std::string::npos) fail(l.number, l.value_col, "empty list entry for '" + l.key + "'");
        item = item.substr(b, e - b + 1);
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            fail(l.number, l.value_col, "bad list entry '" + item + "' for '" + l.key + "'");
        }
    }
    if (out.empty()) fail(l.number, l.value_col, "empty list for '" + l.key + "'");
    return out;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    cfg.model.delta = std::numeric_limits<double>::quiet_NaN();  // auto unless set

    bool sweep_seen = false;
    SweepConfig sweep;

    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') fail(line_no, 1, "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "model" && section != "initial" && section != "diagnostics" &&
                section != "sweep" && section != "output")
                fail(line_no, 1, "unknown section '" + section + "'");
            if (section == "sweep") sweep_seen = true;
            continue;
        }
        const auto eq = raw.find('=');
        if (eq == std::string::npos) fail(line_no, 1, "expected 'key = value'");
        Line l;
        l.number = line_no;
        l.section = section;
        l.key = trim(raw.substr(0, eq));
        std::string value_part = raw.substr(eq + 1);
        const auto vc = value_part.find_first_of("#;");
        if (vc != std::string::npos) value_part = value_part.substr(0, vc);
        l.value = trim(value_part);
        l.value_col = static_cast<int>(eq) + 2;
        if (l.key.empty()) fail(line_no, 1, "missing key before '='");
        if (l.value.empty()) fail(line_no, l.value_col, "missing value for '" + l.key + "'");
        if (section.empty()) fail(line_no, 1, "key '" + l.key + "' outside any section");

        if (section == "model") {
            if (l.key == "N") cfg.model.dim = parse_int(l);
            else if (l.key == "alpha") cfg.model.alpha = parse_double(l);
            else if (l.key == "gamma") cfg.model.gamma = parse_double(l);
            else if (l.key == "eta") cfg.model.eta = parse_double(l);
            else if (l.key == "delta") {
                if (l.value == "auto") cfg.model.delta = std::numeric_limits<double>::quiet_NaN();
                else cfg.model.delta = parse_double(l);
            }
            else if (l.key == "eta_phase_end") cfg.model.eta_phase_end = parse_double(l);
            else if (l.key == "inner_radius") cfg.model.inner_radius = parse_double(l);
            else if (l.key == "R") cfg.model.outer_radius = parse_double(l);
            else if (l.key == "grid") cfg.model.grid_cells = parse_int(l);
            else if (l.key == "scheme") {
                if (l.value == "explicit") cfg.model.scheme = TimeScheme::explicit_rk2;
                else if (l.value == "semi-implicit") cfg.model.scheme = TimeScheme::semi_implicit;
                else fail(l.number, l.value_col, "scheme must be explicit or semi-implicit");
            }
            else if (l.key == "dt_safety") cfg.model.dt_safety = parse_double(l);
            else if (l.key == "t_end") cfg.model.t_end = parse_double(l);
            else if (l.key == "density_ceiling") cfg.model.density_ceiling = parse_double(l);
            else fail(l.number, 1, "unknown key '" + l.key + "' in [model]");
        } else if (section == "initial") {
            if (l.key == "preset") {
                try {
                    cfg.initial = preset(l.value);
                } catch (const std::invalid_argument& e) {
                    fail(l.number, l.value_col, e.what());
                }
            }
            else if (l.key == "amplitude") cfg.initial.amplitude = parse_double(l);
            else if (l.key == "bump_center") cfg.initial.bump_center = parse_double(l);
            else if (l.key == "bump_width") cfg.initial.bump_width = parse_double(l);
            else if (l.key == "vacuum_floor") cfg.initial.vacuum_floor = parse_double(l);
            else if (l.key == "band_lo") cfg.initial.band_lo = parse_double(l);
            else if (l.key == "band_hi") cfg.initial.band_hi = parse_double(l);
            else if (l.key == "velocity_amplitude") cfg.initial.velocity_amplitude = parse_double(l);
            else if (l.key == "mollify_radius") cfg.initial.mollify_radius = parse_double(l);
            else if (l.key == "cutoff_inner") cfg.initial.cutoff_inner = parse_double(l);
            else if (l.key == "p") cfg.initial.p = parse_double(l);
            else if (l.key == "q") {
                try {
                    cfg.initial.q = Rational::parse(l.value);
                } catch (const std::invalid_argument& e) {
                    fail(l.number, l.value_col, e.what());
                }
            }
            else fail(l.number, 1, "unknown key '" + l.key + "' in [initial]");
        } else if (section == "diagnostics") {
            if (l.key == "sample_interval") cfg.diagnostics.sample_interval = parse_double(l);
            else if (l.key == "particle_h") cfg.diagnostics.particle_h = parse_double_list(l);
            else if (l.key == "vacuum_threshold") cfg.diagnostics.vacuum_threshold = parse_double(l);
            else if (l.key == "xi") cfg.diagnostics.xi = parse_double_list(l);
            else if (l.key == "lp") cfg.diagnostics.lp = parse_double_list(l);
            else if (l.key == "snapshot_times") cfg.diagnostics.snapshot_times = parse_double_list(l);
            else fail(l.number, 1, "unknown key '" + l.key + "' in [diagnostics]");
        } else if (section == "sweep") {
            if (l.key == "kind") {
                if (l.value == "eta") sweep.kind = SweepPlan::Kind::eta;
                else if (l.value == "iota") sweep.kind = SweepPlan::Kind::iota;
                else fail(l.number, l.value_col, "sweep kind must be eta or iota");
            }
            else if (l.key == "values") sweep.values = parse_double_list(l);
            else if (l.key == "compare_times") sweep.compare_times = parse_double_list(l);
            else fail(l.number, 1, "unknown key '" + l.key + "' in [sweep]");
        } else if (section == "output") {
            if (l.key == "directory") cfg.out_dir = l.value;
            else if (l.key == "deterministic") cfg.deterministic = parse_bool(l);
            else fail(l.number, 1, "unknown key '" + l.key + "' in [output]");
        }
    }
    if (sweep_seen) cfg.sweep = sweep;
    return cfg;
}

std::string serialize_config(const RunConfig& cfg) {
    std::string s;
    s += "[model]\n";
    s += "N = " + std::to_string(cfg.model.dim) + "\n";
    s += "alpha = " + fmt(cfg.model.alpha) + "\n";
    s += "gamma = " + fmt(cfg.model.gamma) + "\n";
    s += "eta = " + fmt(cfg.model.eta) + "\n";
    s += "delta = " + (std::isnan(cfg.model.delta) ? std::string("auto") : fmt(cfg.model.delta)) + "\n";
    s += "eta_phase_end = " + fmt(cfg.model.eta_phase_end) + "\n";
    s += "inner_radius = " + fmt(cfg.model.inner_radius) + "\n";
    s += "R = " + fmt(cfg.model.outer_radius) + "\n";
    s += "grid = " + std::to_string(cfg.model.grid_cells) + "\n";
    s += std::string("scheme = ") +
         (cfg.model.scheme == TimeScheme::explicit_rk2 ? "explicit" : "semi-implicit") + "\n";
    s += "dt_safety = " + fmt(cfg.model.dt_safety) + "\n";
    s += "t_end = " + fmt(cfg.model.t_end) + "\n";
    s += "density_ceiling = " + fmt(cfg.model.density_ceiling) + "\n";
    s += "\n[initial]\n";
    s += "preset = " + cfg.initial.kind + "\n";
    s += "amplitude = " + fmt(cfg.initial.amplitude) + "\n";
    s += "bump_center = " + fmt(cfg.initial.bump_center) + "\n";
    s += "bump_width = " + fmt(cfg.initial.bump_width) + "\n";
    s += "vacuum_floor = " + fmt(cfg.initial.vacuum_floor) + "\n";
    s += "band_lo = " + fmt(cfg.initial.band_lo) + "\n";
    s += "band_hi = " + fmt(cfg.initial.band_hi) + "\n";
    s += "velocity_amplitude = " + fmt(cfg.initial.velocity_amplitude) + "\n";
    s += "mollify_radius = " + fmt(cfg.initial.mollify_radius) + "\n";
    s += "cutoff_inner = " + fmt(cfg.initial.cutoff_inner) + "\n";
    s += "p = " + fmt(cfg.initial.p) + "\n";
    s += "q = " + cfg.initial.q.str() + "\n";
    s += "\n[diagnostics]\n";
    s += "sample_interval = " + fmt(cfg.diagnostics.sample_interval) + "\n";
    if (!cfg.diagnostics.particle_h.empty())
        s += "particle_h = " + fmt_list(cfg.diagnostics.particle_h) + "\n";
    s += "vacuum_threshold = " + fmt(cfg.diagnostics.vacuum_threshold) + "\n";
    s += "xi = " + fmt_list(cfg.diagnostics.xi) + "\n";
    s += "lp = " + fmt_list(cfg.diagnostics.lp) + "\n";
    if (!cfg.diagnostics.snapshot_times.empty())
        s += "snapshot_times = " + fmt_list(cfg.diagnostics.snapshot_times) + "\n";
    if (cfg.sweep) {
        s += "\n[sweep]\n";
        s += std::string("kind = ") + (cfg.sweep->kind == SweepPlan::Kind::eta ? "eta" : "iota") + "\n";
        s += "values = " + fmt_list(cfg.sweep->values) + "\n";
        s += "compare_times = " + fmt_list(cfg.sweep->compare_times) + "\n";
    }
    s += "\n[output]\n";
    s += "directory = " + cfg.out_dir + "\n";
    s += std::string("deterministic = ") + (cfg.deterministic ? "true" : "false") + "\n";
    return s;
}

void validate_config(RunConfig& cfg) {
    if (!cfg.deterministic)
        throw ConfigError("config: deterministic = false is not supported (no stochastic paths)");
    if (std::isnan(cfg.model.delta)) {
        cfg.model.delta = cfg.model.eta > 0.0
                              ? regime::select_artificial_exponent(cfg.model.dim, cfg.initial.p)
                              : 0.0;
    } else if (cfg.model.eta > 0.0) {
        const auto iv = regime::artificial_exponent_interval(cfg.model.dim, cfg.initial.p);
        const bool fixed_case = cfg.model.dim == 3 && cfg.initial.p < 1.55;
        const bool ok = fixed_case ? cfg.model.delta == 0.677
                                   : cfg.model.delta > iv.lo && cfg.model.delta < iv.hi;
        if (!ok)
            throw ConfigError("config: delta = " + fmt(cfg.model.delta) +
                              " outside the admissible interval (" + fmt(iv.lo) + ", " +
                              fmt(iv.hi) + ") for p = " + fmt(cfg.initial.p));
    }
    try {
        validate(cfg.model);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (!(cfg.diagnostics.sample_interval > 0.0))
        throw ConfigError("config: sample_interval must be > 0");
    for (double f : cfg.diagnostics.particle_h)
        if (!(f > 0.0) || !(f < 1.0))
            throw ConfigError("config: particle_h entries must be mass fractions in (0,1)");
    if (!(cfg.diagnostics.vacuum_threshold > 0.0))
        throw ConfigError("config: vacuum_threshold must be > 0");
    if (!(cfg.initial.vacuum_floor >= 0.0) || !(cfg.initial.mollify_radius >= 0.0) ||
        !(cfg.initial.cutoff_inner >= 0.0))
        throw ConfigError("config: vacuum_floor, mollify_radius, cutoff_inner must be >= 0");
    if (!(cfg.initial.p > 1.0)) throw ConfigError("config: initial p must be > 1");
    if (cfg.sweep) {
        if (cfg.sweep->values.empty()) {
            // Default sequence: geometric with ratio 1/2, four members.
            cfg.sweep->values = {0.08, 0.04, 0.02, 0.01};
        }
        for (std::size_t j = 0; j + 1 < cfg.sweep->values.size(); ++j)
            if (!(cfg.sweep->values[j] > cfg.sweep->values[j + 1]))
                throw ConfigError("config: sweep values must be strictly decreasing");
        if (!(cfg.sweep->values.back() > 0.0))
            throw ConfigError("config: sweep values must be positive");
        if (cfg.sweep->compare_times.empty())
            throw ConfigError("config: [sweep] compare_times missing");
    }
}

SweepPlan make_sweep_plan(const RunConfig& cfg) {
    if (!cfg.sweep) throw ConfigError("config: [sweep] section required");
    SweepPlan plan;
    plan.kind = cfg.sweep->kind;
    plan.values = cfg.sweep->values;
    plan.compare_times = cfg.sweep->compare_times;
    plan.base = cfg.model;
    plan.initial = cfg.initial;
    return plan;
}

}  // namespace nsrad
