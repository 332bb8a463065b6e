#include "nsrad/io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace nsrad {

const char* const kVersion = "nsrad 0.1.0";

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string short_fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

}  // namespace

std::string csv_header(const DiagnosticsConfig& diag) {
    std::string h =
        "time,energy,bd_entropy,rho_min,rho_max,u_max,w_max,volume,"
        "linf_rho_minus_mean,l2_grad_u,l2_grad_rho";
    for (double twop : diag.lp) h += ",lp_u_" + short_fmt(twop);
    for (double xi : diag.xi) h += ",r_weighted_sup_xi" + short_fmt(xi);
    h += ",vacuum_radius";
    for (double f : diag.particle_h) h += ",particle_r_h" + short_fmt(f);
    return h;
}

std::string csv_series(const std::vector<DiagnosticSample>& samples,
                       const DiagnosticsConfig& diag) {
    std::string out = csv_header(diag) + "\n";
    for (const auto& s : samples) {
        out += fmt(s.time);
        out += "," + fmt(s.energy);
        out += "," + fmt(s.bd_entropy);
        out += "," + fmt(s.rho_min);
        out += "," + fmt(s.rho_max);
        out += "," + fmt(s.u_max);
        out += "," + (s.w_max ? fmt(*s.w_max) : std::string("nan"));
        out += "," + fmt(s.volume);
        out += "," + fmt(s.linf_rho_minus_mean);
        out += "," + fmt(s.l2_grad_u);
        out += "," + fmt(s.l2_grad_rho);
        for (double v : s.lp_u) out += "," + fmt(v);
        for (double v : s.r_weighted_sup) out += "," + fmt(v);
        out += "," + fmt(s.vacuum_radius);
        for (double v : s.particle_radii) out += "," + fmt(v);
        out += "\n";
    }
    return out;
}

void write_csv(const std::string& path, const std::vector<DiagnosticSample>& samples,
               const DiagnosticsConfig& diag) {
    write_text(path, csv_series(samples, diag));
}

namespace {

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
void put_f64(std::string& out, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
}
std::uint32_t get_u32(const std::string& in, std::size_t& pos) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(in.at(pos++))) << (8 * i);
    return v;
}
double get_f64(const std::string& in, std::size_t& pos) {
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(in.at(pos++))) << (8 * i);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

}  // namespace

void write_snapshot(const std::string& path, const LagrangianState& state,
                    const SnapshotMeta& meta) {
    std::string out = "NSRD";
    put_u32(out, 1);  // version
    put_u32(out, static_cast<std::uint32_t>(state.dim));
    put_u32(out, static_cast<std::uint32_t>(state.cells()));
    put_f64(out, meta.alpha);
    put_f64(out, meta.gamma);
    put_f64(out, state.time);
    put_f64(out, state.inner_radius);
    put_f64(out, state.total_mass);
    for (double v : state.density) put_f64(out, v);
    for (double v : state.velocity) put_f64(out, v);
    for (double v : state.radius) put_f64(out, v);
    write_text(path, out);
}

std::pair<LagrangianState, SnapshotMeta> read_snapshot(const std::string& path) {
    const std::string in = read_text(path);
    if (in.size() < 8 || in.compare(0, 4, "NSRD") != 0)
        throw IoError("snapshot: bad magic in " + path);
    std::size_t pos = 4;
    try {
        const std::uint32_t version = get_u32(in, pos);
        if (version != 1) throw IoError("snapshot: unsupported version in " + path);
        LagrangianState s;
        SnapshotMeta meta;
        s.dim = static_cast<int>(get_u32(in, pos));
        const int n = static_cast<int>(get_u32(in, pos));
        meta.alpha = get_f64(in, pos);
        meta.gamma = get_f64(in, pos);
        s.time = get_f64(in, pos);
        s.inner_radius = get_f64(in, pos);
        s.total_mass = get_f64(in, pos);
        s.density.resize(n);
        s.velocity.resize(n + 1);
        s.radius.resize(n + 1);
        for (double& v : s.density) v = get_f64(in, pos);
        for (double& v : s.velocity) v = get_f64(in, pos);
        for (double& v : s.radius) v = get_f64(in, pos);
        if (pos != in.size()) throw IoError("snapshot: trailing bytes in " + path);
        return {std::move(s), meta};
    } catch (const std::out_of_range&) {
        throw IoError("snapshot: truncated file " + path);
    }
}

std::string manifest_json(const RunConfig& config, const regime::RegimeReport& report,
                          const std::string& status, double wall_seconds, long long steps,
                          const std::string& detail) {
    nlohmann::json j;
    j["version"] = kVersion;
    j["schema_version"] = 1;
    j["status"] = status;
    j["detail"] = detail;
    j["wall_seconds"] = wall_seconds;
    j["steps"] = steps;
    j["grid_cells"] = config.model.grid_cells;
    j["config"] = serialize_config(config);
    nlohmann::json verdicts = nlohmann::json::array();
    for (const auto& v : report.verdicts) {
        nlohmann::json jv;
        jv["regime"] = regime::regime_name(v.kind);
        jv["satisfied"] = v.satisfied;
        nlohmann::json checks = nlohmann::json::array();
        for (const auto& c : v.checks) {
            if (c.satisfied) continue;  // record the failures, keep the file small
            nlohmann::json jc;
            jc["condition"] = c.condition;
            jc["lhs"] = c.lhs;
            jc["rhs"] = c.rhs;
            checks.push_back(jc);
        }
        jv["failed_conditions"] = checks;
        verdicts.push_back(jv);
    }
    j["regime"] = verdicts;
    return j.dump(2) + "\n";
}

std::string sweep_report_json(const SweepReport& report) {
    nlohmann::json j;
    j["version"] = kVersion;
    j["schema_version"] = 1;
    j["kind"] = report.kind == SweepPlan::Kind::eta ? "eta" : "iota";
    j["values"] = report.values;
    j["compare_times"] = report.compare_times;
    nlohmann::json members = nlohmann::json::array();
    for (const auto& m : report.members) {
        nlohmann::json jm;
        jm["value"] = m.value;
        jm["termination"] = termination_name(m.termination);
        jm["steps"] = m.steps;
        jm["final_time"] = m.final_time;
        if (!m.detail.empty()) jm["detail"] = m.detail;
        members.push_back(jm);
    }
    j["members"] = members;
    j["l1_density"] = report.l1_density;
    j["l2_density"] = report.l2_density;
    j["l2_sqrt_rho_u"] = report.l2_sqrt_rho_u;
    j["contraction"] = report.contraction;
    return j.dump(2) + "\n";
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("short write to " + path);
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string emit_plot_script(const std::string& csv_path, double vacuum_bound) {
    const std::string content = read_text(csv_path);
    const auto eol = content.find('\n');
    if (eol == std::string::npos) throw IoError("plot: empty CSV " + csv_path);
    const std::string header = content.substr(0, eol);

    std::vector<std::string> cols;
    {
        std::stringstream ss(header);
        std::string c;
        while (std::getline(ss, c, ',')) cols.push_back(c);
    }
    auto col = [&](const std::string& name) -> int {
        for (std::size_t i = 0; i < cols.size(); ++i)
            if (cols[i] == name) return static_cast<int>(i) + 1;  // gnuplot is 1-based
        throw IoError("plot: column '" + name + "' missing from " + csv_path +
                      "; expected header: " + header);
    };
    const int c_time = col("time");
    const int c_energy = col("energy");
    const int c_bd = col("bd_entropy");
    const int c_rmin = col("rho_min");
    const int c_rmax = col("rho_max");
    const int c_linf = col("linf_rho_minus_mean");
    const int c_gu = col("l2_grad_u");
    const int c_gr = col("l2_grad_rho");
    const int c_vac = col("vacuum_radius");

    std::ostringstream s;
    s << "# gnuplot script generated by " << kVersion << "\n";
    s << "set datafile separator ','\n";
    s << "csv = '" << csv_path << "'\n";
    s << "set terminal pngcairo size 1400,1000\n";
    s << "set output 'series.png'\n";
    s << "set multiplot layout 2,2\n";
    s << "set key autotitle columnheader\n";
    s << "set title 'energy and BD entropy'\n";
    s << "plot csv using " << c_time << ":" << c_energy << " with lines, \\\n";
    s << "     csv using " << c_time << ":" << c_bd << " with lines\n";
    s << "set title 'density extrema'\n";
    s << "plot csv using " << c_time << ":" << c_rmin << " with lines, \\\n";
    s << "     csv using " << c_time << ":" << c_rmax << " with lines\n";
    s << "set title 'decay metrics'\n";
    s << "set logscale y\n";
    s << "plot csv using " << c_time << ":" << c_linf << " with lines, \\\n";
    s << "     csv using " << c_time << ":" << c_gu << " with lines, \\\n";
    s << "     csv using " << c_time << ":" << c_gr << " with lines\n";
    s << "unset logscale y\n";
    s << "set title 'particle paths and vacuum radius'\n";
    s << "plot csv using " << c_time << ":" << c_vac << " with lines";
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (cols[i].rfind("particle_r_h", 0) == 0)
            s << ", \\\n     csv using " << c_time << ":" << (i + 1) << " with lines";
    }
    s << ", \\\n     " << fmt(vacuum_bound) << " with lines title 'vacuum bound'\n";
    s << "unset multiplot\n";
    return s.str();
}

}  // namespace nsrad
