// Batch driver: run, sweep, regime, inspect.
//
// Exit codes: 0 ok, 2 config error, 3 numerical guard trip, 4 I/O error.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "nsrad/config.hpp"
#include "nsrad/io.hpp"
#include "nsrad/regime.hpp"

namespace fs = std::filesystem;
using namespace nsrad;

namespace {

struct Overrides {
    std::string out_dir;
    int grid = 0;
    double t_end = -1.0;
    std::string scheme;
    bool quiet = false;
};

RunConfig load_config(const std::string& path, const Overrides& ov) {
    RunConfig cfg = parse_config(read_text(path));
    if (!ov.out_dir.empty()) cfg.out_dir = ov.out_dir;
    if (ov.grid > 0) cfg.model.grid_cells = ov.grid;
    if (ov.t_end >= 0.0) cfg.model.t_end = ov.t_end;
    if (!ov.scheme.empty()) {
        if (ov.scheme == "explicit") cfg.model.scheme = TimeScheme::explicit_rk2;
        else if (ov.scheme == "semi-implicit") cfg.model.scheme = TimeScheme::semi_implicit;
        else throw ConfigError("config: --scheme must be explicit or semi-implicit");
    }
    validate_config(cfg);
    return cfg;
}

regime::RegimeReport report_for(const RunConfig& cfg) {
    return regime::classify_regime(cfg.model.dim, cfg.model.alpha, cfg.model.gamma,
                                   cfg.initial.p, cfg.initial.q);
}

RunOptions options_for(const RunConfig& cfg) {
    RunOptions opt;
    opt.sample_interval = cfg.diagnostics.sample_interval;
    opt.particle_h_fractions = cfg.diagnostics.particle_h;
    opt.vacuum_threshold = cfg.diagnostics.vacuum_threshold;
    opt.xi = cfg.diagnostics.xi;
    opt.lp = cfg.diagnostics.lp;
    opt.snapshot_times = cfg.diagnostics.snapshot_times;
    return opt;
}

void print_regime_table(const regime::RegimeReport& rep) {
    std::printf("%-24s %-10s %s\n", "regime", "verdict", "failed conditions");
    for (const auto& v : rep.verdicts) {
        std::string failed;
        for (const auto& c : v.checks) {
            if (c.satisfied) continue;
            if (!failed.empty()) failed += "; ";
            failed += c.condition + " [" + std::to_string(c.lhs) + " vs " +
                      std::to_string(c.rhs) + "]";
        }
        std::printf("%-24s %-10s %s\n", regime::regime_name(v.kind),
                    v.satisfied ? "satisfied" : "violated", failed.c_str());
    }
}

int cmd_run(const std::string& config_path, const Overrides& ov) {
    const RunConfig cfg = load_config(config_path, ov);
    const regime::RegimeReport rep = report_for(cfg);

    fs::create_directories(cfg.out_dir);
    const std::string manifest_path = cfg.out_dir + "/manifest.json";
    write_text(manifest_path, manifest_json(cfg, rep, "running", 0.0, 0, ""));

    const auto t0 = std::chrono::steady_clock::now();
    const RunResult result = run(cfg.initial, cfg.model, options_for(cfg));
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    write_csv(cfg.out_dir + "/series.csv", result.samples, cfg.diagnostics);
    SnapshotMeta meta{cfg.model.alpha, cfg.model.gamma};
    write_snapshot(cfg.out_dir + "/final.bin", result.final_state, meta);
    for (const auto& [t, s] : result.snapshots) {
        char name[64];
        std::snprintf(name, sizeof name, "/snapshot_t%.6f.bin", t);
        write_snapshot(cfg.out_dir + name, s, meta);
    }
    const double bound =
        vacuum_boundary_bound(domain_mass(result.final_state),
                              domain_energy(result.final_state, cfg.model.gamma),
                              cfg.model.dim, cfg.model.gamma, cfg.model.outer_radius);
    write_text(cfg.out_dir + "/plot.gp", emit_plot_script(cfg.out_dir + "/series.csv", bound));
    write_text(manifest_path,
               manifest_json(cfg, rep, termination_name(result.termination), wall, result.steps,
                             result.detail));

    if (!ov.quiet) {
        std::printf("run: %s after %lld steps (%.2fs), %zu samples -> %s\n",
                    termination_name(result.termination), result.steps, wall,
                    result.samples.size(), cfg.out_dir.c_str());
    }
    if (result.termination != Termination::completed) {
        std::fprintf(stderr, "error: guard-trip: %s: %s\n",
                     termination_name(result.termination), result.detail.c_str());
        return 3;
    }
    return 0;
}

int cmd_sweep(const std::string& config_path, const Overrides& ov) {
    const RunConfig cfg = load_config(config_path, ov);
    const SweepPlan plan = make_sweep_plan(cfg);
    const regime::RegimeReport rep = report_for(cfg);

    fs::create_directories(cfg.out_dir);
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<RunResult> member_results;
    const SweepReport report = run_sweep(plan, 0, member_results);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    write_text(cfg.out_dir + "/sweep_report.json", sweep_report_json(report));
    for (std::size_t j = 0; j < member_results.size(); ++j) {
        char dir[64];
        std::snprintf(dir, sizeof dir, "/member_%g", plan.values[j]);
        const std::string member_dir = cfg.out_dir + dir;
        fs::create_directories(member_dir);
        RunConfig member_cfg = cfg;
        member_cfg.model = member_params(plan, plan.values[j]);
        member_cfg.out_dir = member_dir;
        member_cfg.sweep.reset();
        write_text(member_dir + "/manifest.json",
                   manifest_json(member_cfg, rep,
                                 termination_name(member_results[j].termination), wall,
                                 member_results[j].steps, member_results[j].detail));
        write_csv(member_dir + "/series.csv", member_results[j].samples, cfg.diagnostics);
    }
    if (!ov.quiet)
        std::printf("sweep: %zu members (%.2fs) -> %s/sweep_report.json\n",
                    report.members.size(), wall, cfg.out_dir.c_str());
    for (const auto& m : report.members) {
        if (m.termination != Termination::completed) {
            std::fprintf(stderr, "error: guard-trip: member %g: %s\n", m.value,
                         termination_name(m.termination));
            return 3;
        }
    }
    return 0;
}

int cmd_regime(int dim, double alpha, double gamma, std::optional<double> p,
               std::optional<std::string> q_text) {
    std::optional<Rational> q;
    if (q_text) q = Rational::parse(*q_text);
    print_regime_table(regime::classify_regime(dim, alpha, gamma, p, q));
    return 0;
}

int cmd_inspect(const std::string& path) {
    const auto [state, meta] = read_snapshot(path);
    std::printf("snapshot        %s\n", path.c_str());
    std::printf("dimension       %d\n", state.dim);
    std::printf("cells           %d\n", state.cells());
    std::printf("time            %.17g\n", state.time);
    std::printf("alpha, gamma    %.17g, %.17g\n", meta.alpha, meta.gamma);
    std::printf("inner radius    %.17g\n", state.inner_radius);
    std::printf("outer radius    %.17g\n", state.outer_radius());
    std::printf("total mass      %.17g\n", state.total_mass);
    double rho_min = state.density[0], rho_max = state.density[0], umax = 0.0;
    for (double v : state.density) {
        rho_min = std::min(rho_min, v);
        rho_max = std::max(rho_max, v);
    }
    for (double v : state.velocity) umax = std::max(umax, std::abs(v));
    std::printf("rho min/max     %.17g / %.17g\n", rho_min, rho_max);
    std::printf("max |u|         %.17g\n", umax);
    std::printf("energy          %.17g\n", energy(state, meta.gamma));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"radially symmetric compressible Navier-Stokes in mass coordinates"};
    app.require_subcommand(1);

    Overrides ov;
    std::string config_path, snapshot_path;
    int dim = 2;
    double alpha = 1.0, gamma = 2.0;
    std::optional<double> p;
    std::optional<std::string> q;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "configuration file")->required();
        cmd->add_option("--out", ov.out_dir, "output directory override");
        cmd->add_option("--grid", ov.grid, "grid cells override");
        cmd->add_option("--t-end", ov.t_end, "end time override");
        cmd->add_option("--scheme", ov.scheme, "explicit or semi-implicit");
        cmd->add_flag("--quiet", ov.quiet, "suppress progress output");
    };
    CLI::App* run_cmd = app.add_subcommand("run", "execute a single simulation");
    add_common(run_cmd);
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "execute a continuation sweep");
    add_common(sweep_cmd);
    CLI::App* regime_cmd = app.add_subcommand("regime", "classify a parameter tuple");
    regime_cmd->add_option("N", dim, "dimension (2 or 3)")->required();
    regime_cmd->add_option("alpha", alpha, "viscosity exponent")->required();
    regime_cmd->add_option("gamma", gamma, "adiabatic exponent")->required();
    regime_cmd->add_option("p", p, "velocity integrability exponent");
    regime_cmd->add_option("q", q, "density-gradient exponent (rational, e.g. 4/3)");
    CLI::App* inspect_cmd = app.add_subcommand("inspect", "summarize a snapshot file");
    inspect_cmd->add_option("snapshot", snapshot_path, "snapshot path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) return cmd_run(config_path, ov);
        if (sweep_cmd->parsed()) return cmd_sweep(config_path, ov);
        if (regime_cmd->parsed()) return cmd_regime(dim, alpha, gamma, p, q);
        if (inspect_cmd->parsed()) return cmd_inspect(snapshot_path);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: config-error: %s\n", e.what());
        return 2;
    } catch (const IoError& e) {
        std::fprintf(stderr, "error: io-error: %s\n", e.what());
        return 4;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: config-error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: io-error: %s\n", e.what());
        return 4;
    }
    return 0;
}
