#include <cstdio>
#include <filesystem>

#include <doctest.h>

#include "nsrad/config.hpp"
#include "nsrad/io.hpp"

using namespace nsrad;

namespace {

const char* kMinimalConfig =
    "[model]\n"
    "t_end = 0.5\n"
    "[initial]\n"
    "preset = sv\n";

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("minimal config parses with defaults applied") {
    RunConfig cfg = parse_config(kMinimalConfig);
    validate_config(cfg);
    CHECK(cfg.model.t_end == 0.5);
    CHECK(cfg.model.dim == 2);
    CHECK(cfg.model.grid_cells == 512);
    CHECK(cfg.initial.kind == "sv");
    CHECK(cfg.model.scheme == TimeScheme::semi_implicit);
    CHECK(cfg.out_dir == "out");
    CHECK(cfg.deterministic);
}

TEST_CASE("unknown keys are hard errors naming the key") {
    const char* text =
        "[model]\n"
        "alpah = 1.0\n";
    try {
        parse_config(text);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("alpah") != std::string::npos);
        CHECK(std::string(e.what()).find(":2:") != std::string::npos);  // line number
    }
}

TEST_CASE("parse errors carry line numbers") {
    CHECK_THROWS_AS(parse_config("[model]\ngrid = twelve\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("key_outside = 3\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[nosuch]\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[model]\nscheme = midpoint\n"), ConfigError);
}

TEST_CASE("serialization round-trips bit-exactly and is canonical") {
    const char* text =
        "[model]\n"
        "N = 2\n"
        "alpha = 1\n"
        "gamma = 2\n"
        "grid = 512\n"
        "t_end = 5\n"
        "dt_safety = 0.37\n"
        "[initial]\n"
        "preset = sv\n"
        "q = 4/3\n"
        "[diagnostics]\n"
        "sample_interval = 0.01\n"
        "particle_h = 0.25, 0.5\n"
        "[output]\n"
        "directory = out_sv\n";
    RunConfig cfg = parse_config(text);
    validate_config(cfg);
    const std::string canon = serialize_config(cfg);
    RunConfig cfg2 = parse_config(canon);
    const std::string canon2 = serialize_config(cfg2);
    CHECK(canon == canon2);
    CHECK(cfg2.model.dt_safety == cfg.model.dt_safety);
    CHECK(cfg2.initial.q.str() == "4/3");
    CHECK(cfg2.diagnostics.particle_h == cfg.diagnostics.particle_h);
}

TEST_CASE("validation rejects bad cross-field combinations") {
    // t_end < 0.
    RunConfig cfg = parse_config("[model]\nt_end = -1\n");
    CHECK_THROWS_AS(validate_config(cfg), ConfigError);

    // delta outside the admissible interval with eta > 0.
    cfg = parse_config(
        "[model]\n"
        "eta = 0.01\n"
        "delta = 0.2\n"
        "[initial]\n"
        "preset = gaussian-bump\n");
    CHECK_THROWS_AS(validate_config(cfg), ConfigError);

    // auto delta resolves inside the interval.
    cfg = parse_config(
        "[model]\n"
        "eta = 0.01\n"
        "[initial]\n"
        "preset = gaussian-bump\n");
    validate_config(cfg);
    CHECK(cfg.model.delta > 0.5);
    CHECK(cfg.model.delta < 1.0);

    // deterministic = false unsupported.
    cfg = parse_config("[output]\ndeterministic = false\n");
    CHECK_THROWS_AS(validate_config(cfg), ConfigError);

    // sweep blocks must be decreasing.
    cfg = parse_config(
        "[sweep]\n"
        "kind = iota\n"
        "values = 0.01, 0.02\n"
        "compare_times = 0.5\n");
    CHECK_THROWS_AS(validate_config(cfg), ConfigError);
}

TEST_CASE("sweep values default to the halving sequence") {
    RunConfig cfg = parse_config(
        "[sweep]\n"
        "kind = iota\n"
        "compare_times = 0.5\n");
    validate_config(cfg);
    REQUIRE(cfg.sweep.has_value());
    CHECK(cfg.sweep->values == std::vector<double>{0.08, 0.04, 0.02, 0.01});
}

TEST_CASE("csv header and row shapes") {
    DiagnosticsConfig diag;
    diag.lp = {4.0};
    diag.xi = {0.1};
    diag.particle_h = {0.5};
    const std::string header = csv_header(diag);
    CHECK(header ==
          "time,energy,bd_entropy,rho_min,rho_max,u_max,w_max,volume,"
          "linf_rho_minus_mean,l2_grad_u,l2_grad_rho,lp_u_4,r_weighted_sup_xi0.1,"
          "vacuum_radius,particle_r_h0.5");

    DiagnosticSample s;
    s.time = 0.125;
    s.lp_u = {1.0};
    s.r_weighted_sup = {2.0};
    s.particle_radii = {0.7};
    const std::string text = csv_series({s}, diag);
    // One header line plus one row; absent w_max prints nan.
    CHECK(text.find("nan") != std::string::npos);
    CHECK(std::count(text.begin(), text.end(), '\n') == 2);
}

TEST_CASE("snapshot round-trip is byte-identical") {
    LagrangianState s;
    s.dim = 2;
    s.time = 0.75;
    s.inner_radius = 0.0;
    s.total_mass = 0.5;
    s.density = {1.0, 2.0, 0.5, 1.25};
    s.velocity = {0.0, 0.1, -0.2, 0.3, 0.0};
    s.radius = reconstruct_radius(s.density, s.total_mass, 0.0, 2);

    const std::string p1 = temp_path("nsrad_snap1.bin");
    const std::string p2 = temp_path("nsrad_snap2.bin");
    write_snapshot(p1, s, {1.0, 2.0});
    auto [loaded, meta] = read_snapshot(p1);
    CHECK(meta.alpha == 1.0);
    CHECK(meta.gamma == 2.0);
    CHECK(loaded.density == s.density);
    CHECK(loaded.velocity == s.velocity);
    CHECK(loaded.radius == s.radius);
    CHECK(loaded.time == s.time);
    write_snapshot(p2, loaded, meta);
    CHECK(read_text(p1) == read_text(p2));

    write_text(p1, "BADMAGIC");
    CHECK_THROWS_AS(read_snapshot(p1), IoError);
}

TEST_CASE("plot script references the CSV columns and flags missing ones") {
    DiagnosticsConfig diag;
    DiagnosticSample s;
    s.lp_u = {1.0};
    s.r_weighted_sup = {1.0};
    const std::string path = temp_path("nsrad_series.csv");
    write_csv(path, {s}, diag);
    const std::string script = emit_plot_script(path, 0.7);
    CHECK(script.find("set datafile separator") != std::string::npos);
    CHECK(script.find("vacuum bound") != std::string::npos);

    write_text(path, "time,energy\n0,1\n");
    try {
        emit_plot_script(path, 0.7);
        FAIL("expected IoError");
    } catch (const IoError& e) {
        CHECK(std::string(e.what()).find("bd_entropy") != std::string::npos);
        CHECK(std::string(e.what()).find("expected header") != std::string::npos);
    }
}

TEST_CASE("manifest json embeds the canonical config and regime verdicts") {
    RunConfig cfg = parse_config(kMinimalConfig);
    validate_config(cfg);
    const auto rep = regime::classify_regime(2, 1.0, 2.0, cfg.initial.p, cfg.initial.q);
    const std::string j = manifest_json(cfg, rep, "completed", 1.25, 42, "");
    CHECK(j.find("\"status\": \"completed\"") != std::string::npos);
    CHECK(j.find("shallow-water-endpoint") != std::string::npos);
    CHECK(j.find("schema_version") != std::string::npos);
}
