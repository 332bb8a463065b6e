#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <doctest.h>

#include "nsrad/io.hpp"

namespace fs = std::filesystem;

namespace {

const std::string cli = NSRAD_CLI_PATH;

fs::path work_dir() {
    const fs::path dir = fs::temp_directory_path() / "nsrad_cli_tests";
    fs::create_directories(dir);
    return dir;
}

int run_cmd(const std::string& args, const std::string& capture = "") {
    std::string cmd = cli + " " + args;
    if (!capture.empty()) cmd += " > " + capture + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

}  // namespace

TEST_CASE("cmd_regime prints the endpoint verdict for (2,1,2,4,2)") {
    const fs::path out = work_dir() / "regime.txt";
    CHECK(run_cmd("regime 2 1 2 4 2", out.string()) == 0);
    const std::string text = nsrad::read_text(out.string());
    CHECK(text.find("shallow-water-endpoint") != std::string::npos);
    CHECK(text.find("satisfied") != std::string::npos);
    CHECK(text.find("weak-2d") != std::string::npos);
}

TEST_CASE("cmd_run produces manifest, series, snapshot, plot script") {
    const fs::path dir = work_dir();
    const fs::path cfg = dir / "ok.cfg";
    write_file(cfg,
               "[model]\n"
               "grid = 64\n"
               "t_end = 0.05\n"
               "[initial]\n"
               "preset = equilibrium\n"
               "[diagnostics]\n"
               "sample_interval = 0.01\n");
    const fs::path out = dir / "run_ok";
    CHECK(run_cmd("run --config " + cfg.string() + " --out " + out.string() + " --quiet") == 0);
    CHECK(fs::exists(out / "manifest.json"));
    CHECK(fs::exists(out / "series.csv"));
    CHECK(fs::exists(out / "final.bin"));
    CHECK(fs::exists(out / "plot.gp"));
    const std::string manifest = nsrad::read_text((out / "manifest.json").string());
    CHECK(manifest.find("\"status\": \"completed\"") != std::string::npos);

    // Flat diagnostics on the equilibrium preset.
    const std::string series = nsrad::read_text((out / "series.csv").string());
    CHECK(series.find("time,energy,bd_entropy") == 0);
}

TEST_CASE("cmd_run exits 2 on validation errors") {
    const fs::path dir = work_dir();
    const fs::path cfg = dir / "bad.cfg";
    write_file(cfg,
               "[model]\n"
               "t_end = -1\n"
               "[initial]\n"
               "preset = equilibrium\n");
    CHECK(run_cmd("run --config " + cfg.string() + " --out " + (dir / "x").string() +
                  " --quiet", (dir / "err.txt").string()) == 2);
    const std::string err = nsrad::read_text((dir / "err.txt").string());
    CHECK(err.find("config-error") != std::string::npos);
}

TEST_CASE("cmd_run exits 2 on unknown keys, 4 on missing files") {
    const fs::path dir = work_dir();
    const fs::path cfg = dir / "unknown.cfg";
    write_file(cfg, "[model]\nalpah = 1\n");
    CHECK(run_cmd("run --config " + cfg.string() + " --quiet") == 2);
    CHECK(run_cmd("run --config " + (dir / "nonexistent.cfg").string() + " --quiet") == 4);
    CHECK(run_cmd("inspect " + (dir / "nonexistent.bin").string()) == 4);
}

TEST_CASE("cmd_inspect summarizes a snapshot") {
    const fs::path dir = work_dir();
    const fs::path cfg = dir / "snap.cfg";
    write_file(cfg,
               "[model]\n"
               "grid = 32\n"
               "t_end = 0.02\n"
               "[initial]\n"
               "preset = sv\n");
    const fs::path out = dir / "run_snap";
    REQUIRE(run_cmd("run --config " + cfg.string() + " --out " + out.string() + " --quiet") == 0);
    const fs::path text = dir / "inspect.txt";
    CHECK(run_cmd("inspect " + (out / "final.bin").string(), text.string()) == 0);
    const std::string summary = nsrad::read_text(text.string());
    CHECK(summary.find("cells           32") != std::string::npos);
    CHECK(summary.find("total mass") != std::string::npos);
}

TEST_CASE("cmd_run honors grid and scheme overrides") {
    const fs::path dir = work_dir();
    const fs::path cfg = dir / "override.cfg";
    write_file(cfg,
               "[model]\n"
               "grid = 64\n"
               "t_end = 0.01\n"
               "[initial]\n"
               "preset = equilibrium\n");
    const fs::path out = dir / "run_override";
    CHECK(run_cmd("run --config " + cfg.string() + " --out " + out.string() +
                  " --grid 32 --scheme explicit --t-end 0.005 --quiet") == 0);
    const fs::path text = dir / "inspect_override.txt";
    CHECK(run_cmd("inspect " + (out / "final.bin").string(), text.string()) == 0);
    const std::string summary = nsrad::read_text(text.string());
    CHECK(summary.find("cells           32") != std::string::npos);
    const std::string manifest = nsrad::read_text((out / "manifest.json").string());
    CHECK(manifest.find("scheme = explicit") != std::string::npos);
}

TEST_CASE("cmd_run exits 3 when a numerical guard trips") {
    const fs::path dir = work_dir();
    const fs::path cfg = dir / "guard.cfg";
    write_file(cfg,
               "[model]\n"
               "grid = 64\n"
               "t_end = 0.5\n"
               "density_ceiling = 1.2\n"  // sv peak density exceeds this
               "[initial]\n"
               "preset = sv\n");
    const fs::path out = dir / "run_guard";
    CHECK(run_cmd("run --config " + cfg.string() + " --out " + out.string() + " --quiet",
                  (dir / "guard_err.txt").string()) == 3);
    const std::string err = nsrad::read_text((dir / "guard_err.txt").string());
    CHECK(err.find("guard-trip") != std::string::npos);
    const std::string manifest = nsrad::read_text((out / "manifest.json").string());
    CHECK(manifest.find("density-ceiling") != std::string::npos);
}

TEST_CASE("cmd_sweep writes the report and member directories") {
    const fs::path dir = work_dir();
    const fs::path cfg = dir / "sweep.cfg";
    write_file(cfg,
               "[model]\n"
               "grid = 64\n"
               "t_end = 0.1\n"
               "[initial]\n"
               "preset = t2-paper\n"
               "[sweep]\n"
               "kind = iota\n"
               "values = 0.08, 0.04\n"
               "compare_times = 0.05, 0.1\n");
    const fs::path out = dir / "sweep_out";
    CHECK(run_cmd("sweep --config " + cfg.string() + " --out " + out.string() + " --quiet") == 0);
    CHECK(fs::exists(out / "sweep_report.json"));
    CHECK(fs::exists(out / "member_0.08" / "manifest.json"));
    CHECK(fs::exists(out / "member_0.04" / "series.csv"));
    const std::string rep = nsrad::read_text((out / "sweep_report.json").string());
    CHECK(rep.find("\"l1_density\"") != std::string::npos);
}
