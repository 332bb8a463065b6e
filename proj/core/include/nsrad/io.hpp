#pragma once

#include <string>
#include <vector>

#include "nsrad/config.hpp"
#include "nsrad/continuation.hpp"
#include "nsrad/regime.hpp"
#include "nsrad/solver.hpp"

namespace nsrad {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Time-series CSV. Fixed column order: the scalar columns below, then one
/// column per requested exponent/mass fraction. All values at 17 significant
/// digits; absent w_max (alpha != 1) prints nan.
///
///   time,energy,bd_entropy,rho_min,rho_max,u_max,w_max,volume,
///   linf_rho_minus_mean,l2_grad_u,l2_grad_rho,
///   lp_u_<2p>...,r_weighted_sup_xi<xi>...,vacuum_radius,particle_r_h<f>...
std::string csv_header(const DiagnosticsConfig& diag);
std::string csv_series(const std::vector<DiagnosticSample>& samples,
                       const DiagnosticsConfig& diag);
void write_csv(const std::string& path, const std::vector<DiagnosticSample>& samples,
               const DiagnosticsConfig& diag);

/// Snapshot container: "NSRD" magic, version, N, G, then alpha, gamma, time,
/// inner radius, total mass, and the density/velocity/radius arrays as
/// little-endian doubles. Byte-stable across save/load/save.
struct SnapshotMeta {
    double alpha = 0.0;
    double gamma = 0.0;
};
void write_snapshot(const std::string& path, const LagrangianState& state,
                    const SnapshotMeta& meta);
std::pair<LagrangianState, SnapshotMeta> read_snapshot(const std::string& path);

/// Run manifest (JSON): config echo, regime verdicts, code version, grid,
/// wall-clock, termination. Written once at start and finalized at the end.
std::string manifest_json(const RunConfig& config, const regime::RegimeReport& report,
                          const std::string& status, double wall_seconds, long long steps,
                          const std::string& detail);
void write_text(const std::string& path, const std::string& content);
std::string read_text(const std::string& path);

std::string sweep_report_json(const SweepReport& report);

/// Self-contained gnuplot script for a series CSV: energy and BD entropy,
/// density extrema, decay metrics (log scale), particle paths and vacuum
/// radius with the closed-form vacuum bound overlaid. Throws IoError listing
/// the expected header if a required column is missing.
std::string emit_plot_script(const std::string& csv_path, double vacuum_bound);

extern const char* const kVersion;

}  // namespace nsrad
