#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nsrad/continuation.hpp"
#include "nsrad/solver.hpp"

namespace nsrad {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DiagnosticsConfig {
    double sample_interval = 0.05;
    std::vector<double> particle_h;  ///< fractions of the total mass, in (0,1)
    double vacuum_threshold = 1e-4;
    std::vector<double> xi = {0.1};
    std::vector<double> lp = {4.0};
    std::vector<double> snapshot_times;
};

struct SweepConfig {
    SweepPlan::Kind kind = SweepPlan::Kind::iota;
    std::vector<double> values;
    std::vector<double> compare_times;
};

/// One run, fully specified. Every field has a default; parse_config fills the
/// rest and rejects unknown keys.
struct RunConfig {
    ModelParams model;
    InitialDataSpec initial;
    DiagnosticsConfig diagnostics;
    std::optional<SweepConfig> sweep;
    std::string out_dir = "out";
    bool deterministic = true;  ///< declarative: the code has no stochastic paths
};

/// Parses the key = value section format:
///
///   [model]
///   N = 2
///   alpha = 1.0        # comment
///
/// Unknown sections or keys are hard errors; parse errors carry line and
/// column. `delta = auto` defers the artificial exponent to the selection
/// rule, resolved during validation.
RunConfig parse_config(const std::string& text);

/// Canonical form: fixed section and key order, 17 significant digits.
/// parse(serialize(c)) reproduces c bit-exactly.
std::string serialize_config(const RunConfig& config);

/// Cross-field checks (artificial exponent admissibility against p, sweep
/// shape, geometry) plus ModelParams validation; resolves delta = auto.
void validate_config(RunConfig& config);

SweepPlan make_sweep_plan(const RunConfig& config);

}  // namespace nsrad
