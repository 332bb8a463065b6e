#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nsrad/solver.hpp"

namespace nsrad {

/// Sweep of the limiting procedures: artificial viscosity eta -> 0 (each
/// member solves the regularized system on the annulus of inner radius eta)
/// or annulus inner radius iota -> 0 (no artificial terms).
struct SweepPlan {
    enum class Kind { eta, iota };
    Kind kind = Kind::iota;
    std::vector<double> values;  ///< strictly decreasing, all > 0
    ModelParams base;
    InitialDataSpec initial;
    std::vector<double> compare_times;
};

struct SweepMember {
    double value = 0.0;
    Termination termination = Termination::completed;
    long long steps = 0;
    double final_time = 0.0;
    std::string detail;
};

/// Pairwise distances are between consecutive members (index j vs j+1), one
/// entry per comparison time; contraction[j][k] = distance[j+1][k] /
/// distance[j][k].
struct SweepReport {
    SweepPlan::Kind kind = SweepPlan::Kind::iota;
    std::vector<double> values;
    std::vector<double> compare_times;
    std::vector<SweepMember> members;
    std::vector<std::vector<double>> l1_density;
    std::vector<std::vector<double>> l2_density;
    std::vector<std::vector<double>> l2_sqrt_rho_u;
    std::vector<std::vector<double>> contraction;  ///< ratios of consecutive L1 rows
};

/// Model parameters of one sweep member.
ModelParams member_params(const SweepPlan& plan, double value);

/// Runs every member (concurrently up to max_parallel; 0 means the
/// NSRAD_SWEEP_JOBS environment variable or the hardware default) and
/// assembles the report. Guard-tripped members are recorded and skipped in
/// the distance rows (NaN entries).
SweepReport run_sweep(const SweepPlan& plan, int max_parallel = 0);

/// Like run_sweep but also hands back the raw member results (for member
/// CSV/manifest output).
SweepReport run_sweep(const SweepPlan& plan, int max_parallel,
                      std::vector<RunResult>& member_results);

/// Both states resampled onto the union of their Eulerian grids, densities
/// and velocities extended constantly inward across each annulus hole
/// (velocity by zero).
std::pair<EulerianProfile, EulerianProfile> resample_to_common_grid(const LagrangianState& a,
                                                                    const LagrangianState& b);

/// Distances in the full domain measure between two resampled states.
struct ProfileDistance {
    double l1_density = 0.0;
    double l2_density = 0.0;
    double l2_sqrt_rho_u = 0.0;
};
ProfileDistance profile_distance(const LagrangianState& a, const LagrangianState& b);

}  // namespace nsrad
