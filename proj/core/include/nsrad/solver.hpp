#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "nsrad/diagnostics.hpp"
#include "nsrad/initial_data.hpp"
#include "nsrad/transform.hpp"

namespace nsrad {

enum class TimeScheme { explicit_rk2, semi_implicit };

/// Physical and numerical parameters of one simulation.
struct ModelParams {
    int dim = 2;
    double alpha = 1.0;
    double gamma = 2.0;
    double eta = 0.0;    ///< artificial-viscosity weight
    double delta = 0.0;  ///< artificial-viscosity exponent (must be admissible if eta > 0)
    double eta_phase_end = std::numeric_limits<double>::infinity();  ///< eta is 0 past this time
    double inner_radius = 0.0;
    double outer_radius = 1.0;
    int grid_cells = 512;
    TimeScheme scheme = TimeScheme::semi_implicit;
    double dt_safety = 0.4;
    double t_end = 1.0;
    double density_ceiling = 1e9;
    bool pressure_term = true;  ///< test hook: false isolates the viscous operator

    double eta_at(double time) const { return time < eta_phase_end ? eta : 0.0; }
};

/// Throws std::invalid_argument naming the violated constraint. The physical
/// positivity mu + N lambda >= 0 requires 1 + (alpha-1) N >= 0, and the same
/// holds for the artificial exponent.
void validate(const ModelParams& params);

struct StepReport {
    double dt_used = 0.0;
    double max_density_change = 0.0;
    int viscous_solve_iterations = 0;
    double kinematic_residual = 0.0;  ///< max |(r(tau+dt)-r(tau))/dt - u|
    bool positivity_ok = true;
};

/// d(u)/d(tau) at edges of the staggered grid:
///   r^{N-1}[ ((alpha rho^{1+alpha} + eta delta rho^{1+delta}) (r^{N-1}u)_y)_y - (rho^gamma)_y ]
///     - (N-1) r^{N-2} (rho^alpha + eta rho^delta)_y u,
/// boundary edges forced to zero. Throws on non-positive density.
std::vector<double> momentum_rhs(const LagrangianState& state, const ModelParams& params);

/// d(rho)/d(tau) per cell: -rho^2 (r^{N-1}u)_y.
std::vector<double> continuity_rhs(const LagrangianState& state, const ModelParams& params);

/// dt_safety * min(acoustic bound dy/(rho r^{N-1} c), explicit viscous bound
/// dy^2 / (2 K r^{2(N-1)})); the semi-implicit scheme drops the viscous bound.
double stable_dt(const LagrangianState& state, const ModelParams& params);

/// Heun step. A positivity violation rejects the step (state unchanged,
/// positivity_ok = false).
StepReport step_explicit(LagrangianState& state, const ModelParams& params, double dt);

/// Viscous and geometric terms implicit with frozen coefficients (symmetric
/// positive-definite tridiagonal solve), pressure explicit, then the
/// specific-volume update and radius reconstruction. Throws
/// std::runtime_error on loss of ellipticity (non-positive pivot).
StepReport step_semi_implicit(LagrangianState& state, const ModelParams& params, double dt);

enum class Termination {
    completed,
    positivity_loss,
    non_finite,
    density_ceiling,
    ellipticity_loss,
};
const char* termination_name(Termination t);

struct RunOptions {
    double sample_interval = 0.05;
    std::vector<double> particle_h_fractions;  ///< in (0,1), mapped to h = f * M
    double vacuum_threshold = 1e-4;
    std::vector<double> xi = {0.1};
    std::vector<double> lp = {4.0};  ///< 2p exponents for the velocity norms
    std::vector<double> snapshot_times;
    bool keep_trajectory = false;  ///< also store the state at every sample time
};

struct RunResult {
    std::vector<DiagnosticSample> samples;
    std::vector<std::pair<double, LagrangianState>> snapshots;
    std::vector<std::pair<double, LagrangianState>> trajectory;
    LagrangianState final_state;
    Termination termination = Termination::completed;
    std::string detail;
    long long steps = 0;
    double max_kinematic_residual = 0.0;
};

/// Integrates a prebuilt state to params.t_end or until a guard trips
/// (positivity loss after 20 dt-halvings, NaN, density ceiling), sampling
/// diagnostics on the uniform schedule. Deterministic for fixed inputs.
RunResult run_from_state(LagrangianState state, const ModelParams& params,
                         const RunOptions& options);

/// Builds the initial state for the recipe (weak construction when eta > 0 or
/// the domain is an annulus) and integrates it.
RunResult run(const InitialDataSpec& spec, const ModelParams& params, const RunOptions& options);

}  // namespace nsrad
