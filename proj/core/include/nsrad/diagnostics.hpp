#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "nsrad/transform.hpp"

namespace nsrad {

struct ModelParams;

/// Per-time record of the monitored functionals. Vector entries follow the
/// exponent lists of the request that produced the sample.
struct DiagnosticSample {
    double time = 0.0;
    double energy = 0.0;
    double bd_entropy = 0.0;
    double rho_min = 0.0;
    double rho_max = 0.0;
    double u_max = 0.0;
    std::optional<double> w_max;  ///< only for alpha = 1
    double volume = 0.0;          ///< integral of 1/rho over the mass grid
    double linf_rho_minus_mean = 0.0;
    double l2_grad_u = 0.0;
    double l2_grad_rho = 0.0;
    std::vector<double> lp_u;
    std::vector<double> r_weighted_sup;
    double vacuum_radius = 0.0;
    std::vector<double> particle_radii;
};

struct DiagnosticsRequest {
    std::vector<double> lp = {4.0};  ///< 2p exponents
    std::vector<double> xi = {0.1};
    double vacuum_threshold = 1e-4;
    std::vector<double> particle_h;  ///< absolute mass coordinates in (0, M)
};

struct ParticlePathSeries {
    double h = 0.0;
    std::vector<double> times;
    std::vector<double> radii;
};

struct DecayMetrics {
    double linf_rho_minus_mean = 0.0;
    double l2_grad_u = 0.0;
    double l2_grad_rho = 0.0;
};

double unit_ball_measure(int dim);  ///< pi (N=2) or 4 pi / 3 (N=3)

/// Lagrangian energy integral of (u^2/2 + rho^{gamma-1}/(gamma-1)) dy.
double energy(const LagrangianState& state, double gamma);

/// Same energy through the Eulerian integral of
/// (rho u^2 / 2 + rho^gamma/(gamma-1)) r^{N-1} dr on the state's radius map.
double eulerian_energy(const LagrangianState& state, double gamma);

/// Mass and energy in the full domain measure (with the N omega_N angular
/// factor), as consumed by vacuum_boundary_bound.
double domain_mass(const LagrangianState& state);
double domain_energy(const LagrangianState& state, double gamma);

/// Integral of (u + r^{N-1} d(rho^alpha)/dy + eta r^{N-1} d(rho^delta)/dy)^2/2
/// + rho^{gamma-1}/(gamma-1) dy, one-sided differences at boundary edges.
double bd_entropy(const LagrangianState& state, const ModelParams& params);

/// w = u + r^{N-1} d(rho)/dy at edges. Only defined for alpha = 1; throws
/// std::invalid_argument otherwise.
std::vector<double> effective_velocity(const LagrangianState& state, double alpha);

/// max over edges of rho^{alpha-1/2} r^xi (N=2) or rho^{alpha-1/2} r^{1/2+xi}
/// (N=3), density interpolated to edges.
double r_weighted_sup(const LagrangianState& state, double alpha, double xi);

/// rho_bar = mass/volume; Linf(rho - rho_bar) over cells; Eulerian
/// L2 norms squared-then-rooted of grad u and grad rho with the full domain
/// measure.
DecayMetrics decay_metrics(const LagrangianState& state);

/// Radius enclosing mass h, interpolated within the crossing cell (linear in
/// r^N, consistent with the radius reconstruction). Throws if h outside
/// (0, total_mass).
double particle_radius(const LagrangianState& state, double h);

/// Extracts the particle-path series r_h(t) from a stored trajectory.
ParticlePathSeries particle_path(const std::vector<std::pair<double, LagrangianState>>& trajectory,
                                 double h);

/// Closed-form upper bound for the vacuum-region radius,
///   (R^N - M0^{gamma/(gamma-1)} / (omega_N ((gamma-1) E0)^{1/(gamma-1)}))^{1/N},
/// clamped to 0 when the inner expression is negative (vacuum impossible at
/// this mass/energy). Throws on gamma <= 1.
double vacuum_boundary_bound(double M0, double E0, int dim, double gamma, double R);

/// Largest radius below which rho r^{N-1} stays under the threshold
/// contiguously from the center; 0 if the first cell already exceeds it.
double vacuum_radius(const LagrangianState& state, double threshold);

/// Running sup series (R_T, V_T) = (sup rho_max + 1, sup 1/rho_min + 1); V_T
/// is +infinity from the first zero-density sample on.
std::pair<std::vector<double>, std::vector<double>> density_extrema(
    const std::vector<DiagnosticSample>& samples);

DiagnosticSample collect_sample(const LagrangianState& state, const ModelParams& params,
                                const DiagnosticsRequest& request);

}  // namespace nsrad
