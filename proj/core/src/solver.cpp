#include "nsrad/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nsrad/tridiag.hpp"

namespace nsrad {

namespace {

void require_positive_density(const LagrangianState& state, const char* who) {
    for (double rho : state.density)
        if (!(rho > 0.0)) throw std::domain_error(std::string(who) + ": non-positive density");
}

struct Coefficients {
    std::vector<double> visc;      // alpha rho^{1+alpha} + eta delta rho^{1+delta}, per cell
    std::vector<double> mobility;  // rho^alpha + eta rho^delta, per cell
    std::vector<double> pressure;  // rho^gamma, per cell
};

Coefficients cell_coefficients(const LagrangianState& state, const ModelParams& params) {
    const int n = state.cells();
    const double eta = params.eta_at(state.time);
    Coefficients k;
    k.visc.resize(n);
    k.mobility.resize(n);
    k.pressure.resize(n);
    for (int c = 0; c < n; ++c) {
        const double rho = state.density[c];
        k.visc[c] = params.alpha * std::pow(rho, 1.0 + params.alpha);
        k.mobility[c] = std::pow(rho, params.alpha);
        if (eta > 0.0) {
            k.visc[c] += eta * params.delta * std::pow(rho, 1.0 + params.delta);
            k.mobility[c] += eta * std::pow(rho, params.delta);
        }
        k.pressure[c] = params.pressure_term ? std::pow(rho, params.gamma) : 0.0;
    }
    return k;
}

// (r^{N-1} u)_y per cell.
std::vector<double> edge_flux_divergence(const LagrangianState& state,
                                         const std::vector<double>& u) {
    const int n = state.cells();
    const double dy = state.cell_mass();
    std::vector<double> d(n);
    for (int c = 0; c < n; ++c) {
        const double zl = std::pow(state.radius[c], state.dim - 1) * u[c];
        const double zr = std::pow(state.radius[c + 1], state.dim - 1) * u[c + 1];
        d[c] = (zr - zl) / dy;
    }
    return d;
}

double max_abs_diff_rel(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]) / std::abs(b[i]));
    return m;
}

}  // namespace

void validate(const ModelParams& params) {
    if (params.dim != 2 && params.dim != 3)
        throw std::invalid_argument("ModelParams: dim must be 2 or 3");
    if (!(params.gamma > 1.0)) throw std::invalid_argument("ModelParams: gamma must be > 1");
    if (!(params.outer_radius > params.inner_radius) || params.inner_radius < 0.0)
        throw std::invalid_argument("ModelParams: requires 0 <= inner_radius < outer_radius");
    if (params.grid_cells < 8) throw std::invalid_argument("ModelParams: grid_cells must be >= 8");
    if (!(params.dt_safety > 0.0) || params.dt_safety > 1.0)
        throw std::invalid_argument("ModelParams: dt_safety must be in (0, 1]");
    if (params.t_end < 0.0) throw std::invalid_argument("ModelParams: t_end must be >= 0");
    if (params.eta < 0.0) throw std::invalid_argument("ModelParams: eta must be >= 0");
    if (1.0 + (params.alpha - 1.0) * params.dim <= 0.0)
        throw std::invalid_argument(
            "ModelParams: viscosity positivity requires 1 + (alpha-1) N > 0");
    if (params.eta > 0.0 && 1.0 + (params.delta - 1.0) * params.dim <= 0.0)
        throw std::invalid_argument(
            "ModelParams: artificial exponent violates 1 + (delta-1) N > 0");
}

std::vector<double> momentum_rhs(const LagrangianState& state, const ModelParams& params) {
    require_positive_density(state, "momentum_rhs");
    const int n = state.cells();
    const int dim = state.dim;
    const double dy = state.cell_mass();
    const Coefficients k = cell_coefficients(state, params);
    const std::vector<double> div = edge_flux_divergence(state, state.velocity);

    std::vector<double> rhs(n + 1, 0.0);
    for (int i = 1; i < n; ++i) {
        const double r = state.radius[i];
        const double w = std::pow(r, dim - 1);
        const double viscous = (k.visc[i] * div[i] - k.visc[i - 1] * div[i - 1]) / dy;
        const double dp = (k.pressure[i] - k.pressure[i - 1]) / dy;
        const double da = (k.mobility[i] - k.mobility[i - 1]) / dy;
        rhs[i] = w * (viscous - dp) -
                 (dim - 1) * std::pow(r, dim - 2) * da * state.velocity[i];
    }
    return rhs;
}

std::vector<double> continuity_rhs(const LagrangianState& state, const ModelParams& params) {
    (void)params;
    require_positive_density(state, "continuity_rhs");
    std::vector<double> d = edge_flux_divergence(state, state.velocity);
    for (int c = 0; c < state.cells(); ++c)
        d[c] *= -state.density[c] * state.density[c];
    return d;
}

double stable_dt(const LagrangianState& state, const ModelParams& params) {
    require_positive_density(state, "stable_dt");
    const int n = state.cells();
    const int dim = state.dim;
    const double dy = state.cell_mass();
    const double eta = params.eta_at(state.time);
    double dt = std::numeric_limits<double>::infinity();
    for (int c = 0; c < n; ++c) {
        const double rho = state.density[c];
        const double rmax = state.radius[c + 1];
        const double w = std::pow(rmax, dim - 1);
        const double sound = std::sqrt(params.gamma * std::pow(rho, params.gamma - 1.0));
        dt = std::min(dt, dy / (rho * w * sound));
        if (params.scheme == TimeScheme::explicit_rk2) {
            double kv = params.alpha * std::pow(rho, 1.0 + params.alpha);
            if (eta > 0.0) kv += eta * params.delta * std::pow(rho, 1.0 + params.delta);
            dt = std::min(dt, dy * dy / (2.0 * kv * w * w));
        }
    }
    return params.dt_safety * dt;
}

StepReport step_explicit(LagrangianState& state, const ModelParams& params, double dt) {
    require_positive_density(state, "step_explicit");
    const int n = state.cells();
    StepReport report;
    report.dt_used = dt;

    const std::vector<double> u0 = state.velocity;
    const std::vector<double> rho0 = state.density;
    const std::vector<double> r0 = state.radius;

    const std::vector<double> k1u = momentum_rhs(state, params);
    const std::vector<double> k1v = edge_flux_divergence(state, state.velocity);

    // Predictor.
    LagrangianState mid = state;
    mid.time = state.time + dt;
    bool ok = true;
    for (int c = 0; c < n; ++c) {
        const double v = 1.0 / rho0[c] + dt * k1v[c];
        if (!(v > 0.0)) ok = false;
        mid.density[c] = 1.0 / v;
    }
    if (!ok) {
        report.positivity_ok = false;
        return report;
    }
    for (int i = 1; i < n; ++i) mid.velocity[i] = u0[i] + dt * k1u[i];
    mid.radius = reconstruct_radius(mid.density, mid.total_mass, mid.inner_radius, mid.dim);

    const std::vector<double> k2u = momentum_rhs(mid, params);
    const std::vector<double> k2v = edge_flux_divergence(mid, mid.velocity);

    for (int c = 0; c < n; ++c) {
        const double v = 1.0 / rho0[c] + 0.5 * dt * (k1v[c] + k2v[c]);
        if (!(v > 0.0)) ok = false;
    }
    if (!ok) {
        report.positivity_ok = false;
        return report;
    }
    for (int c = 0; c < n; ++c)
        state.density[c] = 1.0 / (1.0 / rho0[c] + 0.5 * dt * (k1v[c] + k2v[c]));
    for (int i = 1; i < n; ++i) state.velocity[i] = u0[i] + 0.5 * dt * (k1u[i] + k2u[i]);
    state.velocity[0] = state.velocity[n] = 0.0;
    state.radius = reconstruct_radius(state.density, state.total_mass, state.inner_radius, state.dim);
    state.time += dt;

    report.max_density_change = max_abs_diff_rel(state.density, rho0);
    for (int i = 0; i <= n; ++i)
        report.kinematic_residual = std::max(
            report.kinematic_residual,
            std::abs((state.radius[i] - r0[i]) / dt - state.velocity[i]));
    return report;
}

StepReport step_semi_implicit(LagrangianState& state, const ModelParams& params, double dt) {
    require_positive_density(state, "step_semi_implicit");
    const int n = state.cells();
    const int dim = state.dim;
    const double dy = state.cell_mass();
    StepReport report;
    report.dt_used = dt;
    report.viscous_solve_iterations = 1;

    const Coefficients k = cell_coefficients(state, params);

    // Implicit solve for z = r^{N-1} u at interior edges; the matrix is the
    // symmetric form of the viscous + geometric operator with coefficients and
    // radii frozen at the current time. Positive definiteness is exactly the
    // discrete viscosity-positivity condition 1 + (alpha-1) N >= 0.
    std::vector<double> diag(n - 1), off(n - 2), rhs(n - 1);
    for (int i = 1; i < n; ++i) {
        const double r = state.radius[i];
        const double w = std::pow(r, dim - 1);
        const double da = k.mobility[i] - k.mobility[i - 1];
        diag[i - 1] = 1.0 / (w * w) + dt * (k.visc[i] + k.visc[i - 1]) / (dy * dy) +
                      dt * (dim - 1) * da / (dy * std::pow(r, dim));
        const double dp = (k.pressure[i] - k.pressure[i - 1]) / dy;
        rhs[i - 1] = state.velocity[i] / w - dt * dp;
        if (i < n - 1) off[i - 1] = -dt * k.visc[i] / (dy * dy);
    }
    if (!solve_spd_tridiagonal(diag, off, rhs))
        throw std::runtime_error("step_semi_implicit: loss of ellipticity (non-positive pivot)");

    std::vector<double> u_new(n + 1, 0.0);
    for (int i = 1; i < n; ++i) u_new[i] = rhs[i - 1] / std::pow(state.radius[i], dim - 1);

    // Specific-volume update with the new velocities; the update telescopes so
    // total volume is conserved to roundoff.
    const std::vector<double> rho0 = state.density;
    const std::vector<double> r0 = state.radius;
    std::vector<double> vnew(n);
    bool ok = true;
    {
        LagrangianState tmp = state;
        tmp.velocity = u_new;
        const std::vector<double> div = edge_flux_divergence(tmp, u_new);
        for (int c = 0; c < n; ++c) {
            vnew[c] = 1.0 / rho0[c] + dt * div[c];
            if (!(vnew[c] > 0.0)) ok = false;
        }
    }
    if (!ok) {
        report.positivity_ok = false;
        return report;
    }

    state.velocity = std::move(u_new);
    for (int c = 0; c < n; ++c) state.density[c] = 1.0 / vnew[c];
    state.radius = reconstruct_radius(state.density, state.total_mass, state.inner_radius, dim);
    state.time += dt;

    report.max_density_change = max_abs_diff_rel(state.density, rho0);
    for (int i = 0; i <= n; ++i)
        report.kinematic_residual = std::max(
            report.kinematic_residual,
            std::abs((state.radius[i] - r0[i]) / dt - state.velocity[i]));
    return report;
}

const char* termination_name(Termination t) {
    switch (t) {
        case Termination::completed: return "completed";
        case Termination::positivity_loss: return "positivity-loss";
        case Termination::non_finite: return "non-finite";
        case Termination::density_ceiling: return "density-ceiling";
        case Termination::ellipticity_loss: return "ellipticity-loss";
    }
    return "?";
}

namespace {

bool all_finite(const LagrangianState& state) {
    for (double x : state.density)
        if (!std::isfinite(x)) return false;
    for (double x : state.velocity)
        if (!std::isfinite(x)) return false;
    for (double x : state.radius)
        if (!std::isfinite(x)) return false;
    return true;
}

}  // namespace

RunResult run_from_state(LagrangianState state, const ModelParams& params,
                         const RunOptions& options) {
    validate(params);
    RunResult result;
    DiagnosticsRequest request;
    request.lp = options.lp;
    request.xi = options.xi;
    request.vacuum_threshold = options.vacuum_threshold;
    for (double f : options.particle_h_fractions) request.particle_h.push_back(f * state.total_mass);

    state.velocity.front() = 0.0;
    state.velocity.back() = 0.0;

    std::vector<double> snapshot_times = options.snapshot_times;
    std::sort(snapshot_times.begin(), snapshot_times.end());
    std::size_t next_snapshot = 0;

    const double t_end = params.t_end;
    const double interval = options.sample_interval > 0.0 ? options.sample_interval : t_end;
    const double time_eps = std::max(1e-12, 1e-12 * std::max(1.0, t_end));

    auto emit = [&](const LagrangianState& s) {
        result.samples.push_back(collect_sample(s, params, request));
        if (options.keep_trajectory) result.trajectory.emplace_back(s.time, s);
    };

    emit(state);
    while (next_snapshot < snapshot_times.size() &&
           snapshot_times[next_snapshot] <= time_eps) {
        result.snapshots.emplace_back(state.time, state);
        ++next_snapshot;
    }

    long long sample_index = 1;
    while (state.time < t_end - time_eps) {
        double next_event = std::min(t_end, sample_index * interval);
        if (next_snapshot < snapshot_times.size())
            next_event = std::min(next_event, snapshot_times[next_snapshot]);
        if (state.time < params.eta_phase_end && params.eta_phase_end < next_event)
            next_event = params.eta_phase_end;

        double dt = std::min(stable_dt(state, params), next_event - state.time);
        StepReport report;
        bool stepped = false;
        for (int attempt = 0; attempt <= 20; ++attempt) {
            try {
                report = params.scheme == TimeScheme::explicit_rk2
                             ? step_explicit(state, params, dt)
                             : step_semi_implicit(state, params, dt);
            } catch (const std::runtime_error& e) {
                result.termination = Termination::ellipticity_loss;
                result.detail = e.what();
                result.final_state = std::move(state);
                return result;
            }
            if (report.positivity_ok) {
                stepped = true;
                break;
            }
            dt *= 0.5;
        }
        if (!stepped) {
            result.termination = Termination::positivity_loss;
            result.detail = "positivity lost at t = " + std::to_string(state.time) +
                            ", min rho = " +
                            std::to_string(*std::min_element(state.density.begin(),
                                                             state.density.end()));
            result.final_state = std::move(state);
            return result;
        }
        ++result.steps;
        result.max_kinematic_residual =
            std::max(result.max_kinematic_residual, report.kinematic_residual);

        if (!all_finite(state)) {
            result.termination = Termination::non_finite;
            result.detail = "non-finite field at t = " + std::to_string(state.time);
            result.final_state = std::move(state);
            return result;
        }
        const double rho_max = *std::max_element(state.density.begin(), state.density.end());
        if (rho_max > params.density_ceiling) {
            result.termination = Termination::density_ceiling;
            result.detail = "density " + std::to_string(rho_max) + " above ceiling at t = " +
                            std::to_string(state.time);
            result.final_state = std::move(state);
            return result;
        }

        if (std::abs(state.time - sample_index * interval) <= time_eps) {
            state.time = std::min(sample_index * interval, t_end);
            emit(state);
            ++sample_index;
        } else if (state.time >= t_end - time_eps) {
            state.time = t_end;
            emit(state);
        }
        while (next_snapshot < snapshot_times.size() &&
               state.time >= snapshot_times[next_snapshot] - time_eps) {
            result.snapshots.emplace_back(state.time, state);
            ++next_snapshot;
        }
    }

    result.termination = Termination::completed;
    result.final_state = std::move(state);
    return result;
}

RunResult run(const InitialDataSpec& spec, const ModelParams& params, const RunOptions& options) {
    validate(params);
    WeakDataOptions weak;
    weak.eta = params.eta;
    weak.alpha = params.alpha;
    weak.delta = params.delta;
    weak.inner = params.inner_radius;
    LagrangianState state = build_initial_state(spec, params.dim, params.outer_radius,
                                                params.grid_cells, weak);
    return run_from_state(std::move(state), params, options);
}

}  // namespace nsrad
