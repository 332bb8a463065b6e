#include "nsrad/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nsrad/solver.hpp"

namespace nsrad {

namespace {

double pow_dim(double r, int dim) { return dim == 2 ? r * r : r * r * r; }

// Edge gradient of rho^e scaled by r^{N-1}; one-sided at the boundary edges.
std::vector<double> weighted_power_gradient(const LagrangianState& state, double e) {
    const int n = state.cells();
    const double dy = state.cell_mass();
    std::vector<double> g(n + 1);
    auto pw = [&](int c) { return std::pow(state.density[c], e); };
    for (int i = 1; i < n; ++i)
        g[i] = std::pow(state.radius[i], state.dim - 1) * (pw(i) - pw(i - 1)) / dy;
    g[0] = std::pow(state.radius[0], state.dim - 1) * (pw(1) - pw(0)) / dy;
    g[n] = std::pow(state.radius[n], state.dim - 1) * (pw(n - 1) - pw(n - 2)) / dy;
    return g;
}

// Trapezoid weight for edge sums.
double edge_weight(int i, int n) { return (i == 0 || i == n) ? 0.5 : 1.0; }

}  // namespace

double unit_ball_measure(int dim) {
    if (dim == 2) return M_PI;
    if (dim == 3) return 4.0 * M_PI / 3.0;
    throw std::invalid_argument("unit_ball_measure: dim must be 2 or 3");
}

double energy(const LagrangianState& state, double gamma) {
    const int n = state.cells();
    const double dy = state.cell_mass();
    double kin = 0.0;
    for (int i = 0; i <= n; ++i)
        kin += 0.5 * state.velocity[i] * state.velocity[i] * edge_weight(i, n) * dy;
    double internal = 0.0;
    for (int c = 0; c < n; ++c)
        internal += std::pow(state.density[c], gamma - 1.0) / (gamma - 1.0) * dy;
    return kin + internal;
}

double eulerian_energy(const LagrangianState& state, double gamma) {
    const int n = state.cells();
    double total = 0.0;
    for (int c = 0; c < n; ++c) {
        const double dv = shell_volume(state.radius[c], state.radius[c + 1], state.dim);
        const double u2 =
            0.5 * (state.velocity[c] * state.velocity[c] + state.velocity[c + 1] * state.velocity[c + 1]);
        total += (0.5 * state.density[c] * u2 + std::pow(state.density[c], gamma) / (gamma - 1.0)) * dv;
    }
    return total;
}

double domain_mass(const LagrangianState& state) {
    return state.dim * unit_ball_measure(state.dim) * state.total_mass;
}

double domain_energy(const LagrangianState& state, double gamma) {
    return state.dim * unit_ball_measure(state.dim) * energy(state, gamma);
}

double bd_entropy(const LagrangianState& state, const ModelParams& params) {
    for (double rho : state.density)
        if (!(rho > 0.0)) throw std::invalid_argument("bd_entropy: non-positive density");
    const int n = state.cells();
    const double dy = state.cell_mass();
    const double eta = params.eta_at(state.time);

    std::vector<double> g = weighted_power_gradient(state, params.alpha);
    if (eta > 0.0) {
        std::vector<double> gd = weighted_power_gradient(state, params.delta);
        for (int i = 0; i <= n; ++i) g[i] += eta * gd[i];
    }
    double quad = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double w = state.velocity[i] + g[i];
        quad += 0.5 * w * w * edge_weight(i, n) * dy;
    }
    double internal = 0.0;
    for (int c = 0; c < n; ++c)
        internal += std::pow(state.density[c], params.gamma - 1.0) / (params.gamma - 1.0) * dy;
    return quad + internal;
}

std::vector<double> effective_velocity(const LagrangianState& state, double alpha) {
    if (alpha != 1.0)
        throw std::invalid_argument("effective_velocity: defined only for alpha = 1");
    std::vector<double> g = weighted_power_gradient(state, 1.0);
    for (int i = 0; i < static_cast<int>(g.size()); ++i) g[i] += state.velocity[i];
    return g;
}

double r_weighted_sup(const LagrangianState& state, double alpha, double xi) {
    const int n = state.cells();
    const double exponent = state.dim == 2 ? xi : 0.5 + xi;
    double sup = 0.0;
    for (int i = 0; i <= n; ++i) {
        double rho;
        if (i == 0) {
            rho = state.density[0];
        } else if (i == n) {
            rho = state.density[n - 1];
        } else {
            rho = 0.5 * (state.density[i - 1] + state.density[i]);
        }
        sup = std::max(sup, std::pow(rho, alpha - 0.5) * std::pow(state.radius[i], exponent));
    }
    return sup;
}

DecayMetrics decay_metrics(const LagrangianState& state) {
    const int n = state.cells();
    const int dim = state.dim;
    const double volume = shell_volume(state.inner_radius, state.radius.back(), dim);
    const double rho_bar = state.total_mass / volume;
    const double angular = dim * unit_ball_measure(dim);

    DecayMetrics m;
    for (int c = 0; c < n; ++c)
        m.linf_rho_minus_mean = std::max(m.linf_rho_minus_mean, std::abs(state.density[c] - rho_bar));

    double grad_u2 = 0.0;
    for (int c = 0; c < n; ++c) {
        const double dr = state.radius[c + 1] - state.radius[c];
        const double dudr = (state.velocity[c + 1] - state.velocity[c]) / dr;
        const double rmid = 0.5 * (state.radius[c] + state.radius[c + 1]);
        const double ubar = 0.5 * (state.velocity[c] + state.velocity[c + 1]);
        const double dv = shell_volume(state.radius[c], state.radius[c + 1], dim);
        grad_u2 += (dudr * dudr + (dim - 1) * (ubar / rmid) * (ubar / rmid)) * dv;
    }
    m.l2_grad_u = std::sqrt(angular * grad_u2);

    double grad_rho2 = 0.0;
    for (int i = 1; i < n; ++i) {
        const double rlo = 0.5 * (state.radius[i - 1] + state.radius[i]);
        const double rhi = 0.5 * (state.radius[i] + state.radius[i + 1]);
        const double drdy = rhi - rlo;
        if (drdy <= 0.0) continue;
        const double drho = (state.density[i] - state.density[i - 1]) / drdy;
        grad_rho2 += drho * drho * shell_volume(rlo, rhi, dim);
    }
    m.l2_grad_rho = std::sqrt(angular * grad_rho2);
    return m;
}

double particle_radius(const LagrangianState& state, double h) {
    if (!(h > 0.0) || !(h < state.total_mass))
        throw std::invalid_argument("particle_radius: h outside (0, total_mass)");
    const double dy = state.cell_mass();
    int c = std::min(static_cast<int>(h / dy), state.cells() - 1);
    const double excess = h - c * dy;
    const double rpow = pow_dim(state.radius[c], state.dim) +
                        state.dim * excess / state.density[c];
    return state.dim == 2 ? std::sqrt(rpow) : std::cbrt(rpow);
}

ParticlePathSeries particle_path(
    const std::vector<std::pair<double, LagrangianState>>& trajectory, double h) {
    ParticlePathSeries series;
    series.h = h;
    for (const auto& [t, s] : trajectory) {
        series.times.push_back(t);
        series.radii.push_back(particle_radius(s, h));
    }
    return series;
}

double vacuum_boundary_bound(double M0, double E0, int dim, double gamma, double R) {
    if (!(gamma > 1.0)) throw std::invalid_argument("vacuum_boundary_bound: requires gamma > 1");
    const double omega = unit_ball_measure(dim);
    const double inner = std::pow(R, dim) -
                         std::pow(M0, gamma / (gamma - 1.0)) /
                             (omega * std::pow((gamma - 1.0) * E0, 1.0 / (gamma - 1.0)));
    if (inner <= 0.0) return 0.0;  // vacuum impossible at this mass/energy
    return dim == 2 ? std::sqrt(inner) : std::cbrt(inner);
}

double vacuum_radius(const LagrangianState& state, double threshold) {
    if (!(threshold > 0.0)) throw std::invalid_argument("vacuum_radius: threshold must be > 0");
    double edge = 0.0;
    for (int c = 0; c < state.cells(); ++c) {
        const double rmid = 0.5 * (state.radius[c] + state.radius[c + 1]);
        if (state.density[c] * std::pow(rmid, state.dim - 1) >= threshold)
            return c == 0 ? 0.0 : edge;
        edge = state.radius[c + 1];
    }
    return edge;
}

std::pair<std::vector<double>, std::vector<double>> density_extrema(
    const std::vector<DiagnosticSample>& samples) {
    std::vector<double> rT, vT;
    double rsup = 0.0;
    double vsup = 0.0;
    for (const auto& s : samples) {
        rsup = std::max(rsup, s.rho_max);
        if (s.rho_min <= 0.0) {
            vsup = std::numeric_limits<double>::infinity();
        } else {
            vsup = std::max(vsup, 1.0 / s.rho_min);
        }
        rT.push_back(rsup + 1.0);
        vT.push_back(vsup + 1.0);
    }
    return {std::move(rT), std::move(vT)};
}

DiagnosticSample collect_sample(const LagrangianState& state, const ModelParams& params,
                                const DiagnosticsRequest& request) {
    DiagnosticSample s;
    s.time = state.time;
    s.energy = energy(state, params.gamma);
    s.bd_entropy = bd_entropy(state, params);
    s.rho_min = *std::min_element(state.density.begin(), state.density.end());
    s.rho_max = *std::max_element(state.density.begin(), state.density.end());
    s.u_max = 0.0;
    for (double u : state.velocity) s.u_max = std::max(s.u_max, std::abs(u));
    if (params.alpha == 1.0) {
        double wmax = 0.0;
        for (double w : effective_velocity(state, params.alpha)) wmax = std::max(wmax, std::abs(w));
        s.w_max = wmax;
    }
    const double dy = state.cell_mass();
    s.volume = 0.0;
    for (double rho : state.density) s.volume += dy / rho;

    const DecayMetrics dm = decay_metrics(state);
    s.linf_rho_minus_mean = dm.linf_rho_minus_mean;
    s.l2_grad_u = dm.l2_grad_u;
    s.l2_grad_rho = dm.l2_grad_rho;

    for (double twop : request.lp) {
        double acc = 0.0;
        const int n = state.cells();
        for (int i = 0; i <= n; ++i)
            acc += std::pow(std::abs(state.velocity[i]), twop) * edge_weight(i, n) * dy;
        s.lp_u.push_back(std::pow(acc, 1.0 / twop));
    }
    for (double xi : request.xi)
        s.r_weighted_sup.push_back(r_weighted_sup(state, params.alpha, xi));
    s.vacuum_radius = vacuum_radius(state, request.vacuum_threshold);
    for (double h : request.particle_h) s.particle_radii.push_back(particle_radius(state, h));
    return s;
}

}  // namespace nsrad
