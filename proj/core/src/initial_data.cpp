#include "nsrad/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nsrad {

namespace {

// Quintic smoothstep, C2 on [0,1] with max slope 15/8.
double smoothstep(double t) {
    t = std::clamp(t, 0.0, 1.0);
    return t * t * t * (10.0 + t * (6.0 * t - 15.0));
}

double unit_ball(int dim) { return dim == 2 ? M_PI : 4.0 * M_PI / 3.0; }

// Domain integral of a cell quantity: N omega_N * sum f_c (r+^N - r-^N)/N.
double domain_integral(const EulerianProfile& grid, const std::vector<double>& values, int dim) {
    double s = 0.0;
    for (int c = 0; c < grid.cells(); ++c)
        s += values[c] * shell_volume(grid.radii[c], grid.radii[c + 1], dim);
    return dim * unit_ball(dim) * s;
}

}  // namespace

InitialDataSpec preset(const std::string& name) {
    InitialDataSpec s;
    s.kind = name;
    if (name == "equilibrium") {
        s.velocity_amplitude = 0.0;
    } else if (name == "sv") {
        // Smooth pressure-driven wave exercising the shallow-water endpoint
        // (N=2, alpha=1, gamma=2).
        s.amplitude = 0.3;
        s.velocity_amplitude = 0.0;
        s.p = 4.0;
        s.q = Rational::parse("2");
    } else if (name == "gaussian-bump") {
        s.amplitude = 0.5;
        s.velocity_amplitude = 0.0;
        s.p = 2.0;
        s.q = Rational::parse("4/3");
    } else if (name == "vacuum-annulus") {
        s.amplitude = 1.0;
        s.velocity_amplitude = 0.0;
        s.vacuum_floor = 1e-6;
        s.band_lo = 0.0;
        s.band_hi = 0.6;
        s.p = 2.0;
        s.q = Rational::parse("4/3");
    } else if (name == "t2-paper" || name == "t2-vacuum") {
        s.velocity_amplitude = 1.0;
        s.vacuum_floor = name == "t2-vacuum" ? 1e-6 : 0.0;
        s.p = 4.0;
        s.q = Rational::parse("2");
    } else {
        throw std::invalid_argument("preset: unknown name '" + name + "'");
    }
    return s;
}

std::vector<std::string> preset_names() {
    return {"equilibrium", "sv", "gaussian-bump", "vacuum-annulus", "t2-paper", "t2-vacuum"};
}

double preset_density(const InitialDataSpec& spec, int dim, double r, double R) {
    if (spec.kind == "equilibrium") {
        return 1.0 / (unit_ball(dim) * std::pow(R, dim));
    }
    if (spec.kind == "sv") {
        return 1.0 + spec.amplitude * std::cos(M_PI * r / R);
    }
    if (spec.kind == "gaussian-bump") {
        const double z = (r - spec.bump_center * R) / (spec.bump_width * R);
        return 1.0 + spec.amplitude * std::exp(-z * z);
    }
    if (spec.kind == "vacuum-annulus") {
        const double ramp = 0.1 * R;
        double ambient = 0.0;
        if (spec.band_lo > 0.0) ambient += smoothstep((spec.band_lo * R - r) / ramp);
        ambient += smoothstep((r - spec.band_hi * R) / ramp);
        ambient = std::min(ambient, 1.0);
        return spec.vacuum_floor + (spec.amplitude - spec.vacuum_floor) * ambient;
    }
    if (spec.kind == "t2-paper" || spec.kind == "t2-vacuum") {
        const double base = std::pow(r, 2.0 / 3.0);
        return spec.kind == "t2-paper" ? base + 1.0 : base + spec.vacuum_floor;
    }
    throw std::invalid_argument("preset_density: unknown kind '" + spec.kind + "'");
}

double preset_velocity(const InitialDataSpec& spec, int dim, double r, double R) {
    (void)dim;
    if (spec.kind == "t2-paper" || spec.kind == "t2-vacuum") {
        // chi = 1 on [0, R/2], 0 on [2R/3, R].
        const double chi = smoothstep((2.0 * R / 3.0 - r) / (R / 6.0));
        if (chi == 0.0) return 0.0;
        return spec.velocity_amplitude * std::pow(r, -0.01) * chi;
    }
    if (spec.velocity_amplitude == 0.0) return 0.0;
    // Generic solenoidal-compatible radial pulse vanishing at both ends.
    const double x = r / R;
    return spec.velocity_amplitude * x * (1.0 - x) * std::sin(M_PI * x);
}

std::vector<double> mollify(const EulerianProfile& profile, const std::vector<double>& values,
                            double epsilon) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("mollify: epsilon must be > 0");
    const int n = profile.cells();
    if (static_cast<int>(values.size()) != n)
        throw std::invalid_argument("mollify: values must be cell-sized");
    const double h = (profile.outer_radius - profile.inner_radius) / n;

    const int half = static_cast<int>(std::floor(epsilon / h));
    std::vector<double> w(2 * half + 1);
    double wsum = 0.0;
    for (int j = -half; j <= half; ++j) {
        const double x = j * h / epsilon;
        const double b = x * x < 1.0 ? std::exp(-1.0 / (1.0 - x * x)) : 0.0;
        w[j + half] = b;
        wsum += b;
    }
    if (wsum == 0.0) return values;  // kernel narrower than one cell
    for (double& wk : w) wk /= wsum;

    std::vector<double> out(n);
    for (int c = 0; c < n; ++c) {
        double acc = 0.0;
        for (int j = -half; j <= half; ++j) {
            const int idx = std::clamp(c + j, 0, n - 1);  // constant extension
            acc += w[j + half] * values[idx];
        }
        out[c] = acc;
    }
    return out;
}

double cutoff(double r, double inner, double R) {
    if (!(inner > 0.0) || 5.0 * inner >= R)
        throw std::invalid_argument("cutoff: requires 0 < inner < R/5");
    const double rise = smoothstep((r - 2.0 * inner) / inner);
    const double fall = smoothstep((R - inner - r) / inner);
    return rise * fall;
}

std::vector<double> build_weak_density(const EulerianProfile& rho0, double eta, double alpha,
                                       double delta, const Rational& q) {
    if (!(alpha > delta)) throw std::invalid_argument("build_weak_density: requires alpha > delta");
    if (!(q > Rational(1))) throw std::invalid_argument("build_weak_density: requires q > 1");
    const double theta = alpha - 1.0 + 1.0 / (2.0 * q.to_double());
    if (!(theta > 0.0))
        throw std::invalid_argument("build_weak_density: alpha - 1 + 1/(2q) must be positive");

    const int n = rho0.cells();
    std::vector<double> powed(n);
    for (int c = 0; c < n; ++c) {
        if (rho0.density[c] < 0.0)
            throw std::invalid_argument("build_weak_density: negative density");
        powed[c] = std::pow(rho0.density[c], theta);
    }
    const double eps = eta / 4.0;
    std::vector<double> mol =
        eps > 0.0 ? mollify(rho0, powed, eps) : powed;

    const double floor_term = std::pow(eta, theta / (alpha - delta));
    std::vector<double> rho(n);
    for (int c = 0; c < n; ++c) rho[c] = std::pow(mol[c] + floor_term, 1.0 / theta);

    const double mass = domain_integral(rho0, rho, rho0.dim);
    if (!(mass > 0.0)) throw std::invalid_argument("build_weak_density: zero total mass");
    const double c_eta = 1.0 / mass;
    for (double& v : rho) v *= c_eta;
    return rho;
}

std::vector<double> build_weak_velocity(const EulerianProfile& m0_profile,
                                        const std::vector<double>& rho0,
                                        const std::vector<double>& rho_eta, double eta, double p) {
    if (!(p > 1.0)) throw std::invalid_argument("build_weak_velocity: requires p > 1");
    const int n = m0_profile.cells();
    const double R = m0_profile.outer_radius;
    const double eps = eta / 4.0;

    std::vector<double> integrand(n), m0(n);
    for (int c = 0; c < n; ++c) {
        const double rmid = 0.5 * (m0_profile.radii[c] + m0_profile.radii[c + 1]);
        m0[c] = m0_profile.velocity[c];  // carries the momentum values
        if (rho0[c] <= 0.0) {
            integrand[c] = 0.0;  // m0 = 0 a.e. on vacuum by assumption
            continue;
        }
        const double a = eta > 0.0 ? cutoff(rmid, eta, R) : 1.0;
        integrand[c] =
            std::pow(std::abs(m0[c]), 2.0 * p) / std::pow(rho0[c], 2.0 * p - 1.0) * a;
    }
    std::vector<double> mol = eps > 0.0 ? mollify(m0_profile, integrand, eps) : integrand;
    std::vector<double> msign = eps > 0.0 ? mollify(m0_profile, m0, eps) : m0;

    std::vector<double> u(n);
    for (int c = 0; c < n; ++c) {
        const double mag = std::pow(std::max(mol[c], 0.0) / rho_eta[c], 1.0 / (2.0 * p));
        u[c] = std::copysign(mag, msign[c]);
        if (mol[c] == 0.0) u[c] = 0.0;
    }
    return u;
}

EulerianProfile sample_initial_profile(const InitialDataSpec& spec, int dim, double inner,
                                       double R, int fine_cells) {
    EulerianProfile p;
    p.dim = dim;
    p.inner_radius = inner;
    p.outer_radius = R;
    p.radii.resize(fine_cells + 1);
    p.density.resize(fine_cells);
    p.velocity.resize(fine_cells);
    const double h = (R - inner) / fine_cells;
    for (int i = 0; i <= fine_cells; ++i) p.radii[i] = inner + i * h;
    p.radii.back() = R;
    for (int c = 0; c < fine_cells; ++c) {
        const double rmid = 0.5 * (p.radii[c] + p.radii[c + 1]);
        p.density[c] = preset_density(spec, dim, rmid, R);
        p.velocity[c] = preset_velocity(spec, dim, rmid, R);
    }
    return p;
}

LagrangianState build_initial_state(const InitialDataSpec& spec, int dim, double R, int cells,
                                    const WeakDataOptions& opts, int fine_cells) {
    if (spec.kind == "equilibrium" && opts.eta == 0.0) {
        // Exact uniform state: bit-identical cell densities make the
        // equilibrium a fixed point of the steppers to machine precision.
        LagrangianState s;
        s.dim = dim;
        s.inner_radius = opts.inner;
        const double rho = preset_density(spec, dim, 0.5 * R, R);
        s.total_mass = rho * shell_volume(opts.inner, R, dim);
        s.density.assign(cells, rho);
        s.velocity.assign(cells + 1, 0.0);
        s.radius = reconstruct_radius(s.density, s.total_mass, opts.inner, dim);
        return s;
    }
    if (fine_cells <= 0) fine_cells = std::max(8 * cells, 4096);
    EulerianProfile prof = sample_initial_profile(spec, dim, opts.inner, R, fine_cells);

    if (opts.eta > 0.0) {
        // Approximate-system data: normalize the base mass, then the floored
        // mollified density and the cut-off velocity.
        const double mass0 = domain_integral(prof, prof.density, dim);
        if (!(mass0 > 0.0)) throw std::invalid_argument("build_initial_state: zero base mass");
        std::vector<double> rho0(prof.density);
        for (double& v : rho0) v /= mass0;

        EulerianProfile base = prof;
        base.density = rho0;
        std::vector<double> rho_eta =
            build_weak_density(base, opts.eta, opts.alpha, opts.delta, spec.q);

        EulerianProfile m0 = prof;
        for (int c = 0; c < m0.cells(); ++c) m0.velocity[c] = rho0[c] * prof.velocity[c];
        std::vector<double> u_eta =
            build_weak_velocity(m0, rho0, rho_eta, opts.eta, spec.p);

        prof.density = std::move(rho_eta);
        prof.velocity = std::move(u_eta);
    } else if (opts.inner > 0.0) {
        // Annulus data without artificial viscosity: mollified density with
        // mass renormalization, cut-off mollified velocity.
        const double iota = spec.cutoff_inner > 0.0 ? spec.cutoff_inner : opts.inner;
        const double eps = spec.mollify_radius > 0.0 ? spec.mollify_radius : iota / 4.0;
        const double mass0 = domain_integral(prof, prof.density, dim);
        if (!(mass0 > 0.0)) throw std::invalid_argument("build_initial_state: zero base mass");
        std::vector<double> rho0(prof.density);
        for (double& v : rho0) v /= mass0;

        std::vector<double> rho_iota = mollify(prof, rho0, eps);
        const double mass = domain_integral(prof, rho_iota, dim);
        for (double& v : rho_iota) v /= mass;

        std::vector<double> u_cut(prof.velocity);
        for (int c = 0; c < prof.cells(); ++c) {
            const double rmid = 0.5 * (prof.radii[c] + prof.radii[c + 1]);
            u_cut[c] *= cutoff(rmid, iota, R);
        }
        prof.density = std::move(rho_iota);
        prof.velocity = mollify(prof, u_cut, eps);
    }

    LagrangianState state = from_eulerian(prof, cells);
    state.dim = dim;
    return state;
}

}  // namespace nsrad
