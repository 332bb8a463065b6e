#include "nsrad/transform.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nsrad {

namespace {

double pow_dim(double r, int dim) { return dim == 2 ? r * r : r * r * r; }
double root_dim(double x, int dim) { return dim == 2 ? std::sqrt(x) : std::cbrt(x); }

void require_dim(int dim) {
    if (dim != 2 && dim != 3) throw std::invalid_argument("transform: dim must be 2 or 3");
}

}  // namespace

std::vector<double> LagrangianState::mass_edges() const {
    const int n = cells();
    std::vector<double> y(n + 1);
    const double dy = cell_mass();
    for (int i = 0; i <= n; ++i) y[i] = i * dy;
    y[n] = total_mass;
    return y;
}

std::pair<std::vector<double>, double> mass_coordinate(const EulerianProfile& profile) {
    require_dim(profile.dim);
    const int n = profile.cells();
    if (n < 1 || static_cast<int>(profile.radii.size()) != n + 1)
        throw std::invalid_argument("mass_coordinate: inconsistent profile arrays");
    std::vector<double> y(n + 1);
    y[0] = 0.0;
    for (int c = 0; c < n; ++c) {
        const double rho = profile.density[c];
        if (rho < 0.0) throw std::invalid_argument("mass_coordinate: negative density");
        const double dv = shell_volume(profile.radii[c], profile.radii[c + 1], profile.dim);
        y[c + 1] = y[c] + rho * dv;
    }
    const double total = y[n];
    if (!(total > 0.0)) throw std::invalid_argument("mass_coordinate: zero total mass");
    return {std::move(y), total};
}

std::vector<double> reconstruct_radius(const std::vector<double>& density, double total_mass,
                                       double inner_radius, int dim) {
    require_dim(dim);
    const int n = static_cast<int>(density.size());
    if (n < 1) throw std::invalid_argument("reconstruct_radius: empty density");
    const double dy = total_mass / n;
    std::vector<double> r(n + 1);
    r[0] = inner_radius;
    double rpow = pow_dim(inner_radius, dim);
    for (int c = 0; c < n; ++c) {
        if (!(density[c] > 0.0))
            throw std::invalid_argument("reconstruct_radius: non-positive density cell");
        rpow += dim * dy / density[c];
        r[c + 1] = root_dim(rpow, dim);
    }
    return r;
}

std::vector<double> specific_volume(const LagrangianState& state) {
    std::vector<double> v(state.density.size());
    for (std::size_t c = 0; c < v.size(); ++c) {
        if (!(state.density[c] > 0.0))
            throw std::invalid_argument("specific_volume: non-positive density cell");
        v[c] = 1.0 / state.density[c];
    }
    return v;
}

EulerianProfile to_eulerian(const LagrangianState& state) {
    require_dim(state.dim);
    const int n = state.cells();
    EulerianProfile p;
    p.dim = state.dim;
    p.inner_radius = state.inner_radius;
    p.outer_radius = state.radius.back();
    p.radii = state.radius;
    p.density = state.density;
    p.velocity.resize(n);
    for (int c = 0; c < n; ++c)
        p.velocity[c] = 0.5 * (state.velocity[c] + state.velocity[c + 1]);
    return p;
}

LagrangianState from_eulerian(const EulerianProfile& profile, int cells) {
    require_dim(profile.dim);
    if (cells < 1) throw std::invalid_argument("from_eulerian: cells must be >= 1");
    auto [y, total] = mass_coordinate(profile);
    const int nf = profile.cells();

    LagrangianState s;
    s.dim = profile.dim;
    s.inner_radius = profile.inner_radius;
    s.total_mass = total;
    s.density.resize(cells);
    s.velocity.assign(cells + 1, 0.0);
    s.radius.resize(cells + 1);

    // Locate each uniform mass edge inside the profile: the cumulative mass is
    // linear in r^N within a cell of constant density.
    const double dy = total / cells;
    s.radius[0] = profile.inner_radius;
    int c = 0;
    for (int k = 1; k <= cells; ++k) {
        const double target = k == cells ? total : k * dy;
        while (c < nf - 1 && y[c + 1] < target) ++c;
        const double span = y[c + 1] - y[c];
        const double frac = span > 0.0 ? (target - y[c]) / span : 1.0;
        const double rlo = pow_dim(profile.radii[c], profile.dim);
        const double rhi = pow_dim(profile.radii[c + 1], profile.dim);
        s.radius[k] = root_dim(rlo + frac * (rhi - rlo), profile.dim);
    }
    // Cell density from the exact shell volume between consecutive mass edges.
    for (int k = 0; k < cells; ++k) {
        const double dv = shell_volume(s.radius[k], s.radius[k + 1], s.dim);
        s.density[k] = dy / dv;
    }
    // Interior edge velocities: sample the profile at the edge radii; the
    // boundary condition pins the end edges to zero.
    for (int k = 1; k < cells; ++k)
        s.velocity[k] = sample_profile(profile, profile.velocity, s.radius[k]);
    return s;
}

double sample_profile(const EulerianProfile& profile, const std::vector<double>& values,
                      double r) {
    const int n = profile.cells();
    if (static_cast<int>(values.size()) != n)
        throw std::invalid_argument("sample_profile: values must be cell-sized");
    auto mid = [&](int c) { return 0.5 * (profile.radii[c] + profile.radii[c + 1]); };
    if (r <= mid(0)) return values[0];
    if (r >= mid(n - 1)) return values[n - 1];
    // Find the midpoint pair straddling r.
    int lo = 0;
    int hi = n - 1;
    while (hi - lo > 1) {
        const int m = (lo + hi) / 2;
        if (mid(m) <= r) {
            lo = m;
        } else {
            hi = m;
        }
    }
    const double m0 = mid(lo);
    const double m1 = mid(hi);
    const double t = (r - m0) / (m1 - m0);
    return values[lo] + t * (values[hi] - values[lo]);
}

}  // namespace nsrad
