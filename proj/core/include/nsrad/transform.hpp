#pragma once

#include <utility>
#include <vector>

namespace nsrad {

/// Radial profile on an Eulerian grid. Density and velocity are cell values,
/// radii are the G+1 cell edges (strictly increasing, radii.front() ==
/// inner_radius, radii.back() == outer_radius).
struct EulerianProfile {
    int dim = 2;
    double inner_radius = 0.0;
    double outer_radius = 1.0;
    std::vector<double> radii;     ///< G+1 edges
    std::vector<double> density;   ///< G cells
    std::vector<double> velocity;  ///< G cells

    int cells() const { return static_cast<int>(density.size()); }
};

/// State in Lagrangian mass coordinates on a uniform mass grid over
/// [0, total_mass]. Density is a cell quantity; velocity and radius live on
/// edges, which makes u(0) = u(M) = 0 exact and the mass map telescoping.
struct LagrangianState {
    int dim = 2;
    double inner_radius = 0.0;
    double time = 0.0;
    double total_mass = 1.0;
    std::vector<double> density;   ///< G cells, > 0
    std::vector<double> velocity;  ///< G+1 edges, velocity[0] = velocity[G] = 0
    std::vector<double> radius;    ///< G+1 edges, strictly increasing

    int cells() const { return static_cast<int>(density.size()); }
    double cell_mass() const { return total_mass / cells(); }
    double outer_radius() const { return radius.back(); }
    std::vector<double> mass_edges() const;
};

/// Cumulative mass map y(r) = integral of rho s^{N-1} ds, evaluated at the
/// profile's edges with the cell-midpoint rule in the volume variable r^N
/// (exact for cell-constant density). Returns the edge values and y(R).
/// Throws std::invalid_argument on zero total mass or negative density.
std::pair<std::vector<double>, double> mass_coordinate(const EulerianProfile& profile);

/// Inverts dy/dr = rho r^{N-1} on a uniform mass grid:
///   r(y)^N = inner_radius^N + N * integral of 1/rho dy.
/// Throws on non-positive density.
std::vector<double> reconstruct_radius(const std::vector<double>& density, double total_mass,
                                       double inner_radius, int dim);

/// Elementwise 1/rho. Throws on non-positive density.
std::vector<double> specific_volume(const LagrangianState& state);

/// Volume of the shell [inner, outer] in the radial measure r^{N-1} dr.
inline double shell_volume(double inner, double outer, int dim) {
    auto pw = [dim](double r) { return dim == 2 ? r * r : r * r * r; };
    return (pw(outer) - pw(inner)) / dim;
}

/// Resamples a Lagrangian state onto its own radius map. Mass per Eulerian
/// cell equals the Lagrangian cell mass exactly by construction.
EulerianProfile to_eulerian(const LagrangianState& state);

/// Builds a Lagrangian state with `cells` uniform mass cells from an Eulerian
/// profile. Mass-edge radii are located exactly within the profile's cells
/// (linear in r^N); boundary velocities are pinned to zero.
LagrangianState from_eulerian(const EulerianProfile& profile, int cells);

/// Piecewise-linear-in-r evaluation of a profile's cell quantity at radius r,
/// with constant extension beyond the first/last cell midpoints (monotone, no
/// overshoot). `values` has one entry per cell.
double sample_profile(const EulerianProfile& profile, const std::vector<double>& values, double r);

}  // namespace nsrad
