#pragma once

#include <string>
#include <vector>

#include "nsrad/rational.hpp"
#include "nsrad/transform.hpp"

namespace nsrad {

/// Recipe for an initial-data family. Presets fully populate one; the weak
/// (mollified/floored/cut-off) construction parameters apply whenever a run
/// uses artificial viscosity or an excised annulus.
struct InitialDataSpec {
    std::string kind = "equilibrium";

    // density parameters
    double amplitude = 0.3;       ///< wave / bump amplitude
    double bump_center = 0.4;     ///< gaussian-bump center (fraction of R)
    double bump_width = 0.15;     ///< gaussian-bump width (fraction of R)
    double vacuum_floor = 1e-6;   ///< floor density of near-vacuum presets
    double band_lo = 0.0;         ///< near-vacuum band, inner radius (fraction of R)
    double band_hi = 0.6;         ///< near-vacuum band, outer radius (fraction of R)

    // velocity parameters
    double velocity_amplitude = 1.0;

    // weak-construction controls; 0 means "derive from the run's eta/iota"
    double mollify_radius = 0.0;  ///< epsilon; default rule epsilon = eta/4
    double cutoff_inner = 0.0;    ///< inner scale of the cut-off; default eta

    // exponents of the weak-data construction
    double p = 2.0;
    Rational q{2};
};

/// Named presets: "equilibrium", "sv", "gaussian-bump", "vacuum-annulus",
/// "t2-paper", "t2-vacuum". Throws std::invalid_argument on unknown names.
InitialDataSpec preset(const std::string& name);
std::vector<std::string> preset_names();

/// Pointwise density/velocity of the analytic family (before any weak
/// construction). R is the outer domain radius.
double preset_density(const InitialDataSpec& spec, int dim, double r, double R);
double preset_velocity(const InitialDataSpec& spec, int dim, double r, double R);

/// Convolution with the standard compactly supported bump of radius epsilon,
/// discretized on the profile's grid and normalized to unit mass, with
/// constant extension beyond both ends. Being a convex combination it
/// preserves the min/max bounds of the input. Throws on epsilon <= 0.
std::vector<double> mollify(const EulerianProfile& profile, const std::vector<double>& values,
                            double epsilon);

/// C2 cut-off: 0 on [0, 2*inner] and [R - inner, R], 1 on [3*inner, R - 2*inner],
/// quintic-smoothstep transitions with |d/dr| <= 8/inner.
/// Throws if 5*inner >= R or inner <= 0.
double cutoff(double r, double inner, double R);

/// Mollified, floored, mass-normalized density
///   rho = C ( j_eps * rho0^theta + eta^{theta/(alpha-delta)} )^{1/theta},
///   theta = alpha - 1 + 1/(2q),
/// with C chosen so the domain integral of rho over the annulus is 1.
/// Requires alpha > delta and theta > 0; throws otherwise and on zero mass.
std::vector<double> build_weak_density(const EulerianProfile& rho0, double eta, double alpha,
                                       double delta, const Rational& q);

/// Cut-off, mollified velocity
///   |u|^{2p} = (1/rho_eta) ( (|m0|^{2p} / rho0^{2p-1}) cutoff ) * j_eps,
/// with the sign carried from the mollified momentum. m0 must vanish where
/// rho0 does. Throws on p <= 1.
std::vector<double> build_weak_velocity(const EulerianProfile& m0_profile,
                                        const std::vector<double>& rho0,
                                        const std::vector<double>& rho_eta, double eta, double p);

/// Samples the recipe on a fine uniform Eulerian grid over [inner, R].
EulerianProfile sample_initial_profile(const InitialDataSpec& spec, int dim, double inner,
                                       double R, int fine_cells);

struct WeakDataOptions {
    double eta = 0.0;    ///< artificial-viscosity weight; > 0 selects the floored build
    double alpha = 1.0;
    double delta = 0.0;
    double inner = 0.0;  ///< annulus inner radius (eta or iota)
};

/// Assembles the initial Lagrangian state on `cells` uniform mass cells.
/// With opts.eta > 0 the floored weak construction is applied; with
/// opts.inner > 0 and eta = 0 the plain mollify-and-cut-off construction is
/// applied; otherwise the analytic profile is sampled directly.
LagrangianState build_initial_state(const InitialDataSpec& spec, int dim, double R, int cells,
                                    const WeakDataOptions& opts, int fine_cells = 0);

}  // namespace nsrad
