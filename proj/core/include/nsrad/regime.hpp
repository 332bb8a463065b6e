#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nsrad/rational.hpp"

namespace nsrad {

/// Parameter-admissibility mathematics for the radial system with viscosities
/// mu = rho^alpha, lambda = (alpha-1) rho^alpha, and the classifier that checks
/// a tuple (N, alpha, gamma, p, q) against each known solvability regime.
namespace regime {

/// Critical exponent curves alpha_{N,-}(n), alpha_{N,+}(n), n > 1.
///
/// Evaluated through rationalized forms, algebraically equal to the defining
/// quotients but free of the (n-1)^2 cancellation:
///   alpha_{2,-}(n) = 1 - sqrt(2n-1) / (n + sqrt(2n-1))
///   alpha_{3,-}(n) = 1 - 2(2n-1) / (sqrt(16n^3-4n^2-4n+1) + 6n-3)
/// Throws std::domain_error for n <= 1 or dim not in {2,3}.
double alpha_minus(int dim, double n);
double alpha_plus(int dim, double n);

/// Inverts alpha_{N,-} (for alpha < 1) or alpha_{N,+} (for alpha > 1) by
/// bisection on [1+1e-12, 1e9] to relative tolerance 1e-12; monotonicity of
/// both curves makes the root unique. Returns +infinity at alpha = 1.
/// Valid for alpha > 1/2 (dim 2) or alpha > 2/3 (dim 3); domain_error outside.
double n_critical(int dim, double alpha);

/// True iff q = 1 + s/(2k+1) for some s in N+, k in N; equivalently q > 1 and
/// q - 1 has an odd denominator in lowest terms.
bool in_m_set(const Rational& q);

/// Admissible open interval for the artificial-viscosity exponent at
/// integrability index p: (alpha_{N,-}(p), 1 - 1/(2p)). For dim 3 and p < 1.55
/// the interval is evaluated at n = 1.55 instead (its fixed-exponent case).
struct ExponentInterval {
    double lo;
    double hi;
};
ExponentInterval artificial_exponent_interval(int dim, double p);

/// Default artificial exponent: midpoint of the admissible interval, except
/// the fixed value 0.677 for dim 3 with p < 1.55.
double select_artificial_exponent(int dim, double p);

/// One evaluated inequality of a regime's hypothesis set.
struct ConditionCheck {
    std::string condition;  ///< human-readable, e.g. "alpha > 0.5"
    double lhs = 0.0;
    double rhs = 0.0;
    bool satisfied = false;
};

enum class RegimeKind {
    classical_existence,     ///< classical solution, large data, no vacuum (alpha < 1)
    classical_longtime,      ///< classical solution with T-independent bounds and decay
    shallow_water_endpoint,  ///< 2-D endpoint alpha = 1 (includes viscous Saint-Venant)
    weak_2d,                 ///< 2-D weak solution allowing vacuum (alpha >= 1)
    weak_3d,                 ///< 3-D weak solution allowing vacuum
    vacuum_vanishing,        ///< weak solution whose vacuum disappears in finite time
    origin_vacuum_weak,      ///< alpha = 1 weak solution, vacuum confined near origin
};

const char* regime_name(RegimeKind kind);

struct RegimeVerdict {
    RegimeKind kind;
    bool satisfied = false;
    std::vector<ConditionCheck> checks;  ///< every inequality, with both sides evaluated
};

struct RegimeReport {
    int dim = 2;
    double alpha = 0.0;
    double gamma = 0.0;
    std::optional<double> p;
    std::optional<Rational> q;
    std::vector<RegimeVerdict> verdicts;

    const RegimeVerdict& verdict(RegimeKind kind) const;
    bool satisfied(RegimeKind kind) const { return verdict(kind).satisfied; }
};

/// Evaluates every hypothesis set verbatim (strict vs non-strict inequalities
/// as stated; no epsilon slack). p and q may be omitted; conditions that need
/// them are then reported unsatisfied.
RegimeReport classify_regime(int dim, double alpha, double gamma,
                             std::optional<double> p = std::nullopt,
                             std::optional<Rational> q = std::nullopt);

}  // namespace regime
}  // namespace nsrad
